"""
判定过程测试

朴素预言机一律直接遍历 itertools.permutations 的全部 n! 个置换。
"""

import random
from fractions import Fraction
from itertools import permutations

import pytest

from core.criteria import (
    SplitSubalgebra,
    benoist_check,
    benoist_witness,
    kobayashi_pair_check,
    normal_images,
    palindromic_image,
    primitive_integer,
    sl2_obstruction,
    weyl_membership,
)
from core.errors import PreconditionError, SubalgebraError
from core.replay import CertificateReplayer
from core.root_data import CartanPoint, WeylElement, act, in_b_plus, inner
from core.settings import WitnessStrategy
from core.types import BenoistVerdict, MembershipVerdict, PairVerdict


def _h(*normals) -> SplitSubalgebra:
    return SplitSubalgebra.from_normals([CartanPoint.of(*v) for v in normals])


def _naive_member(x: tuple, normals: list[tuple]) -> bool:
    n = len(x)
    for p in permutations(range(n)):
        if all(sum(Fraction(x[i]) * v[p[i]] for i in range(n)) == 0 for v in normals):
            return True
    return False


def _naive_palindromic(normals: list[tuple]) -> bool:
    n = len(normals[0])
    for p in permutations(range(n)):
        images = [tuple(v[p[i]] for i in range(n)) for v in normals]
        if all(u == u[::-1] for u in images):
            return True
    return False


def _random_traceless(rng: random.Random, n: int, spread: int) -> tuple:
    while True:
        values = [rng.randint(-spread, spread) for _ in range(n - 1)]
        values.append(-sum(values))
        if any(values):
            return tuple(values)


@pytest.fixture
def counterexample_h() -> SplitSubalgebra:
    return _h((6, 6, 1, -4, -9))


class TestSplitSubalgebra:
    """法向量规范化"""

    def test_dimension(self, counterexample_h):
        """dim 𝔞_𝔥 = (n-1) - rank"""
        assert counterexample_h.dim == 3
        assert counterexample_h.rows == ((6, 6, 1, -4, -9),)

    def test_projection_and_sign(self):
        """先投影到迹零子空间，再取首分量为正"""
        h = SplitSubalgebra.from_normals([(1, 1, 1, 1, 2)])
        assert h.rows == ((1, 1, 1, 1, -4),)

    def test_denominators_cleared(self):
        """有理分量通分成互素整数"""
        h = SplitSubalgebra.from_normals([(Fraction(-1, 2), Fraction(1, 3), Fraction(1, 6))])
        assert h.rows == ((3, -2, -1),)

    def test_primitive_integer(self):
        """本原整数形式，零向量原样返回"""
        assert primitive_integer([0, -4, 2, 2]) == (0, 2, -1, -1)
        assert primitive_integer([0, 0]) == (0, 0)

    @pytest.mark.parametrize(
        "normals",
        [
            [],
            [(1, 1, 1, 1, 1)],
            [(1, -1, 0), (-2, 2, 0)],
            [(1, -1, 0), (1, -1, 0, 0)],
        ],
    )
    def test_rejected(self, normals):
        """空、零、平行或维数不一的法向量组被拒绝"""
        with pytest.raises(SubalgebraError):
            SplitSubalgebra.from_normals(normals)

    def test_irrational_normal_rejected(self):
        """无理法向量被拒绝"""
        with pytest.raises(SubalgebraError):
            SplitSubalgebra.from_normals([CartanPoint.of("sqrt2", 0, "-sqrt2")])

    def test_basis(self, counterexample_h):
        """有理基与法向量正交，个数等于 dim"""
        basis = counterexample_h.basis()
        assert len(basis) == counterexample_h.dim
        for b in basis:
            assert inner(b, counterexample_h.normals[0]).is_zero

    def test_codim_two_dimension(self):
        """两个无关法向量，dim = 2"""
        h = _h((1, 0, 0, 0, -1), (0, 1, 0, -1, 0))
        assert h.dim == 2

    def test_dependent_normals_accepted(self):
        """两两不平行但整体相关的法向量组：dim 按秩计算"""
        h = _h((1, -1, 0, 0), (0, 0, 1, -1), (1, -1, 1, -1))
        assert len(h.normals) == 3
        assert h.dim == 1
        assert h.basis() == [CartanPoint.of(1, 1, -1, -1)]

    def test_dependent_normals_membership(self):
        """整体相关的法向量组上成员判定与朴素判定一致，证书可回放"""
        normals = [(1, -1, 0, 0), (0, 0, 1, -1), (1, -1, 1, -1)]
        h = SplitSubalgebra.from_normals(normals)
        rng = random.Random(29)
        for _ in range(40):
            x = _random_traceless(rng, 4, 3)
            certificate = weyl_membership(CartanPoint.of(*x), h)
            assert (certificate.verdict is MembershipVerdict.MEMBER) == _naive_member(x, normals)
            assert CertificateReplayer.replay(certificate)

    def test_image_count(self, counterexample_h):
        """不同同时像的个数 n!/∏(相同列的重数)!"""
        assert len(normal_images(counterexample_h)) == 60
        assert len(normal_images(_h((1, 0, 0, 0, -1)))) == 20
        assert len(normal_images(_h((1, 1, 0, -1, -1), (1, -1, 0, 1, -1)))) == 120
        assert len(normal_images(_h((1, 0, -2, 0, 1), (0, 1, -2, 1, 0)))) == 30

    def test_images_are_realised(self, counterexample_h):
        """每个像都由记录的 σ 实现"""
        for image in normal_images(counterexample_h):
            assert act(image.sigma, counterexample_h.normals[0]) == CartanPoint.of(*image.rows[0])


class TestWeylMembership:
    """x ∈ W·𝔞_𝔥"""

    def test_counterexample_member(self, counterexample_h):
        """(1,1,0,-1,-1) 与像 (6,-9,6,-4,1) 正交"""
        x = CartanPoint.of(1, 1, 0, -1, -1)
        certificate = weyl_membership(x, counterexample_h)
        assert certificate.verdict is MembershipVerdict.MEMBER
        assert inner(x, CartanPoint.of(6, -9, 6, -4, 1)).is_zero
        w = WeylElement.from_one_based(certificate.weyl)
        assert inner(act(w, x), counterexample_h.normals[0]).is_zero
        assert CertificateReplayer.replay(certificate)

    def test_lexicographically_smallest_image(self, counterexample_h):
        """证书报告字典序最小的命中像"""
        x = CartanPoint.of(1, 1, 0, -1, -1)
        certificate = weyl_membership(x, counterexample_h)
        images = sorted(
            image.rows[0]
            for image in normal_images(counterexample_h)
            if inner(x, CartanPoint.of(*image.rows[0])).is_zero
        )
        assert certificate.equations[0].lhs == f"<{x},({','.join(map(str, images[0]))})>"

    def test_zero_is_member(self, counterexample_h):
        """零点是成员，Weyl 元为恒等"""
        certificate = weyl_membership(CartanPoint.of(0, 0, 0, 0, 0), counterexample_h)
        assert certificate.verdict is MembershipVerdict.MEMBER
        assert certificate.weyl == [1, 2, 3, 4, 5]

    def test_irrational_non_member(self, counterexample_h):
        """(√2,1,0,-1,-√2) 穷举全部 60 个像"""
        x = CartanPoint.of("sqrt2", 1, 0, -1, "-sqrt2")
        certificate = weyl_membership(x, counterexample_h)
        assert certificate.verdict is MembershipVerdict.NON_MEMBER
        assert certificate.images_checked == 60
        assert len(certificate.misses) == 60
        assert CertificateReplayer.replay(certificate)

    def test_rational_non_member(self, counterexample_h):
        """(5,1,0,-1,-5) 不在任何像的正交补里"""
        certificate = weyl_membership(CartanPoint.of(5, 1, 0, -1, -5), counterexample_h)
        assert certificate.verdict is MembershipVerdict.NON_MEMBER

    def test_size_mismatch(self, counterexample_h):
        """点与子代数维数不符"""
        with pytest.raises(SubalgebraError):
            weyl_membership(CartanPoint.of(1, 0, -1), counterexample_h)

    def test_oracle_equivalence(self):
        """与遍历 120 个置换的朴素判定一致"""
        rng = random.Random(5)
        for _ in range(500):
            x = _random_traceless(rng, 5, 3)
            v = _random_traceless(rng, 5, 3)
            certificate = weyl_membership(CartanPoint.of(*x), SplitSubalgebra.from_normals([v]))
            expected = _naive_member(x, [v])
            assert (certificate.verdict is MembershipVerdict.MEMBER) == expected, (x, v)

    def test_w_invariance(self, counterexample_h):
        """x 与 w·x 的判定相同"""
        rng = random.Random(11)
        elements = [WeylElement(p) for p in permutations(range(5))]
        for _ in range(40):
            x = CartanPoint.of(*_random_traceless(rng, 5, 4))
            w = rng.choice(elements)
            assert weyl_membership(x, counterexample_h).verdict is weyl_membership(act(w, x), counterexample_h).verdict

    def test_scaling_invariance(self):
        """点与法向量的非零倍数不改变判定"""
        rng = random.Random(17)
        for _ in range(40):
            x = _random_traceless(rng, 5, 3)
            v = _random_traceless(rng, 5, 3)
            q, q2 = Fraction(rng.choice([-3, -1, 2, 5]), 7), rng.choice([-2, 3])
            plain = weyl_membership(CartanPoint.of(*x), SplitSubalgebra.from_normals([v]))
            scaled = weyl_membership(
                CartanPoint.of(*x).scaled(q),
                SplitSubalgebra.from_normals([tuple(q2 * a for a in v)]),
            )
            assert plain.verdict is scaled.verdict

    def test_codim_two_oracle(self):
        """两个法向量时与朴素判定一致"""
        rng = random.Random(23)
        for _ in range(60):
            x = _random_traceless(rng, 4, 3)
            v1, v2 = _random_traceless(rng, 4, 2), _random_traceless(rng, 4, 2)
            try:
                h = SplitSubalgebra.from_normals([v1, v2])
            except SubalgebraError:
                continue
            expected = _naive_member(x, [v1, v2])
            assert (weyl_membership(CartanPoint.of(*x), h).verdict is MembershipVerdict.MEMBER) == expected


class TestBenoist:
    """𝔟₊ ⊄ W·𝔞_𝔥"""

    def test_counterexample_holds(self, counterexample_h):
        """symbolic 见证点最大的 √p 在前"""
        certificate = benoist_check(counterexample_h, WitnessStrategy.SYMBOLIC)
        assert certificate.verdict is BenoistVerdict.HOLDS
        assert certificate.witness == ["sqrt3", "sqrt2", "0", "-sqrt2", "-sqrt3"]
        assert certificate.witness_membership.images_checked == 60
        assert CertificateReplayer.replay(certificate)

    def test_rational_witness(self, counterexample_h):
        """(2,1)、(3,1)、(3,2) 都落在某个像的正交补里，(4,1) 是第一个不在的"""
        witness = benoist_witness(counterexample_h, WitnessStrategy.RATIONAL)
        assert witness == CartanPoint.of(4, 1, 0, -1, -4)
        certificate = benoist_check(counterexample_h, WitnessStrategy.RATIONAL)
        assert CertificateReplayer.replay(certificate)

    def test_palindromic_fails(self):
        """存在回文像时判据失败，证书给出 σ⁻¹"""
        h = _h((1, 1, -1, -1, 0))
        certificate = benoist_check(h)
        assert certificate.verdict is BenoistVerdict.FAILS
        assert palindromic_image(h).rows == ((-1, 1, 0, 1, -1),)
        w = WeylElement.from_one_based(certificate.weyl)
        image = act(w.inverse(), h.normals[0])
        assert image.entries == tuple(reversed(image.entries))
        assert CertificateReplayer.replay(certificate)

    def test_already_palindromic_pair(self):
        """两个法向量本身都是回文向量，恒等元即为证书"""
        h = _h((1, 0, -2, 0, 1), (0, 1, -2, 1, 0))
        certificate = benoist_check(h)
        assert certificate.verdict is BenoistVerdict.FAILS
        assert CertificateReplayer.replay(certificate)

    def test_normals_spanning_b_plus_hold(self):
        """法向量张成 span(𝔟₊) 时 𝔞_𝔥 是回文向量空间，𝔟₊ 的一般点不在其 W-轨道里"""
        h = _h((1, 0, 0, 0, -1), (0, 1, 0, -1, 0))
        certificate = benoist_check(h)
        assert certificate.verdict is BenoistVerdict.HOLDS
        assert CertificateReplayer.replay(certificate)

    def test_n2_holds(self):
        """n = 2 时 𝔞_𝔥 = {0}，𝔟₊ 显然不在其中"""
        h = _h((1, -1))
        certificate = benoist_check(h)
        assert certificate.verdict is BenoistVerdict.HOLDS
        assert certificate.witness == ["sqrt2", "-sqrt2"]

    def test_witness_precondition(self):
        """判据失败时没有见证点"""
        with pytest.raises(PreconditionError):
            benoist_witness(_h((1, 1, -1, -1, 0)))

    def test_witness_in_b_plus(self):
        """各 n 的见证点都在 𝔟₊ 中"""
        for n in range(2, 9):
            normal = (1, -1) + (0,) * (n - 2)
            witness = benoist_witness(SplitSubalgebra.from_normals([normal]))
            assert in_b_plus(witness)

    def test_palindrome_test_matches_brute_force(self):
        """回文判定与遍历全部置换一致"""
        rng = random.Random(31)
        for n in (3, 4, 5):
            for _ in range(60):
                v = _random_traceless(rng, n, 2)
                h = SplitSubalgebra.from_normals([v])
                assert (palindromic_image(h) is not None) == _naive_palindromic(list(h.rows))

    def test_coverage_agrees_with_sampling_n4(self):
        """Benoist 判定与开锥中 10³ 个有理点的抽样一致"""
        rng = random.Random(41)
        normals = [_random_traceless(rng, 4, 3) for _ in range(25)]
        points_per_normal = 40
        for v in normals:
            h = SplitSubalgebra.from_normals([v])
            verdict = benoist_check(h).verdict
            sampled_miss = False
            for _ in range(points_per_normal):
                b2 = Fraction(rng.randint(1, 997), rng.randint(1, 31))
                b1 = b2 + Fraction(rng.randint(1, 997), rng.randint(1, 31))
                x = (b1, b2, -b2, -b1)
                if not _naive_member(x, list(h.rows)):
                    sampled_miss = True
                    break
            assert (verdict is BenoistVerdict.HOLDS) == sampled_miss, v


class TestSl2Obstruction:
    """SL(2,ℝ) 真作用障碍"""

    def test_counterexample_no_proper_sl2(self, counterexample_h):
        """7 个 A_φ 全是成员"""
        report = sl2_obstruction(counterexample_h)
        assert len(report.entries) == 7
        assert all(e.certificate.verdict is MembershipVerdict.MEMBER for e in report.entries)
        assert report.proper_sl2_exists is False
        assert report.verdict == "no_proper_sl2"
        assert CertificateReplayer.replay(report)

    def test_consistency_triangle(self, counterexample_h):
        """Benoist 成立且没有真 SL(2)"""
        assert benoist_check(counterexample_h).verdict is BenoistVerdict.HOLDS
        assert not sl2_obstruction(counterexample_h).proper_sl2_exists

    def test_another_hyperplane(self):
        """(4,2,0,-2,-4) 与像 (3,-1,-5,1,2) 正交"""
        h = _h((1, 2, 3, -1, -5))
        report = sl2_obstruction(h)
        top = report.entries[0]
        assert top.partition == "[5]"
        assert top.certificate.verdict is MembershipVerdict.MEMBER
        assert CertificateReplayer.replay(report)

    def test_zero_element_excluded(self):
        """n = 2：A_{[1^2]} = 0 是 member，A_{[2]} 不是，所以存在真作用"""
        report = sl2_obstruction(_h((1, -1)))
        verdicts = {e.partition: e.certificate.verdict for e in report.entries}
        assert verdicts == {"[2]": MembershipVerdict.NON_MEMBER, "[1^2]": MembershipVerdict.MEMBER}
        assert report.proper_sl2_exists is True


class TestKobayashiPair:
    """(𝔞_𝔩, 𝔞_𝔥) 的真作用判定"""

    def test_a_phi_line_not_proper(self, counterexample_h):
        """A_{[4,1]} 的直线与 𝔞_𝔥 的某个像相交"""
        certificate = kobayashi_pair_check([CartanPoint.of(3, 1, 0, -1, -3)], counterexample_h)
        assert certificate.verdict is PairVerdict.NOT_PROPER
        assert certificate.proper is False
        assert CertificateReplayer.replay(certificate)

    def test_self_not_proper(self, counterexample_h):
        """𝔞_𝔥 与自身相交"""
        certificate = kobayashi_pair_check(counterexample_h, counterexample_h)
        assert certificate.verdict is PairVerdict.NOT_PROPER
        assert CertificateReplayer.replay(certificate)

    def test_proper_line(self, counterexample_h):
        """(5,1,0,-1,-5) 的直线与所有像只交于零"""
        certificate = kobayashi_pair_check([CartanPoint.of(5, 1, 0, -1, -5)], counterexample_h)
        assert certificate.verdict is PairVerdict.PROPER
        assert certificate.proper is True
        assert CertificateReplayer.replay(certificate)

    def test_proper_records_every_image(self, counterexample_h):
        """真作用证书对 120 个像各给一个非零子式"""
        certificate = kobayashi_pair_check([CartanPoint.of(5, 1, 0, -1, -5)], counterexample_h)
        assert certificate.images_checked == 120
        assert len(certificate.images) == 120
        assert len({tuple(map(tuple, record.image)) for record in certificate.images}) == 120
        for record in certificate.images:
            moved = act(WeylElement.from_one_based(record.weyl), CartanPoint.of(5, 1, 0, -1, -5))
            assert moved == CartanPoint.of(*record.image[0])
            assert record.minor_rows == [0]
            assert record.minor == str(inner(moved, counterexample_h.normals[0]))
            assert record.minor != "0"

    def test_proper_with_two_normals(self):
        """𝔞_𝔥 = span{(1,-1,-1,1)}，子式从两个法向量中取一行"""
        h = _h((1, 1, -1, -1), (1, -1, 1, -1))
        l_span = [CartanPoint.of(3, 1, -1, -3)]
        certificate = kobayashi_pair_check(l_span, h)
        assert certificate.verdict is PairVerdict.PROPER
        assert all(len(record.minor_rows) == 1 for record in certificate.images)
        assert CertificateReplayer.replay(certificate)

    def test_degenerate(self, counterexample_h):
        """𝔞_𝔩 = 0 时为退化情形"""
        certificate = kobayashi_pair_check([CartanPoint.of(0, 0, 0, 0, 0)], counterexample_h)
        assert certificate.verdict is PairVerdict.DEGENERATE
        assert certificate.degenerate is True
        assert CertificateReplayer.replay(certificate)

    def test_line_matches_membership(self, counterexample_h):
        """一维 𝔞_𝔩 的真性等价于非成员"""
        rng = random.Random(3)
        for _ in range(40):
            x = CartanPoint.of(*_random_traceless(rng, 5, 4))
            proper = kobayashi_pair_check([x], counterexample_h).proper
            member = weyl_membership(x, counterexample_h).verdict is MembershipVerdict.MEMBER
            assert proper is not member

    def test_two_dimensional_l(self):
        """𝔞_𝔩 = span{(1,0,-1), (0,1,-1)} = 𝔞 与任何 𝔞_𝔥 ≠ 0 相交"""
        h = _h((1, 1, -2))
        certificate = kobayashi_pair_check(
            [CartanPoint.of(1, 0, -1), CartanPoint.of(0, 1, -1)], h
        )
        assert certificate.verdict is PairVerdict.NOT_PROPER
        assert CertificateReplayer.replay(certificate)
