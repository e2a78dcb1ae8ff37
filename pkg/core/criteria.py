"""
判定过程（带证书）

- weyl_membership：x ∈ W·𝔞_𝔥 ？
- benoist_check / benoist_witness：𝔟₊ ⊄ W·𝔞_𝔥 ？
- sl2_obstruction：每个 A_φ 对 𝔞_𝔥 的成员判定
- kobayashi_pair_check：act(σ, 𝔞_𝔩) ∩ 𝔞_𝔥 是否对所有 σ 平凡

约定：
1. 所有判定都只枚举法向量组的“不同同时像”，不盲目遍历 n! 个置换
2. 证书里报告的像是满足条件者中字典序最小的（按像的行比较）
3. 成员关系 ⟨x, σ·vⱼ⟩ = 0 只依赖系数，永远不需要符号判定
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

from sympy import Matrix
from sympy.utilities.iterables import multiset_permutations

from core.errors import BasisError, PreconditionError, SubalgebraError
from core.exact import ExactScalar, Rational, default_basis, format_scalar
from core.log import get_logger
from core.root_data import CartanPoint, WeylElement, inner
from core.settings import WitnessStrategy, get_settings
from core.sl2_orbits import hyperbolic_set
from core.types import (
    BenoistCertificate,
    BenoistVerdict,
    Equation,
    ImageMiss,
    MembershipCertificate,
    MembershipVerdict,
    PairCertificate,
    PairImage,
    PairVerdict,
    Sl2Entry,
    Sl2Report,
)

logger = get_logger(__name__)

IntRows = tuple[tuple[int, ...], ...]


# =============================================================================
# 整数向量工具
# =============================================================================

def primitive_integer(values: Sequence[Rational]) -> tuple[int, ...]:
    """
    有理向量的本原整数形式：通分、除以 gcd、首个非零分量为正

    零向量原样返回（全 0）。
    """
    fractions = [Fraction(v) for v in values]
    common = lcm(*(f.denominator for f in fractions))
    ints = [int(f * common) for f in fractions]
    g = gcd(*ints)
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    leading = next(v for v in ints if v != 0)
    if leading < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _rank(rows: Sequence[Sequence[Rational]]) -> int:
    if not rows:
        return 0
    return Matrix([[Fraction(v) for v in row] for row in rows]).rank()


def _to_fraction(value) -> Fraction:
    """sympy Rational -> Fraction"""
    return Fraction(int(value.p), int(value.q))


def _nullspace(rows: Sequence[Sequence[Rational]], width: int) -> list[tuple[Fraction, ...]]:
    """rows·c = 0 的有理解空间基"""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(width)) for i in range(width)]
    matrix = Matrix([[Fraction(v) for v in row] for row in rows])
    return [tuple(_to_fraction(c) for c in vector) for vector in matrix.nullspace()]


def _point(values: Sequence[Rational]) -> CartanPoint:
    return CartanPoint.of(*values)


def _vector_text(values: Sequence[Union[int, Fraction, ExactScalar]]) -> str:
    return "(" + ",".join(
        format_scalar(v) if isinstance(v, ExactScalar) else str(v) for v in values
    ) + ")"


# =============================================================================
# 分裂子代数
# =============================================================================

@dataclass(frozen=True)
class SplitSubalgebra:
    """
    𝔞_𝔥 = {x ∈ 𝔞 : ⟨x, vⱼ⟩ = 0 ∀j}

    normals 已规范化：迹零、互素整数、首个非零分量为正、两两不平行。
    法向量组整体可以线性相关，dim 按秩计算。
    直接构造请用 from_normals。
    """
    n: int
    normals: tuple[CartanPoint, ...]

    @classmethod
    def from_normals(
        cls,
        normals: Iterable[Union[CartanPoint, Sequence[Rational]]],
        n: Optional[int] = None,
    ) -> "SplitSubalgebra":
        """投影到 𝔞、通分、取本原形式；空、零、重复或平行的法向量被拒绝"""
        raw: list[tuple[Fraction, ...]] = []
        for normal in normals:
            if isinstance(normal, CartanPoint):
                if not normal.is_rational:
                    raise SubalgebraError(f"法向量必须是有理向量: {normal}")
                raw.append(normal.rational_entries())
            else:
                raw.append(tuple(Fraction(v) for v in normal))
        if not raw:
            raise SubalgebraError("法向量组不能为空（𝔞_𝔥 = 𝔞 的情形需显式建模）")

        size = n if n is not None else len(raw[0])
        if size < 2:
            raise SubalgebraError(f"n 必须 ≥ 2，得到 {size}")

        canonical: list[tuple[int, ...]] = []
        for values in raw:
            if len(values) != size:
                raise SubalgebraError(f"法向量维数不符: {len(values)} vs {size}")
            mean = sum(values, Fraction(0)) / size
            projected = primitive_integer([v - mean for v in values])
            if not any(projected):
                raise SubalgebraError(f"法向量投影到 𝔞 后为零: {_vector_text(values)}")
            if projected in canonical:
                # 本原形式首分量为正，平行即相等
                raise SubalgebraError(f"法向量重复或平行: {_vector_text(projected)}")
            canonical.append(projected)

        return cls(size, tuple(_point(v) for v in canonical))

    @property
    def rows(self) -> IntRows:
        return tuple(v.integer_entries() for v in self.normals)

    @property
    def dim(self) -> int:
        """dim 𝔞_𝔥 = (n-1) - rank(normals)"""
        return (self.n - 1) - _rank(self.rows)

    def basis(self) -> list[CartanPoint]:
        """𝔞_𝔥 的一组有理基（本原整数形式）"""
        rows = [list(r) for r in self.rows] + [[1] * self.n]
        return [_point(primitive_integer(v)) for v in _nullspace(rows, self.n)]

    def normal_strings(self) -> list[list[str]]:
        return [v.to_strings() for v in self.normals]

    def __str__(self) -> str:
        return " ∩ ".join(f"{v}⊥" for v in self.normals)


# =============================================================================
# 法向量组的同时像
# =============================================================================

@dataclass(frozen=True)
class NormalImage:
    """σ 及法向量组在 σ 下的像 act(σ, vⱼ)"""
    sigma: WeylElement
    rows: IntRows


def _arrangement_sigma(columns: Sequence[tuple[int, ...]], arrangement: Sequence[tuple[int, ...]]) -> WeylElement:
    """arrangement = σ 作用后的列序；相同的列按原顺序稳定分配"""
    queues: dict[tuple[int, ...], list[int]] = {}
    for index, column in enumerate(columns):
        queues.setdefault(column, []).append(index)
    images = [0] * len(columns)
    for position, column in enumerate(arrangement):
        images[queues[column].pop(0)] = position
    return WeylElement(tuple(images))


def _rows_of(arrangement: Sequence[tuple[int, ...]], count: int) -> IntRows:
    return tuple(tuple(column[j] for column in arrangement) for j in range(count))


@lru_cache(maxsize=4096)
def integer_images(rows: IntRows) -> tuple[NormalImage, ...]:
    """
    整数向量组的全部不同同时像，按行字典序升序

    同时像 = 列（每个坐标上的分量组）的多重集排列；
    个数为 n!/∏(相同列的重数)!。
    """
    count = len(rows)
    columns = list(zip(*rows))
    images = [
        NormalImage(_arrangement_sigma(columns, arrangement), _rows_of(arrangement, count))
        for arrangement in multiset_permutations(columns)
    ]
    images.sort(key=lambda image: image.rows)
    return tuple(images)


def normal_images(h: SplitSubalgebra) -> tuple[NormalImage, ...]:
    return integer_images(h.rows)


def integer_member(values: Sequence[int], images: Sequence[NormalImage]) -> bool:
    """整数点的快速成员判定（搜索用，不出证书）"""
    for image in images:
        if all(sum(a * b for a, b in zip(values, row)) == 0 for row in image.rows):
            return True
    return False


def palindromic_rows(rows: IntRows) -> Optional[NormalImage]:
    """
    使每个法向量同时成为回文向量的字典序最小的像；不存在时返回 None

    可行性：奇数重数的列值个数 ≤ n mod 2（多重集检查，不枚举）。
    """
    n = len(rows[0])
    columns = list(zip(*rows))
    counts = Counter(columns)
    odd = [column for column, c in counts.items() if c % 2 == 1]
    if len(odd) > n % 2:
        return None

    half = [column for column, c in sorted(counts.items()) for _ in range(c // 2)]
    best: Optional[IntRows] = None
    best_arrangement: Optional[list[tuple[int, ...]]] = None
    for left in multiset_permutations(half):
        arrangement = list(left) + odd + list(reversed(left))
        candidate = _rows_of(arrangement, len(rows))
        if best is None or candidate < best:
            best, best_arrangement = candidate, arrangement
    assert best is not None and best_arrangement is not None
    return NormalImage(_arrangement_sigma(columns, best_arrangement), best)


def palindromic_image(h: SplitSubalgebra) -> Optional[NormalImage]:
    return palindromic_rows(h.rows)


# =============================================================================
# 成员判定
# =============================================================================

def weyl_membership(x: CartanPoint, h: SplitSubalgebra) -> MembershipCertificate:
    """
    x ∈ W·𝔞_𝔥 ⟺ ∃σ: ⟨x, σ·vⱼ⟩ = 0 ∀j

    member：weyl = σ⁻¹（act(σ⁻¹, x) ∈ 𝔞_𝔥），equations 为 ⟨x, σ·vⱼ⟩ = 0；
    non_member：逐个像记录第一个非零内积。
    """
    if x.n != h.n:
        raise SubalgebraError(f"维数不符: 点为 {x.n}，子代数为 {h.n}")

    common = {"n": h.n, "normals": h.normal_strings(), "point": x.to_strings()}

    if x.is_zero:
        equations = [
            Equation(lhs=f"<{x},{v}>", value="0") for v in h.normals
        ]
        return MembershipCertificate(
            verdict=MembershipVerdict.MEMBER,
            weyl=WeylElement.identity(h.n).one_based(),
            equations=equations,
            images_checked=0,
            **common,
        )

    misses: list[ImageMiss] = []
    checked = 0
    for image in normal_images(h):
        checked += 1
        products = [inner(x, _point(row)) for row in image.rows]
        nonzero = next((j for j, p in enumerate(products) if not p.is_zero), None)
        if nonzero is None:
            logger.debug("membership_decided", verdict="member", images=checked)
            return MembershipCertificate(
                verdict=MembershipVerdict.MEMBER,
                weyl=image.sigma.inverse().one_based(),
                equations=[
                    Equation(lhs=f"<{x},{_vector_text(row)}>", value="0") for row in image.rows
                ],
                images_checked=checked,
                **common,
            )
        misses.append(
            ImageMiss(
                image=[[str(v) for v in row] for row in image.rows],
                normal_index=nonzero,
                value=format_scalar(products[nonzero]),
            )
        )

    logger.debug("membership_decided", verdict="non_member", images=checked)
    return MembershipCertificate(
        verdict=MembershipVerdict.NON_MEMBER,
        misses=misses,
        images_checked=checked,
        **common,
    )


# =============================================================================
# Benoist 条件
# =============================================================================

def _symbolic_witness(n: int) -> CartanPoint:
    """Σ τᵢ·(eᵢ - e_{n+1-i})，τ 取默认基中最大的 ⌊n/2⌋ 个 √p 并降序排列"""
    k = n // 2
    basis = default_basis()
    if len(basis.symbols) < k:
        raise BasisError(f"默认基只有 {len(basis.symbols)} 个符号，需要 {k} 个")
    taus = [ExactScalar.symbol(basis.symbols[i].name, basis=basis) for i in reversed(range(k))]
    middle = [ExactScalar.rational(0, basis)] * (n % 2)
    return CartanPoint(tuple(taus + middle + [-t for t in reversed(taus)]))


def _rational_candidates(n: int, max_height: int) -> Iterable[tuple[int, ...]]:
    """开锥 b₁ > … > b_k > 0 中的整数点，按高度 b₁ 再按字典序"""
    k = n // 2
    for height in range(1, max_height + 1):
        tails = sorted(tuple(reversed(c)) for c in combinations(range(1, height), k - 1))
        for tail in tails:
            half = (height, *tail)
            yield half + (0,) * (n % 2) + tuple(-b for b in reversed(half))


def _rational_witness(h: SplitSubalgebra, max_height: int) -> CartanPoint:
    images = normal_images(h)
    for values in _rational_candidates(h.n, max_height):
        if not integer_member(values, images):
            return _point(values)
    raise PreconditionError(f"高度 ≤ {max_height} 内没有找到有理见证点")


def benoist_witness(
    h: SplitSubalgebra, strategy: Optional[WitnessStrategy] = None
) -> CartanPoint:
    """
    𝔟₊ \\ W·𝔞_𝔥 中的一点

    symbolic：以 ℚ-无关符号为系数的一般点，恰好在 benoist_check 成立时不属于 W·𝔞_𝔥；
    rational：开锥中按高度搜索的最小整数点。
    """
    if palindromic_image(h) is not None:
        raise PreconditionError(f"{h} 不满足 Benoist 条件，见证点不存在")
    settings = get_settings()
    strategy = WitnessStrategy(strategy or settings.witness_strategy)
    if strategy is WitnessStrategy.RATIONAL:
        return _rational_witness(h, settings.rational_witness_max_height)
    return _symbolic_witness(h.n)


def benoist_check(
    h: SplitSubalgebra, strategy: Optional[WitnessStrategy] = None
) -> BenoistCertificate:
    """
    𝔟₊ ⊄ W·𝔞_𝔥 ？

    𝔟₊ 在 span(𝔟₊) 中有内点，有限个真子空间盖不住它，所以
    𝔟₊ ⊆ W·𝔞_𝔥 ⟺ 存在 σ 使所有 σ·vⱼ 都是回文向量。
    """
    common = {"n": h.n, "normals": h.normal_strings()}
    image = palindromic_image(h)

    if image is not None:
        equations = [
            Equation(lhs=f"{_vector_text(row)}[{i + 1}]-{_vector_text(row)}[{h.n - i}]", value="0")
            for row in image.rows
            for i in range(h.n // 2)
        ]
        logger.info("benoist_decided", verdict="fails", normals=str(h))
        return BenoistCertificate(
            verdict=BenoistVerdict.FAILS,
            weyl=image.sigma.inverse().one_based(),
            equations=equations,
            images_checked=1,
            **common,
        )

    witness = benoist_witness(h, strategy)
    membership = weyl_membership(witness, h)
    logger.info("benoist_decided", verdict="holds", normals=str(h), witness=str(witness))
    return BenoistCertificate(
        verdict=BenoistVerdict.HOLDS,
        witness=witness.to_strings(),
        witness_membership=membership,
        images_checked=membership.images_checked,
        **common,
    )


# =============================================================================
# SL(2,ℝ) 障碍
# =============================================================================

def sl2_obstruction(h: SplitSubalgebra) -> Sl2Report:
    """
    每个分拆的 A_φ 的成员证书

    非零 A_φ 不在 W·𝔞_𝔥 中 ⟹ 对应的 SL(2,ℝ) 作用是真的。
    A_{[1ⁿ]} = 0 照常列出但不计入 proper_sl2_exists。
    """
    entries = []
    proper = False
    for element in hyperbolic_set(h.n):
        certificate = weyl_membership(element.point, h)
        entries.append(
            Sl2Entry(
                partition=element.source.label,
                point=element.point.to_strings(),
                certificate=certificate,
            )
        )
        if certificate.verdict is MembershipVerdict.NON_MEMBER and not element.point.is_zero:
            proper = True

    logger.info("sl2_decided", normals=str(h), proper_sl2_exists=proper)
    return Sl2Report(
        n=h.n,
        normals=h.normal_strings(),
        verdict="proper_sl2" if proper else "no_proper_sl2",
        images_checked=len(normal_images(h)),
        entries=entries,
        proper_sl2_exists=proper,
    )


# =============================================================================
# 真作用判定
# =============================================================================

def span_basis(vectors: Sequence[CartanPoint]) -> list[tuple[int, ...]]:
    """有理张成集 -> 行空间的一组本原整数基"""
    rows = []
    for v in vectors:
        if not v.is_rational:
            raise SubalgebraError(f"𝔞_𝔩 的张成向量必须是有理向量: {v}")
        rows.append(v.rational_entries())
    if not rows or _rank(rows) == 0:
        return []
    reduced = Matrix([[Fraction(x) for x in row] for row in rows]).rref()[0]
    basis = []
    for i in range(reduced.rows):
        row = [_to_fraction(c) for c in reduced.row(i)]
        if any(row):
            basis.append(primitive_integer(row))
    return basis


def _full_rank_record(image: NormalImage, system: list[list[int]]) -> PairImage:
    """列满秩的凭据：转置后 rref 的主元列即一组线性无关的行"""
    _, pivots = Matrix(system).T.rref()
    minor_rows = list(pivots)
    minor = Matrix([system[r] for r in minor_rows]).det()
    return PairImage(
        weyl=image.sigma.one_based(),
        image=[[str(v) for v in row] for row in image.rows],
        minor_rows=minor_rows,
        minor=str(minor),
    )


def kobayashi_pair_check(
    l_algebra: Union[SplitSubalgebra, Sequence[CartanPoint]], h: SplitSubalgebra
) -> PairCertificate:
    """
    L 在 G/H 上的作用是否为真

    真 ⟺ 对所有 σ，act(σ, 𝔞_𝔩) ∩ 𝔞_𝔥 = {0}。
    对每个不同的像 σ·B_𝔩 求 M[j][i] = ⟨σ·bᵢ, vⱼ⟩ 的零空间：
    零空间非平凡 ⟺ rank[σB_𝔩 | B_𝔥] < dim 𝔞_𝔩 + dim 𝔞_𝔥。
    """
    vectors = l_algebra.basis() if isinstance(l_algebra, SplitSubalgebra) else list(l_algebra)
    for v in vectors:
        if v.n != h.n:
            raise SubalgebraError(f"维数不符: 𝔞_𝔩 为 {v.n}，𝔞_𝔥 为 {h.n}")
    basis = span_basis(vectors)
    common = {
        "n": h.n,
        "normals": h.normal_strings(),
        "span": [[str(x) for x in row] for row in basis],
    }

    if not basis:
        return PairCertificate(
            verdict=PairVerdict.DEGENERATE, proper=False, degenerate=True, **common
        )

    checked = 0
    records: list[PairImage] = []
    for image in integer_images(tuple(basis)):
        checked += 1
        system = [
            [sum(a * b for a, b in zip(moved, normal)) for moved in image.rows]
            for normal in h.rows
        ]
        kernel = _nullspace(system, len(basis))
        if not kernel:
            records.append(_full_rank_record(image, system))
            continue
        coefficients = kernel[0]
        vector = primitive_integer(
            [sum(c * row[i] for c, row in zip(coefficients, image.rows)) for i in range(h.n)]
        )
        witness = _point(vector)
        logger.debug("pair_decided", verdict="not_proper", images=checked)
        return PairCertificate(
            verdict=PairVerdict.NOT_PROPER,
            proper=False,
            weyl=image.sigma.one_based(),
            witness=witness.to_strings(),
            equations=[
                Equation(lhs=f"<{witness},{v}>", value=format_scalar(inner(witness, v)))
                for v in h.normals
            ],
            images_checked=checked,
            **common,
        )

    logger.debug("pair_decided", verdict="proper", images=checked)
    return PairCertificate(
        verdict=PairVerdict.PROPER,
        proper=True,
        images=records,
        images_checked=checked,
        **common,
    )
