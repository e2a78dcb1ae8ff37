"""
证书回放

证书是可独立复核的：回放只读证书里的数据，用 root_data 的运算重新计算每一条
等式，不信任产生证书的判定过程。任何一处不符都抛 ReplayError 并指出是哪一条。
"""

from collections import Counter
from math import factorial, prod
from typing import Optional, Sequence, Union

from sympy import Matrix

from core.errors import ReplayError, WeylElementError
from core.exact import parse_scalar
from core.root_data import (
    CartanPoint,
    WeylElement,
    act,
    b_plus_basis,
    in_b_plus,
    inner,
    parse_cartan_point,
)
from core.sl2_orbits import a_phi, parse_partition, partitions
from core.types import (
    BenoistCertificate,
    BenoistVerdict,
    Certificate,
    CertificateKind,
    MembershipCertificate,
    MembershipVerdict,
    PairCertificate,
    PairVerdict,
    Sl2Report,
)

AnyCertificate = Union[MembershipCertificate, BenoistCertificate, Sl2Report, PairCertificate]


def _point(strings: Sequence[str]) -> CartanPoint:
    return parse_cartan_point(",".join(strings))


def _weyl(images: Optional[Sequence[int]], n: int, where: str) -> WeylElement:
    if images is None:
        raise ReplayError(f"{where}: 缺少 Weyl 元")
    try:
        w = WeylElement.from_one_based(images)
    except WeylElementError as e:
        raise ReplayError(f"{where}: {e.message}") from None
    if w.n != n:
        raise ReplayError(f"{where}: Weyl 元阶数 {w.n} 与 n={n} 不符")
    return w


def _expected_image_count(normals: Sequence[CartanPoint]) -> int:
    """法向量组不同同时像的个数 n!/∏(相同列的重数)!"""
    n = normals[0].n
    columns = Counter(zip(*(v.entries for v in normals)))
    return factorial(n) // prod(factorial(c) for c in columns.values())


def _column_multiset(rows: Sequence[CartanPoint]) -> Counter:
    return Counter(zip(*(v.entries for v in rows)))


class CertificateReplayer:
    """
    证书回放器

    replay() 按 kind 分发；成功返回 True，失败抛 ReplayError。
    """

    @staticmethod
    def replay(certificate: AnyCertificate) -> bool:
        if certificate.kind is CertificateKind.MEMBERSHIP:
            return CertificateReplayer.replay_membership(certificate)
        if certificate.kind is CertificateKind.BENOIST:
            return CertificateReplayer.replay_benoist(certificate)
        if certificate.kind is CertificateKind.SL2:
            return CertificateReplayer.replay_sl2(certificate)
        if certificate.kind is CertificateKind.PAIR:
            return CertificateReplayer.replay_pair(certificate)
        raise ReplayError(f"未知证书类型: {certificate.kind}")

    @staticmethod
    def _normals(certificate: Certificate) -> list[CartanPoint]:
        if not certificate.normals:
            raise ReplayError("证书缺少法向量")
        normals = [_point(v) for v in certificate.normals]
        if any(v.n != certificate.n for v in normals):
            raise ReplayError(f"法向量维数与 n={certificate.n} 不符")
        return normals

    @staticmethod
    def replay_membership(certificate: MembershipCertificate) -> bool:
        normals = CertificateReplayer._normals(certificate)
        x = _point(certificate.point)

        if certificate.verdict is MembershipVerdict.MEMBER:
            w = _weyl(certificate.weyl, certificate.n, "member")
            if len(certificate.equations) != len(normals):
                raise ReplayError(
                    f"member: 应有 {len(normals)} 条等式，证书记录 {len(certificate.equations)} 条"
                )
            moved = act(w, x)
            inverse = w.inverse()
            for index, (v, equation) in enumerate(zip(normals, certificate.equations)):
                value = inner(moved, v)
                if not value.is_zero:
                    raise ReplayError(f"member: <act(w,x), v{index + 1}> = {value} ≠ 0")
                lhs = f"<{x},{act(inverse, v)}>"
                if equation.lhs != lhs or not parse_scalar(equation.value).is_zero:
                    raise ReplayError(f"member: 第 {index + 1} 条等式应为 {lhs} = 0")
            return True

        expected = _expected_image_count(normals)
        if certificate.images_checked != expected or len(certificate.misses) != expected:
            raise ReplayError(
                f"non_member: 应穷举 {expected} 个像，证书记录 "
                f"{certificate.images_checked} 个检查 / {len(certificate.misses)} 条记录"
            )
        columns = _column_multiset(normals)
        seen = set()
        for miss in certificate.misses:
            rows = [_point(row) for row in miss.image]
            if len(rows) != len(normals) or _column_multiset(rows) != columns:
                raise ReplayError(f"non_member: {miss.image} 不是法向量组的同时像")
            key = tuple(tuple(row) for row in miss.image)
            if key in seen:
                raise ReplayError(f"non_member: 像 {miss.image} 重复")
            seen.add(key)
            if not 0 <= miss.normal_index < len(rows):
                raise ReplayError(f"non_member: 法向量下标 {miss.normal_index} 越界")
            value = inner(x, rows[miss.normal_index])
            if value.is_zero or value != parse_scalar(miss.value):
                raise ReplayError(
                    f"non_member: 像 {miss.image} 上内积为 {value}，证书记录 {miss.value}"
                )
        return True

    @staticmethod
    def replay_benoist(certificate: BenoistCertificate) -> bool:
        normals = CertificateReplayer._normals(certificate)
        n = certificate.n

        if certificate.verdict is BenoistVerdict.FAILS:
            w = _weyl(certificate.weyl, n, "fails")
            inverse = w.inverse()
            span = b_plus_basis(n)
            for index, v in enumerate(normals):
                image = act(inverse, v)
                if list(image.entries) != list(reversed(image.entries)):
                    raise ReplayError(f"fails: act(w⁻¹, v{index + 1}) = {image} 不是回文向量")
                for b in span:
                    if not inner(image, b).is_zero:
                        raise ReplayError(f"fails: act(w⁻¹, v{index + 1}) 与 {b} 不正交")
            return True

        if certificate.witness is None or certificate.witness_membership is None:
            raise ReplayError("holds: 缺少见证点或其成员证书")
        witness = _point(certificate.witness)
        if not in_b_plus(witness):
            raise ReplayError(f"holds: 见证点 {witness} 不在 𝔟₊ 中")
        membership = certificate.witness_membership
        if membership.verdict is not MembershipVerdict.NON_MEMBER:
            raise ReplayError("holds: 见证点的证书不是 non_member")
        if _point(membership.point) != witness or membership.normals != certificate.normals:
            raise ReplayError("holds: 成员证书与见证点或法向量不一致")
        return CertificateReplayer.replay_membership(membership)

    @staticmethod
    def replay_sl2(report: Sl2Report) -> bool:
        expected = partitions(report.n)
        if [e.partition for e in report.entries] != [p.label for p in expected]:
            raise ReplayError("sl2: 分拆列表与 n 的全部分拆不符")
        proper = False
        for entry in report.entries:
            point = a_phi(parse_partition(entry.partition)).point
            if _point(entry.point) != point or _point(entry.certificate.point) != point:
                raise ReplayError(f"sl2: {entry.partition} 的 A_φ 记录错误")
            if entry.certificate.normals != report.normals:
                raise ReplayError(f"sl2: {entry.partition} 的证书法向量不一致")
            CertificateReplayer.replay_membership(entry.certificate)
            if entry.certificate.verdict is MembershipVerdict.NON_MEMBER and not point.is_zero:
                proper = True
        if proper != report.proper_sl2_exists:
            raise ReplayError(f"sl2: proper_sl2_exists 应为 {proper}")
        return True

    @staticmethod
    def replay_pair(certificate: PairCertificate) -> bool:
        normals = CertificateReplayer._normals(certificate)
        span = [_point(row) for row in certificate.span]

        if certificate.verdict is PairVerdict.DEGENERATE:
            if span or certificate.proper or not certificate.degenerate:
                raise ReplayError("degenerate: 𝔞_𝔩 应为零且 proper = false")
            return True

        if certificate.verdict is PairVerdict.PROPER:
            return CertificateReplayer._replay_proper(certificate, normals, span)

        w = _weyl(certificate.weyl, certificate.n, "not_proper")
        if certificate.witness is None:
            raise ReplayError("not_proper: 缺少交向量")
        witness = _point(certificate.witness)
        if witness.is_zero:
            raise ReplayError("not_proper: 交向量为零")
        for index, v in enumerate(normals):
            if not inner(witness, v).is_zero:
                raise ReplayError(f"not_proper: 交向量与 v{index + 1} 不正交")
        moved = [act(w, b).rational_entries() for b in span]
        if Matrix([*moved, witness.rational_entries()]).rank() != Matrix(moved).rank():
            raise ReplayError("not_proper: 交向量不在 act(σ, 𝔞_𝔩) 中")
        return True

    @staticmethod
    def _replay_proper(
        certificate: PairCertificate, normals: list[CartanPoint], span: list[CartanPoint]
    ) -> bool:
        """逐像复核：像数完整、互不相同，每个像上 M[j][i] = ⟨σ·bᵢ, vⱼ⟩ 都有非零极大子式"""
        if not certificate.proper or certificate.degenerate or not span:
            raise ReplayError("proper: proper / degenerate / span 字段矛盾")
        if any(not b.is_rational for b in span):
            raise ReplayError("proper: 𝔞_𝔩 的基必须是有理向量")
        if Matrix([b.rational_entries() for b in span]).rank() != len(span):
            raise ReplayError("proper: 𝔞_𝔩 的基线性相关")

        expected = _expected_image_count(span)
        if certificate.images_checked != expected or len(certificate.images) != expected:
            raise ReplayError(
                f"proper: 应检查 {expected} 个像，证书记录 "
                f"{certificate.images_checked} 个检查 / {len(certificate.images)} 条记录"
            )
        seen = set()
        for record in certificate.images:
            w = _weyl(record.weyl, certificate.n, "proper")
            moved = [act(w, b) for b in span]
            if len(record.image) != len(span) or any(
                m != _point(row) for m, row in zip(moved, record.image)
            ):
                raise ReplayError(f"proper: {record.image} 不是 act(σ, 𝔞_𝔩 的基)")
            key = tuple(m.rational_entries() for m in moved)
            if key in seen:
                raise ReplayError(f"proper: 像 {record.image} 重复")
            seen.add(key)
            rows = record.minor_rows
            if len(rows) != len(span) or len(set(rows)) != len(rows):
                raise ReplayError(f"proper: 子式行 {rows} 不构成方阵")
            if not all(0 <= r < len(normals) for r in rows):
                raise ReplayError(f"proper: 子式行 {rows} 越界")
            minor = Matrix(
                [[inner(m, normals[r]).rational_value for m in moved] for r in rows]
            ).det()
            if minor == 0 or str(minor) != record.minor:
                raise ReplayError(f"proper: 像 {record.image} 上子式为 {minor}，证书记录 {record.minor}")
        return True
