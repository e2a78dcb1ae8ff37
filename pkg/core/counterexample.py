"""
SL(5,ℝ) 反例的端到端验证

𝔞_𝔥 = (6,6,1,-4,-9)⊥。需要同时成立：
- dim 𝔞_𝔥 = 3
- 𝔟₊ ⊄ W·𝔞_𝔥（存在非交换的不连续群）
- 每个 A_φ 都在 W·𝔞_𝔥 中（不存在真的 SL(2,ℝ) 作用）

verify_counterexample() 逐条给出结论，任一条不符即整体失败。
"""

from typing import Callable

from core.criteria import SplitSubalgebra, benoist_check, sl2_obstruction, weyl_membership
from core.errors import ReplayError
from core.exact import format_scalar
from core.log import get_logger
from core.replay import CertificateReplayer
from core.root_data import CartanPoint, inner
from core.sl2_orbits import hyperbolic_directions
from core.types import (
    BenoistVerdict,
    ClauseResult,
    CounterexampleReport,
    Equation,
    MembershipVerdict,
)

logger = get_logger(__name__)

NORMAL = (6, 6, 1, -4, -9)
EXPECTED_DIMENSION = 3
EXPECTED_WITNESS_IMAGES = 60
EXPECTED_DIRECTIONS = 4

# A_φ 与法向量某个像正交的四个等式
ORTHOGONALITY = (
    ((3, 1, 0, -1, -3), (6, -9, -4, 6, 1)),
    ((2, 1, 0, -1, -2), (6, -4, -9, 6, 1)),
    ((1, 1, 0, -1, -1), (6, -9, 6, -4, 1)),
    ((1, 0, 0, 0, -1), (6, -9, -4, 1, 6)),
)

IRRATIONAL_WITNESS = ("sqrt2", "1", "0", "-1", "-sqrt2")


def counterexample_subalgebra() -> SplitSubalgebra:
    return SplitSubalgebra.from_normals([CartanPoint.of(*NORMAL)])


def _replays(certificate) -> tuple[bool, str]:
    try:
        CertificateReplayer.replay(certificate)
    except ReplayError as e:
        return False, f"回放失败: {e.message}"
    return True, "证书可回放"


def orthogonality_equations() -> list[Equation]:
    return [
        Equation(
            lhs=f"<{CartanPoint.of(*a)},{CartanPoint.of(*v)}>",
            value=format_scalar(inner(CartanPoint.of(*a), CartanPoint.of(*v))),
        )
        for a, v in ORTHOGONALITY
    ]


def scalar_multiple_notes(n: int) -> list[str]:
    """同一射线上的 A_φ 写成最短者的倍数，如 "[5] = 2×[3,2]" """
    notes = []
    for _, members in hyperbolic_directions(n):
        if len(members) < 2:
            continue
        base_element, base_multiple = min(members, key=lambda m: m[1])
        for element, multiple in members:
            if element is base_element:
                continue
            ratio = multiple / base_multiple
            notes.append(f"{element.source.label} = {ratio}×{base_element.source.label}")
    return notes


def verify_counterexample() -> CounterexampleReport:
    """跑完整条验证流程"""
    h = counterexample_subalgebra()
    clauses: list[ClauseResult] = []

    def clause(name: str, check: Callable[[], tuple[bool, str]]) -> None:
        passed, detail = check()
        clauses.append(ClauseResult(name=name, passed=passed, detail=detail))
        logger.info("clause_checked", clause=name, passed=passed)

    dimension = h.dim
    clause(
        "dimension",
        lambda: (dimension == EXPECTED_DIMENSION, f"dim 𝔞_𝔥 = {dimension}"),
    )

    benoist = benoist_check(h)

    def check_benoist() -> tuple[bool, str]:
        if benoist.verdict is not BenoistVerdict.HOLDS:
            return False, f"benoist_check = {benoist.verdict.value}，应为 holds"
        ok, detail = _replays(benoist)
        return ok, f"见证点 ({','.join(benoist.witness or [])})，{detail}"

    clause("benoist", check_benoist)

    irrational = weyl_membership(CartanPoint.of(*IRRATIONAL_WITNESS), h)

    def check_irrational() -> tuple[bool, str]:
        if irrational.verdict is not MembershipVerdict.NON_MEMBER:
            return False, "(sqrt2,1,0,-1,-sqrt2) 应为 non_member"
        if irrational.images_checked != EXPECTED_WITNESS_IMAGES:
            return False, f"穷举了 {irrational.images_checked} 个像，应为 {EXPECTED_WITNESS_IMAGES}"
        ok, detail = _replays(irrational)
        return ok, f"non_member，穷举 {irrational.images_checked} 个像，{detail}"

    clause("irrational_witness", check_irrational)

    orthogonality = orthogonality_equations()

    def check_orthogonality() -> tuple[bool, str]:
        nonzero = [e.lhs for e in orthogonality if e.value != "0"]
        if nonzero:
            return False, f"内积非零: {', '.join(nonzero)}"
        images = [v for _, v in ORTHOGONALITY]
        if any(sorted(v) != sorted(NORMAL) for v in images):
            return False, "有向量不是法向量的置换"
        return True, f"{len(orthogonality)} 个内积均为 0"

    clause("orthogonality", check_orthogonality)

    notes = scalar_multiple_notes(h.n)
    directions = hyperbolic_directions(h.n)

    def check_multiples() -> tuple[bool, str]:
        if len(directions) != EXPECTED_DIRECTIONS:
            return False, f"非零 A_φ 有 {len(directions)} 个方向，应为 {EXPECTED_DIRECTIONS}"
        if not any(note.startswith("[5] = ") and note.endswith("×[3,2]") for note in notes):
            return False, "[5] 的 A_φ 应为 [3,2] 的倍数"
        return True, "; ".join(notes)

    clause("scalar_multiples", check_multiples)

    sl2 = sl2_obstruction(h)

    def check_sl2() -> tuple[bool, str]:
        members = [e for e in sl2.entries if e.certificate.verdict is MembershipVerdict.MEMBER]
        if sl2.proper_sl2_exists or len(members) != len(sl2.entries):
            missing = [e.partition for e in sl2.entries if e not in members]
            return False, f"以下 A_φ 不在 W·𝔞_𝔥 中: {', '.join(missing)}"
        ok, detail = _replays(sl2)
        return ok, f"{len(members)} 个 A_φ 全部 member，{detail}"

    clause("sl2_obstruction", check_sl2)

    report = CounterexampleReport(
        passed=all(c.passed for c in clauses),
        clauses=clauses,
        dimension=dimension,
        orthogonality=orthogonality,
        scalar_multiples=notes,
        benoist=benoist,
        irrational_witness=irrational,
        sl2=sl2,
    )
    logger.info("counterexample_verified", passed=report.passed)
    return report
