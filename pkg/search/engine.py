"""
搜索引擎

流程：
1. 枚举规范候选（search.canonical）
2. 候选按静态连续区间切给 jobs 个进程，各自做快速筛选
3. 合并后按规范键排序，只对命中者生成完整证书

快速筛选的顺序：先做回文可行性（多重集检查），
再按 W-轨道大小升序逐条检查 A_φ 射线的成员关系（整数内积）。
"""

import time
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from core.criteria import (
    IntRows,
    SplitSubalgebra,
    benoist_check,
    integer_images,
    integer_member,
    palindromic_rows,
    sl2_obstruction,
)
from core.errors import SearchSpecError
from core.log import get_logger
from core.settings import get_settings
from core.sl2_orbits import hyperbolic_directions
from core.types import BenoistCertificate, BenoistVerdict, Sl2Report
from search.canonical import canonical_tuples

logger = get_logger(__name__)


class SearchSpec(BaseModel):
    """搜索参数"""
    n: int = Field(..., ge=2, description="矩阵阶数")
    bound: int = Field(..., ge=1, description="法向量分量绝对值上界")
    codim: int = Field(default=1, ge=1, description="法向量个数")
    limit: Optional[int] = Field(default=None, ge=1, description="最多输出的命中数")
    jobs: int = Field(default_factory=lambda: get_settings().jobs, ge=1, description="并行进程数")

    @model_validator(mode="after")
    def _codim_fits(self) -> "SearchSpec":
        if self.codim > self.n - 1:
            raise ValueError(f"codim 必须 ≤ n-1 = {self.n - 1}，得到 {self.codim}")
        return self

    @classmethod
    def create(cls, **kwargs) -> "SearchSpec":
        """校验失败统一抛 SearchSpecError"""
        try:
            return cls(**kwargs)
        except ValidationError as e:
            problems = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
            raise SearchSpecError(f"搜索参数非法: {problems}") from None


class SearchHit(BaseModel):
    """命中：Benoist 条件成立，且所有 A_φ 都在 W·𝔞_𝔥 中"""
    normals: list[list[int]]
    benoist: BenoistCertificate
    sl2: Sl2Report

    @model_validator(mode="after")
    def _both_clauses(self) -> "SearchHit":
        if self.benoist.verdict is not BenoistVerdict.HOLDS or self.sl2.proper_sl2_exists:
            raise ValueError("命中必须满足 benoist holds 且 proper_sl2_exists = false")
        return self


class SearchSummary(BaseModel):
    """搜索摘要（JSON-lines 的最后一行）"""
    candidates: int = 0
    palindrome_rejects: int = 0
    sl2_rejects: int = 0
    hits: int = 0
    elapsed_ms: int = 0
    truncated: bool = False


class Outcome(str, Enum):
    """单个候选的筛选结果"""
    PALINDROME = "palindrome"
    SL2 = "sl2"
    HIT = "hit"


def screen(rows: IntRows, rays: tuple[tuple[int, ...], ...]) -> Outcome:
    """不出证书的快速判定；rays 为非零 A_φ 的本原方向"""
    if palindromic_rows(rows) is not None:
        return Outcome.PALINDROME
    images = integer_images(rows)
    for ray in rays:
        if not integer_member(ray, images):
            return Outcome.SL2
    return Outcome.HIT


def _rays(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(point.integer_entries() for point, _ in hyperbolic_directions(n))


def _screen_chunk(n: int, chunk: list[IntRows]) -> tuple[list[IntRows], int, int]:
    """进程池任务：返回 (命中, 回文拒绝数, SL2 拒绝数)"""
    rays = _rays(n)
    hits: list[IntRows] = []
    palindrome = sl2 = 0
    for rows in chunk:
        outcome = screen(rows, rays)
        if outcome is Outcome.PALINDROME:
            palindrome += 1
        elif outcome is Outcome.SL2:
            sl2 += 1
        else:
            hits.append(rows)
    return hits, palindrome, sl2


def partition_ranges(total: int, jobs: int) -> list[tuple[int, int]]:
    """[0, total) 切成 jobs 段连续区间，前 total % jobs 段多一个"""
    size, extra = divmod(total, jobs)
    ranges = []
    start = 0
    for k in range(jobs):
        end = start + size + (1 if k < extra else 0)
        if end > start:
            ranges.append((start, end))
        start = end
    return ranges


def build_hit(rows: IntRows) -> SearchHit:
    h = SplitSubalgebra.from_normals(rows)
    return SearchHit(
        normals=[list(r) for r in h.rows],
        benoist=benoist_check(h),
        sl2=sl2_obstruction(h),
    )


def hunt(spec: SearchSpec) -> tuple[list[SearchHit], SearchSummary]:
    """
    执行搜索

    输出顺序只取决于规范键，与 jobs 无关。超过 limit 的命中被截断并置 truncated。
    """
    started = time.perf_counter()
    candidates = list(canonical_tuples(spec.n, spec.bound, spec.codim))
    ranges = partition_ranges(len(candidates), spec.jobs)
    logger.info(
        "hunt_started",
        n=spec.n,
        bound=spec.bound,
        codim=spec.codim,
        jobs=spec.jobs,
        candidates=len(candidates),
    )

    chunks = [candidates[start:end] for start, end in ranges]
    if spec.jobs == 1 or len(chunks) <= 1:
        results = [_screen_chunk(spec.n, chunk) for chunk in chunks]
    else:
        with ProcessPoolExecutor(max_workers=spec.jobs) as executor:
            results = list(executor.map(_screen_chunk, [spec.n] * len(chunks), chunks))

    found: list[IntRows] = []
    summary = SearchSummary(candidates=len(candidates))
    for hits, palindrome, sl2 in results:
        found.extend(hits)
        summary.palindrome_rejects += palindrome
        summary.sl2_rejects += sl2
    found.sort()

    if spec.limit is not None and len(found) > spec.limit:
        found = found[: spec.limit]
        summary.truncated = True

    hits = [build_hit(rows) for rows in found]
    summary.hits = len(hits)
    summary.elapsed_ms = int((time.perf_counter() - started) * 1000)
    logger.info(
        "hunt_finished",
        hits=summary.hits,
        palindrome_rejects=summary.palindrome_rejects,
        sl2_rejects=summary.sl2_rejects,
        truncated=summary.truncated,
        elapsed_ms=summary.elapsed_ms,
    )
    return hits, summary
