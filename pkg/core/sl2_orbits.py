"""
𝔰𝔩(2,ℝ) → 𝔰𝔩(n,ℝ) 同态的双曲元 A_φ

同态按分拆（Jordan 块大小）分类；A_φ 是 φ(diag(1,-1)) 所在伴随轨道与 𝔞₊ 的唯一交点：
每个块 d 贡献 d-1, d-3, …, 1-d，合并后降序排列。
只建模 A_φ 本身，不建模同态 φ 或其轨道。
"""

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any

from sympy.utilities.iterables import partitions as _sympy_partitions

from core.errors import PartitionError
from core.root_data import CartanPoint, orbit_size


@dataclass(frozen=True)
class Partition:
    """n 的分拆（弱递减正整数）"""
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(p < 1 for p in self.parts):
            raise PartitionError(f"分拆的每一部分必须 ≥ 1: {self.parts}")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise PartitionError(f"分拆必须弱递减: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def label(self) -> str:
        """带重数记号的标签，如 [3,1^2]、[2^2,1]"""
        counts = Counter(self.parts)
        chunks = []
        for part in sorted(counts, reverse=True):
            m = counts[part]
            chunks.append(str(part) if m == 1 else f"{part}^{m}")
        return "[" + ",".join(chunks) + "]"

    def __str__(self) -> str:
        return self.label


def parse_partition(text: str) -> Partition:
    """解析 "[4,1]"、"4,1"、"[3,1^2]" """
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts: list[int] = []
    for chunk in body.split(","):
        match = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", chunk)
        if match is None:
            raise PartitionError(f"无法解析分拆: {text!r}")
        part, multiplicity = int(match.group(1)), int(match.group(2) or 1)
        parts.extend([part] * multiplicity)
    return Partition(tuple(sorted(parts, reverse=True)))


@dataclass(frozen=True)
class HyperbolicElement:
    """分拆对应的双曲元 A_φ（整数坐标，支配，属于 𝔟₊）"""
    source: Partition
    point: CartanPoint


def partitions(n: int) -> list[Partition]:
    """n 的全部分拆，逆字典序：[n] 在前，[1ⁿ] 在后"""
    if n < 1:
        raise PartitionError(f"n 必须 ≥ 1，得到 {n}")
    result = []
    for counts in _sympy_partitions(n):
        parts = [part for part, m in counts.items() for _ in range(m)]
        result.append(Partition(tuple(sorted(parts, reverse=True))))
    return sorted(result, key=lambda p: p.parts, reverse=True)


def a_phi(p: Partition) -> HyperbolicElement:
    """每个块 d 展开为 d-1, d-3, …, 1-d，合并后降序"""
    values = sorted(
        (d - 1 - 2 * k for d in p.parts for k in range(d)),
        reverse=True,
    )
    if len(values) < 2:
        raise PartitionError(f"n 必须 ≥ 2: {p}")
    return HyperbolicElement(source=p, point=CartanPoint.of(*values))


def hyperbolic_set(n: int) -> list[HyperbolicElement]:
    """{A_φ}，顺序同 partitions(n)"""
    return [a_phi(p) for p in partitions(n)]


def hyperbolic_directions(n: int) -> list[tuple[CartanPoint, list[tuple[HyperbolicElement, Fraction]]]]:
    """
    非零 A_φ 按正射线分组

    W·𝔞_𝔥 是锥的并，成员关系只依赖射线；返回 [(本原方向, [(A_φ, 倍数), …])]，
    方向按 W-轨道大小升序（同大小按出现顺序）。
    """
    groups: dict[tuple[Fraction, ...], list[tuple[HyperbolicElement, Fraction]]] = {}
    primitive: dict[tuple[Fraction, ...], CartanPoint] = {}
    for element in hyperbolic_set(n):
        if element.point.is_zero:
            continue
        values = element.point.integer_entries()
        g = gcd(*values)
        key = tuple(Fraction(v, g) for v in values)
        groups.setdefault(key, []).append((element, Fraction(g)))
        primitive.setdefault(key, CartanPoint.of(*key))
    ordered = sorted(primitive, key=lambda k: orbit_size(primitive[k]))
    return [(primitive[k], groups[k]) for k in ordered]


# =============================================================================
# 表格输出
# =============================================================================

def format_diag(point: CartanPoint) -> str:
    return "diag(" + ",".join(point.to_strings()) + ")"


def render_table(n: int) -> str:
    """两列对齐表格：分拆 -> A_φ"""
    header = (f"Partition of {n}", "A_phi")
    rows = [(e.source.label, format_diag(e.point)) for e in hyperbolic_set(n)]
    width = max(len(header[0]), *(len(label) for label, _ in rows))
    lines = [f"{label:<{width}}  {value}" for label, value in [header, *rows]]
    return "\n".join(lines) + "\n"


def table_records(n: int) -> list[dict[str, Any]]:
    """表格的 JSON 形式"""
    return [
        {"partition": e.source.label, "parts": list(e.source.parts), "a_phi": e.point.to_strings()}
        for e in hyperbolic_set(n)
    ]
