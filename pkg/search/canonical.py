"""
候选法向量的规范化枚举

对称性：坐标置换（W）、整体取负（同一超平面）、x ↦ -w₀·x（反转并取负）。
后者是置换与取负的复合，所以等价类就是“多重集 + 取负”。
规范代表元 = 降序排列后的 v 与 -v 中字典序较大者。
"""

from itertools import combinations, combinations_with_replacement, permutations, product
from math import gcd
from typing import Iterator

from core.criteria import IntRows
from core.root_data import CartanPoint


def canonical_key(values: tuple[int, ...]) -> tuple[int, ...]:
    """单个法向量所在等价类的规范代表元"""
    positive = tuple(sorted(values, reverse=True))
    negative = tuple(sorted((-v for v in values), reverse=True))
    return max(positive, negative)


def canonical_vectors(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """每个等价类恰好一次（整数元组形式）"""
    for values in combinations_with_replacement(range(bound, -bound - 1, -1), n):
        if sum(values) != 0 or gcd(*values) != 1:
            continue
        if values == canonical_key(values):
            yield values


def canonical_normals(n: int, bound: int) -> Iterator[CartanPoint]:
    """迹零、分量在 [-bound, bound]、互素的整数向量，每个对称类一个代表"""
    for values in canonical_vectors(n, bound):
        yield CartanPoint.of(*values)


def primitive_vectors(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """迹零、互素、首个非零分量为正的全部整数向量（不去对称）"""
    for values in product(range(-bound, bound + 1), repeat=n):
        if sum(values) != 0 or gcd(*values) != 1:
            continue
        if next(v for v in values if v != 0) > 0:
            yield values


def tuple_key(rows: IntRows) -> IntRows:
    """
    法向量组在同时对称下的规范键

    对每种行顺序与逐行符号：把列按降序排好再转回行；取最大者。
    """
    best: IntRows = ()
    for ordering in permutations(rows):
        for signs in product((1, -1), repeat=len(rows)):
            signed = [tuple(s * v for v in row) for s, row in zip(signs, ordering)]
            columns = sorted(zip(*signed), reverse=True)
            candidate = tuple(zip(*columns))
            if candidate > best:
                best = candidate
    return best


def canonical_tuples(n: int, bound: int, codim: int = 1) -> Iterator[IntRows]:
    """
    codim 个两两不平行的法向量组成的候选，按同时对称去重

    codim = 1 时就是 canonical_vectors；否则第一个法向量取规范代表元，
    其余取首分量为正的本原向量。首分量为正的本原向量平行即相等，
    所以互不相同就是两两不平行；整体可以线性相关。
    """
    if codim == 1:
        for values in canonical_vectors(n, bound):
            yield (values,)
        return

    others = list(primitive_vectors(n, bound))
    seen: set[IntRows] = set()
    for first in canonical_vectors(n, bound):
        for rest in combinations(others, codim - 1):
            if first in rest:
                continue
            rows = (first, *rest)
            key = tuple_key(rows)
            if key in seen:
                continue
            seen.add(key)
            yield key
