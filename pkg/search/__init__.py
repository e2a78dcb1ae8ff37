"""
搜索层

在整数法向量空间中寻找满足“Benoist 条件成立、但不存在真的 SL(2,ℝ) 作用”的子代数。
"""

from search.canonical import canonical_key, canonical_normals, canonical_tuples
from search.engine import SearchHit, SearchSpec, SearchSummary, hunt

__all__ = [
    "canonical_key",
    "canonical_normals",
    "canonical_tuples",
    "SearchHit",
    "SearchSpec",
    "SearchSummary",
    "hunt",
]
