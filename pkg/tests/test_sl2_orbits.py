"""
双曲元 A_φ 与分拆测试
"""

from fractions import Fraction
from pathlib import Path

import pytest

from core.errors import PartitionError
from core.root_data import CartanPoint, in_b_plus, is_dominant, minus_w0
from core.sl2_orbits import (
    Partition,
    a_phi,
    format_diag,
    hyperbolic_directions,
    hyperbolic_set,
    parse_partition,
    partitions,
    render_table,
    table_records,
)

GOLDEN = Path(__file__).parent / "golden" / "table_n5.txt"


class TestPartition:
    """分拆"""

    def test_labels(self):
        """指数记号标签"""
        assert Partition((3, 1, 1)).label == "[3,1^2]"
        assert Partition((2, 2, 1)).label == "[2^2,1]"
        assert Partition((5,)).label == "[5]"

    @pytest.mark.parametrize("text", ["[3,1^2]", "[3,1,1]", "3,1,1", " [ 3 , 1 ^ 2 ] "])
    def test_parse(self, text):
        """多种写法解析为同一分拆"""
        assert parse_partition(text) == Partition((3, 1, 1))

    def test_rejects_increasing(self):
        """部分必须不增"""
        with pytest.raises(PartitionError):
            Partition((1, 2))

    def test_rejects_garbage(self):
        """非数字部分被拒绝"""
        with pytest.raises(PartitionError):
            parse_partition("[3,x]")

    def test_counts(self):
        """分拆数 p(1..10)"""
        assert [len(partitions(n)) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]

    def test_order_n5(self):
        """n = 5 的分拆按逆字典序排列"""
        assert [p.label for p in partitions(5)] == [
            "[5]", "[4,1]", "[3,2]", "[3,1^2]", "[2^2,1]", "[2,1^3]", "[1^5]",
        ]


class TestAPhi:
    """A_φ 的性质"""

    def test_table_values_n5(self):
        """n = 5 的 A_φ 取值"""
        assert [e.point for e in hyperbolic_set(5)] == [
            CartanPoint.of(4, 2, 0, -2, -4),
            CartanPoint.of(3, 1, 0, -1, -3),
            CartanPoint.of(2, 1, 0, -1, -2),
            CartanPoint.of(2, 0, 0, 0, -2),
            CartanPoint.of(1, 1, 0, -1, -1),
            CartanPoint.of(1, 0, 0, 0, -1),
            CartanPoint.of(0, 0, 0, 0, 0),
        ]

    @pytest.mark.parametrize("n", range(2, 11))
    def test_invariants(self, n):
        """迹零（构造时已校验）、支配、-w₀ 不变、对分拆单射"""
        points = [e.point for e in hyperbolic_set(n)]
        for point in points:
            assert is_dominant(point)
            assert minus_w0(point) == point
        nonzero = [p for p in points if not p.is_zero]
        assert all(in_b_plus(p) for p in nonzero)
        assert len(set(points)) == len(points)

    def test_n_must_be_at_least_two(self):
        """n = 1 没有 A_φ"""
        with pytest.raises(PartitionError):
            a_phi(Partition((1,)))

    def test_directions_n5(self):
        """非零 A_φ 只有四个方向：[5] = 2×[3,2]，[3,1^2] = 2×[2,1^3]"""
        directions = hyperbolic_directions(5)
        assert [d for d, _ in directions] == [
            CartanPoint.of(1, 0, 0, 0, -1),
            CartanPoint.of(1, 1, 0, -1, -1),
            CartanPoint.of(2, 1, 0, -1, -2),
            CartanPoint.of(3, 1, 0, -1, -3),
        ]
        grouped = {str(d): [(e.source.label, m) for e, m in members] for d, members in directions}
        assert grouped["(2,1,0,-1,-2)"] == [("[5]", Fraction(2)), ("[3,2]", Fraction(1))]
        assert grouped["(1,0,0,0,-1)"] == [("[3,1^2]", Fraction(2)), ("[2,1^3]", Fraction(1))]


class TestTable:
    """表格输出"""

    def test_golden_n5(self):
        """与金文件逐字一致"""
        assert render_table(5) == GOLDEN.read_text(encoding="utf-8")

    def test_format_diag(self):
        """diag(...) 格式"""
        assert format_diag(CartanPoint.of(4, 2, 0, -2, -4)) == "diag(4,2,0,-2,-4)"

    def test_records(self):
        """JSON 记录字段"""
        records = table_records(5)
        assert len(records) == 7
        assert records[1] == {"partition": "[4,1]", "parts": [4, 1], "a_phi": ["3", "1", "0", "-1", "-3"]}
