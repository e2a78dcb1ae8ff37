"""
A_{n-1} 型限制根数据

𝔞 = 迹零对角矩阵（n 元组，坐标和为 0）；闭支配 Weyl 室 𝔞₊ = 弱递减向量；
Weyl 群 𝔖_n 按坐标置换作用；𝔟₊ = 𝔞₊ 中被 x ↦ -w₀·x 固定的锥。
内积取 Σ aᵢ·a′ᵢ（与 Killing 形式差一个正常数，只关心是否为零）。
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import factorial, prod
from typing import Iterable, Optional, Sequence, TypeVar, Union

from core.errors import CartanPointError, ScalarSyntaxError, WeylElementError
from core.exact import (
    ExactScalar,
    IrrationalBasis,
    Rational,
    Sign,
    add,
    compare,
    default_basis,
    format_scalar,
    mul,
    neg,
    parse_scalar,
    scale,
)

T = TypeVar("T")

ScalarLike = Union[int, Fraction, ExactScalar, str]


def _to_scalar(value: ScalarLike, basis: IrrationalBasis) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value, basis)
    return ExactScalar.rational(value, basis)


@dataclass(frozen=True)
class CartanPoint:
    """𝔞 中的点 diag(a₁,…,a_n)，构造时校验 Σ aᵢ = 0"""
    entries: tuple[ExactScalar, ...]

    def __post_init__(self) -> None:
        if len(self.entries) < 2:
            raise CartanPointError(f"n 必须 ≥ 2，得到 {len(self.entries)}")
        total = sum(self.entries, ExactScalar.rational(0, self.entries[0].basis))
        if not total.is_zero:
            raise CartanPointError(f"坐标和必须为 0，得到 {total}")

    @classmethod
    def of(cls, *values: ScalarLike, basis: Optional[IrrationalBasis] = None) -> "CartanPoint":
        """CartanPoint.of(6, 6, 1, -4, -9) / CartanPoint.of("sqrt2", 1, 0, -1, "-sqrt2")"""
        return cls.from_values(values, basis)

    @classmethod
    def from_values(
        cls, values: Iterable[ScalarLike], basis: Optional[IrrationalBasis] = None
    ) -> "CartanPoint":
        basis = basis or default_basis()
        return cls(tuple(_to_scalar(v, basis) for v in values))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def is_rational(self) -> bool:
        return all(e.is_rational for e in self.entries)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def rational_entries(self) -> tuple[Fraction, ...]:
        return tuple(e.rational_value for e in self.entries)

    def integer_entries(self) -> tuple[int, ...]:
        """整数点的坐标；非整数时报错"""
        values = self.rational_entries()
        if any(v.denominator != 1 for v in values):
            raise CartanPointError(f"{self} 不是整数点")
        return tuple(int(v) for v in values)

    def scaled(self, q: Rational) -> "CartanPoint":
        return CartanPoint(tuple(scale(q, e) for e in self.entries))

    def to_strings(self) -> list[str]:
        return [format_scalar(e) for e in self.entries]

    def __str__(self) -> str:
        return "(" + ",".join(self.to_strings()) + ")"


def parse_cartan_point(
    text: str, basis: Optional[IrrationalBasis] = None, n: Optional[int] = None
) -> CartanPoint:
    """
    解析 "6,6,1,-4,-9" 或 "sqrt2,1,0,-1,-sqrt2"

    标量语法错误的位置换算为整串中的位置；坐标和非零时拒绝。
    """
    basis = basis or default_basis()
    entries = []
    offset = 0
    for part in text.split(","):
        try:
            entries.append(parse_scalar(part, basis))
        except ScalarSyntaxError as e:
            raise ScalarSyntaxError(e.reason, offset + e.position, text) from None
        offset += len(part) + 1
    if n is not None and len(entries) != n:
        raise CartanPointError(f"需要 {n} 个坐标，得到 {len(entries)}: {text!r}")
    return CartanPoint(tuple(entries))


# =============================================================================
# Weyl 群 𝔖_n
# =============================================================================

@dataclass(frozen=True)
class WeylElement:
    """
    置换 i ↦ images[i]（内部从 0 开始，序列化时从 1 开始）

    左作用：act(w, x)[w(i)] = x[i]。
    """
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise WeylElementError(f"不是置换: {self.one_based()}")

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "WeylElement":
        return cls(tuple(i - 1 for i in images))

    @property
    def n(self) -> int:
        return len(self.images)

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.images]

    def compose(self, other: "WeylElement") -> "WeylElement":
        """(self ∘ other)(i) = self(other(i))"""
        if self.n != other.n:
            raise WeylElementError(f"阶数不符: {self.n} vs {other.n}")
        return WeylElement(tuple(self.images[j] for j in other.images))

    __mul__ = compose

    def inverse(self) -> "WeylElement":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return WeylElement(tuple(inv))

    def permute(self, values: Sequence[T]) -> tuple[T, ...]:
        """对任意序列做同样的坐标置换"""
        if len(values) != self.n:
            raise CartanPointError(f"维数不符: {len(values)} vs {self.n}")
        result: list = [None] * self.n
        for i, j in enumerate(self.images):
            result[j] = values[i]
        return tuple(result)


def act(w: WeylElement, x: CartanPoint) -> CartanPoint:
    """Weyl 元左作用：结果第 i 个坐标 = x 的第 w⁻¹(i) 个坐标"""
    return CartanPoint(w.permute(x.entries))


def inner(x: CartanPoint, y: CartanPoint) -> ExactScalar:
    """⟨x, y⟩ = Σ xᵢ·yᵢ；同一坐标两侧都无理时抛 UnsupportedProductError"""
    if x.n != y.n:
        raise CartanPointError(f"维数不符: {x.n} vs {y.n}")
    total = ExactScalar.rational(0, x.entries[0].basis)
    for a, b in zip(x.entries, y.entries):
        total = add(total, mul(a, b))
    return total


def _descending(x: CartanPoint) -> list[int]:
    """稳定降序排列下标"""
    entries = x.entries
    return sorted(range(x.n), key=cmp_to_key(lambda i, j: int(compare(entries[j], entries[i]))))


def dominant_representative(x: CartanPoint) -> tuple[CartanPoint, WeylElement]:
    """
    支配代表元 x₊ = act(w, x)（弱递减）

    重复坐标保持原顺序（稳定排序），w 为字典序最小者。
    """
    order = _descending(x)
    images = [0] * x.n
    for position, index in enumerate(order):
        images[index] = position
    w = WeylElement(tuple(images))
    return act(w, x), w


def is_dominant(x: CartanPoint) -> bool:
    return all(compare(a, b) != Sign.NEGATIVE for a, b in zip(x.entries, x.entries[1:]))


def minus_w0(x: CartanPoint) -> CartanPoint:
    """x ↦ -w₀·x：反转并取负"""
    return CartanPoint(tuple(neg(e) for e in reversed(x.entries)))


def b_plus_basis(n: int) -> list[CartanPoint]:
    """span(𝔟₊) 的有理基 eᵢ - e_{n+1-i}，i = 1..⌊n/2⌋"""
    if n < 2:
        raise CartanPointError(f"n 必须 ≥ 2，得到 {n}")
    basis = []
    for i in range(n // 2):
        values = [0] * n
        values[i] = 1
        values[n - 1 - i] = -1
        basis.append(CartanPoint.of(*values))
    return basis


def in_b_plus(x: CartanPoint) -> bool:
    """x ∈ 𝔟₊ ⟺ 弱递减且 -w₀·x = x"""
    return minus_w0(x) == x and is_dominant(x)


def orbit_size(x: CartanPoint) -> int:
    """W-轨道大小 n!/∏(重数)!"""
    counts = Counter(x.entries)
    return factorial(x.n) // prod(factorial(c) for c in counts.values())
