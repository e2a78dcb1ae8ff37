"""
精确标量

形式无理基 {1, τ₁, τ₂, …} 上的 ℚ-线性组合。基被声明（而非证明）与 1 一起
ℚ-线性无关，于是“是否为零”就是系数检查；符号判定用有理区间细化，不依赖浮点。

默认基为 {√2, √3, √5, …}（前若干个素数的平方根），包络精确到 15 位小数。
"""

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Mapping, Optional, Union

from sympy import prime

from core.errors import (
    BasisError,
    BasisMismatchError,
    ScalarSyntaxError,
    UndecidedSignError,
    UnsupportedProductError,
)

Rational = Union[int, Fraction]

# 初始包络的十进制位数
_BASE_DIGITS = 15
# 第 depth 层细化的二进位数 = _BASE_BITS * 2**depth
_BASE_BITS = 50


class Sign(int, Enum):
    """符号"""
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


# =============================================================================
# 基符号与包络
# =============================================================================

@lru_cache(maxsize=None)
def sqrt_enclosure(radicand: int, depth: int = 0) -> tuple[Fraction, Fraction]:
    """
    √radicand 的有理包络 (lo, hi)，lo < √radicand < hi

    depth=0：十进制截断到 15 位；之后每层从上界做一步 Newton，
    再向外做二进舍入，精度位数翻倍。
    """
    if depth == 0:
        scale = 10 ** _BASE_DIGITS
        root = isqrt(radicand * scale * scale)
        return Fraction(root, scale), Fraction(root + 1, scale)

    lo, hi = sqrt_enclosure(radicand, depth - 1)
    scale = 1 << (_BASE_BITS * 2 ** depth)

    # AM-GM：(u + p/u)/2 ≥ √p；p/上界 ≤ √p
    upper = (hi + Fraction(radicand) / hi) / 2
    upper = Fraction(-((-upper.numerator * scale) // upper.denominator), scale)
    lower = Fraction(radicand) / upper
    lower = Fraction((lower.numerator * scale) // lower.denominator, scale)

    return max(lo, lower), min(hi, upper)


class BasisSymbol(ABC):
    """
    形式无理符号

    子类必须给出正的有理包络；可细化的符号随 depth 收紧包络。
    """

    name: str

    @abstractmethod
    def enclosure(self, depth: int) -> tuple[Fraction, Fraction]:
        """第 depth 层包络"""
        raise NotImplementedError

    @property
    def refinable(self) -> bool:
        return False


@dataclass(frozen=True)
class SqrtSymbol(BasisSymbol):
    """√p，p 为非完全平方的正整数"""
    name: str
    radicand: int

    def __post_init__(self) -> None:
        if self.radicand < 2 or isqrt(self.radicand) ** 2 == self.radicand:
            raise BasisError(f"{self.name}: 被开方数 {self.radicand} 必须是非完全平方的正整数")

    def enclosure(self, depth: int) -> tuple[Fraction, Fraction]:
        return sqrt_enclosure(self.radicand, depth)

    @property
    def refinable(self) -> bool:
        return True


@dataclass(frozen=True)
class FixedSymbol(BasisSymbol):
    """用户声明的符号，只有固定包络，不可细化"""
    name: str
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (self.lo > 0 and self.lo <= self.hi):
            raise BasisError(f"{self.name}: 包络必须满足 0 < lo ≤ hi")

    def enclosure(self, depth: int) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi


@dataclass(frozen=True)
class IrrationalBasis:
    """
    无理基

    隐含的第 0 个基元是有理单位 1；symbols[i] 对应基下标 i+1。
    与 1 一起的 ℚ-线性无关性是声明的公理。
    """
    symbols: tuple[BasisSymbol, ...]

    def __post_init__(self) -> None:
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise BasisError(f"符号名重复: {names}")

    def index_of(self, name: str) -> int:
        """符号名 -> 基下标（从 1 开始）"""
        for i, symbol in enumerate(self.symbols):
            if symbol.name == name:
                return i + 1
        raise KeyError(name)

    def symbol(self, index: int) -> BasisSymbol:
        return self.symbols[index - 1]

    @property
    def dimension(self) -> int:
        return len(self.symbols) + 1


@lru_cache(maxsize=None)
def default_basis(size: Optional[int] = None) -> IrrationalBasis:
    """前 size 个素数的平方根 {sqrt2, sqrt3, sqrt5, …}"""
    if size is None:
        from core.settings import get_settings

        size = get_settings().basis_size
    return IrrationalBasis(
        tuple(SqrtSymbol(f"sqrt{prime(k)}", prime(k)) for k in range(1, size + 1))
    )


# =============================================================================
# 精确标量
# =============================================================================

@dataclass(frozen=True, eq=False)
class ExactScalar:
    """
    精确标量（不可变）

    coeffs 为规范形式：按基下标升序、无零系数、Fraction 已约分。
    纯有理标量与任何基兼容。
    """
    basis: IrrationalBasis
    coeffs: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, basis: IrrationalBasis, coeffs: Mapping[int, Rational]) -> "ExactScalar":
        """从 {基下标: 系数} 构造并规范化"""
        canonical = []
        for index in sorted(coeffs):
            if not 0 <= index < basis.dimension:
                raise BasisError(f"基下标 {index} 越界（基维数 {basis.dimension}）")
            value = Fraction(coeffs[index])
            if value != 0:
                canonical.append((index, value))
        return cls(basis, tuple(canonical))

    @classmethod
    def rational(cls, value: Rational, basis: Optional[IrrationalBasis] = None) -> "ExactScalar":
        return cls.from_mapping(basis or default_basis(), {0: value})

    @classmethod
    def symbol(
        cls, name: str, coeff: Rational = 1, basis: Optional[IrrationalBasis] = None
    ) -> "ExactScalar":
        basis = basis or default_basis()
        return cls.from_mapping(basis, {basis.index_of(name): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_rational(self) -> bool:
        return all(index == 0 for index, _ in self.coeffs)

    @property
    def rational_value(self) -> Fraction:
        """纯有理标量的值"""
        if not self.is_rational:
            raise UnsupportedProductError(f"{self} 不是有理数")
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def coefficient(self, index: int) -> Fraction:
        return dict(self.coeffs).get(index, Fraction(0))

    def interval(self, depth: int = 0) -> tuple[Fraction, Fraction]:
        """第 depth 层包络下的取值区间"""
        lo = hi = Fraction(0)
        for index, coeff in self.coeffs:
            if index == 0:
                lo += coeff
                hi += coeff
                continue
            s_lo, s_hi = self.basis.symbol(index).enclosure(depth)
            a, b = coeff * s_lo, coeff * s_hi
            lo += min(a, b)
            hi += max(a, b)
        return lo, hi

    def _refinable(self) -> bool:
        return any(index > 0 and self.basis.symbol(index).refinable for index, _ in self.coeffs)

    # 运算符 ------------------------------------------------------------------

    def __add__(self, other: object) -> "ExactScalar":
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other, self.basis)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return neg(self)

    def __sub__(self, other: object) -> "ExactScalar":
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other, self.basis)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return add(self, neg(other))

    def __rsub__(self, other: object) -> "ExactScalar":
        return neg(self).__add__(other)

    def __mul__(self, other: object) -> "ExactScalar":
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.rational_value == other
        if not isinstance(other, ExactScalar):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        return self.is_rational or self.basis == other.basis

    def __hash__(self) -> int:
        # 与 __eq__ 一致：纯有理数与 int / Fraction 同哈希
        if self.is_rational:
            return hash(self.rational_value)
        return hash(self.coeffs)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"ExactScalar({format_scalar(self)!r})"


def _common_basis(x: ExactScalar, y: ExactScalar) -> IrrationalBasis:
    """两个标量运算时使用的基；纯有理一方让位"""
    if x.basis is y.basis or x.is_rational:
        return y.basis
    if y.is_rational or x.basis == y.basis:
        return x.basis
    raise BasisMismatchError(f"基不一致: {x!r} 与 {y!r}")


def add(x: ExactScalar, y: ExactScalar) -> ExactScalar:
    """逐系数相加"""
    basis = _common_basis(x, y)
    total: dict[int, Fraction] = dict(x.coeffs)
    for index, coeff in y.coeffs:
        total[index] = total.get(index, Fraction(0)) + coeff
    return ExactScalar.from_mapping(basis, total)


def neg(x: ExactScalar) -> ExactScalar:
    return ExactScalar(x.basis, tuple((index, -coeff) for index, coeff in x.coeffs))


def scale(q: Rational, x: ExactScalar) -> ExactScalar:
    """有理数乘标量"""
    q = Fraction(q)
    if q == 0:
        return ExactScalar(x.basis)
    return ExactScalar(x.basis, tuple((index, q * coeff) for index, coeff in x.coeffs))


def mul(x: ExactScalar, y: ExactScalar) -> ExactScalar:
    """乘积；至少一方必须是有理数，否则离开 ℚ-张成"""
    if x.is_rational:
        return scale(x.rational_value, y)
    if y.is_rational:
        return scale(y.rational_value, x)
    raise UnsupportedProductError(f"两个无理标量不能相乘: {x} · {y}")


def is_zero(x: ExactScalar) -> bool:
    return x.is_zero


def sign(x: ExactScalar, max_depth: Optional[int] = None) -> Sign:
    """
    符号判定

    零由系数直接判定；非零时逐层细化包络直到区间不含 0。
    预算耗尽抛 UndecidedSignError，不会给出错误答案。
    """
    if x.is_zero:
        return Sign.ZERO
    if max_depth is None:
        from core.settings import get_settings

        max_depth = get_settings().sign_max_depth

    refinable = x._refinable()
    depth = 0
    while True:
        lo, hi = x.interval(depth)
        if lo > 0:
            return Sign.POSITIVE
        if hi < 0:
            return Sign.NEGATIVE
        if not refinable or depth >= max_depth:
            raise UndecidedSignError(f"无法判定 {x} 的符号（深度 {depth}）", depth)
        depth += 1


def compare(x: ExactScalar, y: ExactScalar) -> Sign:
    """sign(x - y)"""
    return sign(add(x, neg(y)))


# =============================================================================
# 文本语法
# =============================================================================

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<sym>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+\-*/]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ScalarSyntaxError(f"非法字符 {text[bad]!r}（不接受小数）", bad, text)
        kind = match.lastgroup or ""
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    return tokens


def parse_scalar(text: str, basis: Optional[IrrationalBasis] = None) -> ExactScalar:
    """
    解析精确标量

    语法：项之间用 +/- 连接；项为 p、p/q、p/q*sym、sym、sym/q。
    例："3/2*sqrt2-1"、"-sqrt2"、"0"。
    """
    basis = basis or default_basis()
    tokens = _tokenize(text)
    if not tokens:
        raise ScalarSyntaxError("空表达式", 0, text)

    coeffs: dict[int, Fraction] = {}
    i = 0

    def peek(offset: int = 0) -> Optional[tuple[str, str, int]]:
        return tokens[i + offset] if i + offset < len(tokens) else None

    def expect_number() -> int:
        nonlocal i
        token = peek()
        if token is None:
            raise ScalarSyntaxError("缺少数字", len(text), text)
        if token[0] != "num":
            raise ScalarSyntaxError(f"此处应为数字，得到 {token[1]!r}", token[2], text)
        i += 1
        return int(token[1])

    def expect_symbol() -> int:
        nonlocal i
        token = peek()
        if token is None:
            raise ScalarSyntaxError("缺少符号名", len(text), text)
        if token[0] != "sym":
            raise ScalarSyntaxError(f"此处应为符号名，得到 {token[1]!r}", token[2], text)
        try:
            index = basis.index_of(token[1])
        except KeyError:
            raise ScalarSyntaxError(f"未知符号 {token[1]!r}", token[2], text) from None
        i += 1
        return index

    first = True
    while i < len(tokens):
        sign_value = 1
        token = peek()
        if token is not None and token[0] == "op" and token[1] in "+-":
            sign_value = -1 if token[1] == "-" else 1
            i += 1
        elif not first:
            assert token is not None
            raise ScalarSyntaxError(f"此处应为 + 或 -，得到 {token[1]!r}", token[2], text)
        first = False

        token = peek()
        if token is None:
            raise ScalarSyntaxError("表达式不完整", len(text), text)

        if token[0] == "num":
            coeff = Fraction(expect_number())
            nxt = peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                i += 1
                denominator = expect_number()
                if denominator == 0:
                    raise ScalarSyntaxError("分母为零", tokens[i - 1][2], text)
                coeff /= denominator
            nxt = peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "*":
                i += 1
                index = expect_symbol()
            else:
                index = 0
        elif token[0] == "sym":
            index = expect_symbol()
            coeff = Fraction(1)
            nxt = peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                i += 1
                denominator = expect_number()
                if denominator == 0:
                    raise ScalarSyntaxError("分母为零", tokens[i - 1][2], text)
                coeff /= denominator
        else:
            raise ScalarSyntaxError(f"意外的运算符 {token[1]!r}", token[2], text)

        coeffs[index] = coeffs.get(index, Fraction(0)) + sign_value * coeff

    return ExactScalar.from_mapping(basis, coeffs)


def format_scalar(x: ExactScalar) -> str:
    """规范文本：符号项按基序在前，有理项在后，如 "15*sqrt2+10" """
    if x.is_zero:
        return "0"
    parts = []
    rational_part = None
    for index, coeff in x.coeffs:
        if index == 0:
            rational_part = coeff
            continue
        name = x.basis.symbol(index).name
        if coeff == 1:
            parts.append(name)
        elif coeff == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{coeff}*{name}")
    if rational_part is not None:
        parts.append(str(rational_part))

    text = parts[0]
    for part in parts[1:]:
        text += part if part.startswith("-") else f"+{part}"
    return text
