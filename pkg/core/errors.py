"""
错误类型

所有可预期的失败都抛出 WeylProperError 的子类；CLI 据此映射退出码。
"""

from typing import Optional


class WeylProperError(Exception):
    """基础错误（带可读消息）"""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class BasisError(WeylProperError):
    """无理基或包络区间非法"""


class BasisMismatchError(WeylProperError):
    """两个带符号分量的标量来自不同的基"""


class UndecidedSignError(WeylProperError):
    """区间细化预算耗尽仍无法判定符号（绝不给出错误答案）"""

    def __init__(self, message: str, depth: int):
        self.depth = depth
        super().__init__(message)


class UnsupportedProductError(WeylProperError):
    """两个无理标量相乘会离开 ℚ-线性张成"""


class ScalarSyntaxError(WeylProperError):
    """精确标量文本解析失败（带位置）"""

    def __init__(self, message: str, position: int, text: Optional[str] = None):
        self.reason = message
        self.position = position
        self.text = text
        super().__init__(f"{message} (位置 {position})")


class CartanPointError(WeylProperError):
    """维数不符或迹非零"""


class WeylElementError(WeylProperError):
    """不是 {1..n} 上的置换"""


class PartitionError(WeylProperError):
    """分拆非法"""


class SubalgebraError(WeylProperError):
    """法向量为空、为零、无理、维数不符或重复平行"""


class PreconditionError(WeylProperError):
    """操作前置条件不满足"""


class ReplayError(WeylProperError):
    """证书回放失败"""


class SearchSpecError(WeylProperError):
    """搜索参数非法"""
