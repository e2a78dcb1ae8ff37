"""
运行配置

所有可调参数走环境变量（前缀 WEYLPROPER_）或 .env 文件，不写死在代码里。
"""

from enum import Enum
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class WitnessStrategy(str, Enum):
    """Benoist 见证点构造策略"""
    SYMBOLIC = "symbolic"  # 独立 √p 符号
    RATIONAL = "rational"  # 按高度搜索有理点


class Settings(BaseSettings):
    """全局配置"""

    model_config = SettingsConfigDict(
        env_prefix="WEYLPROPER_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    jobs: int = Field(default=1, ge=1, description="hunt 默认并行度（--jobs 缺省值）")
    sign_max_depth: int = Field(default=12, ge=0, le=24, description="符号判定的最大细化深度")
    basis_size: int = Field(default=8, ge=1, description="默认基中 √p 符号个数")
    witness_strategy: WitnessStrategy = Field(
        default=WitnessStrategy.SYMBOLIC, description="Benoist 见证点策略"
    )
    rational_witness_max_height: int = Field(
        default=64, ge=1, description="有理见证点搜索的最大高度"
    )
    log_level: str = Field(default="WARNING", description="日志级别")
    log_json: bool = Field(default=False, description="是否输出 JSON 日志")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """读取配置（进程内缓存）"""
    return Settings()
