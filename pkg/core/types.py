"""
证书类型契约（CONTRACT_VERSION=1）

本模块定义所有判定过程输出的证书结构，是 JSON 输出与回放的契约基础。
字段名稳定：kind / n / normals / verdict / witness / weyl / equations / images_checked，
其余为各类证书的专有字段。标量一律以精确标量文本保存，Weyl 元从 1 开始编号。

所有类型均使用 Pydantic v2 实现，确保运行时验证与 JSON 序列化一致性。
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

CONTRACT_VERSION = 1


# =============================================================================
# 基础枚举
# =============================================================================

class CertificateKind(str, Enum):
    """证书类型"""
    MEMBERSHIP = "membership"
    BENOIST = "benoist"
    SL2 = "sl2"
    PAIR = "pair"


class MembershipVerdict(str, Enum):
    """x ∈ W·𝔞_𝔥 ?"""
    MEMBER = "member"
    NON_MEMBER = "non_member"


class BenoistVerdict(str, Enum):
    """𝔟₊ ⊄ W·𝔞_𝔥 ?"""
    HOLDS = "holds"
    FAILS = "fails"


class PairVerdict(str, Enum):
    """L 作用是否真"""
    PROPER = "proper"
    NOT_PROPER = "not_proper"
    DEGENERATE = "degenerate"


# =============================================================================
# 证书组成部分
# =============================================================================

class Equation(BaseModel):
    """一条可回放的等式：lhs 的精确值为 value"""
    lhs: str = Field(..., description="左侧表达式，如 <(1,1,0,-1,-1),(6,-9,6,-4,1)>")
    value: str = Field(..., description="精确值（标量文本）")


class ImageMiss(BaseModel):
    """非成员证书中的一条记录：某个法向量像上内积非零"""
    image: list[list[str]] = Field(..., description="法向量组的同时像（每个法向量一行）")
    normal_index: int = Field(..., ge=0, description="非零内积对应的法向量下标")
    value: str = Field(..., description="该内积的精确值")


class PairImage(BaseModel):
    """真作用证书中的一条记录：σ·B_𝔩 上 M[j][i] = ⟨σ·bᵢ, vⱼ⟩ 列满秩"""
    weyl: list[int] = Field(..., description="σ（从 1 开始的像数组）")
    image: list[list[str]] = Field(..., description="act(σ, bᵢ)，每个基向量一行")
    minor_rows: list[int] = Field(..., description="取出的法向量下标（从 0 开始），组成方阵")
    minor: str = Field(..., description="该方阵的行列式，非零")


class Certificate(BaseModel):
    """证书公共字段"""
    kind: CertificateKind = Field(..., description="证书类型")
    n: int = Field(..., ge=2, description="矩阵阶数")
    normals: list[list[str]] = Field(..., description="𝔞_𝔥 的法向量（规范整数形式）")
    verdict: str = Field(..., description="判定结果")
    witness: Optional[list[str]] = Field(None, description="见证点")
    weyl: Optional[list[int]] = Field(None, description="见证 Weyl 元（从 1 开始的像数组）")
    equations: list[Equation] = Field(default_factory=list, description="可回放等式")
    images_checked: int = Field(default=0, ge=0, description="检查过的不同像的个数")


class MembershipCertificate(Certificate):
    """
    x ∈ W·𝔞_𝔥 的证书

    member：weyl 为 w，使 act(w, x) ∈ 𝔞_𝔥，equations 为 ⟨x, act(w⁻¹, vⱼ)⟩ = 0；
    non_member：misses 列出每个不同像上的一个非零内积。
    """
    kind: CertificateKind = CertificateKind.MEMBERSHIP
    verdict: MembershipVerdict
    point: list[str] = Field(..., description="被判定的点")
    misses: list[ImageMiss] = Field(default_factory=list, description="非成员的穷举记录")


class BenoistCertificate(Certificate):
    """
    𝔟₊ ⊄ W·𝔞_𝔥 的证书

    holds：witness 为 𝔟₊ 中的点，witness_membership 为其非成员证书；
    fails：weyl 为 w，使每个 act(w⁻¹, vⱼ) 都是回文向量，equations 为回文等式。
    """
    kind: CertificateKind = CertificateKind.BENOIST
    verdict: BenoistVerdict
    witness_membership: Optional[MembershipCertificate] = Field(None, description="见证点的非成员证书")


class Sl2Entry(BaseModel):
    """单个分拆的 A_φ 判定"""
    partition: str = Field(..., description="分拆标签")
    point: list[str] = Field(..., description="A_φ")
    certificate: MembershipCertificate


class Sl2Report(Certificate):
    """全部 A_φ 对 𝔞_𝔥 的成员判定；verdict 为 proper_sl2 / no_proper_sl2"""
    kind: CertificateKind = CertificateKind.SL2
    entries: list[Sl2Entry] = Field(default_factory=list)
    proper_sl2_exists: bool = Field(..., description="是否存在非零 A_φ 不在 W·𝔞_𝔥 中")


class PairCertificate(Certificate):
    """
    (𝔞_𝔩, 𝔞_𝔥) 的真作用判定

    not_proper：weyl 为 σ，witness 为 act(σ, 𝔞_𝔩) ∩ 𝔞_𝔥 中的非零向量。
    proper：images 对每个不同的像 σ·B_𝔩 给出一个非零极大子式。
    """
    kind: CertificateKind = CertificateKind.PAIR
    verdict: PairVerdict
    span: list[list[str]] = Field(..., description="𝔞_𝔩 的有理基")
    proper: bool = Field(..., description="是否为真作用")
    degenerate: bool = Field(default=False, description="𝔞_𝔩 = 0")
    images: list[PairImage] = Field(default_factory=list, description="真作用的逐像记录")


# =============================================================================
# 验证报告
# =============================================================================

class ClauseResult(BaseModel):
    """验证流程中的一个条款"""
    name: str = Field(..., description="条款名")
    passed: bool = Field(..., description="是否通过")
    detail: str = Field(default="", description="说明")


class CounterexampleReport(BaseModel):
    """SL(5,ℝ) 反例的完整验证报告"""
    passed: bool
    clauses: list[ClauseResult]
    dimension: int = Field(..., description="dim 𝔞_𝔥")
    orthogonality: list[Equation] = Field(default_factory=list, description="四条正交关系")
    scalar_multiples: list[str] = Field(default_factory=list, description="A_φ 的方向归约")
    benoist: BenoistCertificate
    irrational_witness: MembershipCertificate
    sl2: Sl2Report

    @property
    def first_failure(self) -> Optional[ClauseResult]:
        return next((c for c in self.clauses if not c.passed), None)
