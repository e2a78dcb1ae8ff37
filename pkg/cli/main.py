"""
weylproper 命令行

子命令：verify-paper / table / check / hunt。
stdout 只输出结果（文本、单个 JSON 文档或 JSON-lines），日志走 stderr。

退出码：0 成功（hunt 有命中）；1 验证不符；2 用法或解析错误；3 hunt 无命中。
"""

import json
from typing import NoReturn, Optional

import click
from pydantic import ValidationError

from core.counterexample import verify_counterexample
from core.criteria import SplitSubalgebra, benoist_check, sl2_obstruction, weyl_membership
from core.errors import WeylProperError
from core.log import configure_logging, get_logger
from core.root_data import parse_cartan_point
from core.settings import WitnessStrategy, get_settings
from core.sl2_orbits import render_table, table_records
from core.types import BenoistVerdict, MembershipVerdict
from search.engine import SearchSpec, hunt as run_hunt

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NO_HITS = 3


def _fail(message: str, code: int = EXIT_USAGE) -> NoReturn:
    click.echo(f"错误: {message}", err=True)
    raise click.exceptions.Exit(code)


def _subalgebra(n: int, normals: tuple[str, ...]) -> SplitSubalgebra:
    points = [parse_cartan_point(text, n=n) for text in normals]
    return SplitSubalgebra.from_normals(points, n=n)


def _dump(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2)


@click.group()
@click.pass_context
def main(ctx: click.Context) -> None:
    """SL(n,ℝ)/H（H 分裂交换）上的两个真作用判据"""
    try:
        settings = get_settings()
    except ValidationError as e:
        _fail(f"配置非法: {e}")
    configure_logging(settings.log_level, settings.log_json)
    ctx.ensure_object(dict)


@main.command("verify-paper")
@click.option("--json", "as_json", is_flag=True, help="输出 JSON 报告")
def verify_paper(as_json: bool) -> None:
    """验证 SL(5,ℝ) 中 (6,6,1,-4,-9)⊥ 的反例"""
    report = verify_counterexample()
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        for clause in report.clauses:
            status = "PASS" if clause.passed else "FAIL"
            click.echo(f"[{status}] {clause.name}: {clause.detail}")
        click.echo("正交关系:")
        for equation in report.orthogonality:
            click.echo(f"  {equation.lhs} = {equation.value}")
        click.echo("方向归约:")
        for note in report.scalar_multiples:
            click.echo(f"  {note} (scalar multiple)")

    failure = report.first_failure
    if failure is not None:
        click.echo(f"验证失败: {failure.name}", err=True)
        raise click.exceptions.Exit(EXIT_MISMATCH)


@main.command()
@click.option("--n", "n", type=click.IntRange(min=2), required=True, help="矩阵阶数")
@click.option("--json", "as_json", is_flag=True, help="输出 JSON")
def table(n: int, as_json: bool) -> None:
    """分拆 -> A_φ 表"""
    if as_json:
        click.echo(_dump({"n": n, "rows": table_records(n)}))
    else:
        click.echo(render_table(n), nl=False)


@main.command()
@click.option("--n", "n", type=click.IntRange(min=2), required=True, help="矩阵阶数")
@click.option("--normal", "normals", multiple=True, required=True, help="法向量，如 6,6,1,-4,-9")
@click.option("--point", default=None, help="待判定的点，如 sqrt2,1,0,-1,-sqrt2")
@click.option(
    "--witness-strategy",
    type=click.Choice([s.value for s in WitnessStrategy]),
    default=None,
    help="Benoist 见证点策略（缺省读配置）",
)
@click.option("--json", "as_json", is_flag=True, help="输出 JSON")
def check(
    n: int,
    normals: tuple[str, ...],
    point: Optional[str],
    witness_strategy: Optional[str],
    as_json: bool,
) -> None:
    """单个子代数的判定：有 --point 时做成员判定，否则做 Benoist + SL(2) 判定"""
    try:
        h = _subalgebra(n, normals)
        x = parse_cartan_point(point, n=n) if point is not None else None
    except WeylProperError as e:
        _fail(e.message)

    if x is not None:
        certificate = weyl_membership(x, h)
        if as_json:
            click.echo(certificate.model_dump_json(indent=2))
            return
        click.echo(f"{x} w.r.t. {h}: {certificate.verdict.value}")
        if certificate.verdict is MembershipVerdict.MEMBER:
            click.echo(f"  weyl = {certificate.weyl}")
            for equation in certificate.equations:
                click.echo(f"  {equation.lhs} = {equation.value}")
        else:
            click.echo(f"  {certificate.images_checked} images exhausted")
        return

    strategy = WitnessStrategy(witness_strategy) if witness_strategy else None
    try:
        benoist = benoist_check(h, strategy)
    except WeylProperError as e:
        _fail(e.message)
    sl2 = sl2_obstruction(h)
    if as_json:
        click.echo(
            _dump({"benoist": benoist.model_dump(mode="json"), "sl2": sl2.model_dump(mode="json")})
        )
        return

    click.echo(f"benoist: {benoist.verdict.value}")
    if benoist.verdict is BenoistVerdict.HOLDS:
        click.echo(f"  witness = ({','.join(benoist.witness or [])})")
    else:
        click.echo(f"  weyl = {benoist.weyl}")
    click.echo(f"sl2: {sl2.verdict}")
    for entry in sl2.entries:
        click.echo(f"  {entry.partition:<10} ({','.join(entry.point)})  {entry.certificate.verdict.value}")


@main.command()
@click.option("--n", "n", type=int, required=True, help="矩阵阶数")
@click.option("--bound", type=int, required=True, help="法向量分量绝对值上界")
@click.option("--codim", type=int, default=1, show_default=True, help="法向量个数")
@click.option("--jobs", type=int, envvar="WEYLPROPER_JOBS", default=None, help="并行进程数")
@click.option("--limit", type=int, default=None, help="最多输出的命中数")
@click.option("--json", "as_json", is_flag=True, help="输出 JSON-lines")
def hunt(
    n: int, bound: int, codim: int, jobs: Optional[int], limit: Optional[int], as_json: bool
) -> None:
    """搜索 Benoist 条件成立但没有真 SL(2,ℝ) 作用的子代数"""
    if jobs is None:
        jobs = get_settings().jobs
    try:
        spec = SearchSpec.create(n=n, bound=bound, codim=codim, limit=limit, jobs=jobs)
    except WeylProperError as e:
        _fail(e.message)

    hits, summary = run_hunt(spec)
    for hit in hits:
        if as_json:
            click.echo(hit.model_dump_json())
        else:
            click.echo(" ; ".join("(" + ",".join(map(str, row)) + ")" for row in hit.normals))
    if as_json:
        click.echo(json.dumps({"summary": summary.model_dump(mode="json")}))
    else:
        click.echo(
            f"candidates={summary.candidates} palindrome_rejects={summary.palindrome_rejects} "
            f"sl2_rejects={summary.sl2_rejects} hits={summary.hits} "
            f"elapsed_ms={summary.elapsed_ms}" + (" truncated" if summary.truncated else ""),
            err=True,
        )

    if not hits:
        raise click.exceptions.Exit(EXIT_NO_HITS)


if __name__ == "__main__":
    main()
