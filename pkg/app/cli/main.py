"""lchar CLI 入口。

命令：
  lchar umbrella <系统>       L-umbrella 的面与 facet
  lchar toric <系统>          toric 理想 I_A
  lchar charvar <系统>        L-特征簇（各分量）
  lchar singlocus <系统>      奇点轨迹（--gkz 走判别式闭式）
  lchar discriminant <系统>   A-判别式
  lchar holonomic <系统>      holonomic / L-holonomic 判定
  lchar rankfinite <系统>     有限秩判定
  lchar grweyl <系统>         左 Gröbner 基与 gr^L 理想
  lchar witness <系统>        截断系统 / Andean 分量的环面见证
  lchar fixtures              列出内置示例系统

<系统> 可以是 JSON 文件路径，也可以是内置 fixture 名字。
"""

from __future__ import annotations

import asyncio
from typing import Optional

import typer
from dotenv import load_dotenv

load_dotenv()  # 自动加载当前目录的 .env 文件（不存在时静默忽略）

from loguru import logger
from rich.console import Console
from rich.markup import escape
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

from core.algebra.weyl import ProjectiveWeight
from core.config import EngineConfig, parse_vector, parse_weight_option
from core.errors import LcharError
from core.fixtures import FIXTURES
from core.pipeline import JobSpec, LcharPipeline, ProgressEvent
from core.serial import packer

app = typer.Typer(
    name="lchar",
    help="lchar: A-超几何与二项式 D-模的 L-特征簇、奇点轨迹与 holonomic 判定",
    add_completion=False,
)
console = Console()

# loguru 经由 Rich Console 输出，避免破坏进度条渲染
logger.remove(0)
logger.add(
    lambda msg: console.log(msg, end=""),
    format="<green>{time:HH:mm:ss}</green> | <level>{level:<7}</level> | {message}",
    level="WARNING",
    colorize=True,
)

SYSTEM = typer.Argument(..., help="系统描述 JSON 文件，或内置 fixture 名字")
WEIGHT = typer.Option(None, "--weight", "-w", help='权向量 "Lx;Ld" 或 "Lx,Ld"，如 "0,0,0;1,1,1"（默认阶数滤过）')
BETA = typer.Option(None, "--beta", "-b", help='参数 β，如 "1/2,1/3"（覆盖文件中的值）')
VERIFY = typer.Option(False, "--verify", help="同时用 Weyl-GB 直接计算交叉验证")
JSON = typer.Option(False, "--json", help="输出 JSON 报告")
THETA = typer.Option(False, "--theta", help="解析 Weyl 算子时 ti 表示 xi*di")


def _run(command: str, system: str, weight: Optional[str], beta: Optional[str],
         verify: bool, as_json: bool, theta: bool, gkz: bool = False) -> None:
    try:
        config = EngineConfig.from_env(verify=verify, theta_sugar=theta)
        job = JobSpec(
            command=command,
            input=system,
            weight=ProjectiveWeight(*parse_weight_option(weight)) if weight else None,
            beta=parse_vector(beta) if beta else None,
            gkz=gkz,
        )
    except LcharError as e:
        console.print(f"[red]{escape(f'{type(e).__name__}: {e}')}[/red]")
        raise typer.Exit(e.exit_code)

    if as_json:
        result = asyncio.run(LcharPipeline(config).run(job))
    else:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=console,
            transient=True,
        ) as progress:
            task = progress.add_task(command, total=None)

            def on_progress(event: ProgressEvent) -> None:
                if event.status == "error":
                    return
                progress.update(task, total=event.total or None, completed=event.step,
                                description=f"{command}  {event.label}")

            result = asyncio.run(LcharPipeline(config, on_progress).run(job))

    if result.exit_code != 0:
        console.print(f"[red]{escape(result.error)}[/red]")
        raise typer.Exit(result.exit_code)

    if as_json:
        typer.echo(packer.dumps(result.report), nl=False)
    else:
        for line in result.summary:
            console.print(line, highlight=False, markup=False)


@app.command()
def umbrella(system: str = SYSTEM, weight: Optional[str] = WEIGHT, json: bool = JSON) -> None:
    """计算 L-umbrella 的面格。"""
    _run("umbrella", system, weight, None, False, json, False)


@app.command()
def toric(system: str = SYSTEM, json: bool = JSON) -> None:
    """计算 toric 理想 I_A。"""
    _run("toric", system, None, None, False, json, False)


@app.command()
def charvar(system: str = SYSTEM, weight: Optional[str] = WEIGHT, beta: Optional[str] = BETA,
            verify: bool = VERIFY, json: bool = JSON, theta: bool = THETA) -> None:
    """计算 L-特征簇。"""
    _run("charvar", system, weight, beta, verify, json, theta)


@app.command()
def singlocus(system: str = SYSTEM, gkz: bool = typer.Option(False, "--gkz", help="用主 A-判别式闭式计算"),
              beta: Optional[str] = BETA, verify: bool = VERIFY, json: bool = JSON,
              theta: bool = THETA) -> None:
    """计算奇点轨迹。"""
    _run("singlocus", system, None, beta, verify, json, theta, gkz=gkz)


@app.command()
def discriminant(system: str = SYSTEM, json: bool = JSON) -> None:
    """计算 A-判别式 D_A。"""
    _run("discriminant", system, None, None, False, json, False)


@app.command()
def holonomic(system: str = SYSTEM, weight: Optional[str] = WEIGHT, beta: Optional[str] = BETA,
              verify: bool = VERIFY, json: bool = JSON, theta: bool = THETA) -> None:
    """判定 holonomic（二项式 / 截断系统）或 L-holonomic（其余）。"""
    _run("holonomic", system, weight, beta, verify, json, theta)


@app.command()
def rankfinite(system: str = SYSTEM, beta: Optional[str] = BETA, json: bool = JSON,
               theta: bool = THETA) -> None:
    """判定 D/I 是否有限秩。"""
    _run("rankfinite", system, None, beta, False, json, theta)


@app.command()
def grweyl(system: str = SYSTEM, weight: Optional[str] = WEIGHT, beta: Optional[str] = BETA,
           json: bool = JSON, theta: bool = THETA) -> None:
    """计算左 Gröbner 基、初始形式与 gr^L 理想。"""
    _run("grweyl", system, weight, beta, False, json, theta)


@app.command()
def witness(system: str = SYSTEM, weight: Optional[str] = WEIGHT, beta: Optional[str] = BETA,
            json: bool = JSON) -> None:
    """寻找与环面相交的特征簇分量。"""
    _run("witness", system, weight, beta, False, json, False)


@app.command()
def fixtures() -> None:
    """列出内置示例系统。"""
    table = Table(title="内置示例系统", show_header=True)
    table.add_column("名字", style="cyan")
    table.add_column("说明", style="white")
    for name, data in FIXTURES.items():
        table.add_row(name, data.get("description", ""))
    console.print(table)
