"""作业流水线：读入系统、分派计算、生成报告。

流程：
  1. 解析输入文件或 fixture，合并命令行给出的 β / L
  2. 按命令调用 core.gkz / core.algebra 中的闭式或 Weyl-GB 路径
  3. verify 模式下同时运行 Weyl-GB 直接计算并比对
  4. 汇总为 JSON 报告（core.serial.packer）与若干行可读摘要

重计算放进 asyncio.to_thread；余法丛分量按面并发，结果按面序合并，保证输出确定。
"""

from __future__ import annotations

import asyncio
import time
import traceback
from dataclasses import dataclass, field
from typing import Callable

from loguru import logger
from sympy import Rational

from core.algebra import poly as P
from core.algebra.weyl import (
    ProjectiveWeight,
    divisorial_singular_locus,
    gr_ideal,
    initial_form,
    is_L_holonomic,
    left_groebner,
    singular_locus,
)
from core.config import EngineConfig, log_dir
from core.errors import InputError, LcharError, VerificationError
from core.gkz import binom, hyper
from core.gkz.geom import l_umbrella
from core.serial import packer
from core.serial.parser import SystemSpec, load_system

COMMANDS = (
    "umbrella", "toric", "charvar", "singlocus", "discriminant",
    "holonomic", "rankfinite", "grweyl", "witness",
)


@dataclass
class JobSpec:
    command: str
    input: str
    weight: ProjectiveWeight | None = None
    beta: tuple[Rational, ...] | None = None
    gkz: bool = False

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")


@dataclass
class ProgressEvent:
    """进度事件，供 CLI 消费。"""
    step: int
    total: int
    label: str
    status: str  # "running" | "done" | "error"
    message: str = ""


ProgressCallback = Callable[[ProgressEvent], None]


@dataclass
class JobResult:
    exit_code: int
    report: dict = field(default_factory=dict)
    summary: list[str] = field(default_factory=list)
    error: str = ""


class LcharPipeline:
    def __init__(self, config: EngineConfig, on_progress: ProgressCallback | None = None) -> None:
        self.config = config
        self.on_progress = on_progress or (lambda e: None)

    async def run(self, job: JobSpec) -> JobResult:
        """执行一个作业；异常按类型映射为退出码。"""
        log_fmt = "{time:HH:mm:ss.SSS} | {level:<7} | {message}"
        directory = log_dir()
        directory.mkdir(parents=True, exist_ok=True)
        sink_id = logger.add(
            directory / "lchar.log",
            level="DEBUG", encoding="utf-8", format=log_fmt,
            rotation="10 MB", retention=10,
        )
        logger.info("=== {} {} ===", job.command, job.input)
        logger.info("config  verify={} face_concurrency={} theta={}",
                    self.config.verify, self.config.face_concurrency, self.config.theta_sugar)
        start = time.monotonic()
        try:
            spec = load_system(job.input).with_overrides(job.beta, job.weight, self.config.theta_sugar)
            handler = getattr(self, f"_{job.command}")
            report, summary = await handler(spec, job)
            report = {"command": job.command, "input": spec.source, "kind": spec.kind, **report}
            logger.info("=== done {} {:.1f}s ===", job.command, time.monotonic() - start)
            return JobResult(0, report, summary)
        except LcharError as e:
            logger.error("{}  {}: {}", job.command, type(e).__name__, e)
            self.on_progress(ProgressEvent(0, 0, job.command, "error", str(e)))
            return JobResult(e.exit_code, error=f"{type(e).__name__}: {e}")
        except Exception as e:
            logger.error("{}  unexpected {}: {}\n{}", job.command, type(e).__name__, e, traceback.format_exc())
            self.on_progress(ProgressEvent(0, 0, job.command, "error", str(e)))
            return JobResult(1, error=f"{type(e).__name__}: {e}")
        finally:
            logger.remove(sink_id)

    def _emit(self, step: int, total: int, label: str, status: str = "running") -> None:
        self.on_progress(ProgressEvent(step, total, label, status))

    # --- 命令 -----------------------------------------------------------------

    async def _umbrella(self, spec: SystemSpec, job: JobSpec):
        pointed = spec.pointed()
        weight = spec.weight_or_order()
        self._emit(0, 1, "umbrella")
        umbrella = await asyncio.to_thread(l_umbrella, pointed, weight)
        self._emit(1, 1, "umbrella", "done")
        report = {"matrix": packer.matrix(pointed.matrix), "spans": pointed.spans,
                  "umbrella": packer.umbrella(umbrella)}
        summary = [f"faces:  {' '.join(str(f) for f in umbrella.faces)}",
                   f"facets: {' '.join(str(f) for f in umbrella.facets)}"]
        return report, summary

    async def _toric(self, spec: SystemSpec, job: JobSpec):
        matrix = spec.breve if spec.kind == "truncated" else spec.require_matrix()
        toric = await asyncio.to_thread(hyper.toric_ideal, matrix)
        gens = packer.ideal(toric)
        return {"matrix": packer.matrix(matrix), "toric_ideal": gens}, gens or ["0"]

    async def _charvar(self, spec: SystemSpec, job: JobSpec):
        weight = spec.weight_or_order()
        if spec.kind == "hypergeometric":
            pointed = spec.pointed()
            umbrella = await asyncio.to_thread(l_umbrella, pointed, weight)
            components = await self._conormals(pointed.matrix, umbrella.faces)
            if self.config.verify:
                await self._verify_union(spec.weyl_ideal(), weight, components)
            return self._components_report(weight, components, "umbrella")

        if spec.kind in ("binomial", "truncated"):
            system = spec.binomial()
            verdict = await asyncio.to_thread(binom.is_holonomic, system)
            if verdict.holonomic:
                components = await asyncio.to_thread(binom.char_variety_binomial, system, weight)
                if self.config.verify:
                    await self._verify_union(system.weyl_ideal, weight, components)
                return self._components_report(weight, components, "binomial")

        ideal = spec.weyl_ideal()
        self._emit(0, 1, "gr ideal")
        gr = await asyncio.to_thread(gr_ideal, ideal, weight)
        dim = await asyncio.to_thread(P.dimension, gr)
        self._emit(1, 1, "gr ideal", "done")
        report = {"weight": packer.weight(weight), "route": "weyl", "gr_ideal": packer.ideal(gr),
                  "dimension": dim, "holonomic": dim in (-1, ideal.n)}
        return report, [f"dimension {dim} (n = {ideal.n})", *packer.ideal(gr)]

    async def _conormals(self, matrix, faces) -> list[hyper.ConormalComponent]:
        semaphore = asyncio.Semaphore(self.config.face_concurrency)
        total = len(faces)
        done = 0

        async def one(face):
            nonlocal done
            async with semaphore:
                comp = await asyncio.to_thread(hyper.conormal_closure_ideal, matrix, face)
                done += 1
                self._emit(done, total, f"face {face}")
                return comp

        return list(await asyncio.gather(*(one(f) for f in faces)))

    async def _verify_union(self, ideal, weight, components) -> None:
        self._emit(0, 1, "verify")
        gr = await asyncio.to_thread(gr_ideal, ideal, weight)
        union = await asyncio.to_thread(hyper.union_ideal, components, ideal.n)
        agree = await asyncio.to_thread(P.same_radical, gr, union)
        self._emit(1, 1, "verify", "done")
        if not agree:
            raise VerificationError(
                f"components do not cut out Var(gr^L) for L={weight.describe()}"
            )

    def _components_report(self, weight, components, route: str):
        report = {"weight": packer.weight(weight), "route": route,
                  "components": packer.components(components)}
        summary = [f"{c.face}  dim={c.dimension}  <{', '.join(packer.ideal(c.ideal))}>" for c in components]
        return report, summary

    async def _singlocus(self, spec: SystemSpec, job: JobSpec):
        if job.gkz or spec.kind == "binomial":
            if job.gkz:
                pointed = spec.pointed()
                factors = await asyncio.to_thread(hyper.discriminant_factors, pointed)
                polys = hyper.distinct_factors(f.poly for f in factors)
                n = pointed.n
            else:
                system = spec.binomial()
                verdict = await asyncio.to_thread(binom.is_holonomic, system)
                if not verdict.holonomic:
                    return await self._singlocus_weyl(spec)
                polys = await asyncio.to_thread(binom.binomial_discriminant_factors, system)
                n = system.n
            product = hyper.squarefree_product(polys, hyper.x_ring(n))
            if self.config.verify:
                await self._verify_divisorial(spec, product)
            text = hyper.format_product(polys)
            report = {"route": "discriminants", "poly": P.format_poly(product), "factored": text,
                      "factors": [P.format_poly(p) for p in polys]}
            return report, [text]
        return await self._singlocus_weyl(spec)

    async def _singlocus_weyl(self, spec: SystemSpec):
        ideal = spec.weyl_ideal()
        self._emit(0, 1, "singular locus")
        sing = await asyncio.to_thread(singular_locus, ideal)
        self._emit(1, 1, "singular locus", "done")
        report = {"route": "weyl", "ideal": packer.ideal(sing), "whole_space": sing.is_zero()}
        return report, (["whole space (<0>)"] if sing.is_zero() else packer.ideal(sing))

    async def _verify_divisorial(self, spec: SystemSpec, product: P.Poly) -> None:
        if spec.kind == "hypergeometric" and not hyper.is_homogeneous_matrix(spec.require_matrix()):
            logger.warning("verify skipped: 1_n is not in the row span of A")
            return
        self._emit(0, 1, "verify")
        direct = await asyncio.to_thread(divisorial_singular_locus, spec.weyl_ideal())
        self._emit(1, 1, "verify", "done")
        if P.normalize(P.transfer(direct, product.ring)) != P.normalize(product):
            raise VerificationError(
                f"discriminant product {P.format_poly(product)} differs from the Weyl route "
                f"{P.format_poly(direct)}"
            )

    async def _discriminant(self, spec: SystemSpec, job: JobSpec):
        matrix = spec.require_matrix()
        disc = await asyncio.to_thread(hyper.a_discriminant, matrix)
        return {"discriminant": packer.discriminant(disc)}, [P.format_poly(disc.poly)]

    async def _holonomic(self, spec: SystemSpec, job: JobSpec):
        weight = spec.weight_or_order()
        if spec.kind in ("binomial", "truncated"):
            system = spec.binomial()
            verdict = await asyncio.to_thread(binom.is_holonomic, system)
            report = {"weight": packer.weight(weight), "route": "quasidegrees", **packer.verdict(verdict)}
            if self.config.verify:
                await asyncio.to_thread(binom.is_L_holonomic_binomial, system, weight, True)
                finite = await asyncio.to_thread(binom.holonomic_by_singular_locus, system)
                if finite != verdict.holonomic:
                    raise VerificationError(
                        f"holonomic={verdict.holonomic} but finite rank={finite}"
                    )
                report["verified"] = True
            return report, [f"holonomic: {str(verdict.holonomic).lower()}"]

        ideal = spec.weyl_ideal()
        if spec.kind == "hypergeometric":
            holonomic = True
            if self.config.verify:
                direct = await asyncio.to_thread(is_L_holonomic, ideal, weight)
                if not direct:
                    raise VerificationError(f"H_A(beta) is not L-holonomic for L={weight.describe()}")
            route = "umbrella"
        else:
            holonomic = await asyncio.to_thread(is_L_holonomic, ideal, weight)
            route = "weyl"
        report = {"weight": packer.weight(weight), "route": route, "holonomic": holonomic}
        return report, [f"holonomic: {str(holonomic).lower()}"]

    async def _rankfinite(self, spec: SystemSpec, job: JobSpec):
        report, _ = await self._singlocus_weyl(spec)
        finite = not report["whole_space"]
        report = {"finite_rank": finite, "singular_locus": report["ideal"]}
        return report, [f"finite rank: {str(finite).lower()}"]

    async def _grweyl(self, spec: SystemSpec, job: JobSpec):
        weight = spec.weight_or_order()
        ideal = spec.weyl_ideal()
        self._emit(0, 1, "left groebner")
        basis = await asyncio.to_thread(left_groebner, ideal, weight)
        gr = await asyncio.to_thread(gr_ideal, ideal, weight)
        dim = await asyncio.to_thread(P.dimension, gr)
        self._emit(1, 1, "left groebner", "done")
        forms = [P.format_poly(initial_form(g, weight)) for g in basis.generators]
        report = {"weight": packer.weight(weight), "groebner": packer.weyl_ideal(basis),
                  "initial_forms": forms, "gr_ideal": packer.ideal(gr), "dimension": dim}
        return report, [*packer.weyl_ideal(basis), f"dimension {dim}"]

    async def _witness(self, spec: SystemSpec, job: JobSpec):
        weight = spec.weight_or_order()
        if spec.kind == "truncated":
            witness = await asyncio.to_thread(hyper.torus_component_witness, spec.truncated(), weight)
        elif spec.kind == "binomial":
            witness = await asyncio.to_thread(binom.andean_witness, spec.binomial(), weight)
        else:
            raise InputError(f"{spec.source}: witness needs a truncated or binomial system")
        report = {"weight": packer.weight(weight), "witness": packer.witness(witness)}
        return report, [f"facet {witness.facet}  dim={witness.dimension}  expected={witness.expected_dimension}"]
