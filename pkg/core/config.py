"""全局配置模型。"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from sympy import Rational

from core.errors import InputError


@dataclass
class EngineConfig:
    verify: bool = False            # 同时运行 Weyl-GB 直接计算作交叉验证
    face_concurrency: int = 1       # 每个面的共法分量可并发计算
    theta_sugar: bool = False       # 解析时把 t1..tn 展开为 xi*di

    @classmethod
    def from_env(cls, **overrides: object) -> "EngineConfig":
        """从环境变量读取默认值，显式参数优先。"""
        cfg = cls(face_concurrency=int(os.environ.get("LCHAR_FACE_CONCURRENCY", "1")))
        for key, value in overrides.items():
            setattr(cfg, key, value)
        if cfg.face_concurrency < 1:
            raise InputError(f"face concurrency must be positive, got {cfg.face_concurrency}")
        return cfg


def log_dir() -> Path:
    # 默认写到 ~/.local/share/lchar/，开发时可设置 LCHAR_LOG_DIR=log
    if "LCHAR_LOG_DIR" in os.environ:
        return Path(os.environ["LCHAR_LOG_DIR"])
    return Path.home() / ".local" / "share" / "lchar"


def parse_rational(text: str) -> Rational:
    """解析 "p"、"p/q" 形式的有理数（也接受 int）。"""
    if isinstance(text, int):
        return Rational(text)
    s = str(text).strip()
    try:
        if "/" in s:
            p, q = s.split("/", 1)
            if int(q) == 0:
                raise InputError(f"zero denominator in {s!r}")
            return Rational(int(p), int(q))
        return Rational(int(s))
    except ValueError as e:
        raise InputError(f"not a rational number: {s!r}") from e


def parse_vector(text: str) -> tuple[Rational, ...]:
    """"1,1/2,-3" → (1, 1/2, -3)。"""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise InputError("empty vector")
    return tuple(parse_rational(p) for p in parts)


def parse_weight_option(text: str) -> tuple[tuple[Rational, ...], tuple[Rational, ...]]:
    """--weight "Lx;Ld" 或 "Lx,Ld"（2n 个逗号分隔的分量，前一半为 L_x）→ (L_x, L_∂)。"""
    if ";" in text:
        lx, ld = text.split(";", 1)
        return parse_vector(lx), parse_vector(ld)
    entries = parse_vector(text)
    if len(entries) % 2:
        raise InputError(f"weight must look like 'Lx;Ld' or 2n entries 'Lx,Ld', got {text!r}")
    half = len(entries) // 2
    return entries[:half], entries[half:]
