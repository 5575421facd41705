"""内置示例系统，CLI 中可以用名字代替输入文件。

每个 fixture 是一个与 JSON 系统文件同构的 dict，交给 core.serial.parser 解析。
"""

from __future__ import annotations

import copy

A1 = [["1", "1", "1"]]
A2 = [["1", "1", "1"], ["0", "1", "2"]]

FIXTURES: dict[str, dict] = {
    "A1": {
        "description": "A = [1,1,1]",
        "A": A1,
        "beta": ["1/2"],
    },
    "A2": {
        "description": "A = [[1,1,1],[0,1,2]]，判别式 x2^2 - 4*x1*x3",
        "A": A2,
        "beta": ["1/2", "1/3"],
    },
    "cubic": {
        "description": "twisted cubic [[1,1,1,1],[0,1,2,3]]",
        "A": [["1", "1", "1", "1"], ["0", "1", "2", "3"]],
        "beta": ["1/2", "1/3"],
    },
    "square": {
        "description": "A = [[1,1],[0,1]]，判别式平凡",
        "A": [["1", "1"], ["0", "1"]],
        "beta": ["1/2", "1/3"],
    },
    "point": {
        "description": "A = [[1]]",
        "A": [["1"]],
        "beta": ["5"],
    },
    "example-x1": {
        "description": "D/<x1>，n = 2：有限秩但非 holonomic",
        "n": 2,
        "weyl": ["x1"],
    },
    "horn": {
        "description": "三个 Horn 型算子，ti = xi*di",
        "n": 3,
        "theta": True,
        "weyl": [
            "(t1+2*t2+t3+2)*t1 - x1*(t1+2*t2)*t1",
            "(t1+2*t2+t3+2)*(t1+2*t2+t3+1)*t2 + x2*(t1+2*t2)*(t1+2*t2+1)*t2",
            "(t1+2*t2+t3+2) + x3*t3",
        ],
    },
    "truncated": {
        "description": "截断系统 Ă = A2，A = [1,1,1]",
        "A": A1,
        "breve_A": A2,
        "beta": ["1/2"],
    },
    "binomial": {
        "description": "<d1^2 - d1*d2>，A = [1,1]",
        "A": [["1", "1"]],
        "ideal": ["d1^2 - d1*d2"],
        "beta": ["1/2"],
    },
    "andean": {
        "description": "<d1*d3 - d2^2>，A = [1,1,1]：Andean，非 holonomic",
        "A": A1,
        "ideal": ["d1*d3 - d2^2"],
        "beta": ["1/2"],
    },
}


def fixture(name: str) -> dict:
    """返回 fixture 的深拷贝，未知名字返回 KeyError。"""
    return copy.deepcopy(FIXTURES[name])


def fixture_names() -> list[str]:
    return list(FIXTURES)
