"""异常层级，每类异常携带 CLI 退出码。"""

from __future__ import annotations


class LcharError(Exception):
    exit_code = 1


class InputError(LcharError, ValueError):
    """输入格式错误或前置条件不满足（如矩阵不 pointed）。"""
    exit_code = 1


class UnsupportedInputError(LcharError):
    """输入合法但超出支持范围（如需要单位根的特征）。"""
    exit_code = 2


class VerificationError(LcharError):
    """--verify 模式下闭式结果与 Weyl-GB 直接计算不一致。"""
    exit_code = 3


class WitnessNotFoundError(LcharError):
    """没有任何 facet 给出与环面相交的分量。"""
    exit_code = 1
