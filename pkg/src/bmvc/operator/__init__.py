"""Operator 模块

BMVC 前向模型 Φ、伴随 Φᵀ 和 GAP 投影。
"""

from .bmvc_operator import BmvcOperator, apply, apply_adjoint, gap_project

__all__ = ["BmvcOperator", "apply", "apply_adjoint", "gap_project"]
