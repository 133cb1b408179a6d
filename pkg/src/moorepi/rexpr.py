"""Integer expressions in the exponent r and symbolic parameters.

Fact files describe orders, coefficients and case conditions as small
Python-syntax expressions, e.g. ``2**min(r+1, 3)`` or
``1 if r == 1 else 0``.  They are parsed with :mod:`ast` and walked against
a whitelist; nothing is ever passed to ``eval``.
"""
from __future__ import annotations

import ast
import operator
from functools import lru_cache
from typing import Mapping


class ExprError(ValueError):
    pass


def theta(r: int) -> int:
    """0 at r = 1 and 1 for r >= 2."""
    return 0 if r <= 1 else 1


def delta(r: int) -> int:
    """4, 2, 1 for r = 1, 2 and r >= 3."""
    return {1: 4, 2: 2}.get(r, 1)


def m(a: int, b: int) -> int:
    return min(a, b)


FUNCTIONS = {"min": min, "max": max, "m": m, "theta": theta, "delta": delta, "abs": abs}

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


@lru_cache(maxsize=4096)
def parse(text: str) -> ast.Expression:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"cannot parse {text!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        ok = isinstance(
            node,
            (ast.Expression, ast.BinOp, ast.UnaryOp, ast.USub, ast.UAdd, ast.Constant,
             ast.Name, ast.Load, ast.Call, ast.IfExp, ast.Compare, ast.BoolOp, ast.And,
             ast.Or, ast.Not, *_BINOPS, *_CMPOPS),
        )
        if not ok:
            raise ExprError(f"disallowed syntax {type(node).__name__} in {text!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, int):
            raise ExprError(f"only integer literals allowed in {text!r}")
        if isinstance(node, ast.Call) and not (
            isinstance(node.func, ast.Name) and node.func.id in FUNCTIONS and not node.keywords
        ):
            raise ExprError(f"unknown function in {text!r}")
    return tree


def names(text: str) -> set[str]:
    tree = parse(text)
    calls = {id(n.func) for n in ast.walk(tree) if isinstance(n, ast.Call)}
    return {n.id for n in ast.walk(tree) if isinstance(n, ast.Name) and id(n) not in calls}


def _walk(node: ast.AST, env: Mapping[str, int]) -> int:
    if isinstance(node, ast.Expression):
        return _walk(node.body, env)
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ExprError(f"unbound name {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _walk(node.operand, env)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.Not):
            return int(not v)
        return v
    if isinstance(node, ast.BinOp):
        a, b = _walk(node.left, env), _walk(node.right, env)
        if isinstance(node.op, ast.Pow) and b < 0:
            raise ExprError("negative exponent")
        return _BINOPS[type(node.op)](a, b)
    if isinstance(node, ast.Compare):
        left = _walk(node.left, env)
        for op, comp in zip(node.ops, node.comparators):
            right = _walk(comp, env)
            if not _CMPOPS[type(op)](left, right):
                return 0
            left = right
        return 1
    if isinstance(node, ast.BoolOp):
        vals = (_walk(v, env) for v in node.values)
        return int(all(vals) if isinstance(node.op, ast.And) else any(vals))
    if isinstance(node, ast.IfExp):
        return _walk(node.body, env) if _walk(node.test, env) else _walk(node.orelse, env)
    if isinstance(node, ast.Call):
        return FUNCTIONS[node.func.id](*(_walk(a, env) for a in node.args))
    raise ExprError(f"cannot evaluate {ast.dump(node)}")


def evaluate(text: str | int, env: Mapping[str, int]) -> int:
    if isinstance(text, bool):
        return int(text)
    if isinstance(text, int):
        return text
    return int(_walk(parse(text), env))


def holds(cond: str | None, env: Mapping[str, int]) -> bool:
    return True if cond in (None, "", "true") else bool(evaluate(cond, env))
