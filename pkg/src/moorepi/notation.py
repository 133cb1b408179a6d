"""Table notation for 2-local abelian groups.

A cyclic group of order k is written ``k``, t copies of it ``(k)^t``, a
2-local integers summand ``Z`` and direct sums are joined with ``+``:
``(2)^3 + 4 + 2^r``.  Table patterns may use r-expressions for orders and
multiplicities, e.g. ``(2)^(2+theta(r)) + 2^m(r,3)``.
"""
from __future__ import annotations

import re
from collections import Counter
from typing import Mapping

from .abelian import IsoType, is_power_of_two
from .rexpr import ExprError, evaluate


def format_iso(iso: IsoType) -> str:
    if not iso.torsion and not iso.free_rank:
        return "0"
    parts = []
    for d, k in sorted(Counter(iso.torsion).items()):
        parts.append(str(d) if k == 1 else f"({d})^{k}")
    if iso.free_rank:
        parts.append("Z" if iso.free_rank == 1 else f"(Z)^{iso.free_rank}")
    return " + ".join(parts)


def format_factors(iso: IsoType) -> str:
    """Ungrouped form used for extension candidate lists, e.g. ``2+2``."""
    parts = [str(d) for d in iso.torsion] + ["Z"] * iso.free_rank
    return "+".join(parts) or "0"


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [t.strip() for t in out]


_REPEAT = re.compile(r"^\((?P<base>.*)\)\^(?P<count>.+)$")


def _matching(text: str) -> int:
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0:
            return i
    return -1


def evaluate_pattern(text: str, env: Mapping[str, int] | None = None) -> IsoType:
    """Evaluate a table pattern to an iso type (orders of 1 are dropped)."""
    env = dict(env or {})
    torsion: list[int] = []
    free = 0
    text = text.strip()
    if text in ("0", ""):
        return IsoType()
    for term in _split_top(text):
        count_expr = "1"
        base = term
        if term.startswith("(") and _matching(term) < len(term) - 1:
            end = _matching(term)
            rest = term[end + 1 :].strip()
            if not rest.startswith("^"):
                raise ExprError(f"cannot read term {term!r}")
            base, count_expr = term[1:end], rest[1:].strip()
        count = evaluate(count_expr, env)
        if count < 0:
            raise ExprError(f"negative multiplicity in {term!r}")
        if base.strip() == "Z":
            free += count
            continue
        order = evaluate(base, env)
        if order == 1:
            continue
        if not is_power_of_two(order):
            raise ExprError(f"order {order} from {term!r} is not a power of 2")
        torsion.extend([order] * count)
    return IsoType(free, tuple(torsion))


def parse_iso(text: str) -> IsoType:
    """Parse concrete notation such as ``(2)^3 + 4`` or ``2+2``."""
    return evaluate_pattern(text, {})
