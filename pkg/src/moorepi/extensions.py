"""Abelian extension problems 0 -> A -> X -> C -> 0 for 2-local groups.

``resolve_extension`` parametrizes extension classes by lift data: for each
cyclic summand Z/o_j{k_j} of C a chosen lift l_j satisfies o_j l_j = c_j with
c_j in A / o_j A.  That is Ext^1(C, A) coordinate by coordinate.
``enumerate_extensions`` is an independent oracle: it counts subgroups of
every abelian 2-group of the right order and converts the counts into
numbers of extension classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .abelian import (
    FgAbGroup,
    GroupElement,
    IsoType,
    element_order,
    ext1,
    group_from_presentation,
    hom_order,
    v2,
)


class Contradiction(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


KINDS = ("lift_order", "lift_min_order", "lift_double_equals", "splits", "does_not_split",
         "summand_splits_off", "has_summand")


@dataclass(frozen=True)
class ExtensionConstraint:
    """One conclusion about the extension, tied to generators by coordinates.

    ``element`` is a coordinate vector in C for the lift kinds and in A for
    ``summand_splits_off``.  ``value`` is the order 2^t for ``lift_order``
    (some lift has exactly this order) and ``lift_min_order`` (no lift has
    smaller order), an A-coordinate vector for ``lift_double_equals`` and an
    IsoType for ``has_summand`` (its cyclic factors occur in the middle group).
    """

    kind: str
    element: tuple[int, ...] | None = None
    value: int | tuple[int, ...] | None = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown constraint kind {self.kind!r}")

    def __str__(self) -> str:
        return self.label or self.kind


@dataclass(frozen=True)
class Candidate:
    iso: IsoType
    classes: tuple[tuple[tuple[int, ...], ...], ...]  # one lift datum tuple per cocycle class
    sub_names: tuple[str, ...]
    lift_names: tuple[str, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.classes)


@dataclass
class ExtensionCandidateSet:
    candidates: list[Candidate] = field(default_factory=list)

    @property
    def isos(self) -> set[IsoType]:
        return {c.iso for c in self.candidates}

    def unique(self) -> IsoType | None:
        isos = self.isos
        return next(iter(isos)) if len(isos) == 1 else None


# ------------------------------------------------------------ coset orders

def _coset_order_ranges(A: FgAbGroup, c: Sequence[int], o: int) -> list[tuple[int, int]] | None:
    """For the coset c + oA, per coordinate (min, max) of attainable orders.

    Orders are powers of two; a free coordinate that cannot be zero gives
    None (every element of the coset has infinite order).
    """
    out = []
    for ci, d in zip(c, A.moduli):
        if d == 0:
            if ci % o:
                return None
            out.append((1, 1))
            continue
        g = gcd(o, d)
        ci %= d
        if ci % g == 0:
            out.append((1, d // g))
        else:
            fixed = d // gcd(ci, d)
            out.append((fixed, fixed))
    return out


def coset_has_order(A: FgAbGroup, c: Sequence[int], o: int, target: int) -> bool:
    """Does c + oA contain an element of order exactly ``target``?"""
    ranges = _coset_order_ranges(A, c, o)
    if ranges is None:
        return False
    if any(lo > target for lo, _ in ranges):
        return False
    if target == 1:
        return True
    return any(lo <= target <= hi for lo, hi in ranges)


def coset_min_order(A: FgAbGroup, c: Sequence[int], o: int) -> int:
    """Smallest order of an element of c + oA (0 if all are of infinite order)."""
    ranges = _coset_order_ranges(A, c, o)
    if ranges is None:
        return 0
    return max((lo for lo, _ in ranges), default=1)


def coset_contains(A: FgAbGroup, c: Sequence[int], o: int, a: Sequence[int]) -> bool:
    for ci, ai, d in zip(c, a, A.moduli):
        g = o if d == 0 else gcd(o, d)
        if (ai - ci) % g:
            return False
    return True


# ------------------------------------------------------------ middle groups

def _torsion_part(C: FgAbGroup) -> list[int]:
    return list(C.torsion)


def middle_group(A: FgAbGroup, C: FgAbGroup, lifts: Sequence[Sequence[int]]) -> FgAbGroup:
    """X generated by A's basis and lifts l_j with o_j l_j = c_j (c_j in A)."""
    na, nc = A.rank, C.rank
    names = [f"A:{n}" for n in A.names] + [f"lift({n})" for n in C.names]
    rels = []
    for i, d in enumerate(A.moduli):
        if d:
            row = [0] * (na + nc)
            row[i] = d
            rels.append(row)
    for j, o in enumerate(C.torsion):
        row = [0] * (na + nc)
        for i, x in enumerate(lifts[j]):
            row[i] = -x
        row[na + j] = o
        rels.append(row)
    return group_from_presentation(names, rels, localize=True)


def _lift_element_multiple(C: FgAbGroup, lifts: Sequence[Sequence[int]], c: Sequence[int], na: int) -> tuple[int, tuple[int, ...]]:
    """For c in C return (o, o * (sum c_j l_j)) with o = ord(c); the multiple lies in A."""
    x = C.element(c)
    o = element_order(x)
    if o == 0:
        raise ValueError("lift constraints need a torsion element of C")
    acc = [0] * na
    for j, (cj, oj) in enumerate(zip(x.coords, C.torsion)):
        if cj:
            k = cj * o // oj
            for i, v in enumerate(lifts[j]):
                acc[i] += k * v
    return o, tuple(acc)


def _min_ok(A: FgAbGroup, c: Sequence[int], o: int, t: int) -> bool:
    """Every lift (order o times an element of c + oA) has order at least t."""
    mo = coset_min_order(A, c, o)
    return mo == 0 or o * mo >= t


def _has_factors(X: IsoType, Y: IsoType) -> bool:
    """Are Y's cyclic factors a sub-multiset of X's (necessary for a summand)?"""
    if Y.free_rank > X.free_rank:
        return False
    pool = list(X.torsion)
    for d in Y.torsion:
        if d not in pool:
            return False
        pool.remove(d)
    return True


def _is_pure_cyclic(X: FgAbGroup, y: Sequence[int]) -> bool:
    """Is the cyclic subgroup <y> a direct summand of X?"""
    y = X.reduce(y)
    e = element_order(X.element(y))
    if e == 1:
        return True
    top = max([v2(d) for d in X.torsion] + [0]) + 1
    bound = v2(e) if e else top
    for s in range(bound):
        z = [(1 << s) * t for t in y]
        p = 1 << (s + 1)
        divisible = True
        for zi, d in zip(X.reduce(z), X.moduli):
            g = p if d == 0 else gcd(p, d)
            if zi % g:
                divisible = False
                break
        if divisible:
            return False
    return True


def resolve_extension(
    A: FgAbGroup,
    C: FgAbGroup,
    constraints: Iterable[ExtensionConstraint] = (),
    bound: int = 1 << 14,
) -> ExtensionCandidateSet:
    """All middle-group iso types consistent with every constraint."""
    constraints = list(constraints)
    na = A.rank
    ts = list(C.torsion)
    # per-coordinate classes of A / o_j A
    ranges: list[list[tuple[int, ...]]] = []
    for o in ts:
        axes = [range(o if d == 0 else gcd(o, d)) for d in A.moduli]
        ranges.append([tuple(v) for v in product(*axes)])
    # single-generator lift constraints prune coordinates first
    residual = []
    for con in constraints:
        if con.kind in ("lift_order", "lift_min_order", "lift_double_equals") and con.element is not None:
            el = C.reduce(con.element)
            nz = [j for j, v in enumerate(el) if v]
            if len(nz) == 1 and nz[0] < len(ts) and el[nz[0]] == 1:
                j = nz[0]
                o = ts[j]
                if con.kind == "lift_order":
                    t = int(con.value)
                    keep = [c for c in ranges[j] if t % o == 0 and coset_has_order(A, c, o, t // o)]
                elif con.kind == "lift_min_order":
                    t = int(con.value)
                    keep = [c for c in ranges[j] if _min_ok(A, c, o, t)]
                else:
                    keep = [c for c in ranges[j] if coset_contains(A, c, o, con.value)]
                if not keep:
                    raise Contradiction(f"no extension satisfies {con}")
                ranges[j] = keep
                continue
        if con.kind == "splits":
            ranges = [[tuple(0 for _ in A.moduli)] if tuple(0 for _ in A.moduli) in r else [] for r in ranges]
            if any(not r for r in ranges):
                raise Contradiction(f"no extension satisfies {con}")
            continue
        residual.append(con)
    total = 1
    for r in ranges:
        total *= len(r)
    if total > bound:
        raise BoundExceeded(f"{total} extension classes exceed bound {bound}")
    by_iso: dict[IsoType, list] = {}
    zero = tuple(0 for _ in A.moduli)
    for lifts in product(*ranges):
        ok = True
        X = None
        for con in residual:
            if con.kind == "does_not_split":
                if all(c == zero for c in lifts):
                    ok = False
            elif con.kind == "lift_order":
                o, m = _lift_element_multiple(C, lifts, con.element, na)
                t = int(con.value)
                ok = t % o == 0 and coset_has_order(A, m, o, t // o)
            elif con.kind == "lift_min_order":
                o, m = _lift_element_multiple(C, lifts, con.element, na)
                ok = _min_ok(A, m, o, int(con.value))
            elif con.kind == "lift_double_equals":
                o, m = _lift_element_multiple(C, lifts, con.element, na)
                ok = coset_contains(A, m, o, con.value)
            elif con.kind == "has_summand":
                X = X or middle_group(A, C, lifts)
                ok = _has_factors(X.iso, con.value)
            elif con.kind == "summand_splits_off":
                X = X or middle_group(A, C, lifts)
                y = X.from_presentation(list(con.element) + [0] * C.rank).coords
                ok = _is_pure_cyclic(X, y)
            if not ok:
                break
        if not ok:
            continue
        X = X or middle_group(A, C, lifts)
        by_iso.setdefault(X.iso, []).append(tuple(lifts))
    if not by_iso:
        names = ", ".join(str(c) for c in residual) or "constraints"
        raise Contradiction(f"no extension satisfies {names}")
    out = ExtensionCandidateSet()
    for iso in sorted(by_iso, key=lambda t: (t.free_rank, t.torsion)):
        out.candidates.append(Candidate(iso, tuple(by_iso[iso]), A.names, tuple(f"lift({n})" for n in C.names)))
    return out


# ------------------------------------------------------------ oracle

def partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            out.append((k,) + rest)
    return out


def two_groups_of_order(order: int) -> list[IsoType]:
    e = v2(order)
    if 1 << e != order:
        raise ValueError("order must be a power of two")
    return [IsoType(0, tuple(1 << k for k in p)) for p in partitions(e)]


def aut_order(iso: IsoType) -> int:
    """|Aut| of a finite abelian 2-group by the Hillar-Rhea count."""
    p = 2
    es = sorted(v2(d) for d in iso.torsion)
    n = len(es)
    if n == 0:
        return 1
    out = 1
    for k in range(1, n + 1):
        dk = max(l for l in range(1, n + 1) if es[l - 1] == es[k - 1])
        ck = min(l for l in range(1, n + 1) if es[l - 1] == es[k - 1])
        out *= p ** dk - p ** (k - 1)
        out *= (p ** es[k - 1]) ** (n - dk)
        out *= (p ** (es[k - 1] - 1)) ** (n - ck + 1)
    return out


def _type_from_order_counts(orders: Sequence[int]) -> IsoType:
    """Recover a finite abelian 2-group from the multiset of element orders."""
    from collections import Counter

    n = len(orders)
    counts = Counter(orders)
    # |{x : 2^k x = 0}| = prod min(2^k, d_i); recover the d_i greedily
    e_max = max(v2(o) for o in orders) if n > 1 else 0
    omega = [sum(c for o, c in counts.items() if v2(o) <= k) for k in range(e_max + 1)]
    # number of cyclic factors of exponent > k is log2(omega[k+1]/omega[k])
    gt = [v2(omega[k + 1] // omega[k]) for k in range(e_max)]
    torsion = []
    for k in range(e_max):
        nxt = gt[k + 1] if k + 1 < e_max else 0
        torsion += [1 << (k + 1)] * (gt[k] - nxt)
    return IsoType(0, tuple(torsion))


class _Table:
    """Element table of a finite abelian 2-group with integer-coded elements."""

    def __init__(self, iso: IsoType):
        self.iso = iso
        self.mods = list(iso.torsion)
        self.size = iso.order
        self.elems = [()]
        for d in self.mods:
            self.elems = [e + (k,) for e in self.elems for k in range(d)]
        self.index = {e: i for i, e in enumerate(self.elems)}

    def add(self, i: int, j: int) -> int:
        a, b = self.elems[i], self.elems[j]
        return self.index[tuple((x + y) % d for x, y, d in zip(a, b, self.mods))]

    def order(self, i: int) -> int:
        out = 1
        for x, d in zip(self.elems[i], self.mods):
            if x:
                out = max(out, d // gcd(x, d))
        return out


@lru_cache(maxsize=None)
def _subgroup_profile(iso: IsoType) -> dict[tuple[IsoType, IsoType], int]:
    """Count subgroups S of X by (type of S, type of X/S)."""
    T = _Table(iso)
    n = T.size
    add = [[T.add(i, j) for j in range(n)] for i in range(n)]

    def close(bits: int, x: int) -> int:
        elems = [i for i in range(n) if bits >> i & 1]
        out = bits
        y = x
        while not out >> y & 1:
            for s in elems:
                out |= 1 << add[s][y]
            y = add[y][x]
        return out

    seen = {1}
    stack = [1]
    while stack:
        s = stack.pop()
        for x in range(n):
            if not s >> x & 1:
                t = close(s, x)
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    orders = [T.order(i) for i in range(n)]
    prof: dict[tuple[IsoType, IsoType], int] = {}
    for s in seen:
        members = [i for i in range(n) if s >> i & 1]
        sub_type = _type_from_order_counts([orders[i] for i in members])
        # quotient orders: least 2^k with 2^k x in S
        q_orders = []
        covered = 0
        for x in range(n):
            if covered >> x & 1:
                continue
            coset = 0
            for m in members:
                coset |= 1 << add[x][m]
            covered |= coset
            k, y = 1, x
            while not s >> y & 1:
                y = add[y][x]
                k += 1
            q_orders.append(k)
        q_type = _type_from_order_counts(q_orders)
        key = (sub_type, q_type)
        prof[key] = prof.get(key, 0) + 1
    return prof


def enumerate_extensions(A: FgAbGroup, C: FgAbGroup, bound: int = 1 << 12) -> dict[IsoType, int]:
    """Middle-group iso types with the number of extension classes for each.

    For each candidate X the number of subgroups S with S ~ A and X/S ~ C is
    counted by brute force; the classes with middle group X number
    N * |Aut A| * |Aut C| * |Hom(C, A)| / |Aut X| (orbit-stabilizer).
    """
    if not A.finite or not C.finite:
        raise ValueError("A and C must be finite")
    size = A.order * C.order
    if size > bound:
        raise BoundExceeded(f"|A||C| = {size} exceeds bound {bound}")
    a_iso, c_iso = A.iso, C.iso
    hom = hom_order(C, A)
    out: dict[IsoType, int] = {}
    for X in two_groups_of_order(size):
        N = _subgroup_profile(X).get((a_iso, c_iso), 0)
        if N:
            num = N * aut_order(a_iso) * aut_order(c_iso) * hom
            den = aut_order(X)
            if num % den:
                raise ArithmeticError("orbit count is not integral")
            out[X] = num // den
    return out


def enumerate_cocycle_classes(A: FgAbGroup, C: FgAbGroup, bound: int = 16) -> dict[IsoType, int]:
    """Raw normalized symmetric 2-cocycle enumeration (tiny groups only).

    Counts cocycles per middle-group type and divides by |B^2|.
    """
    if A.order * C.order > bound:
        raise BoundExceeded(f"|A||C| exceeds bound {bound}")
    TA, TC = _Table(A.iso), _Table(C.iso)
    na, nc = TA.size, TC.size
    pairs = [(x, y) for x in range(1, nc) for y in range(x, nc)]
    f: dict[tuple[int, int], int] = {}

    def val(x: int, y: int) -> int | None:
        if x == 0 or y == 0:
            return 0
        return f.get((x, y) if x <= y else (y, x))

    def consistent() -> bool:
        for x in range(nc):
            for y in range(nc):
                fxy = val(x, y)
                if fxy is None:
                    continue
                xy = TC.add(x, y)
                for z in range(nc):
                    a = val(xy, z)
                    b = val(y, z)
                    c = val(x, TC.add(y, z))
                    if a is None or b is None or c is None:
                        continue
                    if TA.add(fxy, a) != TA.add(b, c):
                        return False
        return True

    counts: dict[IsoType, int] = {}

    def middle_type() -> IsoType:
        orders = []
        for a in range(na):
            for c in range(nc):
                k, pa, pc = 1, a, c
                while not (pa == 0 and pc == 0):
                    fa = val(pc, c)
                    pa = TA.add(TA.add(pa, a), fa)
                    pc = TC.add(pc, c)
                    k += 1
                orders.append(k)
        return _type_from_order_counts(orders)

    def rec(i: int) -> None:
        if i == len(pairs):
            t = middle_type()
            counts[t] = counts.get(t, 0) + 1
            return
        for v in range(na):
            f[pairs[i]] = v
            if consistent():
                rec(i + 1)
        del f[pairs[i]]

    rec(0)
    coboundaries = na ** (nc - 1) // hom_order(C, A)
    return {t: n // coboundaries for t, n in counts.items()}
