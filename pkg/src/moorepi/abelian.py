"""Exact linear algebra over finitely generated abelian 2-local groups.

Integer matrices are plain lists of rows of Python ints.  A group is kept in
canonical form: torsion invariant factors (powers of 2, divisibility chain)
followed by free rank.  Coordinates of elements are tuples in that basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

IntMatrix = list[list[int]]


class OddTorsion(ValueError):
    pass


class ComposabilityError(ValueError):
    pass


class NotWellDefined(ValueError):
    pass


# ---------------------------------------------------------------- matrices

def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> IntMatrix:
    return [[0] * n for _ in range(m)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    if any(len(row) != inner for row in a):
        raise ValueError("matrix shapes do not chain")
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with M = U*S*V, U and V unimodular, S diagonal.

    The diagonal is nonnegative and forms a divisibility chain.  Pivots are
    chosen by minimal absolute value, scanning row-major, so the output is
    deterministic.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    S = [list(row) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            S[i], S[j] = S[j], S[i]
            for row in U:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in S:
                row[i], row[j] = row[j], row[i]
            V[i], V[j] = V[j], V[i]

    def add_row(dst: int, src: int, c: int) -> None:
        # S <- E S with E = I + c e_{dst,src}; U <- U E^{-1}
        if c:
            rs, rd = S[src], S[dst]
            for j in range(n):
                rd[j] += c * rs[j]
            for row in U:
                row[src] -= c * row[dst]

    def add_col(dst: int, src: int, c: int) -> None:
        # S <- S F with F = I + c e_{src,dst}; V <- F^{-1} V
        if c:
            for row in S:
                row[dst] += c * row[src]
            vs, vd = V[src], V[dst]
            for j in range(n):
                vs[j] -= c * vd[j]

    def negate_row(i: int) -> None:
        S[i] = [-x for x in S[i]]
        for row in U:
            row[i] = -row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = S[i][j]
                    if v and (best is None or abs(v) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, S, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            negate_row(t)
    return U, S, V


def invert_unimodular(a: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Z)."""
    n = len(a)
    m = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        # Euclid down the column until a single nonzero entry remains
        while True:
            rows = [i for i in range(c, n) if m[i][c]]
            if not rows:
                raise ValueError("matrix is singular")
            piv = min(rows, key=lambda i: abs(m[i][c]))
            m[c], m[piv] = m[piv], m[c]
            done = True
            for i in range(c + 1, n):
                q = m[i][c] // m[c][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[c])]
                if m[i][c]:
                    done = False
            if done:
                break
        if abs(m[c][c]) != 1:
            raise ValueError("matrix is not unimodular")
        if m[c][c] < 0:
            m[c] = [-x for x in m[c]]
    for c in range(n - 1, -1, -1):
        for i in range(c):
            q = m[i][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


# ---------------------------------------------------------------- 2-adics

def v2(x: int) -> int:
    """2-adic valuation; v2(0) is treated as infinity (a large int)."""
    if x == 0:
        return 1 << 30
    return (x & -x).bit_length() - 1


def two_part(x: int) -> int:
    x = abs(x)
    return x & -x if x else 0


def is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


# ---------------------------------------------------------------- groups

@dataclass(frozen=True)
class IsoType:
    """Isomorphism type: free rank plus ascending 2-power torsion factors."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        from .notation import format_iso

        return format_iso(self)


@dataclass(frozen=True, eq=False)
class FgAbGroup:
    """A 2-local finitely generated abelian group in canonical form.

    ``torsion`` lists the invariant factors (ascending, each a power of two
    at least 2); the last ``free_rank`` coordinates are free.  ``names``
    labels the canonical basis.  When the group came from a presentation,
    ``to_canon`` maps presentation generator i to canonical coordinates and
    ``from_canon`` gives each canonical generator as a presentation vector.
    """

    torsion: tuple[int, ...]
    free_rank: int = 0
    names: tuple[str, ...] = ()
    pres_names: tuple[str, ...] = ()
    to_canon: tuple[tuple[int, ...], ...] = ()
    from_canon: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        for d in self.torsion:
            if not is_power_of_two(d) or d < 2:
                raise OddTorsion(f"invariant factor {d} is not a power of 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion factors must form a divisibility chain")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"g{i}" for i in range(self.rank)))
        if len(self.names) != self.rank:
            raise ValueError("one name per canonical generator")

    @property
    def rank(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus (0 for free coordinates)."""
        return self.torsion + (0,) * self.free_rank

    @property
    def iso(self) -> IsoType:
        return IsoType(self.free_rank, self.torsion)

    @property
    def order(self) -> int | None:
        return self.iso.order

    @property
    def finite(self) -> bool:
        return self.free_rank == 0

    @property
    def exponent(self) -> int:
        """Least e > 0 with e G = 0 (0 when G is infinite)."""
        if not self.finite:
            return 0
        return max(self.torsion, default=1)

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(c % d if d else c for c, d in zip(coords, self.moduli))

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self.reduce(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def gen(self, i: int | str) -> "GroupElement":
        if isinstance(i, str):
            i = self.names.index(i)
        return self.element([int(j == i) for j in range(self.rank)])

    def from_presentation(self, vec: Sequence[int]) -> "GroupElement":
        """Canonical element of a vector in presentation coordinates."""
        out = [0] * self.rank
        for c, row in zip(vec, self.to_canon):
            if c:
                for j, x in enumerate(row):
                    out[j] += c * x
        return self.element(out)

    def elements(self) -> list[tuple[int, ...]]:
        if not self.finite:
            raise ValueError("infinite group")
        out: list[tuple[int, ...]] = [()]
        for d in self.torsion:
            out = [e + (k,) for e in out for k in range(d)]
        return out

    def __repr__(self) -> str:
        return f"FgAbGroup({self.iso}, names={list(self.names)})"


@dataclass(frozen=True)
class GroupElement:
    group: FgAbGroup
    coords: tuple[int, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise ComposabilityError("elements of different groups")
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "GroupElement":
        return self.group.element([-a for a in self.coords])

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElement":
        return self.group.element([k * a for a in self.coords])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupElement)
            and other.group is self.group
            and other.coords == self.coords
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.coords))

    def __str__(self) -> str:
        terms = []
        for c, name in zip(self.coords, self.group.names):
            if c == 1:
                terms.append(name)
            elif c:
                terms.append(f"{c}*{name}")
        return " + ".join(terms) or "0"


INFINITE = 0


def element_order(x: GroupElement) -> int:
    """Least 2^t with 2^t x = 0; returns INFINITE (0) for infinite order."""
    out = 1
    for c, d in zip(x.coords, x.group.moduli):
        if not c:
            continue
        if d == 0:
            return INFINITE
        out = max(out, d // gcd(c, d))
    return out


def cyclic(order: int, name: str = "g") -> FgAbGroup:
    if order == 0:
        return FgAbGroup((), 1, (name,))
    if order == 1:
        return FgAbGroup((), 0, ())
    return FgAbGroup((order,), 0, (name,))


def group_of_type(iso: IsoType, names: Sequence[str] | None = None) -> FgAbGroup:
    return FgAbGroup(tuple(iso.torsion), iso.free_rank, tuple(names) if names else ())


def _combo_name(vec: Sequence[int], names: Sequence[str]) -> str:
    terms = []
    for c, nm in zip(vec, names):
        if c == 1:
            terms.append(nm)
        elif c == -1:
            terms.append(f"-{nm}")
        elif c:
            terms.append(f"{c}*{nm}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def group_from_presentation(
    generator_names: Sequence[str],
    relations: IntMatrix,
    localize: bool = False,
) -> FgAbGroup:
    """Canonical group Z^n / rowspace(relations), rows being relations.

    With ``localize`` the odd part of every invariant factor is discarded
    (tensoring with the 2-local integers); otherwise odd torsion raises.
    """
    n = len(generator_names)
    rels = [list(r) for r in relations if any(r)]
    for r in rels:
        if len(r) != n:
            raise ValueError("relation length does not match generator count")
    if not rels:
        rels = [[0] * n]
    if n == 0:
        return FgAbGroup((), 0, ())
    U, S, V = smith_normal_form(rels)
    diag = [S[i][i] if i < len(S) else 0 for i in range(n)]
    Vinv = invert_unimodular(V)
    keep: list[tuple[int, int]] = []  # (position, modulus) for nontrivial factors
    for i, d in enumerate(diag):
        if d == 0:
            keep.append((i, 0))
            continue
        if d % 2 == 1 or d & (d - 1):
            if not localize and d != 1:
                raise OddTorsion(f"invariant factor {d} has an odd prime divisor")
            d = two_part(d)
        if d > 1:
            keep.append((i, d))
    torsion_pos = [(i, d) for i, d in keep if d]
    free_pos = [i for i, d in keep if d == 0]
    order = torsion_pos + [(i, 0) for i in free_pos]
    to_canon = tuple(tuple(Vinv[g][i] for i, _ in order) for g in range(n))
    from_canon = tuple(tuple(V[i]) for i, _ in order)
    names = []
    for vec in from_canon:
        names.append(_combo_name(vec, generator_names))
    seen: dict[str, int] = {}
    for k, nm in enumerate(names):
        if nm in seen:
            names[k] = f"{nm}#{k}"
        seen[nm] = k
    grp = FgAbGroup(
        tuple(d for _, d in torsion_pos),
        len(free_pos),
        tuple(names),
        tuple(generator_names),
        tuple(tuple(x % d if d else x for x, (_, d) in zip(row, order)) for row in to_canon),
        from_canon,
    )
    return grp


# ---------------------------------------------------------------- homs

@dataclass(frozen=True, eq=False)
class Homomorphism:
    """Images of the canonical domain generators, in codomain coordinates."""

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.matrix) != self.domain.rank:
            raise ValueError("one image per domain generator")
        rows = tuple(self.codomain.reduce(r) for r in self.matrix)
        object.__setattr__(self, "matrix", rows)
        for d, row in zip(self.domain.moduli, rows):
            if d and any(self.codomain.reduce([d * x for x in row])):
                raise NotWellDefined("a domain relation does not map to zero")

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group is not self.domain:
            raise ComposabilityError("element not in the domain")
        out = [0] * self.codomain.rank
        for c, row in zip(x.coords, self.matrix):
            if c:
                for j, v in enumerate(row):
                    out[j] += c * v
        return self.codomain.element(out)

    def compose(self, first: "Homomorphism") -> "Homomorphism":
        """self after first."""
        if first.codomain is not self.domain:
            raise ComposabilityError("codomain/domain mismatch")
        rows = [self(first.codomain.element(r)).coords for r in first.matrix]
        return Homomorphism(first.domain, self.codomain, tuple(rows))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)


def zero_map(a: FgAbGroup, b: FgAbGroup) -> Homomorphism:
    return Homomorphism(a, b, tuple((0,) * b.rank for _ in range(a.rank)))


def identity_map(a: FgAbGroup) -> Homomorphism:
    return Homomorphism(a, a, tuple(tuple(int(i == j) for j in range(a.rank)) for i in range(a.rank)))


def _relation_rows(g: FgAbGroup) -> IntMatrix:
    return [[d if j == i else 0 for j in range(g.rank)] for i, d in enumerate(g.torsion)]


def _left_null_space(M: IntMatrix, nrows: int) -> IntMatrix:
    """Integer basis of {x : x M = 0} for an nrows x ncols matrix M."""
    if nrows == 0:
        return []
    ncols = len(M[0]) if M else 0
    if ncols == 0:
        return identity(nrows)
    U, S, _ = smith_normal_form(M)
    rank = sum(1 for i in range(min(nrows, ncols)) if S[i][i])
    Uinv = invert_unimodular(U)
    return [Uinv[i] for i in range(rank, nrows)]


def subgroup(parent: FgAbGroup, gens: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> tuple[FgAbGroup, Homomorphism]:
    """Subgroup of ``parent`` generated by coordinate vectors, with inclusion."""
    gens = [parent.reduce(g) for g in gens]
    p = len(gens)
    if names is None:
        names = [_combo_name(g, parent.names) for g in gens]
    if p == 0:
        sub = FgAbGroup((), 0, ())
        return sub, zero_map(sub, parent)
    stacked = [list(g) for g in gens] + _relation_rows(parent)
    null = _left_null_space(stacked, len(stacked)) if parent.rank else identity(len(stacked))
    rels = [row[:p] for row in null]
    sub = group_from_presentation(list(names), rels, localize=True)
    rows = []
    for vec in sub.from_canon:
        out = [0] * parent.rank
        for c, g in zip(vec, gens):
            for j, x in enumerate(g):
                out[j] += c * x
        rows.append(tuple(out))
    return sub, Homomorphism(sub, parent, tuple(rows))


def kernel(h: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    dom, cod = h.domain, h.codomain
    if dom.rank == 0:
        return subgroup(dom, [])
    stacked = [list(r) for r in h.matrix] + _relation_rows(cod)
    if cod.rank == 0:
        null = identity(dom.rank)
    else:
        null = [row[: dom.rank] for row in _left_null_space(stacked, len(stacked))]
    return subgroup(dom, null, None)


def image(h: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    return subgroup(h.codomain, [list(r) for r in h.matrix])


def cokernel(h: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    cod = h.codomain
    rels = _relation_rows(cod) + [list(r) for r in h.matrix]
    q = group_from_presentation(list(cod.names), rels, localize=True)
    proj = Homomorphism(cod, q, q.to_canon)
    return q, proj


def quotient(parent: FgAbGroup, rels: Sequence[Sequence[int]]) -> tuple[FgAbGroup, Homomorphism]:
    """parent / <rels> with the projection."""
    h = Homomorphism(FgAbGroup((), len(rels), tuple(f"r{i}" for i in range(len(rels)))), parent,
                     tuple(parent.reduce(r) for r in rels))
    return cokernel(h)


def contains(parent: FgAbGroup, gens: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    """Is x in the subgroup of ``parent`` generated by ``gens`` (2-locally)?"""
    rows = [list(parent.reduce(g)) for g in gens] + _relation_rows(parent)
    x = list(parent.reduce(x))
    if not any(x):
        return True
    if not rows:
        return False
    _, S, V = smith_normal_form(rows)
    w = matmul([x], invert_unimodular(V))[0]
    for i, wi in enumerate(w):
        s = S[i][i] if i < len(S) else 0
        if s == 0:
            if wi:
                return False
        elif v2(wi) < v2(s):
            return False
    return True


def is_exact(f: Homomorphism, g: Homomorphism) -> bool:
    """True iff im f = ker g."""
    if f.codomain is not g.domain:
        raise ComposabilityError("codomain of f is not the domain of g")
    if not g.compose(f).is_zero():
        return False
    kg, inc = kernel(g)
    return all(contains(f.codomain, f.matrix, row) for row in inc.matrix)


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    gens: list[str] = []
    rels: IntMatrix = []
    offset = 0
    total = sum(g.rank for g in groups)
    for g in groups:
        gens.extend(g.names)
        for i, d in enumerate(g.moduli):
            if d:
                row = [0] * total
                row[offset + i] = d
                rels.append(row)
        offset += g.rank
    return group_from_presentation(gens, rels)


def ext1(C: FgAbGroup, A: FgAbGroup) -> FgAbGroup:
    """Ext^1(C, A) from bilinearity; Ext^1(Z, -) = 0 and Ext^1(Z/c, Z) = Z/c."""
    factors = []
    for c in C.torsion:
        for a in A.moduli:
            factors.append(c if a == 0 else min(a, c))
    return FgAbGroup(tuple(sorted(factors)), 0)


def hom_order(C: FgAbGroup, A: FgAbGroup) -> int:
    """|Hom(C, A)| for finite A."""
    if not A.finite:
        raise ValueError("A must be finite")
    out = 1
    for a in A.torsion:
        for c in C.moduli:
            out *= a if c == 0 else gcd(a, c)
    return out


def solve(parent: FgAbGroup, gens: Sequence[Sequence[int]], x: Sequence[int]) -> list[int] | None:
    """Coefficients c with sum c_i gens_i = x in ``parent`` (2-locally), or None.

    Odd denominators are cleared by inverting them modulo a large power of
    two, which is exact on torsion coordinates.
    """
    p = len(gens)
    x = list(parent.reduce(x))
    if not any(x):
        return [0] * p
    rows = [list(parent.reduce(g)) for g in gens] + _relation_rows(parent)
    if not rows:
        return None
    U, S, V = smith_normal_form(rows)
    w = matmul([x], invert_unimodular(V))[0]
    d = [0] * len(rows)
    unit = 1
    for i, wi in enumerate(w):
        s = S[i][i] if i < min(len(S), len(S[0])) else 0
        if s == 0:
            if wi:
                return None
            continue
        if v2(wi) < v2(s) and wi:
            return None
        odd = s >> v2(s)
        unit *= odd
    for i, wi in enumerate(w):
        s = S[i][i] if i < min(len(S), len(S[0])) else 0
        if s:
            d[i] = wi * unit // s
    Uinv = invert_unimodular(U)
    c = matmul([d], Uinv)[0][:p]
    if unit != 1:
        big = 1 << 62
        inv = pow(unit, -1, big)
        c = [(ci * inv) % big for ci in c]
    return c
