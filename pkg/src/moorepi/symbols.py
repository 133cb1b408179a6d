"""Named homotopy classes and the rewriting engine that normalizes them.

A *word* is a tuple of tokens read as a composite, leftmost applied last:
``("nu_4", "sigma'")`` is nu_4 o sigma'.  Token grammar (ASCII):

``iota_n``, ``<family>_n`` (eta_5, bar_nu_6 ...), fixed names (``nu'``,
``sigma'``, ``Delta(iota_13)`` ...), ``E(x)`` / ``E^k(x)`` suspensions,
``beta_d`` and bracket tokens ``[beta_3,beta_6]`` for inclusions into a
complex, ``W[iota_n,iota_n]`` Whitehead squares on a sphere, and
``lift(...)`` names of chosen lifts.

Integer coefficients are concrete: the engine is built for one assignment of
r and of the symbolic parameters, so every expression in the fact file has
already been evaluated when rewriting starts.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .abelian import FgAbGroup, GroupElement, contains, group_from_presentation
from .errors import DimensionMismatch, MissingFact, NotComposable, RangeExceeded
from .rexpr import evaluate

if TYPE_CHECKING:  # pragma: no cover
    from .facts import FactBase

Word = tuple[str, ...]


# ---------------------------------------------------------------- tokens

def split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside (), [] nesting."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and (ch == sep or (sep == " " and ch.isspace())):
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [t for t in (s.strip() for s in out) if t]


def tokenize(text: str) -> Word:
    return tuple(split_top(text.strip(), " "))


@dataclass(frozen=True)
class GenSymbol:
    name: str
    source_dim: int
    target_dim: int | None  # None: the target is a complex (inclusions, lifts)
    suspension: bool
    origin: str = ""


@dataclass(frozen=True)
class SymbolicParam:
    """An undetermined coefficient: odd units or arbitrary integers."""

    name: str
    parity: str  # "odd" or "integer"
    samples: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.parity not in ("odd", "integer", "sign"):
            raise ValueError(f"unknown parity class {self.parity!r}")
        if self.parity in ("odd", "sign") and any(v % 2 == 0 for v in self.samples):
            raise ValueError(f"{self.name}: odd-unit samples must be odd")


_SUSP = re.compile(r"^E(?:\^(\d+))?\((.*)\)$")
_FAMILY = re.compile(r"^([A-Za-z_]+?)_(\d+)$")


class SymbolTable:
    """Resolves tokens to dimensions using family and fixed-symbol data."""

    def __init__(self, families: Mapping[str, Mapping], fixed: Mapping[str, Mapping]):
        self.families = {k: dict(v) for k, v in families.items()}
        self.fixed = {k: dict(v) for k, v in fixed.items()}
        self._cache: dict[str, GenSymbol] = {}

    def symbol(self, token: str) -> GenSymbol:
        sym = self._cache.get(token)
        if sym is None:
            sym = self._resolve(token)
            self._cache[token] = sym
        return sym

    def _resolve(self, token: str) -> GenSymbol:
        if token in self.fixed:
            d = self.fixed[token]
            return GenSymbol(token, d["source"], d["target"], bool(d.get("suspension", False)), "fixed")
        m = _SUSP.match(token)
        if m:
            k = int(m.group(1) or 1)
            inner = self.symbol(m.group(2))
            if inner.target_dim is None:
                raise MissingFact(f"suspension of complex-valued {m.group(2)}")
            return GenSymbol(token, inner.source_dim + k, inner.target_dim + k, True, "suspension")
        if token.startswith("lift(") and token.endswith(")"):
            inner = tokenize(token[5:-1])
            src, _ = self.word_dims(inner)
            return GenSymbol(token, src, None, False, "lift")
        if token.startswith("W[") and token.endswith("]"):
            parts = split_top(token[2:-1], ",")
            if len(parts) != 2:
                raise MissingFact(f"malformed Whitehead token {token}")
            a, b = (self.word_dims(tokenize(p)) for p in parts)
            if a[1] != b[1]:
                raise DimensionMismatch(f"{token}: factors on different spheres")
            return GenSymbol(token, a[0] + b[0] - 1, a[1], False, "whitehead")
        if token.startswith("[") and token.endswith("]"):
            parts = split_top(token[1:-1], ",")
            if len(parts) != 2:
                raise MissingFact(f"malformed bracket {token}")
            a, b = (self.symbol(p) for p in parts)
            return GenSymbol(token, a.source_dim + b.source_dim - 1, None, False, "bracket")
        m = _FAMILY.match(token)
        if m:
            fam, n = m.group(1), int(m.group(2))
            if fam in ("beta", "j1", "j2"):
                return GenSymbol(token, n, None, False, "inclusion")
            if fam == "iota":
                return GenSymbol(token, n, n, n >= 2, "identity")
            if fam in self.families:
                f = self.families[fam]
                if n < f["base"]:
                    raise MissingFact(f"{token} lies below the family's first sphere")
                return GenSymbol(token, n + f["stem"], n, n > f["base"], fam)
        raise MissingFact(f"unknown symbol {token}")

    def word_dims(self, word: Word) -> tuple[int, int | None]:
        """(source dim, target) of a composite, checking the chain."""
        if not word:
            raise DimensionMismatch("empty word")
        syms = [self.symbol(t) for t in word]
        for a, b in zip(syms, syms[1:]):
            if b.target_dim is None or a.source_dim != b.target_dim:
                raise DimensionMismatch(f"{a.name} cannot follow {b.name}")
        return syms[-1].source_dim, syms[0].target_dim

    def is_suspension_word(self, word: Word) -> bool:
        return all(self.symbol(t).suspension for t in word)

    def canonical(self, token: str) -> str:
        """E^k(fam_n) -> fam_{n+k}; nested suspensions merged."""
        m = _SUSP.match(token)
        if not m:
            return token
        k = int(m.group(1) or 1)
        inner = self.canonical(m.group(2))
        m2 = _SUSP.match(inner)
        if m2:
            k += int(m2.group(1) or 1)
            inner = m2.group(2)
        if k == 0:
            return inner
        fm = _FAMILY.match(inner)
        if fm and (fm.group(1) == "iota" or fm.group(1) in self.families):
            return f"{fm.group(1)}_{int(fm.group(2)) + k}"
        return f"E({inner})" if k == 1 else f"E^{k}({inner})"

    def suspend_token(self, token: str, times: int = 1) -> str | None:
        """Suspension of one token; None for Whitehead-type tokens (they die)."""
        sym = self.symbol(token)
        if sym.origin in ("whitehead", "bracket", "inclusion", "lift") or sym.target_dim is None:
            return None
        return self.canonical(f"E^{times}({token})" if times > 1 else f"E({token})")

    def desuspend_token(self, token: str) -> str | None:
        sym = self.symbol(token)
        if not sym.suspension:
            return None
        m = _SUSP.match(token)
        if m:
            k = int(m.group(1) or 1)
            inner = m.group(2)
            return inner if k == 1 else f"E^{k - 1}({inner})" if k > 2 else f"E({inner})"
        fm = _FAMILY.match(token)
        return f"{fm.group(1)}_{int(fm.group(2)) - 1}"


def canonical_word(table: SymbolTable, word: Iterable[str]) -> Word:
    toks = [table.canonical(t) for t in word]
    if len(toks) > 1:
        toks = [t for t in toks if not t.startswith("iota_")] or toks[-1:]
    return tuple(toks)


# ---------------------------------------------------------------- elements

@dataclass(frozen=True)
class FormalElement:
    """Integer combination of composite words sharing source and target."""

    source: int
    target: int | None
    terms: tuple[tuple[Word, int], ...] = ()

    @staticmethod
    def build(source: int, target: int | None, pairs: Iterable[tuple[Word, int]]) -> "FormalElement":
        acc: dict[Word, int] = {}
        for w, c in pairs:
            if c:
                acc[w] = acc.get(w, 0) + c
        return FormalElement(source, target, tuple(sorted((w, c) for w, c in acc.items() if c)))

    def __add__(self, other: "FormalElement") -> "FormalElement":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if (self.source, self.target) != (other.source, other.target):
            raise DimensionMismatch("adding elements of different groups")
        return FormalElement.build(self.source, self.target, self.terms + other.terms)

    def __neg__(self) -> "FormalElement":
        return self.scale(-1)

    def __sub__(self, other: "FormalElement") -> "FormalElement":
        return self + (-other)

    def scale(self, k: int) -> "FormalElement":
        return FormalElement.build(self.source, self.target, ((w, k * c) for w, c in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for w, c in self.terms:
            body = " ".join(w)
            if c == 1:
                out.append(f"+ {body}")
            elif c == -1:
                out.append(f"- {body}")
            elif c > 0:
                out.append(f"+ {c}*{body}")
            else:
                out.append(f"- {-c}*{body}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def parse_element(text: str, table: SymbolTable, env: Mapping[str, int],
                  dims: tuple[int, int | None] | None = None) -> FormalElement:
    """Parse ``coef*word + coef*word - ...`` with r-expression coefficients."""
    text = text.strip()
    pieces: list[tuple[int, str]] = []
    depth, cur, sign = 0, [], 1
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and "".join(cur).strip() and not "".join(cur).rstrip().endswith("*"):
            pieces.append((sign, "".join(cur)))
            cur, sign = [], (1 if ch == "+" else -1)
            continue
        if depth == 0 and ch in "+-" and not "".join(cur).strip():
            sign = sign * (1 if ch == "+" else -1)
            continue
        cur.append(ch)
    pieces.append((sign, "".join(cur)))
    pairs: list[tuple[Word, int]] = []
    src = tgt = None
    if dims:
        src, tgt = dims
    for sgn, piece in pieces:
        piece = piece.strip()
        if not piece or piece == "0":
            continue
        parts = split_top(piece, "*")
        if len(parts) > 1:
            coef = evaluate("*".join(f"({p})" for p in parts[:-1]), env)
            body = parts[-1]
        else:
            coef, body = 1, piece
        word = canonical_word(table, tokenize(body))
        s, t = table.word_dims(word)
        if src is None:
            src, tgt = s, t
        elif (s, t) != (src, tgt) and not (t is None and tgt is None and s == src):
            raise DimensionMismatch(f"term {body!r} does not match {src}->{tgt}")
        pairs.append((word, sgn * coef))
    if src is None:
        if dims is None:
            return FormalElement(-1, None, ())
        src, tgt = dims
    return FormalElement.build(src, tgt, pairs)


# ---------------------------------------------------------------- ambients

class Ambient:
    """A declared group in which words can be normalized."""

    gid: str = "?"
    group: FgAbGroup

    def lookup(self, word: Word, engine: "SymbolEngine", scale: int = 1) -> list[int] | None:
        raise NotImplementedError

    def basis_words(self) -> list[str]:
        return list(self.group.names)


class SphereAmbient(Ambient):
    """pi_m(S^n) with a declared basis of words and their orders."""

    def __init__(self, n: int, m: int, basis: Sequence[tuple[Word, int]], gid: str | None = None):
        self.n, self.m = n, m
        self.gid = gid or f"S{n}:{m}"
        names = [" ".join(w) for w, _ in basis]
        rels = []
        for i, (_, o) in enumerate(basis):
            if o:
                rels.append([o if j == i else 0 for j in range(len(basis))])
        self.group = group_from_presentation(names, rels)
        self.word_index = {w: i for i, (w, _) in enumerate(basis)}
        self.orders = [o for _, o in basis]

    def lookup(self, word: Word, engine: "SymbolEngine", scale: int = 1) -> list[int] | None:
        i = self.word_index.get(word)
        if i is None:
            return None
        return list(self.group.to_canon[i])


class WedgeAmbient(Ambient):
    """pi_m of a wedge of spheres split into Hilton-Milnor summands."""

    def __init__(self, gid: str, summands: Sequence[tuple[str, SphereAmbient]]):
        self.gid = gid
        self.summands = list(summands)
        names: list[str] = []
        rels: list[list[int]] = []
        total = sum(a.group.rank for _, a in summands)
        off = 0
        self.offsets = {}
        for prefix, amb in summands:
            self.offsets[prefix] = off
            for nm in amb.group.names:
                inner = "" if nm.startswith("iota_") else " " + nm
                names.append(f"{prefix}{inner}")
            for i, d in enumerate(amb.group.moduli):
                if d:
                    row = [0] * total
                    row[off + i] = d
                    rels.append(row)
            off += amb.group.rank
        self.group = group_from_presentation(names, rels)
        self.by_prefix = dict(summands)

    def lookup(self, word: Word, engine: "SymbolEngine", scale: int = 1) -> list[int] | None:
        amb = self.by_prefix.get(word[0])
        if amb is None:
            return None
        rest = word[1:] or (f"iota_{amb.n}",)
        inner = engine.word_coords(rest, amb, scale=scale)
        vec = [0] * self.group.rank
        off = self.offsets[word[0]]
        pres = [0] * sum(a.group.rank for _, a in self.summands)
        for i, c in enumerate(inner):
            pres[off + i] = c
        return list(self.group.from_presentation(pres).coords)


class QuotientAmbient(Ambient):
    """A group built as (sub / relations) extended by named lifts."""

    def __init__(self, gid: str, sub: Ambient, sub_to_group, group: FgAbGroup,
                 lift_words: Mapping[Word, Sequence[int]]):
        self.gid = gid
        self.sub = sub
        self.sub_to_group = sub_to_group  # callable: sub coords -> group coords
        self.group = group
        self.lift_words = dict(lift_words)

    def lookup(self, word: Word, engine: "SymbolEngine", scale: int = 1) -> list[int] | None:
        if word in self.lift_words:
            return list(self.lift_words[word])
        inner = engine.word_coords(word, self.sub, scale=scale)
        return list(self.sub_to_group(inner))


# ---------------------------------------------------------------- engine

@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: FormalElement
    fid: str
    kind: str


@dataclass(frozen=True)
class BracketCoset:
    representative: GroupElement
    indeterminacy: tuple[tuple[int, ...], ...]  # generators of a subgroup of the ambient
    ambient: str

    def contains(self, x: GroupElement) -> bool:
        diff = (x - self.representative).coords
        return contains(self.representative.group, self.indeterminacy, diff)


class SymbolEngine:
    """Rewriting engine for one evaluation environment (r and parameters)."""

    MAX_DEPTH = 60

    def __init__(self, facts: "FactBase", env: Mapping[str, int]):
        self.facts = facts
        self.table = facts.symbols
        self.env = env if isinstance(env, dict) else dict(env)
        self.rules: list[Rule] = []
        self._rule_index: dict[str, list[Rule]] = {}
        for rec in facts.rewrite_records():
            if not rec.applies(self.env):
                continue
            lhs = canonical_word(self.table, tokenize(rec.lhs))
            rhs = parse_element(rec.rhs, self.table, self.env, self.table.word_dims(lhs))
            if rhs.terms == ((lhs, 1),):
                continue
            self._add_rule(Rule(lhs, rhs, rec.fid, rec.kind))
            if rec.get("stable"):
                for rule in self._suspended_rules(lhs, rhs, rec):
                    self._add_rule(rule)
        self.hopf: dict[str, FormalElement] = {}
        for rec in facts.records_of("hopf"):
            if rec.applies(self.env):
                tok = self.table.canonical(rec.lhs.strip())
                sym = self.table.symbol(tok)
                n = sym.target_dim
                self.hopf[tok] = parse_element(rec.rhs, self.table, self.env, (sym.source_dim, 2 * n - 1))
        self.degree = {}
        for rec in facts.records_of("degree"):
            if rec.applies(self.env):
                self.degree[canonical_word(self.table, tokenize(rec.lhs))] = rec
        self._coords_cache: dict[tuple[str, Word], tuple[int, ...]] = {}
        self._sphere_cache: dict[tuple[int, int], SphereAmbient] = {}

    STABLE_CAP = 24

    def _add_rule(self, rule: Rule) -> None:
        self.rules.append(rule)
        self._rule_index.setdefault(rule.lhs[0], []).append(rule)

    def _suspended_rules(self, lhs: Word, rhs: FormalElement, rec) -> list[Rule]:
        """E^j of a relation, for relations marked as holding after suspension."""
        out = []
        j = 1
        while True:
            toks = [self.table.suspend_token(t, j) for t in lhs]
            if any(t is None for t in toks):
                break
            slhs = canonical_word(self.table, toks)
            src, tgt = self.table.word_dims(slhs)
            if tgt > self.STABLE_CAP:
                break
            pairs = []
            for w, c in rhs.terms:
                st = [self.table.suspend_token(t, j) for t in w]
                if any(t is None for t in st):
                    continue
                pairs.append((canonical_word(self.table, st), c))
            out.append(Rule(slhs, FormalElement.build(src, tgt, pairs), f"{rec.fid}+E{j}", rec.kind))
            j += 1
        return out

    # -- sphere groups
    def sphere(self, n: int, m: int) -> SphereAmbient:
        key = (n, m)
        amb = self._sphere_cache.get(key)
        if amb is None:
            entry = self.facts.query_sphere_entry(n, m - n)
            basis = [(canonical_word(self.table, tokenize(w)), o) for w, o in entry]
            amb = SphereAmbient(n, m, basis)
            self._sphere_cache[key] = amb
        return amb

    def sphere_known_trivial(self, n: int, m: int) -> bool:
        if m < n:
            return True
        return self.facts.has_sphere(n, m - n) and not self.facts.query_sphere_entry(n, m - n)

    # -- rewriting
    def _legal(self, word: Word, i: int, j: int, rhs: FormalElement) -> bool:
        tail = word[j:]
        if not tail:
            return True
        if len(rhs.terms) == 1 and rhs.terms[0][1] == 1:
            return True
        return self.table.is_suspension_word(tail)

    def rewrite_once(self, word: Word) -> FormalElement | None:
        """Apply the first legal rule (suffix windows first, longest first)."""
        n = len(word)
        src, tgt = self.table.word_dims(word)
        for i in range(n - 1, -1, -1):
            for rule in self._rule_index.get(word[i], ()):
                j = i + len(rule.lhs)
                if j <= n and word[i:j] == rule.lhs and self._legal(word, i, j, rule.rhs):
                    pre, post = word[:i], word[j:]
                    pairs = []
                    for w, c in rule.rhs.terms:
                        pairs.append((canonical_word(self.table, pre + w + post), c))
                    return FormalElement.build(src, tgt, pairs)
        return None

    def _zero_subword(self, word: Word) -> bool:
        """Does a contiguous sphere-to-sphere subword live in a zero group?"""
        syms = [self.table.symbol(t) for t in word]
        for i in range(len(word)):
            if syms[i].target_dim is None:
                continue
            for j in range(i + 1, len(word) + 1):
                n, m = syms[i].target_dim, syms[j - 1].source_dim
                if self.sphere_known_trivial(n, m):
                    return True
                if all(s.suspension for s in syms[i:j]) and self._desuspends_to_zero(word[i:j]):
                    return True
        return False

    def _desuspends_to_zero(self, word: Word) -> bool:
        """A suspension of an element of a zero group is zero."""
        cur = word
        while True:
            nxt = [self.table.desuspend_token(t) for t in cur]
            if any(t is None for t in nxt):
                return False
            cur = canonical_word(self.table, nxt)
            src, tgt = self.table.word_dims(cur)
            if self.sphere_known_trivial(tgt, src):
                return True

    def rewrite(self, x: FormalElement, depth: int = 0) -> FormalElement:
        """Exhaustive fact rewriting without reference to an ambient group."""
        out = FormalElement(x.source, x.target, ())
        for w, c in x.terms:
            if self._zero_subword(w):
                continue
            step = self.rewrite_once(w)
            if step is None or depth > self.MAX_DEPTH:
                out = out + FormalElement(x.source, x.target, ((w, c),))
            else:
                out = out + self.rewrite(step.scale(c), depth + 1)
        return out

    def word_coords(self, word: Word, ambient: Ambient, depth: int = 0, scale: int = 1) -> tuple[int, ...]:
        """Coordinates of a word in an ambient group.

        ``scale`` is the coefficient the caller will multiply by.  Terms it
        kills through the group exponent are skipped, so a result v is only
        guaranteed to satisfy scale * v = scale * (true coordinates); such
        results are not cached.
        """
        word = canonical_word(self.table, word)
        key = (ambient.gid, word)
        hit = self._coords_cache.get(key)
        if hit is not None:
            return hit
        g = ambient.group
        e = g.exponent if g.finite else 0
        if g.rank == 0:
            res = ()
        elif e and scale % e == 0:
            return (0,) * g.rank
        else:
            res = self._word_coords(word, ambient, depth, scale)
        if scale == 1:
            self._coords_cache[key] = res
        return res

    def _word_coords(self, word: Word, ambient: Ambient, depth: int, scale: int) -> tuple[int, ...]:
        g = ambient.group
        if depth > self.MAX_DEPTH:
            raise MissingFact(f"rewriting loop on {' '.join(word)}", ambient.gid)
        if self._zero_subword(word):
            return (0,) * g.rank
        direct = ambient.lookup(word, self, scale)
        if direct is not None:
            return g.reduce(direct)
        step = self.rewrite_once(word)
        if step is None:
            raise MissingFact(" ".join(word), ambient.gid)
        acc = [0] * g.rank
        for w, c in step.terms:
            v = self.word_coords(w, ambient, depth + 1, scale * c)
            for i, x in enumerate(v):
                acc[i] += c * x
        return g.reduce(acc)

    def normalize(self, x: FormalElement, ambient: Ambient) -> GroupElement:
        g = ambient.group
        acc = [0] * g.rank
        for w, c in x.terms:
            v = self.word_coords(w, ambient, scale=c)
            for i, t in enumerate(v):
                acc[i] += c * t
        return g.element(acc)

    # -- composition calculus
    def compose(self, x: FormalElement, y: FormalElement) -> FormalElement:
        if x.is_zero() or y.is_zero():
            return FormalElement(y.source if not y.is_zero() else -1, x.target, ())
        if y.target != x.source:
            raise DimensionMismatch(f"cannot compose {x} after {y}")
        pairs: list[tuple[Word, int]] = []
        for v, b in y.terms:
            if len(x.terms) == 1 or self.table.is_suspension_word(v):
                for w, a in x.terms:
                    if a == 1 or self.table.is_suspension_word(v):
                        pairs.append((canonical_word(self.table, w + v), a * b))
                    else:
                        inner = self.degree_precompose(a, FormalElement(y.source, y.target, ((v, 1),)))
                        for u, c in inner.terms:
                            pairs.append((canonical_word(self.table, w + u), b * c))
            else:
                raise MissingFact(f"sum {x} composed with non-suspension {' '.join(v)}")
        return self.rewrite(FormalElement.build(y.source, x.target, pairs))

    def word(self, text: str) -> FormalElement:
        return parse_element(text, self.table, self.env)

    def degree_precompose(self, t: int, alpha: FormalElement) -> FormalElement:
        """(t iota_n) o alpha, expanding t alpha + C(t,2) [iota_n,iota_n] H(alpha)."""
        if t == 1 or alpha.is_zero():
            return alpha
        n = alpha.target
        if n is None:
            raise NotComposable("degree maps act on sphere-valued classes")
        out = FormalElement(alpha.source, n, ())
        for w, c in alpha.terms:
            out = out + self._degree_word(t, w, n, alpha.source).scale(c)
        return out

    def _degree_word(self, t: int, w: Word, n: int, src: int) -> FormalElement:
        idx = next((i for i, tok in enumerate(w) if not self.table.symbol(tok).suspension), None)
        plain = FormalElement(src, n, ((w, t),))
        if idx is None:
            return plain
        pre, rest = w[:idx], w[idx:]
        head = rest[0]
        head_dim = self.table.symbol(head).target_dim
        for cut in (len(rest), 1):
            rec = self.degree.get(rest[:cut])
            if rec is None or (cut < len(rest) and not self.table.is_suspension_word(rest[cut:])):
                continue
            env = dict(self.env, t=t)
            val = parse_element(rec.rhs, self.table, env, self.table.word_dims(rest[:cut]))
            tail = rest[cut:]
            return self.rewrite(FormalElement.build(
                src, n, ((canonical_word(self.table, pre + u + tail), c) for u, c in val.terms)))
        k = comb(t, 2)
        if head_dim in (1, 3, 7) or (head_dim % 2 == 1 and k % 2 == 0) or k == 0:
            return plain
        tail = rest[1:]
        if tail and not self.table.is_suspension_word(tail):
            raise MissingFact(f"Hopf invariant of {' '.join(rest)}")
        h = self.hopf.get(head)
        if h is None:
            raise MissingFact(f"H2({head})")
        terms = [(w, t)]
        wh = f"W[iota_{head_dim},iota_{head_dim}]"
        for u, c in h.terms:
            terms.append((canonical_word(self.table, pre + (wh,) + u + tail), k * c))
        return self.rewrite(FormalElement.build(src, n, terms))

    def suspend(self, x: FormalElement, times: int = 1) -> FormalElement:
        if x.is_zero():
            return x
        if x.target is None:
            raise NotComposable("only sphere-valued classes suspend")
        pairs = []
        for w, c in x.terms:
            toks = [self.table.suspend_token(tok, times) for tok in w]
            if any(tk is None for tk in toks):
                continue  # Whitehead-type factor suspends to zero
            pairs.append((canonical_word(self.table, toks), c))
        return self.rewrite(FormalElement.build(x.source + times, x.target + times, pairs))

    def whitehead(self, f: FormalElement, g: FormalElement) -> FormalElement:
        """Formal Whitehead product of two classes on one sphere."""
        if f.is_zero() or g.is_zero():
            return FormalElement(-1, f.target, ())
        if f.target != g.target:
            raise DimensionMismatch("Whitehead product needs a common target")
        n = f.target
        pairs = []
        for w1, a in f.terms:
            for w2, b in g.terms:
                tok = f"W[{' '.join(w1)},{' '.join(w2)}]"
                if w1 == (f"iota_{n}",) and w2 == (f"iota_{n}",):
                    if n in (1, 3, 7):
                        continue
                    if n % 2 == 1 and (a * b) % 2 == 0:
                        continue
                pairs.append(((tok,), a * b))
        src = f.source + g.source - 1
        return self.rewrite(FormalElement.build(src, n, pairs))

    def hopf_h2(self, x: FormalElement) -> FormalElement:
        if x.target is None:
            # wedge inclusions: H2([j1,j2]) = E(j1^j2) - E(j2^j1)
            pairs = []
            for w, c in x.terms:
                if len(w) == 1 and w[0].startswith("[") and "," in w[0]:
                    a, b = split_top(w[0][1:-1], ",")
                    pairs.append(((f"E({a}^{b})",), c))
                    pairs.append(((f"E({b}^{a})",), -c))
                else:
                    raise MissingFact(f"H2({' '.join(w)})")
            return FormalElement.build(x.source, None, pairs)
        n = x.target
        out = FormalElement(x.source, 2 * n - 1, ())
        for w, c in x.terms:
            if self.table.is_suspension_word(w):
                continue
            head, tail = w[0], w[1:]
            if self.table.symbol(head).suspension or (tail and not self.table.is_suspension_word(tail)):
                raise MissingFact(f"H2({' '.join(w)})")
            h = self.hopf.get(head)
            if h is None:
                raise MissingFact(f"H2({head})")
            pairs = [(canonical_word(self.table, u + tail), c * d) for u, d in h.terms]
            out = out + FormalElement.build(x.source, 2 * n - 1, pairs)
        return self.rewrite(out)

    # -- Toda brackets
    def toda_bracket(self, f: FormalElement, g: FormalElement, h: FormalElement) -> BracketCoset:
        for x, y in ((f, g), (g, h)):
            if x.source != y.target:
                raise NotComposable(f"{x} cannot follow {y}")
        d, a = f.target, h.source + 1
        amb = self.sphere(d, a)
        rep = None
        key = (str(f), str(g), str(h))
        for rec in self.facts.records_of("bracket"):
            if rec.applies(self.env) and rec.key(self) == key:
                rep = self.normalize(parse_element(rec.rhs, self.table, self.env, (a, d)), amb)
                break
        if rep is None:
            rep = self._bracket_rule(f, g, h, amb)
        gens = []
        c = f.source
        b = g.source
        if not self.sphere_known_trivial(c, a):
            for nm in self.sphere(c, a).group.names:
                y = parse_element(nm, self.table, self.env)
                gens.append(self.normalize(self.compose(f, y), amb).coords)
        if not self.sphere_known_trivial(d, b + 1):
            sh = self.suspend(h)
            for nm in self.sphere(d, b + 1).group.names:
                z = parse_element(nm, self.table, self.env)
                gens.append(self.normalize(self.compose(z, sh), amb).coords)
        return BracketCoset(rep, tuple(gens), amb.gid)

    def _bracket_rule(self, f, g, h, amb) -> GroupElement:
        """{2^r a, E b, 2^r E c} contains a E b eta E^2 c for r = 1 and 0 for r >= 2."""
        if not (len(f.terms) == len(g.terms) == len(h.terms) == 1):
            raise MissingFact("no bracket fact or rule applies")
        (wf, cf), (wg, cg), (wh, ch) = f.terms[0], g.terms[0], h.terms[0]
        if cf != ch or cf < 2 or cf & (cf - 1) or cg != 1 or not self.table.is_suspension_word(wg) \
                or not self.table.is_suspension_word(wh):
            raise MissingFact("no bracket fact or rule applies")
        if cf >= 4:
            return amb.group.zero()
        b = g.source
        eta = f"eta_{b}"
        sh = tuple(self.table.suspend_token(t) for t in wh)
        if wh == (f"iota_{h.target}",):
            sh = ()
        word = canonical_word(self.table, wf + wg + (eta,) + sh)
        return self.normalize(FormalElement.build(h.source + 1, f.target, ((word, 1),)), amb)


# ---------------------------------------------------------------- Hilton-Milnor

_HM = [
    ("j1", lambda a, b: a, 1),
    ("j2", lambda a, b: b, 1),
    ("[j1,j2]", lambda a, b: a + b - 1, 2),
    ("[j1,[j1,j2]]", lambda a, b: 2 * a + b - 2, 3),
    ("[[j1,j2],j2]", lambda a, b: a + 2 * b - 2, 3),
]
_HM_NEXT = [
    ("[j1,[j1,[j1,j2]]]", lambda a, b: 3 * a + b - 3),
    ("[[j1,[j1,j2]],j2]", lambda a, b: 2 * a + 2 * b - 3),
    ("[[[j1,j2],j2],j2]", lambda a, b: a + 3 * b - 3),
]


def hilton_decompose(wedge: tuple[int, int], m: int) -> list[tuple[str, int]]:
    """Basic products of S^a v S^b whose sphere contributes to pi_m."""
    a, b = wedge
    for name, dim in _HM_NEXT:
        if dim(a, b) <= m:
            raise RangeExceeded(f"basic product {name} on S^{dim(a, b)} contributes to pi_{m}")
    return [(name, dim(a, b)) for name, dim, _ in _HM if dim(a, b) <= m]


def rename_products(word: str, a_name: str, b_name: str) -> str:
    return word.replace("j1", "\0").replace("j2", b_name).replace("\0", a_name)
