"""Free tensor algebra T<alphabet> over Z or Z/2^r.

This models the homology of a loop space on a wedge or a two-cell complex
(Bott-Samelson), which is where Samelson products become commutators and
where the non-divisibility of a Hurewicz image can be read off from word
coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import AlphabetMismatch

Word = tuple[str, ...]

DEFAULT_DEGREE_CAP = 24


class DegreeCapExceeded(ValueError):
    """A product would contain a word above the configured degree cap."""


@dataclass(frozen=True)
class Alphabet:
    """Graded generators, e.g. Alphabet.of(u=2, v=3)."""

    degrees: tuple[tuple[str, int], ...]
    cap: int = DEFAULT_DEGREE_CAP

    @classmethod
    def of(cls, cap: int = DEFAULT_DEGREE_CAP, **degrees: int) -> "Alphabet":
        return cls(tuple(degrees.items()), cap)

    def degree(self, word: Word) -> int:
        table = dict(self.degrees)
        try:
            return sum(table[g] for g in word)
        except KeyError as exc:
            raise AlphabetMismatch(f"letter {exc.args[0]!r} is not in the alphabet") from None

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.degrees)


@dataclass(frozen=True)
class TAElement:
    """Sparse linear combination of words; modulus 0 means integral."""

    alphabet: Alphabet
    modulus: int
    terms: tuple[tuple[Word, int], ...] = field(default=())

    @classmethod
    def build(cls, alphabet: Alphabet, modulus: int, pairs: Iterable[tuple[Word, int]] | Mapping[Word, int]
              ) -> "TAElement":
        if modulus < 0:
            raise ValueError("modulus must be 0 or positive")
        acc: dict[Word, int] = {}
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        for w, c in items:
            w = tuple(w)
            if alphabet.degree(w) > alphabet.cap:
                raise DegreeCapExceeded(f"word {' '.join(w)} has degree above {alphabet.cap}")
            acc[w] = acc.get(w, 0) + c
        out = []
        for w in sorted(acc, key=lambda w: (len(w), w)):
            c = acc[w] % modulus if modulus else acc[w]
            if c:
                out.append((w, c))
        return cls(alphabet, modulus, tuple(out))

    @classmethod
    def letter(cls, alphabet: Alphabet, modulus: int, name: str, coef: int = 1) -> "TAElement":
        return cls.build(alphabet, modulus, [((name,), coef)])

    def coefficient(self, word: Iterable[str] | str) -> int:
        w = tuple(word.split()) if isinstance(word, str) else tuple(word)
        return dict(self.terms).get(w, 0)

    def degrees(self) -> set[int]:
        return {self.alphabet.degree(w) for w, _ in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "TAElement") -> None:
        if self.alphabet.degrees != other.alphabet.degrees or self.modulus != other.modulus:
            raise AlphabetMismatch("elements live in different tensor algebras")

    def __add__(self, other: "TAElement") -> "TAElement":
        self._check(other)
        return TAElement.build(self.alphabet, self.modulus, list(self.terms) + list(other.terms))

    def __neg__(self) -> "TAElement":
        return self.scale(-1)

    def __sub__(self, other: "TAElement") -> "TAElement":
        return self + (-other)

    def scale(self, k: int) -> "TAElement":
        return TAElement.build(self.alphabet, self.modulus, [(w, k * c) for w, c in self.terms])

    def __mul__(self, other: "TAElement") -> "TAElement":
        return ta_multiply(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms:
            body = "(x)".join(w)
            parts.append(body if c == 1 else f"-{body}" if c == -1 else f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def ta_multiply(x: TAElement, y: TAElement) -> TAElement:
    """Concatenation product."""
    x._check(y)
    return TAElement.build(x.alphabet, x.modulus, [(u + v, a * b) for u, a in x.terms for v, b in y.terms])


def _homogeneous_parts(x: TAElement) -> dict[int, TAElement]:
    parts: dict[int, list] = {}
    for w, c in x.terms:
        parts.setdefault(x.alphabet.degree(w), []).append((w, c))
    return {d: TAElement.build(x.alphabet, x.modulus, p) for d, p in parts.items()}


def ta_bracket(x: TAElement, y: TAElement, graded: bool = False) -> TAElement:
    """[x, y] = xy - yx, or xy - (-1)^{|x||y|} yx with graded=True.

    The graded form is applied to homogeneous components separately.
    """
    x._check(y)
    if not graded:
        return ta_multiply(x, y) - ta_multiply(y, x)
    out = TAElement(x.alphabet, x.modulus)
    for dx, px in _homogeneous_parts(x).items():
        for dy, py in _homogeneous_parts(y).items():
            sign = -1 if (dx * dy) % 2 else 1
            out = out + ta_multiply(px, py) - ta_multiply(py, px).scale(sign)
    return out


def left_normed(u: TAElement, v: TAElement, depth: int, graded: bool = False) -> TAElement:
    """[u, [u, ..., [u, v]...]] with depth copies of u."""
    out = v
    for _ in range(depth):
        out = ta_bracket(u, out, graded)
    return out


@dataclass(frozen=True)
class Divisibility:
    """Verdict of hurewicz_divisibility; truthy when 2^s x is NOT divisible."""

    s: int
    not_divisible: bool
    witness: Word | None = None

    @property
    def divisible(self) -> bool:
        return not self.not_divisible

    def __bool__(self) -> bool:
        return self.not_divisible


def hurewicz_divisibility(x: TAElement, power: int) -> Divisibility:
    """Decide whether 2^s x is divisible by power = 2^(s+1) in T over Z/2^r.

    In a free Z/2^r-module an element is divisible by 2^(s+1) exactly when
    every coordinate is, so one coefficient off that subgroup is a witness.
    """
    if power < 2 or power & (power - 1):
        raise ValueError("power must be 2^(s+1) with s >= 0")
    s = power.bit_length() - 2
    mod = x.modulus
    if mod and (mod & (mod - 1) or power > mod):
        raise ValueError("need modulus 2^r with s < r")
    for w, c in x.scale(2 ** s).terms:
        if c % power:
            return Divisibility(s, True, w)
    return Divisibility(s, False)


def samelson_h2_model(m: int, n: int, graded: bool = False) -> tuple[int, int, int, int]:
    """Quadratic coefficients (x11, x12, x21, x22) of the commutator of a and b.

    a and b stand for the Hurewicz images of the two wedge inclusions, with
    |a| = m and |b| = n.  The Samelson product of the inclusions maps to
    [a, b]; its second James-Hopf image is read off from the words aa, ab,
    ba, bb.
    """
    if m < 1 or n < 1:
        raise ValueError("degrees must be positive")
    alph = Alphabet.of(cap=max(DEFAULT_DEGREE_CAP, 2 * max(m, n)), a=m, b=n)
    a = TAElement.letter(alph, 0, "a")
    b = TAElement.letter(alph, 0, "b")
    br = ta_bracket(a, b, graded)
    return (br.coefficient(("a", "a")), br.coefficient(("a", "b")), br.coefficient(("b", "a")),
            br.coefficient(("b", "b")))
