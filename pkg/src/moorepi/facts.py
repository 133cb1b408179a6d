"""Loading, validating and querying the curated fact file.

The file is UTF-8 JSON with exactly the top-level keys ``version``,
``sphere_groups``, ``facts``, ``gamma`` and ``expected_tables``; the full
schema is described in ``docs/factfile.md``.  Loading is all-or-nothing: a
malformed file raises :class:`ParseError`, a structurally invalid record
raises :class:`ValidationError`.  Mathematical consistency (degree chains,
orders, suspension homomorphisms, bracket shapes) is checked separately by
:func:`validate`, which reports findings instead of raising.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping

from .abelian import FgAbGroup, element_order, group_from_presentation
from .errors import (DimensionMismatch, FactGap, MissingFact, NotComposable, NotCurated, ParseError,
                     ValidationError)
from .rexpr import ExprError, holds, names as expr_names
from .symbols import (SymbolTable, SymbolicParam, canonical_word, parse_element, split_top, tokenize)

TOP_KEYS = ("version", "sphere_groups", "facts", "gamma", "expected_tables")
RELATION_KINDS = ("composition", "suspension", "hopf", "whitehead", "degree", "bracket")
KINDS = ("family", "symbol") + RELATION_KINDS + ("boundary", "stage")
REWRITE_KINDS = ("composition", "suspension", "whitehead")
CONSTRAINT_KINDS = ("splits", "does_not_split", "lift_order", "lift_min_order", "lift_double_equals",
                    "summand_splits_off", "has_summand")

_REQUIRED = {
    "family": ("name", "stem", "base"),
    "symbol": ("name", "source", "target"),
    "composition": ("lhs", "rhs"),
    "suspension": ("lhs", "rhs"),
    "hopf": ("lhs", "rhs"),
    "whitehead": ("lhs", "rhs"),
    "degree": ("lhs", "rhs"),
    "bracket": ("f", "g", "h", "rhs"),
    "boundary": ("map", "gen", "image"),
    "stage": ("group",),
}
_OPTIONAL = {"stable", "id", "kind", "src", "when", "note", "order", "suspension", "indeterminacy", "lifts",
             "extra", "constraints", "beyond_range"}

DEFAULT_ENV = {"r": 1}


def bundled_path() -> Path:
    return Path(str(resources.files("moorepi") / "facts" / "core.json"))


def default_path() -> Path:
    env = os.environ.get("MOOREPI_FACTS")
    return Path(env) if env else bundled_path()


@dataclass(frozen=True)
class FactRecord:
    fid: str
    kind: str
    data: Mapping[str, Any]
    src: str

    @property
    def lhs(self) -> str:
        return self.data.get("lhs", "")

    @property
    def rhs(self) -> str:
        return self.data.get("rhs", "")

    @property
    def when(self) -> str | None:
        return self.data.get("when")

    def get(self, key: str, default: Any = None) -> Any:
        return self.data.get(key, default)

    def applies(self, env: Mapping[str, int]) -> bool:
        return holds(self.when, env)

    def key(self, engine) -> tuple[str, str, str]:
        """Canonical (f, g, h) key of a bracket fact under the engine's environment."""
        parts = []
        for slot in ("f", "g", "h"):
            parts.append(str(parse_element(self.data[slot], engine.table, engine.env)))
        return tuple(parts)


@dataclass(frozen=True)
class Finding:
    record: str
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.record}: {self.kind}: {self.message}"


@dataclass
class FactBase:
    version: str
    spheres: dict[tuple[int, int], tuple[tuple[str, int], ...]]
    sphere_src: dict[tuple[int, int], str]
    records: list[FactRecord]
    gamma: dict[str, Any]
    expected_tables: list[dict[str, Any]]
    symbols: SymbolTable = field(init=False)
    params: dict[str, SymbolicParam] = field(init=False)

    def __post_init__(self) -> None:
        fams, fixed = {}, {}
        for rec in self.records:
            if rec.kind == "family":
                fams[rec.get("name")] = {"stem": rec.get("stem"), "base": rec.get("base")}
            elif rec.kind == "symbol":
                fixed[rec.get("name")] = {"source": rec.get("source"), "target": rec.get("target"),
                                          "suspension": rec.get("suspension", False)}
        self.symbols = SymbolTable(fams, fixed)
        self.params = {}
        for name, spec in self.gamma.get("params", {}).items():
            self.params[name] = SymbolicParam(name, spec["parity"], tuple(spec["samples"]))
        self._by_kind: dict[str, list[FactRecord]] = {}
        for rec in self.records:
            self._by_kind.setdefault(rec.kind, []).append(rec)
        self._boundary: dict[tuple[str, str], list[FactRecord]] = {}
        for rec in self._by_kind.get("boundary", []):
            word = " ".join(canonical_word(self.symbols, tokenize(rec.get("gen"))))
            self._boundary.setdefault((rec.get("map"), word), []).append(rec)
        self._stages: dict[str, FactRecord] = {rec.get("group"): rec for rec in self._by_kind.get("stage", [])}

    # -- queries
    def has_sphere(self, n: int, k: int) -> bool:
        return (n, k) in self.spheres

    def query_sphere_entry(self, n: int, k: int) -> tuple[tuple[str, int], ...]:
        if (n, k) not in self.spheres:
            raise NotCurated(f"pi_{n + k}(S^{n})")
        return self.spheres[(n, k)]

    def query_sphere_group(self, n: int, k: int) -> FgAbGroup:
        """pi_{n+k}(S^n) with its declared generators (2-local)."""
        entry = self.query_sphere_entry(n, k)
        if not entry:
            return FgAbGroup((), 0, ())
        gens = [w for w, _ in entry]
        rels = []
        for i, (_, o) in enumerate(entry):
            if o:
                rels.append([o if j == i else 0 for j in range(len(entry))])
        return group_from_presentation(gens, rels)

    def records_of(self, kind: str) -> list[FactRecord]:
        return list(self._by_kind.get(kind, ()))

    def rewrite_records(self) -> list[FactRecord]:
        out = []
        for kind in REWRITE_KINDS:
            out.extend(self._by_kind.get(kind, ()))
        return out

    def query_fact(self, kind: str, key: str) -> FactRecord:
        """First record of ``kind`` whose id, lhs or generator equals ``key``."""
        for rec in self._by_kind.get(kind, ()):
            if key in (rec.fid, rec.lhs, rec.get("gen"), rec.get("group")):
                return rec
        raise NotCurated(f"{kind} fact {key!r}")

    def boundary_facts(self, map_id: str, word: str) -> list[FactRecord]:
        return self._boundary.get((map_id, word), [])

    def stage(self, gid: str) -> FactRecord | None:
        return self._stages.get(gid)

    def gamma3_text(self, k: int) -> str:
        entry = self.gamma.get("k", {}).get(str(k))
        if not entry or "gamma3" not in entry:
            raise NotCurated(f"gamma3 for k={k}")
        return entry["gamma3"]

    def default_env(self, r: int) -> dict[str, int]:
        env = {"r": r}
        for p in self.params.values():
            env[p.name] = p.samples[0]
        return env

    def without(self, fid: str) -> "FactBase":
        """A copy with one record removed (used to surface fact gaps)."""
        recs = [r for r in self.records if r.fid != fid]
        if len(recs) == len(self.records):
            raise NotCurated(f"fact {fid}")
        return FactBase(self.version, self.spheres, self.sphere_src, recs, self.gamma, self.expected_tables)

    def counts(self) -> dict[str, int]:
        out = {"sphere_groups": len(self.spheres)}
        for kind in KINDS:
            out[kind] = len(self._by_kind.get(kind, ()))
        out["relations"] = sum(out[k] for k in RELATION_KINDS + ("boundary",))
        return out

    # -- serialization
    def to_json(self) -> dict[str, Any]:
        spheres = {}
        for (n, k) in sorted(self.spheres):
            spheres[f"S{n}:{n + k}"] = {"gens": [[w, o] for w, o in self.spheres[(n, k)]],
                                        "src": self.sphere_src[(n, k)]}
        facts = []
        for rec in self.records:
            d = {"id": rec.fid, "kind": rec.kind}
            d.update({k: v for k, v in rec.data.items()})
            d["src"] = rec.src
            facts.append(d)
        return {"version": self.version, "sphere_groups": spheres, "facts": facts,
                "gamma": self.gamma, "expected_tables": self.expected_tables}

    def serialize(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True, ensure_ascii=False) + "\n"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FactBase) and self.to_json() == other.to_json()


# ---------------------------------------------------------------- loading

def _sphere_key(key: str) -> tuple[int, int]:
    try:
        n_txt, m_txt = key[1:].split(":")
        n, m = int(n_txt), int(m_txt)
    except ValueError:
        raise ValidationError(key, "sphere group keys look like S<n>:<m>") from None
    if not key.startswith("S") or n < 1:
        raise ValidationError(key, "sphere group keys look like S<n>:<m>")
    return n, m - n


def _check_record(i: int, raw: Any) -> FactRecord:
    if not isinstance(raw, dict):
        raise ValidationError(f"facts[{i}]", "record must be an object")
    fid = raw.get("id") or f"facts[{i}]"
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ValidationError(fid, f"unknown kind {kind!r}")
    for key in _REQUIRED[kind]:
        if key not in raw:
            raise ValidationError(fid, f"missing field {key!r}")
    allowed = set(_REQUIRED[kind]) | _OPTIONAL
    extra = set(raw) - allowed
    if extra:
        raise ValidationError(fid, f"unknown field(s) {sorted(extra)}")
    if kind not in ("family", "symbol") and not raw.get("src"):
        raise ValidationError(fid, "provenance (src) must be non-empty")
    if raw.get("when") is not None:
        try:
            expr_names(raw["when"])
        except ExprError as exc:
            raise ValidationError(fid, str(exc)) from None
    if kind == "stage":
        for con in raw.get("constraints", []):
            if con.get("kind") not in CONSTRAINT_KINDS:
                raise ValidationError(fid, f"unknown constraint kind {con.get('kind')!r}")
    data = {k: v for k, v in raw.items() if k not in ("id", "kind", "src")}
    return FactRecord(fid, kind, data, raw.get("src", ""))


def loads(text: str) -> FactBase:
    if not text.strip():
        raise ParseError(1, "empty fact file")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    if not isinstance(raw, dict):
        raise ParseError(1, "top level must be an object")
    keys = set(raw)
    if keys != set(TOP_KEYS):
        missing, unknown = set(TOP_KEYS) - keys, keys - set(TOP_KEYS)
        reason = []
        if unknown:
            reason.append(f"unknown keys {sorted(unknown)}")
        if missing:
            reason.append(f"missing keys {sorted(missing)}")
        raise ValidationError("<top>", "; ".join(reason))
    spheres: dict[tuple[int, int], tuple[tuple[str, int], ...]] = {}
    src: dict[tuple[int, int], str] = {}
    for key, entry in raw["sphere_groups"].items():
        nk = _sphere_key(key)
        if not isinstance(entry, dict) or set(entry) - {"gens", "src"} or "gens" not in entry:
            raise ValidationError(key, "sphere entries have fields gens and src")
        gens = []
        for g in entry["gens"]:
            if not (isinstance(g, list) and len(g) == 2 and isinstance(g[0], str) and isinstance(g[1], int)):
                raise ValidationError(key, f"generator {g!r} must be [word, order]")
            if g[1] < 0 or (g[1] and g[1] & (g[1] - 1)):
                raise ValidationError(key, f"order {g[1]} is not 0 or a power of 2")
            gens.append((g[0], g[1]))
        if not entry.get("src"):
            raise ValidationError(key, "provenance (src) must be non-empty")
        spheres[nk] = tuple(gens)
        src[nk] = entry["src"]
    if not isinstance(raw["facts"], list):
        raise ValidationError("facts", "must be a list")
    records = [_check_record(i, r) for i, r in enumerate(raw["facts"])]
    ids = [r.fid for r in records]
    dup = {x for x in ids if ids.count(x) > 1}
    if dup:
        raise ValidationError(sorted(dup)[0], "duplicate record id")
    gamma = raw["gamma"]
    if not isinstance(gamma, dict) or set(gamma) - {"params", "k"}:
        raise ValidationError("gamma", "gamma has fields params and k")
    for name, spec in gamma.get("params", {}).items():
        if set(spec) - {"parity", "samples", "note"}:
            raise ValidationError(f"gamma.params.{name}", "unknown field")
        try:
            SymbolicParam(name, spec["parity"], tuple(spec["samples"]))
        except (KeyError, ValueError) as exc:
            raise ValidationError(f"gamma.params.{name}", str(exc)) from None
    tables = raw["expected_tables"]
    if not isinstance(tables, list):
        raise ValidationError("expected_tables", "must be a list")
    for i, t in enumerate(tables):
        if not isinstance(t, dict) or not {"id", "space", "i", "cases"} <= set(t) \
                or set(t) - {"id", "space", "i", "cases", "src", "group"}:
            raise ValidationError(f"expected_tables[{i}]", "entries have id, space, i, cases, src, group")
    try:
        return FactBase(str(raw["version"]), spheres, src, records, gamma, tables)
    except (ValueError, KeyError, TypeError) as exc:
        raise ValidationError("<symbols>", str(exc)) from None


def load(path: str | os.PathLike | None = None) -> FactBase:
    p = Path(path) if path is not None else default_path()
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(0, f"cannot read {p}: {exc.strerror}") from None
    return loads(text)


# ---------------------------------------------------------------- validation

def _order_of(engine, text: str, dims) -> int | None:
    """Order of an element in its curated sphere group, or None if unknown."""
    src, tgt = dims
    if tgt is None:
        return None
    try:
        x = parse_element(text, engine.table, engine.env, dims)
        if engine.sphere_known_trivial(tgt, src):
            return 1
        amb = engine.sphere(tgt, src)
        return element_order(engine.normalize(x, amb))
    except (FactGap, DimensionMismatch, NotComposable, ExprError):
        return None


def _divides(a: int, b: int) -> bool:
    """a | b with 0 standing for infinite order."""
    if b == 0:
        return True
    return a != 0 and b % a == 0


def validate(fb: FactBase, env: Mapping[str, int] | None = None) -> list[Finding]:
    """Consistency report: an empty list means the file passes the gate."""
    from .symbols import SymbolEngine

    out: list[Finding] = []
    table = fb.symbols
    envs = [env] if env is not None else [fb.default_env(r) for r in (1, 2, 3)]
    # sphere groups: every generator word must typecheck into pi_m(S^n)
    for (n, k), gens in fb.spheres.items():
        for w, _ in gens:
            try:
                s, t = table.word_dims(canonical_word(table, tokenize(w)))
                if (s, t) != (n + k, n):
                    out.append(Finding(f"S{n}:{n + k}", "degree chain", f"{w} maps S^{s} to S^{t}"))
            except (DimensionMismatch, FactGap) as exc:
                out.append(Finding(f"S{n}:{n + k}", "degree chain", f"{w}: {exc}"))
    for rec in fb.records:
        if rec.kind in ("composition", "suspension", "whitehead", "hopf", "degree"):
            try:
                lhs = canonical_word(table, tokenize(rec.lhs))
                dims = table.word_dims(lhs)
            except (DimensionMismatch, FactGap) as exc:
                out.append(Finding(rec.fid, "degree chain", str(exc)))
                continue
            rdims = dims if rec.kind != "hopf" else (dims[0], 2 * dims[1] - 1)
            try:
                for e in envs:
                    env_t = dict(e, t=2)
                    parse_element(rec.rhs, table, env_t, rdims)
            except (DimensionMismatch, FactGap) as exc:
                out.append(Finding(rec.fid, "degree chain", f"right-hand side: {exc}"))
                continue
            except ExprError as exc:
                out.append(Finding(rec.fid, "expression", str(exc)))
                continue
        elif rec.kind == "bracket":
            try:
                f, g, h = (parse_element(rec.get(s), table, envs[0]) for s in ("f", "g", "h"))
                if f.source != g.target or g.source != h.target:
                    raise DimensionMismatch(f"{f}, {g}, {h} do not chain")
                parse_element(rec.rhs, table, envs[0], (h.source + 1, f.target))
            except (DimensionMismatch, FactGap, ExprError) as exc:
                out.append(Finding(rec.fid, "degree chain", str(exc)))
                continue
    if any(f.kind == "degree chain" for f in out):
        return out
    for e in envs:
        try:
            engine = SymbolEngine(fb, e)
        except (FactGap, DimensionMismatch, ExprError, ValueError) as exc:
            out.append(Finding("<engine>", "construction", str(exc)))
            return out
        out.extend(_order_findings(fb, engine))
        out.extend(_bracket_findings(fb, engine))
    out.extend(_dangling(fb))
    uniq, seen = [], set()
    for f in out:
        if str(f) not in seen:
            seen.add(str(f))
            uniq.append(f)
    return uniq


def _order_findings(fb: FactBase, engine) -> list[Finding]:
    out = []
    table = engine.table
    for rec in fb.records:
        if rec.kind not in ("composition", "suspension") or not rec.applies(engine.env):
            continue
        lhs = canonical_word(table, tokenize(rec.lhs))
        dims = table.word_dims(lhs)
        o_rhs = _order_of(engine, rec.rhs, dims)
        declared = rec.get("order")
        if declared is not None and o_rhs is not None and o_rhs != declared:
            out.append(Finding(rec.fid, "order conflict",
                               f"declared order {declared} but the value has order {o_rhs}"))
        if declared is not None:
            bound = _group_exponent(engine, dims)
            if bound is not None and not _divides(declared, bound):
                out.append(Finding(rec.fid, "order conflict",
                                   f"declared order {declared} exceeds the exponent {bound} of the target group"))
        if o_rhs is None:
            continue
        bounds = []
        if rec.kind == "suspension":
            inner = lhs[0][2:-1] if lhs[0].startswith("E(") else None
            if inner is not None:
                bounds.append(_order_of(engine, inner, table.word_dims(canonical_word(table, tokenize(inner)))))
        else:
            for i in range(1, len(lhs)):
                head, tail = lhs[:i], lhs[i:]
                try:
                    hd = table.word_dims(head)
                    bounds.append(_order_of(engine, " ".join(head), hd))
                    if table.is_suspension_word(tail):
                        bounds.append(_order_of(engine, " ".join(tail), table.word_dims(tail)))
                except (DimensionMismatch, FactGap):
                    continue
        for b in bounds:
            if b is not None and not _divides(o_rhs, b):
                out.append(Finding(rec.fid, "order conflict",
                                   f"value of order {o_rhs} cannot come from a factor of order {b}"))
                break
    return out


def _group_exponent(engine, dims) -> int | None:
    src, tgt = dims
    if tgt is None:
        return None
    if engine.sphere_known_trivial(tgt, src):
        return 1
    if not engine.facts.has_sphere(tgt, src - tgt):
        return None
    g = engine.sphere(tgt, src).group
    if g.free_rank:
        return 0
    return max(g.torsion, default=1)


def _bracket_findings(fb: FactBase, engine) -> list[Finding]:
    out = []
    for rec in fb.records_of("bracket"):
        if not rec.applies(engine.env):
            continue
        try:
            f, g, h = (parse_element(rec.get(s), engine.table, engine.env) for s in ("f", "g", "h"))
            for x, y, label in ((f, g, "f o g"), (g, h, "g o h")):
                comp = engine.compose(x, y)
                if not comp.is_zero() and comp.target is not None and comp.source >= 0:
                    amb = engine.sphere(comp.target, comp.source)
                    if not engine.normalize(comp, amb).is_zero():
                        out.append(Finding(rec.fid, "bracket", f"{label} is not null-homotopic"))
            engine.toda_bracket(f, g, h)
        except FactGap as exc:
            out.append(Finding(rec.fid, "bracket", f"indeterminacy not computable: {exc}"))
        except (DimensionMismatch, NotComposable) as exc:
            out.append(Finding(rec.fid, "degree chain", str(exc)))
    return out


def _element_texts(fb: FactBase) -> Iterable[tuple[str, str]]:
    for k, entry in fb.gamma.get("k", {}).items():
        for key in ("gamma3",):
            if key in entry:
                yield f"gamma.k.{k}.{key}", entry[key]
    for rec in fb.records:
        if rec.kind == "boundary":
            yield rec.fid, rec.get("image")
        elif rec.kind == "stage":
            for x in rec.get("extra", []):
                yield rec.fid, x["value"] if isinstance(x, dict) else x
            for con in rec.get("constraints", []):
                for key in ("element", "value"):
                    if isinstance(con.get(key), str):
                        yield rec.fid, con[key]


def _dangling(fb: FactBase) -> list[Finding]:
    """Every symbol named in gamma data and stage records must resolve."""
    out = []
    table = fb.symbols
    env = fb.default_env(1)
    for where, text in _element_texts(fb):
        for piece in _symbol_words(text):
            for tok in piece:
                if tok.startswith("lift("):
                    continue
                try:
                    table.symbol(table.canonical(tok))
                except (FactGap, DimensionMismatch) as exc:
                    out.append(Finding(where, "dangling symbol", f"{tok}: {exc}"))
    return out


def _symbol_words(text: str) -> list[tuple[str, ...]]:
    """Words appearing in an element text, coefficients stripped."""
    out = []
    depth, cur, pieces = 0, [], []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-":
            pieces.append("".join(cur))
            cur = []
            continue
        cur.append(ch)
    pieces.append("".join(cur))
    for p in pieces:
        p = p.strip()
        if not p or p == "0":
            continue
        body = split_top(p, "*")[-1]
        out.append(tokenize(body))
    return out


def dangling_scan(fb: FactBase) -> int:
    return len(_dangling(fb))
