#!/usr/bin/env python3
"""Write src/moorepi/facts/core.json from the curated tables below.

The JSON file is what the package reads; this script is only the editing
surface (comments, shared provenance strings, helpers for repeated shapes).
Run it after changing any table and commit both files.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "moorepi" / "facts" / "core.json"

TODA = "sphere table (Toda, Composition Methods)"
TODA_REL = "composition relation (Toda, Composition Methods)"
JAMES = "James-Hopf invariant (Toda, Composition Methods)"
WH = "Whitehead square (Toda, Composition Methods)"
ODA = "unstable relation (Oda)"
IMPORTED_LOW = "imported: low-dimensional homotopy of mod 2^r Moore spaces"

SPHERES: dict[str, dict] = {}
FACTS: list[dict] = []
_ids: set[str] = set()


def sph(n: int, m: int, *gens, src: str = TODA) -> None:
    """pi_m(S^n): gens are (word, order) pairs; order 0 means Z."""
    key = f"S{n}:{m}"
    assert key not in SPHERES, key
    SPHERES[key] = {"gens": [[w, o] for w, o in gens], "src": src}


def _slug(text: str) -> str:
    out = []
    for ch in text:
        if ch.isalnum():
            out.append(ch)
        elif ch == "'":
            out.append("p")
        elif out and out[-1] != "-":
            out.append("-")
    return "".join(out).strip("-")


def add(kind: str, fid: str | None = None, **data) -> dict:
    base = fid or f"{kind}.{_slug(str(data.get('lhs') or data.get('name') or data.get('gen') or data.get('group')))}"
    fid = base
    i = 2
    while fid in _ids:
        fid = f"{base}.{i}"
        i += 1
    _ids.add(fid)
    rec = {"id": fid, "kind": kind}
    rec.update({k: v for k, v in data.items() if v is not None})
    FACTS.append(rec)
    return rec


def fam(name: str, stem: int, base: int) -> None:
    add("family", f"family.{name}", name=name, stem=stem, base=base)


def sym(name: str, source: int, target: int, suspension: bool = False, note: str | None = None) -> None:
    add("symbol", f"symbol.{_slug(name)}", name=name, source=source, target=target,
        suspension=suspension or None, note=note)


def comp(lhs: str, rhs: str, src: str = TODA_REL, stable: bool = False, when: str | None = None,
         note: str | None = None, order: int | None = None, fid: str | None = None) -> None:
    add("composition", fid, lhs=lhs, rhs=rhs, src=src, stable=stable or None, when=when, note=note, order=order)


def susp(lhs: str, rhs: str, src: str = TODA_REL, stable: bool = True, note: str | None = None) -> None:
    add("suspension", None, lhs=lhs, rhs=rhs, src=src, stable=stable or None, note=note)


def hopf(lhs: str, rhs: str, src: str = JAMES, note: str | None = None) -> None:
    add("hopf", None, lhs=lhs, rhs=rhs, src=src, note=note)


def white(lhs: str, rhs: str, src: str = WH, stable: bool = False, note: str | None = None) -> None:
    add("whitehead", None, lhs=lhs, rhs=rhs, src=src, stable=stable or None, note=note)


def degree(lhs: str, rhs: str, src: str = ODA, note: str | None = None) -> None:
    add("degree", None, lhs=lhs, rhs=rhs, src=src, note=note)


def bracket(f: str, g: str, h: str, rhs: str, src: str, indeterminacy: str | None = None,
            when: str | None = None) -> None:
    add("bracket", f"bracket.{_slug(f)}.{_slug(g)}.{_slug(h)}", f=f, g=g, h=h, rhs=rhs, src=src,
        indeterminacy=indeterminacy, when=when)


def bnd(map_id: str, gen: str, image: str, src: str, when: str | None = None, note: str | None = None) -> None:
    add("boundary", f"boundary.{map_id}.{_slug(gen)}" + (f".{_slug(when)}" if when else ""),
        map=map_id, gen=gen, image=image, src=src, when=when, note=note)


def con(kind: str, src: str, when: str | None = None, **kw) -> dict:
    d = {"kind": kind}
    d.update(kw)
    if when:
        d["when"] = when
    d["src"] = src
    return d


def stage(group: str, src: str, constraints=(), extra=(), lifts=None, beyond_range: bool = False,
          note: str | None = None) -> None:
    add("stage", f"stage.{group}", group=group, constraints=list(constraints) or None,
        extra=list(extra) or None, lifts=lifts, beyond_range=beyond_range or None, src=src, note=note)


_STEMS = {"eps": 8, "mu": 9, "bar_nu": 8, "nu": 3, "eta": 1, "sigma": 7}


def word_stem(word: str) -> int:
    """Stem of a word of family generators, e.g. 'nu_5 mu_8' -> 12."""
    return sum(_STEMS[tok.rsplit("_", 1)[0]] for tok in word.split())


GAMMA = {"params": {}, "k": {}}
TABLES: list[dict] = []


def param(name: str, parity: str, samples, note: str) -> None:
    GAMMA["params"][name] = {"parity": parity, "samples": list(samples), "note": note}


def table(space: int, i: int, cases, src: str, group: str | None = None) -> None:
    """cases: list of (when, pattern) or (when, pattern, erratum, reason); when None means all r.

    An erratum is the value the derivation itself supports where the printed
    table disagrees with it.
    """
    out = []
    for case in cases:
        w, v = case[:2]
        d = {"when": w} if w else {}
        d["value"] = v
        if len(case) > 2:
            d["erratum"] = {"value": case[2], "reason": case[3]}
        out.append(d)
    TABLES.append({"id": f"P{space}.pi{i}", "space": space, "i": i, "cases": out, "src": src,
                   "group": group or f"P{space}"})


# ====================================================================== symbols

for name, stem, base in [("eta", 1, 2), ("nu", 3, 4), ("sigma", 7, 8), ("eps", 8, 3), ("bar_nu", 8, 6),
                         ("mu", 9, 3), ("zeta", 11, 5), ("kappa", 14, 7), ("bar_eps", 15, 3),
                         ("rho", 15, 13), ("bar_mu", 17, 3), ("omega", 14, 16)]:
    fam(name, stem, base)

sym("nu'", 6, 3)
sym("eps'", 13, 3)
sym("mu'", 14, 3)
sym("sigma'''", 12, 5)
sym("sigma''", 13, 6)
sym("sigma'", 14, 7)
sym("Delta(iota_13)", 11, 6, note="the Whitehead square [iota_6, iota_6]")
sym("Delta(sigma_13)", 18, 6)
sym("Delta(iota_21)", 19, 10, note="the Whitehead square [iota_10, iota_10]")
sym("Delta(iota_17)", 15, 8, note="the Whitehead square [iota_8, iota_8] up to the Hopf class")

sys.path.insert(0, str(Path(__file__).resolve().parent))
import facts_spheres  # noqa: E402  (sphere groups and relations)
import facts_moore  # noqa: E402  (boundary facts, stages, tables)

facts_spheres.build(sys.modules[__name__])
facts_moore.build(sys.modules[__name__])


def main() -> int:
    doc = {"version": "1.0", "sphere_groups": SPHERES, "facts": FACTS, "gamma": GAMMA, "expected_tables": TABLES}
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(SPHERES)} sphere groups, {len(FACTS)} records, {len(TABLES)} table entries)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
