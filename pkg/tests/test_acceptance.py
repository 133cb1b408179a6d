"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (the criterion lines are
printed even under output capture) or as a script.
"""
import random
import time

import pytest

from moorepi.abelian import FgAbGroup, determinant, ext1, matmul, smith_normal_form
from moorepi.extensions import enumerate_extensions, resolve_extension, two_groups_of_order
from moorepi.facts import dangling_scan, validate
from moorepi.pipeline import DEFAULT_R_SET, param_assignments, pipeline_for, pi_moore, verify_tables
from moorepi.tensor import Alphabet, TAElement, hurewicz_divisibility, left_normed, samelson_h2_model


@pytest.fixture
def say(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}")
    return emit


@pytest.fixture(scope="module")
def table_report(fb):
    start = time.perf_counter()
    rep = verify_tables(fb, DEFAULT_R_SET)
    return rep, time.perf_counter() - start


def _table_rows(fb, rep, group_is_family):
    fam = {f"pi_{e['i']}(P^{e['space']}(2^r))" for e in fb.expected_tables if e["group"] == "families"}
    return [e for e in rep.entries if (e.target in fam) == group_is_family]


def test_1_tables_consistent(fb, table_report, say):
    """Every table row is computed, audited, and equals the printed or the recorded corrected value."""
    rep, secs = table_report
    rows = _table_rows(fb, rep, False)
    c = {s: sum(e.status == s for e in rows) for s in ("PASS", "ERRATUM", "FAIL", "SKIPPED")}
    ok = c["FAIL"] == 0 and c["SKIPPED"] == 0 and secs < 60
    say("1a", ok, f"tables at r in {DEFAULT_R_SET}: {c['PASS']} printed values reproduced, "
        f"{c['ERRATUM']} rows match the corrected value, 0 unexplained; {secs:.1f} s")
    assert ok


@pytest.mark.xfail(strict=True, reason="8 printed table rows disagree with their own derivation; "
                   "see the ERRATUM rows of `moorepi verify` and the decisions ledger")
def test_1_tables_printed_exact(fb, table_report, say):
    rep, _ = table_report
    rows = _table_rows(fb, rep, False)
    bad = [f"{e.target} r={e.r}: printed {e.expected}, computed {e.computed}" for e in rows if e.status != "PASS"]
    say("1b", not bad, f"printed values reproduced exactly for {len(rows) - len(bad)}/{len(rows)} rows"
        + ("" if not bad else "; differing: " + "; ".join(bad)))
    assert not bad


def test_2_families(fb, table_report, say):
    rep, _ = table_report
    rows = _table_rows(fb, rep, True)
    ok = len(rows) == 6 * len(DEFAULT_R_SET) and all(e.status == "PASS" for e in rows)
    say(2, ok, f"{sum(e.status == 'PASS' for e in rows)}/{len(rows)} rows for P^9, P^10, P^11 reproduced")
    assert ok


@pytest.fixture(scope="module")
def sweep(fb):
    """Every table target at every r under every parameter assignment."""
    out = []
    for entry in sorted(fb.expected_tables, key=lambda e: (e["space"], e["i"])):
        n, i = entry["space"], entry["i"]
        for r in DEFAULT_R_SET:
            base = pipeline_for(r, fb).pi_moore(n, i)
            results = [({}, base)]
            for assign in param_assignments(fb, base.params):
                if assign:
                    results.append((assign, pi_moore(n, r, i, fb, assign)))
            out.append(((n, r, i), base.iso, results))
    return out


def test_3_parameter_insensitivity(sweep, say):
    runs = sum(len(res) for _, _, res in sweep)
    bad = [(t, a) for t, iso, res in sweep for a, comp in res if comp.iso != iso]
    say(3, not bad, f"{runs} computations over {len(sweep)} targets, {len(bad)} parameter-dependent results")
    assert not bad


def test_4_exactness_audit(sweep, say):
    runs = [(t, comp) for t, _, res in sweep for _, comp in res]
    bad = [t for t, comp in runs if not (comp.exact and comp.order_identity)]
    say(4, not bad, f"{len(runs) - len(bad)}/{len(runs)} computations exact with |pi| = |Coker||Ker|")
    assert not bad


def test_5_snf(say):
    rng = random.Random(20240601)
    failures = 0
    for _ in range(1000):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.randint(-99, 99) for _ in range(n)] for _ in range(m)]
        U, S, V = smith_normal_form(M)
        diag = [S[i][i] for i in range(min(m, n))]
        ok = (matmul(matmul(U, S), V) == M and abs(determinant(U)) == 1 and abs(determinant(V)) == 1
              and all(S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
              and all(d >= 0 for d in diag)
              and all((b == 0) if a == 0 else b % a == 0 for a, b in zip(diag, diag[1:])))
        failures += not ok
    say(5, failures == 0, f"1000 random matrices up to 6x6, {failures} failures")
    assert failures == 0


def test_6_extension_oracle(say):
    groups = [FgAbGroup(t.torsion) for k in range(1, 6) for t in two_groups_of_order(2 ** k)]
    pairs = bad = 0
    for A in groups:
        for C in groups:
            if A.order * C.order > 64:
                continue
            pairs += 1
            brute = enumerate_extensions(A, C)
            if resolve_extension(A, C).isos != set(brute) or sum(brute.values()) != ext1(C, A).order:
                bad += 1
    say(6, bad == 0, f"{pairs} pairs with |A||C| <= 64, {bad} disagreements")
    assert bad == 0


def test_7_hurewicz(say):
    checks = bad = 0
    for r in range(1, 6):
        alph = Alphabet.of(u=2, v=3)
        u = TAElement.letter(alph, 2 ** r, "u")
        v = TAElement.letter(alph, 2 ** r, "v")
        for l in (1, 3, 5):
            x = left_normed(u, v, 3).scale(l)
            for s in range(r):
                checks += 1
                bad += not hurewicz_divisibility(x, 2 ** (s + 1))
    pairs = [(3, 6), (5, 10), (7, 14), (4, 8), (6, 6)]
    model = [samelson_h2_model(m, n)[1:3] for m, n in pairs]
    ok = bad == 0 and all(c == (1, -1) for c in model)
    say(7, ok, f"{checks - bad}/{checks} non-divisibility checks; (x12, x21) = (1, -1) for {len(pairs)} pairs")
    assert ok


def test_8_fact_gate(fb, say):
    findings = [f for r in (1, 2, 3, 4, 8) for f in validate(fb, fb.default_env(r))]
    dangling = dangling_scan(fb)
    say(8, not findings and dangling == 0, f"{len(findings)} findings, dangling {dangling}")
    assert not findings and dangling == 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
