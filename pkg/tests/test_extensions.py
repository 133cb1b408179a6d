import pytest

from moorepi.abelian import FgAbGroup, cyclic, ext1
from moorepi.extensions import (Contradiction, ExtensionConstraint, aut_order, enumerate_cocycle_classes,
                                enumerate_extensions, resolve_extension, two_groups_of_order)
from moorepi.notation import parse_iso


def iso(text):
    return parse_iso(text)


def small_groups(limit):
    out = []
    order = 1
    while order <= limit:
        out.extend(FgAbGroup(t.torsion) for t in two_groups_of_order(order))
        order *= 2
    return out


def test_two_groups_of_order():
    assert len(two_groups_of_order(16)) == 5
    assert len(two_groups_of_order(64)) == 11


def test_aut_orders():
    assert aut_order(iso("2")) == 1
    assert aut_order(iso("(2)^2")) == 6
    assert aut_order(iso("8")) == 4
    assert aut_order(iso("2 + 4")) == 8


def test_enumerate_z2_z2():
    out = enumerate_extensions(cyclic(2), cyclic(2))
    assert set(out) == {iso("(2)^2"), iso("4")}


def test_enumerate_z2_z4():
    out = enumerate_extensions(cyclic(2), cyclic(4))
    assert out == {iso("2 + 4"): 1, iso("8"): 1}
    assert sum(out.values()) == ext1(cyclic(4), cyclic(2)).order


def test_unconstrained_matches_brute_force():
    groups = small_groups(32)
    for A in groups:
        for C in groups:
            if A.order * C.order > 64 or A.order == 1 or C.order == 1:
                continue
            brute = enumerate_extensions(A, C)
            assert resolve_extension(A, C).isos == set(brute), (A.iso, C.iso)
            assert sum(brute.values()) == ext1(C, A).order


def test_subgroup_route_matches_raw_cocycles():
    groups = small_groups(8)
    for A in groups:
        for C in groups:
            if A.order * C.order > 16 or A.order == 1 or C.order == 1:
                continue
            assert enumerate_cocycle_classes(A, C) == enumerate_extensions(A, C), (A.iso, C.iso)


def test_split_forced():
    out = resolve_extension(cyclic(2), cyclic(2), [ExtensionConstraint("lift_order", (1,), 2)])
    assert out.isos == {iso("(2)^2")}


def test_table_case_r2():
    A = FgAbGroup((2, 2, 4))
    C = FgAbGroup((2, 2), names=("nu_4 eta_7", "E(nu') eta_7"))
    cons = [ExtensionConstraint("lift_order", (0, 1), 2),
            ExtensionConstraint("lift_order", (1, 0), 4),
            ExtensionConstraint("does_not_split")]
    assert resolve_extension(A, C, cons).isos == {iso("(2)^2 + (4)^2")}


def test_lift_double_equals():
    A = FgAbGroup((2, 2))
    C = cyclic(2)
    out = resolve_extension(A, C, [ExtensionConstraint("lift_double_equals", (1,), (1, 0))])
    assert out.isos == {iso("2 + 4")}


def test_contradictory_constraints():
    cons = [ExtensionConstraint("lift_order", (1,), 2), ExtensionConstraint("lift_min_order", (1,), 4)]
    with pytest.raises(Contradiction):
        resolve_extension(cyclic(2), cyclic(2), cons)


def test_unknown_constraint_kind():
    with pytest.raises(ValueError):
        ExtensionConstraint("lift_colour")


def test_free_quotient_splits():
    out = resolve_extension(cyclic(4), FgAbGroup((), 1))
    assert out.isos == {iso("4 + Z")}
