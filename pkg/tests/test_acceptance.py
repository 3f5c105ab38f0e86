"""The ten acceptance criteria, each an exact check.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``;
either way one PASS/FAIL line is printed per criterion.
"""
import random
import sys
from fractions import Fraction

import pytest

from artifact import boundary as bd
from artifact import maroni as mr
from artifact import slopes as sl
from artifact.chow import BundleData, DivY, SurfaceModel, generic_model, intersect_y
from artifact.invariants import (KX_squared, KX_squared_closed_form, chi_closed_form, chi_OX, eta_squared,
                                 triple_cover_invariants)
from artifact.symkernel import MPoly, Quotient, as_poly, var
from artifact.trees import ROOT, TreeComponent, TreeFiber, tree_product

G, I = var("g"), var("i")


def crit_1():
    model, V = generic_model()
    return chi_OX(V, model) == chi_closed_form(V, model) and KX_squared(V, model) == KX_squared_closed_form(V, model)


def crit_2():
    model, V = generic_model()
    rep = triple_cover_invariants(V, model)
    c, d, c2 = var("c"), var("d"), var("c2")
    g = c - 2
    c1sq = intersect_y(V.c1, V.c1, model)
    return (rep.lam == g / 2 * d + Fraction(1, 4) * (c1sq - 4 * c2)
            and rep.kappa == (5 * g - 6) / 2 * d + Fraction(3, 4) * (c1sq - 4 * c2)
            and (12 * rep.lam - rep.kappa - rep.delta).is_zero()
            and 36 * (g + 1) * rep.lam - (5 * g + 1) * rep.delta == (g - 3) * (9 * c2 - 2 * c1sq))


def crit_3():
    model, V = generic_model()
    return eta_squared(V, model) == 2 * intersect_y(V.c1, V.c1, model) - 9 * V.c2


def crit_4():
    expected = {
        ("T1", "S"): 3 * (I + 2) * (G - I) / 2 - 3 * G,
        ("T2", "S"): 3 * (I + 2) * (G - I) / 2 - 2 * G,
        ("T3", "S"): 3 * (I + 1) * (G - I + 1) / 2 - G,   # template value
        ("T4", "S"): 3 * (I + 1) * (G - I) - (7 * G - 3) / 2,
        ("T5", "S"): 3 * (I + 1) * (G - I) - (3 * G - 3) / 2,
        ("T6", "S"): 9 * I * (G - I) / 2 - 3 * (G - 1) / 2,
        ("T1", "Sprime"): 8 * (I + 2) * (G - I) - 3 * (5 * G + 1),
        ("T2", "Sprime"): 8 * (I + 2) * (G - I) - 2 * (5 * G + 1),
        ("T3", "Sprime"): 8 * (I + 1) * (G - I + 1) - (5 * G + 1),
        ("T4", "Sprime"): 16 * (I + 1) * (G - I) - 17 * G + 3,
        ("T5", "Sprime"): 16 * (I + 1) * (G - I) - 7 * G + 5,
        ("T6", "Sprime"): 24 * I * (G - I) - (5 * G + 1),
        ("Xi", "Sh"): 2 * I * (G - I - 1),
        ("DeltaHyp", "Sh"): 4 * I * (G - I) - G,
    }
    tildes = {
        ("T1", "S"): 3 * (I + 2) * (G - I) / 2, ("T2", "S"): 3 * (I + 2) * (G - I) / 2,
        ("T3", "S"): 3 * (I + 1) * (G - I + 1) / 2,
        ("T4", "S"): 3 * (I + 1) * (G - I) - (G - 3) / 2, ("T5", "S"): 3 * (I + 1) * (G - I) - (G - 3) / 2,
        ("T6", "S"): 9 * I * (G - I) / 2 - (G - 3) / 2,
        ("T1", "Sprime"): 8 * (I + 2) * (G - I), ("T2", "Sprime"): 8 * (I + 2) * (G - I),
        ("T3", "Sprime"): 8 * (I + 1) * (G - I + 1),
        ("T4", "Sprime"): 16 * (I + 1) * (G - I) - 2 * (G - 3), ("T5", "Sprime"): 16 * (I + 1) * (G - I) - 2 * (G - 3),
        ("T6", "Sprime"): 24 * I * (G - I),
        ("Xi", "Sh"): 2 * (I + 1) * (G - I), ("DeltaHyp", "Sh"): 4 * I * (G - I),
    }
    ok = all(bd.symbolic_coefficient(*k) == v for k, v in expected.items())
    return ok and all(bd.symbolic_coefficient(*k) + bd.tilde_shift(*k) == v for k, v in tildes.items())


def crit_5():
    for kind in bd.TRIGONAL_KINDS:
        mult = sum(bd.NODE_MULTS[kind])
        d = bd.symbolic_coefficient(kind, "Sprime")
        if d + bd.tilde_shift(kind, "Sprime") != d + mult * (5 * G + 1):
            return False
        if bd.CLOSED_TILDES[(kind, "Sprime")] != d + mult * (5 * G + 1):
            return False
        fc = bd.symbolic_coefficient(kind, "S").compile(["g", "i"])
        fd = d.compile(["g", "i"])
        for g in range(3, 201):
            for i in bd.index_range(kind, g):
                if not (fc(g, i) > 0 and fd(g, i) > 0):
                    return False
    return True


def crit_6():
    want = {"delta_0": 1, "delta_2,1": 3, "delta_3,1": 3, "delta_4,1": 4, "delta_5,1": 4, "delta_5,2": 3,
            "delta_6,1": 3}
    for kind in ("bogomolov_7g6", "index_36g1"):
        rel = bd.build_relation(kind, 3).normalized()
        got = {k: v.constant_value() for k, v in rel.coeffs.items() if v}
        if rel.lam != 9 or got != want or rel.residual is not None:
            return False
    return True


def crit_7():
    rng = random.Random(83)
    for _ in range(200):
        size = rng.randint(1, 8)
        comps = [TreeComponent("R", ROOT, 1, MPoly())]
        for n in range(1, size):
            comps.append(TreeComponent(f"E{n}", rng.choice(comps).id, rng.choice((1, 2))))
        t = TreeFiber(comps)
        f = {c: Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for c in t.nonroot()}
        h = {c: Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for c in t.nonroot()}
        expansion = MPoly()
        for a in t.by_id:
            for b in t.by_id:
                expansion = expansion + as_poly(f.get(a, 0)) * h.get(b, 0) * t.intersection(a, b)
        closed = MPoly()
        for c in t.nonroot():
            p = t.parent(c)
            closed = closed - t.m(c) * (as_poly(f[c]) - f.get(p, 0)) * (as_poly(h[c]) - h.get(p, 0))
        if expansion != closed or tree_product(t, f, h) != closed:
            return False
    return True


def crit_8():
    for g in range(2, 51):
        r = sl.family("hyper-pencil", {"g": g})
        if (r.report.delta, r.report.lam) != (8 * g + 4, g) or r.slope.slope != 8 + Fraction(4, g):
            return False
    grids = [("ex71", {"e": e}) for e in range(1, 31)]
    grids += [("ex72", {"e": e, "f": f}) for e in range(2, 21) for f in range(1, 6)]
    for name, params in grids:
        r = sl.family(name, params)
        g = r.spec.genus
        if r.slope.slope != Fraction(36 * (g + 1), 5 * g + 1) or r.report.index_q != 0:
            return False
        if not all(r.spec.conditions.values()):
            return False
        if g != 3:
            mu = mr.generalized_maroni_degree(r.report.lam, r.report.delta, {}, g).value()
            if (g + 2) * r.report.delta.constant_value() + 72 * (g + 1) * mu != 0:
                return False
    return True


def crit_9():
    want = {"general": [12, 10, 9, 8], "hyperelliptic": [12, 10, None, None],
            "trigonal_max": [12, None, 9, None], "tetragonal": [12, None, None, 8]}
    t = sl.bounds_table()
    if {k: [t[k][g] for g in (1, 2, 3, 5)] for k in t} != want:
        return False
    fd = var("fd")
    for d in range(2, 13):
        gd = sl.gonality_genus(d)
        first, second = sl.conjecture_Fd_forms(G, d, fd)
        if first != second:
            return False
        if second.eval({"g": 1}) != Quotient(12) or second.eval({"g": gd}) != 6 + Quotient(12, gd + 1):
            return False
    return True


def crit_10():
    for g in range(3, 101):
        for k in mr.admissible_k(g):
            if mr.maroni_locus_dimension(g, k)[0] != (2 * g + 1 if k == 0 else 2 * g + 2 - k):
                return False
        if g >= 6 and mr.locus_kind(g) != ("divisor" if g % 2 == 0 else "codim2"):
            return False
    model = SurfaceModel(0)
    for deg_z in range(0, 15):
        for a in range(-4, 5):
            V = BundleData(DivY.make(0, a), as_poly(deg_z))   # c1 a sum of fibers
            if mr.bogomolov_maroni_degree(V, model, deg_z, 6) != 4 * deg_z:
                return False
    return True


CRITERIA = [
    (1, "chi(O_X) and K_X^2 closed forms from the Chow engine", crit_1),
    (2, "lambda, kappa closed forms, 12 lambda = kappa + delta, index relation", crit_2),
    (3, "3 eta^2 = 2 c1^2 - 9 c2", crit_3),
    (4, "boundary coefficient tables and tildes", crit_4),
    (5, "d-tilde shift and positivity for g in [3,200]", crit_5),
    (6, "genus 3 degeneration of both trigonal relations", crit_6),
    (7, "tree product identity on 200 random trees", crit_7),
    (8, "witness families and the maximal-bound criterion", crit_8),
    (9, "bounds table and conjectural bound identities", crit_9),
    (10, "Maroni dimensions, locus type and the 4 deg Z identity", crit_10),
]


def evaluate(fn):
    try:
        return bool(fn())
    except (ValueError, ArithmeticError, AssertionError):
        return False


@pytest.mark.parametrize("num,label,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, label, fn, capsys):
    ok = evaluate(fn)
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {num}: {label}")
    assert ok


if __name__ == "__main__":
    failed = 0
    for num, label, fn in CRITERIA:
        ok = evaluate(fn)
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {label}")
    sys.exit(1 if failed else 0)
