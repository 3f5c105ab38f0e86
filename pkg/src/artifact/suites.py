"""Identity-verification suites used by ``artifact verify``.

Each suite yields (assertion name, passed) pairs.  Exceptions raised by the
internal cross-checks count as failures and are reported, not propagated.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Tuple

from . import boundary as bd
from . import maroni as mr
from . import slopes as sl
from .chow import B0, BundleData, DivY, SurfaceModel, generic_model, intersect_y
from .invariants import (KX_squared, KX_squared_closed_form, chi_closed_form, chi_OX, eta_squared,
                         general_invariants, hyperelliptic_invariants, triple_cover_invariants)
from .symkernel import MPoly, Quotient, as_poly, var
from .trees import ROOT, TreeComponent, TreeFiber, derive_functions, genus_of_subtree, tree_product

Result = Tuple[str, bool]


def _guard(name: str, fn: Callable[[], bool]) -> Result:
    try:
        return name, bool(fn())
    except (ValueError, ArithmeticError) as exc:
        return f"{name} [{type(exc).__name__}: {exc}]", False


# trees

def random_tree(rng: random.Random, size: int, mode: str = "trigonal") -> TreeFiber:
    comps = [TreeComponent("R", ROOT, 1, MPoly())]
    for n in range(1, size):
        parent = rng.choice(comps).id
        mult = 1 if mode == "hyperelliptic" else rng.choice((1, 1, 2))
        comps.append(TreeComponent(f"E{n}", parent, mult, as_poly(rng.randint(0, 6))))
    return TreeFiber(comps)


def random_function(rng: random.Random, t: TreeFiber) -> Dict[str, Fraction]:
    vals = {cid: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for cid in t.nonroot()}
    vals[t.root] = Fraction(0)
    return vals


def lemma_trial(rng: random.Random) -> bool:
    t = random_tree(rng, rng.randint(1, 8))
    f, h = random_function(rng, t), random_function(rng, t)
    tree_product(t, f, h)  # raises on disagreement
    return True


def fiber_orthogonality(t: TreeFiber) -> bool:
    # the pairing is normalized so that the fiber is the plain sum of its components
    return all(sum(t.intersection(a, b) for b in t.by_id) == 0 for a in t.by_id)


# suites

def suite_chow() -> Iterator[Result]:
    model, V = generic_model()
    yield _guard("chi(O_X) closed form", lambda: chi_OX(V, model) == chi_closed_form(V, model))
    yield _guard("K_X^2 closed form", lambda: KX_squared(V, model) == KX_squared_closed_form(V, model))
    yield _guard("3 eta^2 = 2c1^2 - 9c2", lambda: eta_squared(V, model) is not None)
    t = bd.template("T6", 7).tree
    tm = SurfaceModel("gB", [t])
    Vt = BundleData(DivY.make("c", "d", {(0, "E1"): 1, (0, "E2"): 2}), as_poly("c2"))
    yield _guard("chi(O_X) closed form with a special fiber", lambda: chi_OX(Vt, tm) == chi_closed_form(Vt, tm))
    yield _guard("K_X^2 closed form with a special fiber",
                 lambda: KX_squared(Vt, tm) == KX_squared_closed_form(Vt, tm))
    rng = random.Random(20240611)
    trees = [random_tree(rng, rng.randint(1, 8)) for _ in range(50)]
    yield _guard("fiber class orthogonal to every component (50 random trees)",
                 lambda: all(fiber_orthogonality(t) for t in trees))
    yield _guard("tree product identity (50 random trees)",
                 lambda: all(lemma_trial(rng) for _ in range(50)))


def suite_trees() -> Iterator[Result]:
    rng = random.Random(7)

    def roundtrip():
        for _ in range(50):
            t = random_tree(rng, rng.randint(2, 8))
            try:
                derive_functions(t)
            except ValueError:
                continue  # genus data inconsistent with the case table
            for cid in t.nonroot():
                if genus_of_subtree(t, cid) != t.by_id[cid].p:
                    return False
        return True
    yield _guard("genus round trip", roundtrip)


def suite_invariants() -> Iterator[Result]:
    model, V = generic_model()
    yield _guard("triple cover closed forms and index relation",
                 lambda: triple_cover_invariants(V, model) is not None)
    for kind in bd.TRIGONAL_KINDS:
        t = bd.template(kind, 2, 9)
        adj = {"mu_total": t.mu, "ram1": t.ram1, "ram2": t.ram2}
        yield _guard(f"engine matches closed forms on the {kind} template at g=9",
                     lambda t=t, adj=adj: general_invariants([t.tree], 11, "d", "c2", adj, g=9) is not None)
    yield _guard("double cover with no special fibers",
                 lambda: hyperelliptic_invariants([], "d").delta == 4 * var("d") * (2 * var("g") + 1))


def suite_boundary() -> Iterator[Result]:
    for (kind, mode), closed in bd.CLOSED_FORMS.items():
        yield _guard(f"{kind} {mode} coefficient", lambda k=kind, m=mode, c=closed: bd.symbolic_coefficient(k, m) == c)
    for (kind, mode), closed in bd.CLOSED_TILDES.items():
        yield _guard(f"{kind} {mode} tilde coefficient",
                     lambda k=kind, m=mode, c=closed: bd.symbolic_coefficient(k, m) + bd.tilde_shift(k, m) == c)
    G = var("g")
    for kind in bd.TRIGONAL_KINDS:
        mult = sum(bd.NODE_MULTS[kind])
        yield _guard(f"{kind} d-tilde = d + {mult}(5g+1)",
                     lambda k=kind, m=mult: bd.CLOSED_TILDES[(k, "Sprime")] - bd.CLOSED_FORMS[(k, "Sprime")]
                     == m * (5 * G + 1))
    yield _guard("positivity of c and d for g in [3,200]", _positivity_sweep)
    for kind in ("bogomolov_7g6", "index_36g1"):
        yield _guard(f"g=3 {kind} degenerates to the genus-3 relation",
                     lambda k=kind: _g3_terms(bd.build_relation(k, 3).normalized()) == G3_RELATION)
        yield _guard(f"{kind} effective for all g", lambda k=kind: bd.build_relation(k).effective)


G3_RELATION = {"lambda": Fraction(9), "delta_0": Fraction(1), "delta_2,1": Fraction(3), "delta_3,1": Fraction(3),
               "delta_4,1": Fraction(4), "delta_5,1": Fraction(4), "delta_5,2": Fraction(3),
               "delta_6,1": Fraction(3)}


def _g3_terms(rel) -> Dict[str, Fraction]:
    out = {"lambda": as_poly(rel.lam).constant_value()}
    out.update({lbl: v.constant_value() for lbl, v in rel.coeffs.items() if v})
    if rel.residual is not None:
        return {}
    return out


def _positivity_sweep() -> bool:
    for kind in bd.TRIGONAL_KINDS:
        fc = bd.symbolic_coefficient(kind, "S").compile(["g", "i"])
        fd = bd.symbolic_coefficient(kind, "Sprime").compile(["g", "i"])
        for g in range(3, 201):
            for i in bd.index_range(kind, g):
                if not (fc(g, i) > 0 and fd(g, i) > 0):
                    return False
    return True


def suite_hyper() -> Iterator[Result]:
    G, I = var("g"), var("i")
    yield _guard("e_i = 2i(g-i-1)", lambda: bd.symbolic_coefficient("Xi", "Sh") == 2 * I * (G - I - 1))
    yield _guard("f_j = 4j(g-j) - g", lambda: bd.symbolic_coefficient("DeltaHyp", "Sh") == 4 * I * (G - I) - G)
    yield _guard("e-tilde = 2(i+1)(g-i)",
                 lambda: bd.symbolic_coefficient("Xi", "Sh") + bd.tilde_shift("Xi", "Sh") == 2 * (I + 1) * (G - I))
    yield _guard("f-tilde = 4j(g-j)",
                 lambda: bd.symbolic_coefficient("DeltaHyp", "Sh") + bd.tilde_shift("DeltaHyp", "Sh")
                 == 4 * I * (G - I))
    yield _guard("(8g+4) relation effective", lambda: bd.build_relation("hyper_8g4").effective)
    yield _guard("hyperelliptic pencils reach 8 + 4/g for g in [2,50]",
                 lambda: all(sl.family("hyper-pencil", {"g": g}).slope.hyperelliptic_maximal for g in range(2, 51)))


def suite_maroni() -> Iterator[Result]:
    def dims():
        for g in range(3, 101):
            ks = mr.admissible_k(g)
            if any((k - g) % 2 or 3 * k > g + 2 for k in ks):
                return False
            if (g % 2 == 0 and 0 not in ks) or (g % 2 == 1 and 1 not in ks):
                return False
            for k in ks:
                dim, codim = mr.maroni_locus_dimension(g, k)
                if dim != (2 * g + 1 if k == 0 else 2 * g + 2 - k):
                    return False
                if k >= 2 and codim <= 0:
                    return False
        return True
    yield _guard("locus dimensions for g in [3,100]", dims)
    yield _guard("divisor for even g, codimension 2 for odd g",
                 lambda: all(mr.locus_kind(g) == ("divisor" if g % 2 == 0 else "codim2") for g in range(6, 101))
                 and mr.locus_kind(3) is None)

    def case2():
        for degZ in range(0, 12):
            for a in range(0, 5):
                V = BundleData(DivY.make(0, a), as_poly(degZ))
                if mr.bogomolov_maroni_degree(V, SurfaceModel(0), degZ, 6) != 4 * degZ:
                    return False
        return True
    yield _guard("4c2 - c1^2 = 4 deg Z on the fiber-sum construction", case2)

    def case1():
        # V = h*M (x) O(m B0): c1 = 2m B0 + a F, c2 = a m
        return all(mr.bogomolov_maroni_degree(BundleData(DivY.make(2 * m, a), as_poly(a * m)), SurfaceModel(0), 0, 4)
                   == 0 for m in range(-3, 4) for a in range(-3, 4))
    yield _guard("constant Maroni-zero family gives 0", case1)

    def alpha():
        from .trees import parse_tree_file
        t, _ = parse_tree_file("genus 4\nR -(1) 0\nE1 R(1) 0\n")
        V = BundleData(DivY.make(comps={(0, "E1"): 1}), as_poly(0))
        return mr.alpha_coefficient(V, SurfaceModel(0, [t]), 1, 1) == -3
    yield _guard("alpha = -3 on the one-blow-up test family", alpha)

    def criterion_consistency():
        g, t = var("g"), var("e")
        lam, d0 = (5 * g + 1) * t, 36 * (g + 1) * t
        mu = mr.generalized_maroni_degree(lam, d0, {}, g)
        return mr.maximal_bound_criterion(Quotient(d0), mu, g)
    yield _guard("maximal slope forces the criterion (symbolic)", criterion_consistency)


def suite_families() -> Iterator[Result]:
    def hp():
        for g in range(2, 51):
            r = sl.family("hyper-pencil", {"g": g})
            if (r.report.delta, r.report.lam) != (as_poly(8 * g + 4), as_poly(g)):
                return False
            if r.slope.slope != 8 + Fraction(4, g):
                return False
        return True
    yield _guard("hyper-pencil (delta, lambda) = (8g+4, g), g in [2,50]", hp)

    def tc(name, grid):
        for params in grid:
            r = sl.family(name, params)
            g = r.spec.genus
            if r.slope.slope != Fraction(36 * (g + 1), 5 * g + 1) or not r.slope.maximal:
                return False
            if r.report.index_q != 0 or not all(r.spec.conditions.values()):
                return False
            if g != 3 and not r.maroni_criterion:
                return False
        return True
    yield _guard("ex71 maximal for e in [1,30]", lambda: tc("ex71", [{"e": e} for e in range(1, 31)]))
    yield _guard("ex72 maximal for (e,f) in [2,20]x[1,5]",
                 lambda: tc("ex72", [{"e": e, "f": f} for e in range(2, 21) for f in range(1, 6)]))
    yield _guard("pencil slopes 6 + 2/(d-1) + 2d/g",
                 lambda: all(sl.family("pencil", {"d": d, "g": g}).spec.conditions["slope_formula"]
                             for d in range(2, 6) for g in range(2, 30)
                             if (2 * (g - 1 + d)) % (2 * (d - 1)) == 0))
    yield _guard("bounds table", lambda: sl.bounds_table() == EXPECTED_TABLE)
    yield _guard("conjectural bound identities for d in [2,12]",
                 lambda: all(sl.conjecture_identities(d) for d in range(2, 13)))


EXPECTED_TABLE = {
    "general": {1: 12, 2: 10, 3: 9, 5: 8},
    "hyperelliptic": {1: 12, 2: 10, 3: None, 5: None},
    "trigonal_max": {1: 12, 2: None, 3: 9, 5: None},
    "tetragonal": {1: 12, 2: None, 3: None, 5: 8},
}

SUITES: Dict[str, Callable[[], Iterator[Result]]] = {
    "chow": lambda: _chain(suite_chow(), suite_trees()),
    "invariants": suite_invariants,
    "boundary": suite_boundary,
    "maroni": suite_maroni,
    "families": suite_families,
    "hyper": suite_hyper,
}


def _chain(*its):
    for it in its:
        yield from it


def run_suite(name: str) -> List[Result]:
    if name == "all":
        return [r for key in SUITES for r in SUITES[key]()]
    return list(SUITES[name]())
