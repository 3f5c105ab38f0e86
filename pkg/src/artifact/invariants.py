"""lambda, kappa, delta for triple and double covers.

Every quantity has two independent routes: the Chow-ring engine (Riemann-Roch
and adjunction on PV) and the closed-form expressions.  Each public function
computes both and raises if they disagree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

from .chow import (B0, F, BundleData, DivY, SurfaceModel, canonical_classes, intersect_y,
                   pullback, pv_degree, pv_prod, twist_to_canonical, zeta)
from .symkernel import MPoly, as_poly
from .trees import TreeFiber, derive_functions

half = Fraction(1, 2)
quarter = Fraction(1, 4)


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class InvariantReport:
    lam: MPoly
    kappa: MPoly
    delta: MPoly
    d_inv: Optional[MPoly] = None
    bogomolov: Optional[MPoly] = None   # 4 c2 - c1^2
    index_q: Optional[MPoly] = None     # 9 c2 - 2 c1^2

    def __post_init__(self):
        if 12 * self.lam - self.kappa - self.delta:
            raise InvariantError("12 lambda != kappa + delta")

    def as_dict(self):
        out = {"lambda": self.lam, "kappa": self.kappa, "delta": self.delta}
        for k in ("d_inv", "bogomolov", "index_q"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        return out


def _check(label, engine, closed):
    engine, closed = as_poly(engine), as_poly(closed)
    if engine != closed:
        raise InvariantError(f"{label}: engine {engine} != closed form {closed}")
    return engine


# engine primitives

def chi_OX(V: BundleData, model: SurfaceModel) -> MPoly:
    """chi(O_X) = 1/12 X[(X+K)(2X+K) + c2(PV)] computed in the Chow ring."""
    V = twist_to_canonical(V, model)
    cc = canonical_classes(model, V)
    X, K, c2 = cc["X_class"], cc["K_PV"], cc["c2_PV"]
    inner = pv_prod(V, model, X + K, X.scale(2) + K) + c2
    return pv_degree(pv_prod(V, model, X, inner), model) / 12


def chi_closed_form(V: BundleData, model: SurfaceModel) -> MPoly:
    V = twist_to_canonical(V, model)
    cc = canonical_classes(model, V)
    K = cc["K_Y"]
    c1sq = intersect_y(V.c1, V.c1, model)
    c1K = intersect_y(V.c1, K, model)
    return half * (c1sq - 2 * V.c2) + half * c1K + quarter * (intersect_y(K, K, model) + cc["c2_Y"])


def KX_squared(V: BundleData, model: SurfaceModel) -> MPoly:
    V = twist_to_canonical(V, model)
    cc = canonical_classes(model, V)
    X, K = cc["X_class"], cc["K_PV"]
    return pv_degree(pv_prod(V, model, K + X, K + X, X), model)


def KX_squared_closed_form(V: BundleData, model: SurfaceModel) -> MPoly:
    V = twist_to_canonical(V, model)
    K = canonical_classes(model, V)["K_Y"]
    c1sq = intersect_y(V.c1, V.c1, model)
    return 2 * c1sq - 3 * V.c2 + 4 * intersect_y(V.c1, K, model) + 3 * intersect_y(K, K, model)


def eta_squared(V: BundleData, model: SurfaceModel) -> MPoly:
    """3 eta^2, with eta^2 = (zeta + c1/3)^2 . X on PV; equals 2 c1^2 - 9 c2."""
    V = twist_to_canonical(V, model)
    eta = zeta() + pullback(0, V.c1.scale(Fraction(1, 3)))
    X = canonical_classes(model, V)["X_class"]
    val = 3 * pv_degree(pv_prod(V, model, eta, eta, X), model)
    return _check("3 eta^2", val, 2 * intersect_y(V.c1, V.c1, model) - 9 * V.c2)


def index_sign(V: BundleData, model: SurfaceModel) -> int:
    """Sign of 9 c2 - 2 c1^2 (numeric bundles only)."""
    q = 9 * V.c2 - 2 * intersect_y(V.c1, V.c1, model)
    v = q.constant_value()
    return (v > 0) - (v < 0)


def _engine_lambda_kappa(V, model, g):
    gB = model.gB
    lam = chi_OX(V, model) - (1 - gB) * (1 - g)
    kap = KX_squared(V, model) - 8 * (gB - 1) * (g - 1)
    if gB.variables():
        for name in gB.variables():
            if lam.degree(name) > 0 or kap.degree(name) > 0:
                raise InvariantError("base-genus terms failed to cancel")
    return lam, kap


# triple covers with irreducible fibers

def triple_cover_invariants(V: BundleData, model: SurfaceModel, deg_c1_B0=None, g=None) -> InvariantReport:
    """Invariants of X ~ 3 zeta + D in PV over a plain ruled surface.

    A non-canonical bundle is twisted first; the invariant degree
    2 D.B0 - 3 c1.B0 replaces deg c1|B0.
    """
    if model.trees:
        raise InvariantError("triple_cover_invariants takes a surface without special fibers")
    W = V
    if deg_c1_B0 is None:
        deg_c1_B0 = intersect_y(W.divisor().scale(2) - W.c1.scale(3), B0, model)
    d_inv = as_poly(deg_c1_B0)
    V = twist_to_canonical(W, model)
    c_fib = intersect_y(V.c1, F, model)
    if g is None:
        g = c_fib - 2
    g = as_poly(g)
    if c_fib != g + 2:
        raise InvariantError(f"genus condition fails: deg c1|F = {c_fib}, expected {g + 2}")
    if intersect_y(V.c1, B0, model) != d_inv:
        raise InvariantError("invariant degree disagrees with the twisted bundle")
    bog_rhs = intersect_y(V.c1, V.c1, model) - 4 * V.c2
    lam_e, kap_e = _engine_lambda_kappa(V, model, g)
    lam = _check("lambda", lam_e, g / 2 * d_inv + quarter * bog_rhs)
    kap = _check("kappa", kap_e, (5 * g - 6) / 2 * d_inv + Fraction(3, 4) * bog_rhs)
    delta = 12 * lam - kap
    _check("delta", delta, (7 * g + 6) / 2 * d_inv + Fraction(9, 4) * bog_rhs)
    index_q = 9 * V.c2 - 2 * intersect_y(V.c1, V.c1, model)
    _check("index relation", 36 * (g + 1) * lam - (5 * g + 1) * delta, (g - 3) * index_q)
    lam, kap, delta = (x.eval({"gB": 0}) for x in (lam, kap, delta))
    return InvariantReport(lam, kap, delta, d_inv, -bog_rhs, index_q)


# general trigonal families

def _tree_sums(trees: Iterable[TreeFiber], mode):
    rows = []
    for t in trees:
        funcs = derive_functions(t, mode)
        for cid in t.nonroot():
            fn = funcs[cid]
            rows.append((fn.m, fn.Theta, fn.Gamma, fn.gamma))
    return rows


def local_pieces(m, Theta, Gamma):
    """Per-component terms: (lambda_E, kappa_hat_E, c1^2_E)."""
    lam = -quarter * (m * (2 * Gamma ** 2 + 2 * Gamma * Theta + Theta ** 2) - 1)
    kap = -m * (2 * Gamma ** 2 + 4 * Gamma * Theta + 3 * Theta ** 2)
    return lam, kap, -m * Gamma ** 2


def trigonal_model(trees: List[TreeFiber], c, d, c2, gB=0):
    model = SurfaceModel(gB, trees, "trigonal")
    comps = {}
    for n, _ in enumerate(trees):
        for cid, fn in model.functions(n).items():
            if cid != trees[n].root:
                comps[(n, cid)] = fn.gamma
    V = BundleData(DivY.make(c, d, comps), as_poly(c2))
    return model, V


def general_invariants(trees: List[TreeFiber], c, d, c2, adjustments=None, g=None, gB=0,
                       engine: bool = True) -> InvariantReport:
    adj = {"mu_total": 0, "ram1": 0, "ram2": 0}
    adj.update(adjustments or {})
    c, d, c2 = as_poly(c), as_poly(d), as_poly(c2)
    g = c - 2 if g is None else as_poly(g)
    if c != g + 2:
        raise InvariantError(f"genus condition fails: c = {c}, g + 2 = {g + 2}")
    rows = _tree_sums(trees, "trigonal")
    lam_hat = d * (g + 1) - c2
    kap_hat = 4 * d * g - 3 * c2
    c1sq = 2 * c * d
    for m, Th, Ga, _ in rows:
        l_e, k_e, s_e = local_pieces(m, Th, Ga)
        lam_hat, kap_hat, c1sq = lam_hat + l_e, kap_hat + k_e, c1sq + s_e
    if engine:
        model, V = trigonal_model(trees, c, d, c2, gB)
        _check("c1^2", intersect_y(V.c1, V.c1, model), c1sq)
        lam_e, kap_e = _engine_lambda_kappa(V, model, g)
        _check("lambda_hat", lam_e, lam_hat)
        _check("kappa_hat", kap_e, kap_hat)
    extra = as_poly(adj["mu_total"]) + adj["ram1"] + 3 * as_poly(adj["ram2"])
    kappa = kap_hat + extra
    delta = 12 * lam_hat - kappa
    closed = 4 * d * (2 * g + 3) - 9 * c2 - extra
    for m, Th, Ga, _ in rows:
        closed = closed - (m * (4 * Ga ** 2 + 2 * Ga * Th) - 3)
    _check("delta", delta, closed)
    return InvariantReport(lam_hat, kappa, delta, d, 4 * c2 - c1sq, 9 * c2 - 2 * c1sq)


# hyperelliptic families

def hyperelliptic_model(trees: List[TreeFiber], c, d, gB=0):
    model = SurfaceModel(gB, trees, "hyperelliptic")
    comps = {}
    for n, _ in enumerate(trees):
        for cid, fn in model.functions(n).items():
            if cid != trees[n].root:
                comps[(n, cid)] = fn.gamma
    V = BundleData(DivY.make(c, d, comps), MPoly(), "hyperelliptic")
    return model, V


def hyperelliptic_invariants(trees: List[TreeFiber], d, adjustments=None, g="g", gB=0,
                             engine: bool = True) -> InvariantReport:
    """Double covers X ~ 2 zeta + 2 c1 with c = g + 1 and c2 = 0.

    Per-component terms: lambda_E = -Gamma(Gamma+1)/2, kappa_E = -2(Gamma+1)^2,
    delta_E = 2(Gamma+1)(1-2Gamma); a ram1 blow-up adds 1 to kappa and
    removes 1 from delta.
    """
    ram1 = (adjustments or {}).get("ram1", 0)
    g, d = as_poly(g), as_poly(d)
    rows = _tree_sums(trees, "hyperelliptic")
    lam = d * g
    kap_hat = 4 * d * (g - 1)
    for _, _, Ga, _ in rows:
        lam = lam - half * Ga * (Ga + 1)
        kap_hat = kap_hat - 2 * (Ga + 1) ** 2
    if engine:
        model, V = hyperelliptic_model(trees, g + 1, d, gB)
        lam_e, kap_e = _engine_lambda_kappa(V, model, g)
        _check("lambda", lam_e, lam)
        _check("kappa_hat", kap_e, kap_hat)
    kappa = kap_hat + ram1
    delta = 12 * lam - kappa
    closed = 4 * d * (2 * g + 1) - ram1
    for _, _, Ga, _ in rows:
        closed = closed + 2 * (Ga + 1) * (1 - 2 * Ga)
    _check("delta", delta, closed)
    return InvariantReport(lam, kappa, delta, d)
