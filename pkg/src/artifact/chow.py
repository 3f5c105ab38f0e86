"""Chow ring of a P^1-bundle PV over a birationally ruled surface.

The surface Y has the normalized basis B0, F (B0^2 = F^2 = 0, B0.F = 1) and
the non-root components of its special-fiber trees.  A(Y) is graded as
(scalar, divisor, point-degree); A^2(Y) is kept only through its degree.
Classes on PV are written a + zeta*b with a, b in A(Y), using
zeta^2 + c1*zeta + c2 = 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .symkernel import MPoly, as_poly
from .trees import TreeFiber, derive_functions

Key = Tuple[int, str]


class ChowError(ValueError):
    pass


class SurfaceModel:
    """Y over a base curve of genus gB, with optional special-fiber trees."""

    def __init__(self, gB=0, trees: Optional[List[TreeFiber]] = None, mode: str = "trigonal"):
        self.gB = as_poly(gB)
        self.trees = list(trees or [])
        self.mode = mode
        self._funcs = [derive_functions(t, mode) for t in self.trees]

    def keys(self) -> List[Key]:
        return [(n, cid) for n, t in enumerate(self.trees) for cid in t.nonroot()]

    def tree_of(self, key: Key) -> TreeFiber:
        n, cid = key
        if not (0 <= n < len(self.trees)) or cid not in self.trees[n].by_id:
            raise ChowError(f"unknown component {key!r}")
        return self.trees[n]

    def functions(self, n: int):
        return self._funcs[n]

    def n_nonroot(self) -> int:
        return len(self.keys())


@dataclass(frozen=True)
class DivY:
    b0: MPoly = field(default_factory=MPoly)
    f: MPoly = field(default_factory=MPoly)
    comps: Tuple[Tuple[Key, MPoly], ...] = ()

    @staticmethod
    def make(b0=0, f=0, comps: Optional[Dict[Key, object]] = None) -> "DivY":
        items = {}
        for k, v in (comps or {}).items():
            v = as_poly(v)
            if v:
                items[k] = v
        return DivY(as_poly(b0), as_poly(f), tuple(sorted(items.items())))

    def comp_map(self) -> Dict[Key, MPoly]:
        return dict(self.comps)

    def __add__(self, other: "DivY") -> "DivY":
        cm = self.comp_map()
        for k, v in other.comps:
            cm[k] = cm.get(k, MPoly()) + v
        return DivY.make(self.b0 + other.b0, self.f + other.f, cm)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "DivY":
        k = as_poly(k)
        return DivY.make(self.b0 * k, self.f * k, {c: v * k for c, v in self.comps})

    __mul__ = scale

    def __rmul__(self, k):
        return self.scale(k)

    def is_zero(self):
        return not self.b0 and not self.f and not self.comps

    def eval(self, bindings) -> "DivY":
        return DivY.make(self.b0.eval(bindings), self.f.eval(bindings),
                         {c: v.eval(bindings) for c, v in self.comps})

    def __str__(self):
        parts = [f"({self.b0})*B0", f"({self.f})*F"]
        parts += [f"({v})*E[{k[0]}:{k[1]}]" for k, v in self.comps]
        return " + ".join(parts)


B0 = DivY.make(b0=1)
F = DivY.make(f=1)


def component(key: Key) -> DivY:
    return DivY.make(comps={key: 1})


def with_root(model: SurfaceModel, n: int, coeffs: Dict[str, object], b0=0, f=0) -> DivY:
    """Divisor given by tree coefficients that may include the root.

    The root is eliminated through R = F - (sum of the other components).
    """
    t = model.trees[n]
    r = as_poly(coeffs.get(t.root, 0))
    cm = {}
    for cid in t.nonroot():
        cm[(n, cid)] = as_poly(coeffs.get(cid, 0)) - r
    return DivY.make(as_poly(b0), as_poly(f) + r, cm)


def intersect_y(a: DivY, b: DivY, model: SurfaceModel) -> MPoly:
    total = a.b0 * b.f + a.f * b.b0
    if a.comps and b.comps:
        bm = b.comp_map()
        for ka, va in a.comps:
            t = model.tree_of(ka)
            for kb, vb in bm.items():
                if kb[0] != ka[0]:
                    continue
                model.tree_of(kb)
                x = t.intersection(ka[1], kb[1])
                if x:
                    total = total + va * vb * x
    else:
        for k, _ in a.comps + b.comps:
            model.tree_of(k)
    return total


@dataclass(frozen=True)
class AY:
    """Element of A(Y): scalar + divisor + point-degree."""
    s: MPoly = field(default_factory=MPoly)
    D: DivY = field(default_factory=DivY)
    p: MPoly = field(default_factory=MPoly)

    @staticmethod
    def of(s=0, D: Optional[DivY] = None, p=0) -> "AY":
        return AY(as_poly(s), D if D is not None else DivY(), as_poly(p))

    def __add__(self, o: "AY") -> "AY":
        return AY(self.s + o.s, self.D + o.D, self.p + o.p)

    def __neg__(self):
        return AY(-self.s, -self.D, -self.p)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, k) -> "AY":
        return AY(self.s * k, self.D.scale(k), self.p * k)

    def mul(self, o: "AY", model: SurfaceModel) -> "AY":
        # A^3(Y) = 0, so point times divisor and point times point vanish
        return AY(self.s * o.s,
                  self.D.scale(o.s) + o.D.scale(self.s),
                  self.p * o.s + o.p * self.s + intersect_y(self.D, o.D, model))

    def is_zero(self):
        return not self.s and self.D.is_zero() and not self.p


@dataclass(frozen=True)
class BundleData:
    """Rank-2 bundle on Y: c1 as a divisor and deg c2.

    In canonical mode the divisor of X is 2*c1.  A non-canonical bundle W
    carries D explicitly (X ~ 3 zeta + D); twist_to_canonical produces the
    canonical bundle with the same projectivization.
    """
    c1: DivY
    c2: MPoly
    mode: str = "trigonal"
    D: Optional[DivY] = None

    @property
    def canonical(self) -> bool:
        return self.D is None

    def divisor(self) -> DivY:
        return self.c1.scale(2) if self.D is None else self.D


def twist(V: BundleData, M: DivY, model: SurfaceModel) -> BundleData:
    """V tensor O(M): c1 + 2M, c2 + c1.M + M^2."""
    c1 = V.c1 + M.scale(2)
    c2 = V.c2 + intersect_y(V.c1, M, model) + intersect_y(M, M, model)
    D = None if V.D is None else V.D + M.scale(3 if V.mode == "trigonal" else 2)
    return BundleData(c1, c2, V.mode, D)


def twist_to_canonical(W: BundleData, model: SurfaceModel) -> BundleData:
    if W.canonical:
        return W
    r = 3 if W.mode == "trigonal" else 2
    # need D + rM = 2(c1 + 2M), i.e. (4 - r) M = D - 2 c1
    M = (W.D - W.c1.scale(2)).scale(Fraction(1, 4 - r))
    V = twist(W, M, model)
    if not (V.D - V.c1.scale(2)).is_zero():
        raise ChowError("twist did not reach canonical form")
    return BundleData(V.c1, V.c2, V.mode, None)


@dataclass(frozen=True)
class PVClass:
    a: AY = field(default_factory=AY)
    b: AY = field(default_factory=AY)

    def __add__(self, o: "PVClass") -> "PVClass":
        return PVClass(self.a + o.a, self.b + o.b)

    def __neg__(self):
        return PVClass(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, k) -> "PVClass":
        return PVClass(self.a.scale(k), self.b.scale(k))


def zeta() -> PVClass:
    return PVClass(AY(), AY.of(1))


def pullback(s=0, D: Optional[DivY] = None, p=0) -> PVClass:
    return PVClass(AY.of(s, D, p), AY())


def pv_mul(x: PVClass, y: PVClass, V: BundleData, model: SurfaceModel) -> PVClass:
    bb = x.b.mul(y.b, model)
    c1 = AY.of(0, V.c1)
    c2 = AY.of(0, None, V.c2)
    a = x.a.mul(y.a, model) - c2.mul(bb, model)
    b = x.a.mul(y.b, model) + x.b.mul(y.a, model) - c1.mul(bb, model)
    return PVClass(a, b)


def pv_prod(V: BundleData, model: SurfaceModel, *xs: PVClass) -> PVClass:
    out = xs[0]
    for x in xs[1:]:
        out = pv_mul(out, x, V, model)
    return out


def pv_degree(x: PVClass, model: SurfaceModel) -> MPoly:
    """Degree of a top-dimensional class: the point part multiplying zeta."""
    if x.b.s or not x.b.D.is_zero():
        raise ChowError("pv_degree needs a top-degree class (zeta-part must lie in A^2(Y))")
    return x.b.p


def canonical_classes(model: SurfaceModel, V: BundleData) -> dict:
    thetas = {}
    for n, _ in enumerate(model.trees):
        for cid, fn in model.functions(n).items():
            if cid != model.trees[n].root:
                thetas[(n, cid)] = fn.theta
    K_Y = DivY.make(-2, 2 * model.gB - 2, thetas)
    c2_Y = 4 * (1 - model.gB) + model.n_nonroot()
    K_PV = zeta().scale(-2) + pullback(0, K_Y - V.c1)
    omega = zeta().scale(-2) + pullback(0, -V.c1)
    # c(T_PV) = c(T_Y) c(T_rel) with c1(T_rel) = 2 zeta + c1
    c2_PV = PVClass(AY.of(0, None, c2_Y - intersect_y(K_Y, V.c1, model)), AY.of(0, K_Y.scale(-2)))
    r = 3 if V.mode == "trigonal" else 2
    X = zeta().scale(r) + pullback(0, V.divisor())
    return {"K_Y": K_Y, "K_PV": K_PV, "omega_pi": omega, "c2_Y": c2_Y, "c2_PV": c2_PV, "X_class": X}


def generic_model(gB="gB") -> Tuple[SurfaceModel, BundleData]:
    """Plain ruled surface with c1 = c B0 + d F and symbolic c2."""
    model = SurfaceModel(gB)
    V = BundleData(DivY.make("c", "d"), as_poly("c2"))
    return model, V
