"""Slope bounds, conjectural bound formulas and witness families."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from .chow import B0, F, BundleData, DivY, SurfaceModel, intersect_y
from .invariants import InvariantReport, hyperelliptic_invariants, triple_cover_invariants
from .maroni import generalized_maroni_degree, maximal_bound_criterion
from .symkernel import MPoly, Quotient, as_poly, var

BOUND_NAMES = ("general", "hyperelliptic", "trigonal_max", "trigonal_semistable", "tetragonal",
               "pencil", "conjecture_Fd", "clifford")


class SlopeError(ValueError):
    pass


@dataclass(frozen=True)
class BoundSpec:
    name: str
    value: Quotient

    @property
    def numerator(self) -> MPoly:
        return self.value.num

    @property
    def denominator(self) -> MPoly:
        return self.value.den


def gonality_genus(d: int) -> int:
    """g_d: 2 for d = 2, otherwise 2d - 3."""
    if d < 2:
        raise SlopeError("d must be at least 2")
    return 2 if d == 2 else 2 * d - 3


def conjecture_Fd_forms(g, d: int, fd):
    """The two displayed forms of F_d(g)."""
    g, fd = as_poly(g), as_poly(fd)
    gd = gonality_genus(d)
    one = Quotient(1)
    first = 6 + Quotient(12, g + 1) + Quotient(6 * (1 - fd) * (g - gd) * (g - 1), (g + fd) * (gd + 1) * (g + 1))
    second = 6 + Quotient(6, g + fd) * (one + fd + Quotient((1 - fd) * (g - 1), gd + 1))
    return first, second


def bound(name: str, g, d: Optional[int] = None, fd=None, cliff=None) -> BoundSpec:
    g = as_poly(g)
    if name == "general":
        q = 6 + Quotient(12, g + 1)
    elif name == "hyperelliptic":
        q = 8 + Quotient(4, g)
    elif name == "trigonal_max":
        q = Quotient(36 * (g + 1), 5 * g + 1)
    elif name == "trigonal_semistable":
        q = 7 + Quotient(6, g)
    elif name == "tetragonal":
        q = Quotient(4 * (5 * g + 7), 3 * g + 1)
    elif name == "pencil":
        if d is None:
            raise SlopeError("pencil bound needs d")
        q = 6 + Quotient(2, d - 1) + Quotient(2 * d, g)
    elif name == "conjecture_Fd":
        if d is None or fd is None:
            raise SlopeError("conjecture_Fd needs d and fd")
        q = conjecture_Fd_forms(g, d, fd)[1]
    elif name == "clifford":
        if cliff is None:
            raise SlopeError("clifford bound needs the Clifford index")
        cl = as_poly(cliff)
        q = 6 + Quotient(2, cl + 1) + Quotient(2 * cl + 4, g)
    else:
        raise SlopeError(f"unknown bound {name!r}")
    return BoundSpec(name, q)


# the comparison table: rows and the genera at which each row is displayed
TABLE_GENERA = (1, 2, 3, 5)
TABLE_ROWS = (("general", (1, 2, 3, 5)), ("hyperelliptic", (1, 2)),
              ("trigonal_max", (1, 3)), ("tetragonal", (1, 5)))


def bounds_table():
    """{row: {g: value or None}} with None where no value is displayed."""
    out = {}
    for name, shown in TABLE_ROWS:
        out[name] = {g: (bound(name, g).value.value() if g in shown else None) for g in TABLE_GENERA}
    return out


def conjecture_identities(d: int, fd=None) -> bool:
    fd = var("fd") if fd is None else as_poly(fd)
    g = var("g")
    first, second = conjecture_Fd_forms(g, d, fd)
    if first != second:
        return False
    gd = gonality_genus(d)
    at1 = second.eval({"g": 1})
    atgd = second.eval({"g": gd})
    return at1 == Quotient(12) and atgd == 6 + Quotient(12, gd + 1)


# witness families

@dataclass
class FamilySpec:
    name: str
    params: Dict[str, int]
    genus: int
    conditions: Dict[str, bool] = field(default_factory=dict)
    bundle: Optional[BundleData] = None
    model: Optional[SurfaceModel] = None


@dataclass
class SlopeReport:
    slope: Fraction
    in_range: bool
    semistable_applicable: Optional[bool]
    maximal: bool
    hyperelliptic_maximal: bool
    semistable_equality: bool

    def as_dict(self):
        return dict(self.__dict__)


@dataclass
class FamilyResult:
    spec: FamilySpec
    report: InvariantReport
    slope: SlopeReport
    mu: Optional[Fraction] = None
    maroni_criterion: Optional[bool] = None


def slope_report(report: InvariantReport, g: int) -> SlopeReport:
    lam = report.lam.constant_value()
    if lam == 0:
        raise SlopeError("lambda = 0: isotrivial family has no slope")
    s = report.delta.constant_value() / lam
    semi = None
    if report.bogomolov is not None:
        semi = report.bogomolov.constant_value() >= 0
    return SlopeReport(
        slope=s,
        in_range=0 <= s < 12,
        semistable_applicable=semi,
        maximal=s == bound("trigonal_max", g).value.value(),
        hyperelliptic_maximal=s == bound("hyperelliptic", g).value.value(),
        semistable_equality=s == bound("trigonal_semistable", g).value.value(),
    )


def _ex71(params):
    if "g" in params and "e" not in params:
        g = params["g"]
        _refuse_mod3(g, 0)
        e = g // 3
    else:
        e = params["e"]
        g = 3 * e
    if e < 1:
        raise SlopeError("ex71 needs e >= 1")
    model = SurfaceModel(0)
    Bp = B0 - F.scale(3)          # the (-6)-section of F_6
    Q = Bp + F.scale(6)
    D = Q.scale(g + 1)
    E = Bp.scale(e) + F.scale(2 * (g + 1))
    W = BundleData(E, MPoly(), "trigonal", D)
    if intersect_y(Bp, Bp, model) != -6:
        raise SlopeError("basis change on F_6 failed")
    return FamilySpec("ex71", {"e": e}, g, {}, W, model), e


def _ex72(params):
    if "g" in params and "e" not in params:
        g = params["g"]
        _refuse_mod3(g, 1)
        e = (g + 2) // 3
    else:
        e = params["e"]
        g = 3 * e - 2
    f = params.get("f", 1)
    if e < 2 or f < 1:
        raise SlopeError("ex72 needs e >= 2 and f >= 1")
    model = SurfaceModel(0)
    E = B0.scale(e) + F.scale(f)
    W = BundleData(E, MPoly(), "trigonal", E.scale(3))
    return FamilySpec("ex72", {"e": e, "f": f}, g, {}, W, model), e


def _refuse_mod3(g, want):
    if g % 3 == 2:
        raise SlopeError("no maximal-slope family is known for g = 2 mod 3; none is constructed")
    if g % 3 != want:
        raise SlopeError(f"this construction needs g = {want} mod 3")


def maximal_family(g: int) -> FamilyResult:
    if g % 3 == 0:
        return family("ex71", {"g": g})
    if g % 3 == 1:
        return family("ex72", {"g": g})
    _refuse_mod3(g, 0)


def _triple_cover_family(spec: FamilySpec, e_fiber: int) -> FamilyResult:
    W, model, g = spec.bundle, spec.model, spec.genus
    D = W.divisor()
    d_inv = intersect_y(D.scale(2) - W.c1.scale(3), B0, model)
    bog = intersect_y(W.c1, W.c1, model) - 4 * W.c2
    spec.conditions = {
        "index_equality": 2 * (g + 2) * d_inv == 9 * bog,
        "genus_condition": intersect_y(D.scale(2) - W.c1.scale(3), F, model) == g + 2,
        "fiber_splitting": intersect_y(W.c1, F, model) == e_fiber and 3 * e_fiber <= g + 2
        and (e_fiber - g) % 2 == 0,
    }
    if not all(spec.conditions.values()):
        bad = [k for k, v in spec.conditions.items() if not v]
        raise SlopeError(f"{spec.name}: construction conditions fail: {bad}")
    rep = triple_cover_invariants(W, model, g=g)
    sl = slope_report(rep, g)
    mu = None
    crit = None
    if g != 3:
        mu = generalized_maroni_degree(rep.lam, rep.delta, {}, g).value()
        crit = maximal_bound_criterion(rep.delta.constant_value(), mu, g)
    return FamilyResult(spec, rep, sl, mu, crit)


def _hyper_pencil(params):
    g = params["g"]
    if g < 2:
        raise SlopeError("hyper-pencil needs g >= 2")
    # blow up the 4(g+1) base points of a pencil of (2, g+1) curves on P1 x P1
    chi_top = 4 + 4 * (g + 1)
    delta = chi_top - 2 * (2 - 2 * g)
    lam = g  # f_* omega splits as g copies of O(1)
    rep = InvariantReport(as_poly(lam), as_poly(12 * lam - delta), as_poly(delta))
    check = hyperelliptic_invariants([], 1, g=g)
    if (check.lam, check.delta) != (rep.lam, rep.delta):
        raise SlopeError("hyper-pencil bookkeeping disagrees with the double-cover formulas")
    spec = FamilySpec("hyper-pencil", {"g": g}, g, {"chi_top": chi_top == 4 * g + 8})
    return FamilyResult(spec, rep, slope_report(rep, g))


def _pencil(params):
    d, g, k = params["d"], params["g"], params.get("k", 0)
    if d < 2 or g < 2 or k < 0:
        raise SlopeError("pencil needs d >= 2, g >= 2, k >= 0")
    # C ~ d S + b F on F_k, with S^2 = -k; adjunction fixes b
    num = 2 * (g - 1 + d) + k * d * (d - 1)
    if num % (2 * (d - 1)):
        raise SlopeError(f"no curve class of gonality {d} and genus {g} on F_{k}")
    b = num // (2 * (d - 1))
    if b < k * d:
        raise SlopeError("the curve class would contain the negative section")
    C2 = d * (2 * b - k * d)
    lam = g  # blow-up of a rational surface: chi(O_X) = 1
    delta = C2 + 4 * g
    bog = index_q = None
    if d == 3:
        # the same family as a triple cover of P1 x P1: c1 = (g+2) B0 + 2F, c2 = g+2
        V = BundleData(DivY.make(g + 2, 2), as_poly(g + 2))
        tc = triple_cover_invariants(V, SurfaceModel(0), g=g)
        if (tc.lam, tc.delta) != (as_poly(lam), as_poly(delta)):
            raise SlopeError("pencil and triple-cover computations disagree")
        bog, index_q = tc.bogomolov, tc.index_q
    if d == 2:
        hc = hyperelliptic_invariants([], 1, g=g)
        if (hc.lam, hc.delta) != (as_poly(lam), as_poly(delta)):
            raise SlopeError("pencil and double-cover computations disagree")
    rep = InvariantReport(as_poly(lam), as_poly(12 * lam - delta), as_poly(delta), None, bog, index_q)
    spec = FamilySpec("pencil", {"d": d, "g": g, "k": k}, g,
                      {"slope_formula": Fraction(delta, lam) == bound("pencil", g, d=d).value.value()})
    return FamilyResult(spec, rep, slope_report(rep, g))


FAMILY_NAMES = ("ex71", "ex72", "hyper-pencil", "pencil")


def family(name: str, params: Dict[str, int]) -> FamilyResult:
    if name == "ex71":
        spec, e = _ex71(params)
        return _triple_cover_family(spec, e)
    if name == "ex72":
        spec, e = _ex72(params)
        return _triple_cover_family(spec, e)
    if name == "hyper-pencil":
        return _hyper_pencil(params)
    if name == "pencil":
        return _pencil(params)
    raise SlopeError(f"unknown family {name!r}")
