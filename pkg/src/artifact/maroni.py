"""Maroni invariants, locus dimensions and the generalized Maroni class."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .boundary import CLOSED_TILDES, symbolic_coefficient, tilde_shift
from .chow import BundleData, SurfaceModel, intersect_y
from .symkernel import MPoly, Quotient, as_poly


class MaroniError(ValueError):
    pass


@dataclass(frozen=True)
class SplittingType:
    a: int
    b: int


@dataclass(frozen=True)
class MaroniReport:
    genus: int
    k: int
    admissible: bool
    locus_dimension: Optional[int]
    codim: Optional[int]
    in_maroni_locus: bool


def maroni_invariant(s: SplittingType, g: int, mode: str = "trigonal") -> int:
    total = g + 2 if mode == "trigonal" else g + 1
    if s.a + s.b != total:
        raise MaroniError(f"splitting type ({s.a},{s.b}) does not sum to {total}")
    return abs(s.b - s.a)


def in_maroni_locus(k: int) -> bool:
    return k >= 2


def general_splitting(g: int) -> SplittingType:
    """Balanced splitting of a general curve."""
    a = (g + 2) // 2
    return SplittingType(a, g + 2 - a)


def is_admissible(g: int, k: int) -> bool:
    return k >= 0 and (k - g) % 2 == 0 and 3 * k <= g + 2


def admissible_k(g: int) -> List[int]:
    return [k for k in range(0, g + 3) if is_admissible(g, k)]


def _h0_sum(g, k):
    # sections of Sym^3(O + O(-k)) twisted by (g+2+3k)/2 on P^1
    total = 0
    for j in (3, 1, -1, -3):
        n = (g + 2 + j * k) // 2
        total += max(n + 1, 0)
    return total


def linear_system_dimension(g: int, k: int) -> int:
    return _h0_sum(g, k) - 1


def aut_dimension(k: int) -> int:
    # PGL_2 on the base plus projective automorphisms of O + O(k)
    hom = 4 if k == 0 else k + 3
    return 3 + hom - 1


def maroni_locus_dimension(g: int, k: int) -> Tuple[int, int]:
    """(dimension, codimension) of curves with Maroni invariant k."""
    if not is_admissible(g, k):
        raise MaroniError(f"k={k} is not admissible for g={g}")
    dim = linear_system_dimension(g, k) - aut_dimension(k)
    closed = 2 * g + 1 if k == 0 else 2 * g + 2 - k
    if dim != closed:
        raise MaroniError(f"dimension count {dim} disagrees with {closed}")
    return dim, (2 * g + 1) - dim


def maroni_report(g: int, k: Optional[int] = None) -> MaroniReport:
    if k is None:
        s = general_splitting(g)
        k = maroni_invariant(s, g)
    ok = is_admissible(g, k)
    dim, codim = maroni_locus_dimension(g, k) if ok else (None, None)
    return MaroniReport(g, k, ok, dim, codim, in_maroni_locus(k))


def locus_kind(g: int) -> Optional[str]:
    """'divisor' for even g, 'codim2' for odd g, None when no Maroni curves exist."""
    ks = [k for k in admissible_k(g) if k >= 2]
    if not ks:
        return None
    _, codim = maroni_locus_dimension(g, min(ks))
    return {1: "divisor", 2: "codim2"}.get(codim, f"codim{codim}")


def bogomolov_maroni_degree(V: BundleData, model: SurfaceModel, maroni_fiber_count, g: int) -> MPoly:
    """4 c2 - c1^2 for a family with irreducible fibers; equals 4 mu|_B."""
    if g % 2:
        raise MaroniError("the identity is established for even genus only")
    val = 4 * V.c2 - intersect_y(V.c1, V.c1, model)
    expected = 4 * as_poly(maroni_fiber_count)
    if val != expected:
        raise MaroniError(f"4c2 - c1^2 = {val}, expected {expected}")
    return val


def alpha_coefficient(V: BundleData, model: SurfaceModel, mu_deg, delta_deg) -> Fraction:
    """alpha with 4c2 - c1^2 = 4 mu + alpha * delta_{k,i} on a one-divisor test family."""
    val = 4 * V.c2 - intersect_y(V.c1, V.c1, model)
    return ((val - 4 * as_poly(mu_deg)) / as_poly(delta_deg)).constant_value()


def default_chat(g) -> Dict[Tuple[int, object], MPoly]:
    """Known c-hat coefficients keyed by (k, parity or None).

    Only the k=1 entries are supplied: c-tilde for even i and
    c-tilde - 3(g-3)/2 for odd i.  Other types are left to the caller.
    """
    g = as_poly(g)
    ct1 = CLOSED_TILDES[("T1", "S")].eval({"g": g})
    return {(1, "even"): ct1, (1, "odd"): ct1 - Fraction(3, 2) * (g - 3)}


def chat_value(k: int, i: int, g, overrides=None, fallback_tilde: bool = True) -> MPoly:
    overrides = overrides or {}
    if (k, i) in overrides:
        return as_poly(overrides[(k, i)])
    g = as_poly(g)
    if k == 1:
        key = (1, "odd" if i % 2 else "even")
        return default_chat(g)[key].eval({"i": i})
    if not fallback_tilde:
        raise MaroniError(f"no c-hat coefficient known for type {k}")
    kind = f"T{k}"
    return (symbolic_coefficient(kind, "S") + tilde_shift(kind, "S")).eval({"g": g, "i": i})


def generalized_maroni_degree(lam, delta0, deltas: Dict[Tuple[int, int], object], g,
                              overrides=None, fallback_tilde: bool = True) -> Quotient:
    """mu = ((7g+6) lambda - g delta0 - sum c-hat delta_{k,i}) / (2(g-3))."""
    g = as_poly(g)
    if g.is_constant() and g.constant_value() == 3:
        raise MaroniError("the generalized Maroni class is undefined for g = 3")
    num = (7 * g + 6) * as_poly(lam) - g * as_poly(delta0)
    for (k, i), deg in sorted(deltas.items()):
        if as_poly(deg):
            num = num - chat_value(k, i, g, overrides, fallback_tilde) * as_poly(deg)
    return Quotient(num, 2 * (g - 3))


def maximal_bound_criterion(delta0, mu_deg, g) -> bool:
    """(g+2) delta0 + 72 (g+1) mu = 0."""
    return (Quotient(as_poly(g) + 2) * delta0 + Quotient(72 * (as_poly(g) + 1)) * mu_deg) == 0
