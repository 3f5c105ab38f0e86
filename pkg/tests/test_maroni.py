from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artifact import maroni as mr
from artifact.chow import BundleData, DivY, SurfaceModel
from artifact.symkernel import Quotient, as_poly, var
from artifact.trees import parse_tree_file


def test_invariant_examples():
    assert mr.maroni_invariant(mr.SplittingType(4, 4), 6) == 0
    assert mr.maroni_invariant(mr.SplittingType(2, 6), 6) == 4
    assert mr.maroni_invariant(mr.general_splitting(6), 6) == 0
    assert mr.maroni_invariant(mr.general_splitting(7), 7) == 1
    with pytest.raises(mr.MaroniError):
        mr.maroni_invariant(mr.SplittingType(2, 2), 6)


def test_dimensions():
    assert mr.maroni_locus_dimension(8, 0) == (17, 0)
    assert mr.maroni_locus_dimension(8, 2) == (16, 1)
    assert mr.maroni_locus_dimension(9, 3) == (17, 2)
    with pytest.raises(mr.MaroniError):
        mr.maroni_locus_dimension(8, 3)
    assert mr.admissible_k(3) == [1]
    assert mr.locus_kind(3) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 100))
def test_admissibility(g):
    ks = mr.admissible_k(g)
    assert all((k - g) % 2 == 0 and 3 * k <= g + 2 for k in ks)
    assert (0 if g % 2 == 0 else 1) in ks
    for k in ks:
        dim, codim = mr.maroni_locus_dimension(g, k)
        if k >= 2:
            assert dim < 2 * g + 1


def test_bogomolov_identity_examples():
    model = SurfaceModel(0)
    assert mr.bogomolov_maroni_degree(BundleData(DivY.make(0, 4), as_poly(3)), model, 3, 6) == 12
    assert mr.bogomolov_maroni_degree(BundleData(DivY.make(4, 1), as_poly(2)), model, 0, 6) == 0
    with pytest.raises(mr.MaroniError):
        mr.bogomolov_maroni_degree(BundleData(DivY.make(0, 4), as_poly(3)), model, 3, 7)
    with pytest.raises(mr.MaroniError):
        mr.bogomolov_maroni_degree(BundleData(DivY.make(0, 4), as_poly(3)), model, 2, 6)


def test_alpha_for_type1():
    t, _ = parse_tree_file("genus 6\nR -(1) 0\nE1 R(1) 0\n")
    model = SurfaceModel(0, [t])
    V = BundleData(DivY.make(comps={(0, "E1"): 1}), as_poly(0))
    assert mr.alpha_coefficient(V, model, 1, 1) == -3
    trivial = BundleData(DivY.make(), as_poly(0))
    assert mr.alpha_coefficient(trivial, model, 0, 1) == 0


def test_generalized_degree():
    assert mr.generalized_maroni_degree(62, 504, {}, 6) == Quotient(-8)
    with pytest.raises(mr.MaroniError):
        mr.generalized_maroni_degree(1, 1, {}, 3)
    g = var("g")
    odd = mr.chat_value(1, 3, g)
    even = mr.chat_value(1, 2, g)
    assert even == mr.default_chat(g)[(1, "even")].eval({"i": 2})
    assert odd == mr.default_chat(g)[(1, "even")].eval({"i": 3}) - Fraction(3, 2) * (g - 3)
    with pytest.raises(mr.MaroniError):
        mr.chat_value(2, 1, g, fallback_tilde=False)
    assert mr.chat_value(2, 1, g, {(2, 1): 5}) == 5


def test_criterion():
    assert mr.maximal_bound_criterion(0, 0, 6)
    assert mr.maximal_bound_criterion(504, -8, 6)
    assert not mr.maximal_bound_criterion(504, 0, 6)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 80), st.integers(1, 50))
def test_maximal_slope_implies_criterion(g, t):
    lam, d0 = (5 * g + 1) * t, 36 * (g + 1) * t
    mu = mr.generalized_maroni_degree(lam, d0, {}, g)
    assert mr.maximal_bound_criterion(d0, mu, g)
