"""Generating functions for (3+1)-free posets.

Both pipelines substitute into the skeleton series ``S(c, t)``: clone sets
contribute ``c`` and tangles contribute ``t``.  With ``B`` the bicoloured-graph
series, tangles on the diagonal are ``1 - 2x - 1/B(x)`` (unlabelled) and
``2 e^{-x} - 1 - 1/B(x)`` (labelled).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .bicoloured import count_labelled, count_unlabelled
from .series import TruncatedSeries, solve_skeleton_series


def bicoloured_unlabelled_univariate(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_list(
        [sum(count_unlabelled(i, n - i) for i in range(n + 1)) for n in range(order + 1)])


def bicoloured_labelled_univariate(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_list(
        [Fraction(sum(comb(n, i) * count_labelled(i, n - i) for i in range(n + 1)), factorial(n))
         for n in range(order + 1)])


def p_unl_series(order: int) -> TruncatedSeries:
    """Ordinary generating function of unlabelled (3+1)-free posets."""
    x = TruncatedSeries.variable(0, 1, order)
    clones = x * (1 - x).reciprocal()
    tangles = 1 - 2 * x - bicoloured_unlabelled_univariate(order).reciprocal()
    return solve_skeleton_series(clones, tangles, order)


def p_lbl_series(order: int) -> TruncatedSeries:
    """Exponential generating function of labelled (3+1)-free posets."""
    clones = TruncatedSeries.exp(0, 1, order) - 1
    tangles = (2 * TruncatedSeries.exp(0, 1, order, scale=-1) - 1
               - bicoloured_labelled_univariate(order).reciprocal())
    return solve_skeleton_series(clones, tangles, order)


def p_unl(order: int) -> list[int]:
    """``[p_unl(0), ..., p_unl(order)]``."""
    coeffs = p_unl_series(order).coefficients()
    assert all(v.denominator == 1 for v in coeffs)
    return [int(v) for v in coeffs]


def p_lbl(order: int) -> list[int]:
    """``[p_lbl(0), ..., p_lbl(order)]``, i.e. ``n!`` times the EGF coefficients."""
    out = []
    for n, v in enumerate(p_lbl_series(order).coefficients()):
        scaled = v * factorial(n)
        assert scaled.denominator == 1
        out.append(int(scaled))
    return out


def catalan_specialisation(order: int) -> list[int]:
    """Coefficients of ``S(x/(1-x), 0)``."""
    x = TruncatedSeries.variable(0, 1, order)
    s = solve_skeleton_series(x * (1 - x).reciprocal(), TruncatedSeries(1, order), order)
    return [int(v) for v in s.coefficients()]
