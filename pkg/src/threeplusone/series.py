"""Truncated multivariate power series with exact rational coefficients.

Truncation is by total degree.  A series knows its ``order``: coefficients of
total degree above it are unknown, and every operation returns a result whose
order is the smallest order among its operands.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class SeriesError(ValueError):
    pass


def _monomials(nvars: int, degree: int) -> Iterable[Monomial]:
    """All exponent tuples of the given total degree."""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - first):
            yield (first,) + rest


class TruncatedSeries:
    __slots__ = ("nvars", "order", "coeffs")

    def __init__(self, nvars: int, order: int, coeffs: Mapping[Monomial, Rational] | None = None):
        if nvars < 1:
            raise SeriesError("need at least one variable")
        self.nvars = nvars
        self.order = order
        clean: dict[Monomial, Fraction] = {}
        for mono, value in (coeffs or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars or min(mono) < 0:
                raise SeriesError(f"bad monomial {mono} for {nvars} variables")
            if sum(mono) <= order and value:
                clean[mono] = Fraction(value)
        self.coeffs = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, value, nvars: int = 1, order: int = 0) -> "TruncatedSeries":
        return cls(nvars, order, {(0,) * nvars: value})

    @classmethod
    def variable(cls, k: int = 0, nvars: int = 1, order: int = 1) -> "TruncatedSeries":
        mono = tuple(1 if m == k else 0 for m in range(nvars))
        return cls(nvars, order, {mono: 1})

    @classmethod
    def from_list(cls, values: Sequence, order: int | None = None) -> "TruncatedSeries":
        """Univariate series with ``values[n]`` as the coefficient of ``x^n``."""
        order = len(values) - 1 if order is None else order
        return cls(1, order, {(n,): v for n, v in enumerate(values)})

    @classmethod
    def exp(cls, k: int = 0, nvars: int = 1, order: int = 0, scale=1) -> "TruncatedSeries":
        """``exp(scale * x_k)`` through total degree ``order``."""
        scale = Fraction(scale)
        coeffs = {}
        for n in range(order + 1):
            mono = tuple(n if m == k else 0 for m in range(nvars))
            coeffs[mono] = scale ** n / factorial(n)
        return cls(nvars, order, coeffs)

    # -- access ----------------------------------------------------------------

    def __getitem__(self, mono) -> Fraction:
        if isinstance(mono, int):
            mono = (mono,)
        mono = tuple(mono)
        if sum(mono) > self.order:
            raise IndexError(f"degree {sum(mono)} is beyond truncation order {self.order}")
        return self.coeffs.get(mono, Fraction(0))

    def coefficients(self) -> list[Fraction]:
        """Univariate coefficient list ``[a_0, ..., a_order]``."""
        if self.nvars != 1:
            raise SeriesError("coefficients() is for univariate series")
        return [self.coeffs.get((n,), Fraction(0)) for n in range(self.order + 1)]

    def constant_term(self) -> Fraction:
        return self.coeffs.get((0,) * self.nvars, Fraction(0))

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, min(order, self.order), self.coeffs)

    def homogeneous(self, degree: int) -> dict[Monomial, Fraction]:
        return {m: v for m, v in self.coeffs.items() if sum(m) == degree}

    # -- arithmetic --------------------------------------------------------------

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.nvars != self.nvars:
                raise SeriesError("series have different numbers of variables")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return TruncatedSeries.constant(other, self.nvars, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for m, v in other.coeffs.items():
            out[m] = out.get(m, 0) + v
        return TruncatedSeries(self.nvars, min(self.order, other.order), out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.nvars, self.order, {m: -v for m, v in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.nvars, self.order,
                                   {m: v * other for m, v in self.coeffs.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out: dict[Monomial, Fraction] = {}
        right = [(m, sum(m), v) for m, v in other.coeffs.items()]
        for m1, v1 in self.coeffs.items():
            d1 = sum(m1)
            for m2, d2, v2 in right:
                if d1 + d2 > order:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + v1 * v2
        return TruncatedSeries(self.nvars, order, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = TruncatedSeries.constant(1, self.nvars, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * other.reciprocal()

    def reciprocal(self) -> "TruncatedSeries":
        a0 = self.constant_term()
        if a0 == 0:
            raise SeriesError(f"reciprocal needs a nonzero constant term, got {a0}")
        inv0 = 1 / a0
        rest = [(m, v) for m, v in self.coeffs.items() if any(m)]
        out: dict[Monomial, Fraction] = {(0,) * self.nvars: inv0}
        for degree in range(1, self.order + 1):
            for mono in _monomials(self.nvars, degree):
                acc = Fraction(0)
                for m1, v1 in rest:
                    diff = tuple(a - b for a, b in zip(mono, m1))
                    if min(diff) >= 0:
                        r = out.get(diff)
                        if r:
                            acc += v1 * r
                if acc:
                    out[mono] = -inv0 * acc
        return TruncatedSeries(self.nvars, self.order, out)

    def compose(self, subs: Sequence["TruncatedSeries"]) -> "TruncatedSeries":
        """Substitute ``subs[k]`` for variable ``k``; each must have zero constant term."""
        if len(subs) != self.nvars:
            raise SeriesError(f"need {self.nvars} substitutions, got {len(subs)}")
        nv = subs[0].nvars
        for s in subs:
            if s.nvars != nv:
                raise SeriesError("substituted series must share their variables")
            if s.constant_term() != 0:
                raise SeriesError(f"substituted series has constant term {s.constant_term()}")
        order = min([self.order] + [s.order for s in subs])
        subs = [s.truncate(order) for s in subs]
        powers = [[TruncatedSeries.constant(1, nv, order)] for _ in subs]
        result = TruncatedSeries(nv, order)
        for mono, v in self.coeffs.items():
            if sum(mono) > order:
                continue
            term = TruncatedSeries.constant(v, nv, order)
            for k, e in enumerate(mono):
                while len(powers[k]) <= e:
                    powers[k].append(powers[k][-1] * subs[k])
                if e:
                    term = term * powers[k][e]
            result = result + term
        return result

    def substitute_diagonal(self) -> "TruncatedSeries":
        """Set every variable equal to a single one, ``f(x, x, ...)``."""
        out: dict[Monomial, Fraction] = {}
        for m, v in self.coeffs.items():
            key = (sum(m),)
            out[key] = out.get(key, 0) + v
        return TruncatedSeries(1, self.order, out)

    # -- comparison and display ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.nvars, self.order, self.coeffs) == (other.nvars, other.order, other.coeffs)

    def __hash__(self):
        return hash((self.nvars, self.order, frozenset(self.coeffs.items())))

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equal through the lower of the two truncation orders."""
        order = min(self.order, other.order)
        return self.truncate(order).coeffs == other.truncate(order).coeffs

    def __repr__(self) -> str:
        names = "xyzuvw" if self.nvars <= 6 else None
        terms = []
        for m in sorted(self.coeffs, key=lambda m: (sum(m), tuple(-e for e in m))):
            v = self.coeffs[m]
            mono = "*".join(
                (names[k] if names else f"x{k}") + (f"^{e}" if e > 1 else "")
                for k, e in enumerate(m) if e
            )
            terms.append(f"{v}*{mono}" if mono else str(v))
        return f"TruncatedSeries({' + '.join(terms) or '0'} + O(deg {self.order + 1}))"


def solve_skeleton_series(c: TruncatedSeries, t: TruncatedSeries, order: int | None = None,
                          ) -> TruncatedSeries:
    """Fixed point of ``S = 1 + c/(1+c) S^2 + t S^3`` through the given order.

    Each iteration fixes at least one more degree because ``c`` and ``t`` have
    no constant term.  The exact residual is checked before returning.
    """
    if c.constant_term() != 0 or t.constant_term() != 0:
        raise SeriesError(f"c and t need zero constant terms, got {c.constant_term()} "
                          f"and {t.constant_term()}")
    if order is None:
        order = min(c.order, t.order)
    c, t = c.truncate(order), t.truncate(order)
    ratio = c * (1 + c).reciprocal()
    s = TruncatedSeries.constant(1, c.nvars, order)
    for _ in range(order + 1):
        s2 = s * s
        nxt = 1 + ratio * s2 + t * s2 * s
        if nxt == s:
            break
        s = nxt
    else:
        raise SeriesError("fixed-point iteration did not stabilise")
    residual = s - 1 - ratio * s * s - t * s * s * s
    if residual.coeffs:
        raise SeriesError("fixed point fails its defining equation")
    return s


def formal_skeleton_series(order: int) -> TruncatedSeries:
    """``S(c, t)`` as a bivariate series in ``(c, t)``."""
    return solve_skeleton_series(TruncatedSeries.variable(0, 2, order),
                                 TruncatedSeries.variable(1, 2, order), order)


def bicoloured_skeleton_series(order: int) -> TruncatedSeries:
    """``1 / (1 - c1/(1+c1) - c2/(1+c2) - t)`` in variables ``(c1, c2, t)``."""
    c1 = TruncatedSeries.variable(0, 3, order)
    c2 = TruncatedSeries.variable(1, 3, order)
    tt = TruncatedSeries.variable(2, 3, order)
    inner = 1 - c1 * (1 + c1).reciprocal() - c2 * (1 + c2).reciprocal() - tt
    return inner.reciprocal()
