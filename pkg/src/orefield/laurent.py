"""Twisted Laurent series at explicit finite precision.

A series is a triple (valuation, coefficients, precision): the coefficients
cover the exponents ``val .. prec-1`` and nothing is known from ``prec`` on.
The representation is normalised so that a nonzero series has a nonzero
coefficient at its valuation; a series that is zero to its precision is
stored with empty coefficients and ``val == prec``.

Precision bookkeeping is pessimistic and explicit:

* ``add``: min of the two precisions;
* ``mul``: ``min(N_f + val_g, N_g + val_f)`` — multiplying by a series of
  positive valuation *gains* absolute precision, dividing loses it;
* ``inv``: a series of valuation v known mod t^N has an inverse of
  valuation -v known mod t^(N-2v).

Inversion factors the series as (c t^v) * (1 + u) with val(u) >= 1 and runs
the geometric-series recursion for (1+u)^-1 adapted to the twist (the
recursion works coefficient by coefficient, so the cost is one twisted
convolution).  Polynomials and fractions embed through `from_polynomial`
and `embed_fraction`; the embedding is the canonical one fixing the ground
field and sending t to t.

`newton_root` lifts a simple residual root of a polynomial with *central*
coefficients (invariant coefficients supported on exponents divisible by
the automorphism order) to a series root, doubling the contact valuation
each round.  The commutativity of everything in sight is what makes the
classical iteration legitimate; the inputs are checked for it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import (
    InsufficientPrecision,
    MixedFields,
    NoResidualRoot,
    NotInvariantSeries,
    NotSimpleRoot,
    ZeroSeries,
)
from .ground import GroundElement, GroundField
from .skewfrac import SkewFraction
from .skewpoly import SkewPolynomial


class TwistedSeries:
    __slots__ = ("field", "val", "prec", "coeffs")

    def __init__(
        self,
        field: GroundField,
        val: int,
        coeffs: tuple[GroundElement, ...],
        prec: int,
    ) -> None:
        self.field = field
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def make(
        cls, field: GroundField, val: int, coeffs: Sequence, prec: int
    ) -> "TwistedSeries":
        """Normalised series from raw data; coefficients beyond prec are cut."""
        elems = []
        for c in coeffs:
            if isinstance(c, GroundElement):
                elems.append(c)
            elif isinstance(c, (int, Fraction)):
                elems.append(field.from_rational(c))
            else:
                elems.append(field.element(c))
        elems = elems[: max(prec - val, 0)]
        while elems and elems[0].is_zero():
            elems.pop(0)
            val += 1
        while len(elems) < prec - val:
            elems.append(field.zero())
        if not elems or all(e.is_zero() for e in elems):
            return cls(field, prec, (), prec)
        return cls(field, val, tuple(elems), prec)

    @classmethod
    def zero(cls, field: GroundField, prec: int) -> "TwistedSeries":
        return cls(field, prec, (), prec)

    @classmethod
    def from_ground(cls, e: GroundElement, prec: int) -> "TwistedSeries":
        return cls.make(e.field, 0, [e], prec)

    @classmethod
    def one(cls, field: GroundField, prec: int) -> "TwistedSeries":
        return cls.from_ground(field.one(), prec)

    @classmethod
    def t_power(cls, field: GroundField, power: int, prec: int) -> "TwistedSeries":
        return cls.make(field, power, [field.one()], prec)

    @classmethod
    def from_polynomial(cls, p: SkewPolynomial, prec: int) -> "TwistedSeries":
        return cls.make(p.field, 0, list(p.coeffs), prec)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        """Zero to the stated precision."""
        return not self.coeffs

    def coefficient(self, exponent: int) -> GroundElement:
        if exponent >= self.prec:
            raise InsufficientPrecision(
                f"coefficient of t^{exponent} unknown at precision {self.prec}"
            )
        if exponent < self.val:
            return self.field.zero()
        return self.coeffs[exponent - self.val]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TwistedSeries)
            and self.field == other.field
            and self.val == other.val
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.val, self.prec, tuple(c.coords for c in self.coeffs)))

    def truncate(self, prec: int) -> "TwistedSeries":
        if prec > self.prec:
            raise InsufficientPrecision(
                f"cannot extend precision {self.prec} to {prec}"
            )
        if prec == self.prec:
            return self
        return TwistedSeries.make(
            self.field, self.val, list(self.coeffs[: prec - self.val]), prec
        )

    def _same(self, other: "TwistedSeries") -> None:
        if self.field is not other.field:
            self.field.check_same(other.field)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "TwistedSeries") -> "TwistedSeries":
        self._same(other)
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val)
        out = []
        for m in range(val, prec):
            a = self.coeffs[m - self.val] if self.val <= m < self.prec else None
            b = other.coeffs[m - other.val] if other.val <= m < other.prec else None
            if a is None and b is None:
                out.append(self.field.zero())
            elif a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        return TwistedSeries.make(self.field, val, out, prec)

    def __neg__(self) -> "TwistedSeries":
        return TwistedSeries(
            self.field, self.val, tuple(-c for c in self.coeffs), self.prec
        )

    def __sub__(self, other: "TwistedSeries") -> "TwistedSeries":
        return self + (-other)

    def __mul__(self, other: "TwistedSeries") -> "TwistedSeries":
        self._same(other)
        field = self.field
        prec = min(self.prec + other.val, other.prec + self.val)
        if self.is_zero() or other.is_zero():
            return TwistedSeries.zero(field, prec)
        val = self.val + other.val
        size = prec - val
        acc = [None] * size
        mul, sig, add = field.mul_coords, field.sigma_coords, field.add_coords
        fc = [c.coords for c in self.coeffs]
        gc = [c.coords for c in other.coeffs]
        for i, a in enumerate(fc):
            ei = self.val + i
            if all(x == 0 for x in a):
                continue
            jmax = min(len(gc), prec - ei - other.val)
            for j in range(jmax):
                b = gc[j]
                slot = ei + other.val + j - val
                term = mul(a, sig(b, ei))
                acc[slot] = term if acc[slot] is None else add(acc[slot], term)
        zero = field.zero().coords
        out = [GroundElement(field, c if c is not None else zero) for c in acc]
        return TwistedSeries.make(field, val, out, prec)

    def scale_ground_left(self, c: GroundElement) -> "TwistedSeries":
        if c.is_zero():
            return TwistedSeries.zero(self.field, self.prec)
        return TwistedSeries.make(
            self.field, self.val, [c * a for a in self.coeffs], self.prec
        )

    def inv(self) -> "TwistedSeries":
        """Two-sided inverse to the propagated precision."""
        field = self.field
        if self.is_zero():
            # no known nonzero coefficient: nothing to pivot the recursion on
            raise ZeroSeries(f"inversion of a series that is zero mod t^{self.prec}")
        v = self.val
        r = self.prec - v
        c0 = self.coeffs[0]
        g0 = c0.inv().sigma(-v)
        # u_k = sigma^{-v}(c0^-1 * c_k); the unit part of the series is 1 + u
        c0inv = c0.inv()
        u = [
            (c0inv * self.coeffs[k]).sigma(-v) if k < len(self.coeffs) else field.zero()
            for k in range(r)
        ]
        h: list[GroundElement] = [field.one()]
        for m in range(1, r):
            s = field.zero()
            for k in range(1, m + 1):
                if not u[k].is_zero():
                    s = s + h[m - k] * u[k].sigma(m - k)
            h.append(-s)
        out = [h[m] * g0.sigma(m) for m in range(r)]
        return TwistedSeries.make(field, -v, out, r - v)

    def __pow__(self, n: int) -> "TwistedSeries":
        if n < 0:
            return self.inv() ** (-n)
        result = TwistedSeries.one(self.field, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        if not self.coeffs:
            return f"O(t^{self.prec})"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            e = self.val + k
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{e}")
        return " + ".join(parts) + f" + O(t^{self.prec})"

    __repr__ = __str__


def solve_left(den: TwistedSeries, num: TwistedSeries) -> TwistedSeries:
    """The unique s with den * s = num, i.e. den^-1 * num.

    One ascending coefficient recurrence instead of invert-then-multiply:
    matching the coefficient of t^m leaves  d_v sigma^v(s_{m-v}) = known,
    so each new coefficient costs one back-substitution row.  The result
    precision is the same as `den.inv() * num` would propagate.
    """
    field = den.field
    den._same(num)
    if den.is_zero():
        raise ZeroSeries(f"division by a series that is zero mod t^{den.prec}")
    v = den.val
    out_prec = min(den.prec - 2 * v + num.val, den.prec - v, num.prec - v)
    if num.is_zero():
        return TwistedSeries.zero(field, out_prec)
    w = num.val - v
    size = out_prec - w
    if size <= 0:
        return TwistedSeries.zero(field, out_prec)
    d = den.coeffs
    d0inv = d[0].inv()
    out: list[GroundElement] = []
    for idx in range(size):
        acc = num.coeffs[idx] if idx < len(num.coeffs) else field.zero()
        for k in range(1, min(idx, len(d) - 1) + 1):
            b = out[idx - k]
            if not (b.is_zero() or d[k].is_zero()):
                acc = acc - d[k] * b.sigma(v + k)
        out.append((d0inv * acc).sigma(-v))
    return TwistedSeries.make(field, w, out, out_prec)


def embed_fraction(x: SkewFraction, prec: int) -> TwistedSeries:
    """Canonical embedding den^-1 num -> (den series)^-1 * (num series).

    The result precision is exactly `prec`; the embedding computes at an
    internally padded precision so the denominator's valuation cannot eat
    into the requested window.
    """
    field = x.field
    if x.is_zero():
        return TwistedSeries.zero(field, prec)
    vden = next(i for i, c in enumerate(x.den.coeffs) if not c.is_zero())
    work = prec + 2 * vden
    den = TwistedSeries.from_polynomial(x.den, work)
    num = TwistedSeries.from_polynomial(x.num, work)
    return solve_left(den, num).truncate(prec)


def is_invariant_series(s: TwistedSeries) -> bool:
    """Coefficients invariant and supported on exponents divisible by the
    automorphism order: the commutative series the twisted ring is built
    over."""
    n = s.field.sigma_order
    for k, c in enumerate(s.coeffs):
        if c.is_zero():
            continue
        if (s.val + k) % n != 0:
            return False
        if not (c.is_central() and c.sigma() == c):
            return False
    return True


def evaluate_poly(
    coeff_series: list[TwistedSeries], point: TwistedSeries
) -> TwistedSeries:
    """Horner evaluation of a polynomial (given by coefficient series)."""
    acc = coeff_series[-1]
    for c in reversed(coeff_series[:-1]):
        acc = acc * point + c
    return acc


def newton_root(
    coeffs: Sequence[SkewFraction],
    seed: GroundElement,
    precision: int,
) -> TwistedSeries:
    """Series root of a polynomial with central coefficients.

    `coeffs` are the ascending x-coefficients; `seed` must be an invariant
    scalar with  f(seed) = 0 mod t  and  f'(seed) a unit mod t  (simple
    residual root).  The contact valuation doubles every iteration, so the
    loop is logarithmic in the precision.
    """
    if not coeffs or len(coeffs) < 2:
        raise ValueError("need a polynomial of degree >= 1")
    field = coeffs[0].field
    if not seed.is_invariant():
        raise NotInvariantSeries("newton seed must lie in the invariant subfield")
    den_val = 0
    for c in coeffs:
        if not c.is_zero():
            den_val = max(
                den_val, next(i for i, a in enumerate(c.den.coeffs) if not a.is_zero())
            )
    depth = len(coeffs) - 1
    work = precision + 2 * depth * den_val + 2
    fc = [embed_fraction(c, work) for c in coeffs]
    for s in fc:
        if not is_invariant_series(s):
            raise NotInvariantSeries(
                "polynomial coefficients must be invariant series in t^n"
            )
    dc = [
        fc[m].scale_ground_left(field.from_rational(m)) for m in range(1, len(fc))
    ]
    rho = TwistedSeries.from_ground(seed, work)
    value = evaluate_poly(fc, rho)
    deriv = evaluate_poly(dc, rho)
    if deriv.is_zero() or deriv.val > 0:
        raise NotSimpleRoot("derivative at the seed is not a unit mod t")
    if not value.is_zero() and value.val <= 0:
        raise NoResidualRoot("seed is not a residual root mod t")
    guard = 0
    last_val = 0
    while not value.is_zero():
        if value.val <= last_val or guard > precision:
            raise NotSimpleRoot("newton iteration stalled; root is not simple")
        last_val = value.val
        guard += 1
        rho = rho - value * deriv.inv()
        value = evaluate_poly(fc, rho)
        deriv = evaluate_poly(dc, rho)
    if rho.prec < precision:
        raise InsufficientPrecision(
            f"newton produced precision {rho.prec} < requested {precision}"
        )
    return rho.truncate(precision)
