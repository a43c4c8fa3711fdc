"""Twisted polynomials over a ground skew field.

Multiplication follows the rule  t*a = sigma(a)*t , so the coefficient of
t^m in a product f*g is  sum_{i+j=m} f_i * sigma^i(g_j)  with all
coefficients written on the left of the powers of t.

Because the ring is noncommutative there are two division algorithms and
they are not interchangeable:

* `divmod_right(f, g)` writes  f = q*g + r  (divisor on the right of the
  quotient).  Its Euclidean loop preserves common *right* divisors.
* `divmod_left(f, g)` writes  f = g*q + r  and preserves common *left*
  divisors; it is the loop behind `gcld`, whose output left-divides both
  inputs.  This is the reduction used by left fractions den^-1 * num.

The greatest common left divisor is canonical up to a unit multiplied on
the right (right scaling preserves left divisibility; left scaling does
not, because conjugating a constant through a polynomial usually leaves
the constants).  `gcld` therefore normalises its output to be monic by a
right unit.

Coefficients are `GroundElement`s; polynomials are stored as ascending
coefficient tuples with no trailing zeros, the zero polynomial being the
empty tuple (its degree is reported as -1).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DivisionByZero, MixedFields
from .ground import GroundElement, GroundField


class SkewPolynomial:
    __slots__ = ("field", "coeffs", "_chint")

    def __init__(self, field: GroundField, coeffs: tuple[GroundElement, ...]) -> None:
        self.field = field
        self.coeffs = coeffs
        self._chint: bool | None = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_coeffs(cls, field: GroundField, coeffs: Iterable) -> "SkewPolynomial":
        out: list[GroundElement] = []
        for c in coeffs:
            if isinstance(c, GroundElement):
                field.check_same(c.field)
                out.append(c)
            elif isinstance(c, (int, Fraction)):
                out.append(field.from_rational(c))
            else:
                out.append(field.element(c))
        while out and out[-1].is_zero():
            out.pop()
        return cls(field, tuple(out))

    @classmethod
    def zero(cls, field: GroundField) -> "SkewPolynomial":
        return cls(field, ())

    @classmethod
    def one(cls, field: GroundField) -> "SkewPolynomial":
        return cls(field, (field.one(),))

    @classmethod
    def t_power(cls, field: GroundField, power: int = 1, coeff=None) -> "SkewPolynomial":
        lead = field.one() if coeff is None else coeff
        if lead.is_zero():
            return cls.zero(field)
        return cls(field, (field.zero(),) * power + (lead,))

    @classmethod
    def constant(cls, field: GroundField, value) -> "SkewPolynomial":
        e = value if isinstance(value, GroundElement) else field.from_rational(value)
        return cls.zero(field) if e.is_zero() else cls(field, (e,))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GroundElement:
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def is_invariant_central(self) -> bool:
        """Invariant coefficients at exponents divisible by the twist order.

        Such polynomials commute with everything, which several hot paths
        exploit; the verdict is cached because it is queried per operation.
        """
        if self._chint is None:
            n = self.field.sigma_order
            self._chint = all(
                c.is_zero() or (m % n == 0 and c.is_invariant())
                for m, c in enumerate(self.coeffs)
            )
        return self._chint

    def coefficient(self, m: int) -> GroundElement:
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return self.field.zero()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SkewPolynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(tuple(c.coords for c in self.coeffs))

    # -- ring operations ----------------------------------------------------

    def _same(self, other: "SkewPolynomial") -> None:
        if self.field is not other.field:
            self.field.check_same(other.field)

    def __add__(self, other: "SkewPolynomial") -> "SkewPolynomial":
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPolynomial.from_coeffs(
            self.field,
            [self.coefficient(m) + other.coefficient(m) for m in range(n)],
        )

    def __sub__(self, other: "SkewPolynomial") -> "SkewPolynomial":
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPolynomial.from_coeffs(
            self.field,
            [self.coefficient(m) - other.coefficient(m) for m in range(n)],
        )

    def __neg__(self) -> "SkewPolynomial":
        return SkewPolynomial(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "SkewPolynomial") -> "SkewPolynomial":
        self._same(other)
        if not self.coeffs or not other.coeffs:
            return SkewPolynomial.zero(self.field)
        field = self.field
        fc = [c.coords for c in self.coeffs]
        gc = [c.coords for c in other.coeffs]
        out = [None] * (len(fc) + len(gc) - 1)
        zero = field.zero().coords
        mul, sig, add = field.mul_coords, field.sigma_coords, field.add_coords
        for i, a in enumerate(fc):
            if all(x == 0 for x in a):
                continue
            for j, b in enumerate(gc):
                term = mul(a, sig(b, i))
                cur = out[i + j]
                out[i + j] = term if cur is None else add(cur, term)
        coeffs = [GroundElement(field, c if c is not None else zero) for c in out]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        return SkewPolynomial(field, tuple(coeffs))

    def __pow__(self, n: int) -> "SkewPolynomial":
        if n < 0:
            raise ValueError("negative powers are fractions, not polynomials")
        result = SkewPolynomial.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale_left(self, c: GroundElement) -> "SkewPolynomial":
        """c * f  (no twist: constants multiply coefficients directly)."""
        if c.is_zero():
            return SkewPolynomial.zero(self.field)
        return SkewPolynomial.from_coeffs(self.field, [c * a for a in self.coeffs])

    def scale_right(self, c: GroundElement) -> "SkewPolynomial":
        """f * c = sum_i f_i sigma^i(c) t^i."""
        if c.is_zero():
            return SkewPolynomial.zero(self.field)
        return SkewPolynomial.from_coeffs(
            self.field, [a * c.sigma(i) for i, a in enumerate(self.coeffs)]
        )

    def monic_left(self) -> "SkewPolynomial":
        """Scale by the inverse of the leading coefficient on the left."""
        return self.scale_left(self.leading().inv())

    def monic_right(self) -> "SkewPolynomial":
        """Right-unit scaling to a monic polynomial (keeps left divisibility)."""
        u = self.leading().inv().sigma(-self.degree)
        return self.scale_right(u)

    def apply_sigma(self, power: int = 1) -> "SkewPolynomial":
        """Apply the automorphism coefficientwise."""
        return SkewPolynomial(
            self.field, tuple(c.sigma(power) for c in self.coeffs)
        )

    # -- division ------------------------------------------------------------

    def divmod_right(self, g: "SkewPolynomial") -> tuple["SkewPolynomial", "SkewPolynomial"]:
        """(q, r) with self = q*g + r and deg r < deg g."""
        self._same(g)
        if g.is_zero():
            raise DivisionByZero("polynomial division by zero")
        field = self.field
        dg = g.degree
        glead = g.leading()
        rem = list(self.coeffs)
        qlen = max(len(rem) - dg, 0)
        q: list[GroundElement] = [field.zero()] * qlen
        while len(rem) - 1 >= dg and rem:
            m = len(rem) - 1 - dg
            c = rem[-1] * glead.sigma(m).inv()
            q[m] = c
            for j in range(dg + 1):
                rem[m + j] = rem[m + j] - c * g.coeffs[j].sigma(m)
            while rem and rem[-1].is_zero():
                rem.pop()
        return (
            SkewPolynomial.from_coeffs(field, q),
            SkewPolynomial.from_coeffs(field, rem),
        )

    def divmod_left(self, g: "SkewPolynomial") -> tuple["SkewPolynomial", "SkewPolynomial"]:
        """(q, r) with self = g*q + r and deg r < deg g."""
        self._same(g)
        if g.is_zero():
            raise DivisionByZero("polynomial division by zero")
        field = self.field
        dg = g.degree
        ginv = g.leading().inv()
        rem = list(self.coeffs)
        qlen = max(len(rem) - dg, 0)
        q: list[GroundElement] = [field.zero()] * qlen
        while len(rem) - 1 >= dg and rem:
            m = len(rem) - 1 - dg
            c = (ginv * rem[-1]).sigma(-dg)
            q[m] = c
            for j in range(dg + 1):
                rem[m + j] = rem[m + j] - g.coeffs[j] * c.sigma(j)
            while rem and rem[-1].is_zero():
                rem.pop()
        return (
            SkewPolynomial.from_coeffs(field, q),
            SkewPolynomial.from_coeffs(field, rem),
        )

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if m == 0:
                parts.append(str(c))
            elif m == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{m}")
        return " + ".join(parts)

    __repr__ = __str__


def gcld(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    """Greatest common left divisor, monic (normalised by a right unit).

    Computed by the Euclidean loop on `divmod_left`, whose remainders keep
    exactly the common left divisors of the pair.  Every common left divisor
    of f and g left-divides the result.
    """
    if f.is_zero() and g.is_zero():
        raise DivisionByZero("gcld(0, 0) is undefined")
    a, b = f, g
    if not a.is_zero():
        a = a.monic_right()
    if not b.is_zero():
        b = b.monic_right()
    while not b.is_zero():
        r = a.divmod_left(b)[1]
        # right-unit normalisation keeps the left-divisor lattice but stops
        # the remainder coefficients from snowballing (monic remainder loop)
        a, b = b, (r if r.is_zero() else r.monic_right())
    return a.monic_right()


def exact_left_quotient(f: SkewPolynomial, d: SkewPolynomial) -> SkewPolynomial:
    """The q with f = d*q; raises if d does not left-divide f."""
    q, r = f.divmod_left(d)
    if not r.is_zero():
        raise DivisionByZero("polynomial is not left-divisible by the given divisor")
    return q


def ore_witness(
    a: SkewPolynomial, b: SkewPolynomial
) -> tuple[SkewPolynomial, SkewPolynomial]:
    """(a1, b1) with a*b1 = b*a1 and b1 != 0, so  b^-1 a = a1 b1^-1.

    Computed by the extended Euclidean algorithm on `divmod_left`, tracking
    right cofactors r_k = a*u_k + b*v_k; the first vanishing remainder hands
    over the least common right multiple, so deg b1 <= deg b and
    deg a1 <= deg a.  The witness is normalised so that b1 is monic.
    """
    if a.field is not b.field:
        a.field.check_same(b.field)
    field = a.field
    if b.is_zero():
        raise DivisionByZero("ore witness needs b != 0")
    if a.is_zero():
        return SkewPolynomial.zero(field), SkewPolynomial.one(field)
    if b.degree == 0:
        a1 = a.scale_left(b.leading().inv())
        return a1, SkewPolynomial.one(field)
    zero = SkewPolynomial.zero(field)

    def right_unit(p: SkewPolynomial) -> GroundElement:
        return p.leading().inv().sigma(-p.degree)

    c0, c1 = right_unit(a), right_unit(b)
    r_prev, r_cur = a.scale_right(c0), b.scale_right(c1)
    u_prev, u_cur = SkewPolynomial.constant(field, c0), zero  # cofactors of a
    v_prev, v_cur = zero, SkewPolynomial.constant(field, c1)  # cofactors of b
    while not r_cur.is_zero():
        q, r_next = r_prev.divmod_left(r_cur)
        u_next = u_prev - u_cur * q
        v_next = v_prev - v_cur * q
        if not r_next.is_zero():
            # monic remainder loop: right-unit scaling, mirrored on the
            # cofactors so that r = a*u + b*v persists
            c = right_unit(r_next)
            r_next = r_next.scale_right(c)
            u_next = u_next.scale_right(c)
            v_next = v_next.scale_right(c)
        r_prev, r_cur = r_cur, r_next
        u_prev, u_cur = u_cur, u_next
        v_prev, v_cur = v_cur, v_next
    # 0 = a*u_cur + b*v_cur with the minimal-degree cofactors
    b1, a1 = u_cur, -v_cur
    u = right_unit(b1)
    return a1.scale_right(u), b1.scale_right(u)


def common_left_multiple(
    a: SkewPolynomial, b: SkewPolynomial
) -> tuple[SkewPolynomial, SkewPolynomial]:
    """(u, v) with u*a = v*b, both nonzero.

    The extended Euclidean algorithm on `divmod_right` with left cofactors
    r_k = u_k*a + v_k*b ends on 0 = u*a + v*b, the least common left
    multiple; hence deg u <= deg b and deg v <= deg a.  u is normalised
    monic so the output is reproducible.
    """
    if a.field is not b.field:
        a.field.check_same(b.field)
    field = a.field
    if a.is_zero() or b.is_zero():
        raise DivisionByZero("common left multiple needs nonzero inputs")
    zero = SkewPolynomial.zero(field)
    c0, c1 = a.leading().inv(), b.leading().inv()
    r_prev, r_cur = a.scale_left(c0), b.scale_left(c1)
    u_prev, u_cur = SkewPolynomial.constant(field, c0), zero
    v_prev, v_cur = zero, SkewPolynomial.constant(field, c1)
    while not r_cur.is_zero():
        q, r_next = r_prev.divmod_right(r_cur)
        u_next = u_prev - q * u_cur
        v_next = v_prev - q * v_cur
        if not r_next.is_zero():
            # monic remainder loop: left-unit scaling, mirrored on the
            # cofactors so that r = u*a + v*b persists
            c = r_next.leading().inv()
            r_next = r_next.scale_left(c)
            u_next = u_next.scale_left(c)
            v_next = v_next.scale_left(c)
        r_prev, r_cur = r_cur, r_next
        u_prev, u_cur = u_cur, u_next
        v_prev, v_cur = v_cur, v_next
    u, v = u_cur, -v_cur
    c = u.leading().inv()
    return u.scale_left(c), v.scale_left(c)
