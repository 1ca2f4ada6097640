"""Weak Jacobi forms of index one and their theta decomposition.

The two standard generators are built from Jacobi theta products:

    phi_{-2,1} = -theta_1(tau,z)^2 / eta(tau)^6     (weight -2)
    phi_{0,1}  = 4 (f_2 + f_3 + f_4),  f_i = theta_i(tau,z)^2/theta_i(tau)^2

The theta decomposition phi = h_0 theta_{1,0} + h_1 theta_{1,1} produces the
two-component vector-valued forms feeding the half-integral-weight basis
machinery.  The coefficient of q^n zeta^r in an index-one form depends on r
only through 4n - r^2 and r mod 2; this is asserted during decomposition, so
a convention error in the generators cannot pass silently.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .qseries import QSeries
from .scalarforms import eta_power_series


class JForm:
    """Two-variable exact expansion sum c[(n, r)] q^(n/den) zeta^r.

    Exponents n/den >= trunc are unknown; the zeta-range is finite and
    complete for every stored q-exponent.
    """

    __slots__ = ("den", "coeffs", "trunc")

    def __init__(self, den, coeffs, trunc):
        self.den = den
        self.trunc = Fraction(trunc)
        self.coeffs = {}
        for (n, r), c in coeffs.items():
            if Fraction(n, den) < self.trunc and c:
                self.coeffs[(n, r)] = c

    def to_den(self, den: int) -> "JForm":
        if den % self.den:
            raise ValueError("incompatible exponent denominators")
        f = den // self.den
        return JForm(den, {(n * f, r): c for (n, r), c in self.coeffs.items()}, self.trunc)

    def __add__(self, other):
        if not isinstance(other, JForm):
            return NotImplemented
        den = self.den * other.den // gcd(self.den, other.den)
        a, b = self.to_den(den), other.to_den(den)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return JForm(den, out, min(self.trunc, other.trunc))

    def scale(self, factor) -> "JForm":
        return JForm(self.den, {k: c * factor for k, c in self.coeffs.items()}, self.trunc)

    def mul_qseries(self, s: QSeries) -> "JForm":
        """Multiply by a one-variable q-series (exact, truncation propagated)."""
        if s.trunc is None:
            raise ValueError("need a truncated series")
        den = self.den * s.den // gcd(self.den, s.den)
        a = {(n * (den // self.den), r): c for (n, r), c in self.coeffs.items()}
        b = {n * (den // s.den): c for n, c in s.coeffs.items()}
        min_a = min((n for (n, _) in a), default=0)
        min_b = min(b, default=0)
        trunc = min(self.trunc + Fraction(min_b, den), s.trunc + Fraction(min_a, den))
        limit = trunc * den
        out = {}
        for (n1, r), c1 in a.items():
            for n2, c2 in b.items():
                n = n1 + n2
                if n >= limit:
                    continue
                key = (n, r)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return JForm(den, out, trunc)

    def theta_decompose(self) -> dict[int, QSeries]:
        """Components h_0, h_1 with h_rho(q) = sum c(N) q^(N/4), N = 4n - r^2.

        The representative r = rho in {0, 1} defines each class; every other
        stored coefficient of the same class must agree.
        """
        by_class = {}
        for (n, r), c in self.coeffs.items():
            N = 4 * Fraction(n, self.den) - r * r
            if N.denominator != 1:
                raise ValueError("exponents 4n - r^2 must be integers for index one")
            if abs(r) <= 1:
                key = (int(N), abs(r) % 2)
                if key in by_class and by_class[key] != c:
                    raise ValueError(f"theta decomposition inconsistent at {key}")
                by_class[key] = c
        comps = {}
        h_trunc = {rho: self.trunc - Fraction(rho * rho, 4) for rho in (0, 1)}
        for (n, r), c in self.coeffs.items():
            N = int(4 * Fraction(n, self.den) - r * r)
            rho = abs(r) % 2
            if Fraction(N, 4) < h_trunc[rho]:
                rep = by_class.get((N, rho), Fraction(0))
                if rep != c:
                    raise ValueError(
                        f"theta decomposition inconsistent: c(q^{Fraction(n, self.den)} z^{r}) = {c} "
                        f"but class (N={N}, parity {rho}) has {rep}"
                    )
        for rho in (0, 1):
            coeffs = {N: c for (N, p), c in by_class.items() if p == rho and Fraction(N, 4) < h_trunc[rho]}
            comps[rho] = QSeries(4, coeffs, h_trunc[rho])
        return comps


def _theta1_squared_negated(order: int) -> JForm:
    """-theta_1(tau,z)^2 with the factor q^(1/4) removed (integer exponents)."""
    coeffs = {}
    m = 0
    while m * (m + 1) // 2 <= order:
        n = 0
        while m * (m + 1) // 2 + n * (n + 1) // 2 <= order:
            for mm in {m, -1 - m}:
                for nn in {n, -1 - n}:
                    e = mm * (mm + 1) // 2 + nn * (nn + 1) // 2
                    r = mm + nn + 1
                    sign = (-1) ** ((mm + nn) % 2)
                    key = (e, r)
                    coeffs[key] = coeffs.get(key, 0) + sign
            n += 1
        m += 1
    return JForm(1, {k: Fraction(c) for k, c in coeffs.items() if c}, order + 1)


def phi_minus_2_1(order: int) -> JForm:
    """The weight -2 index 1 generator, expansion (z - 2 + 1/z) + O(q)."""
    num = _theta1_squared_negated(order)
    p6 = (eta_power_series(order) ** 6).inverse()
    return num.mul_qseries(p6)


def _theta2_squared(order: int, two_variable: bool):
    """theta_2(tau,z)^2 with q^(1/4) removed; z=0 variant when requested."""
    coeffs = {}
    m = 0
    while m * (m + 1) // 2 <= order:
        n = 0
        while m * (m + 1) // 2 + n * (n + 1) // 2 <= order:
            for mm in {m, -1 - m}:
                for nn in {n, -1 - n}:
                    key = (mm * (mm + 1) // 2 + nn * (nn + 1) // 2, mm + nn + 1 if two_variable else 0)
                    coeffs[key] = coeffs.get(key, 0) + 1
            n += 1
        m += 1
    if two_variable:
        return JForm(1, {k: Fraction(c) for k, c in coeffs.items()}, order + 1)
    return QSeries(1, {n: Fraction(c) for (n, _), c in coeffs.items()}, order + 1)


def _theta34_squared(order: int, signed: bool, two_variable: bool):
    """theta_3 or theta_4 squared, exponents in (1/2)Z."""
    coeffs = {}
    m = 0
    while m * m <= 2 * order:
        n = 0
        while m * m + n * n <= 2 * order:
            for mm in {m, -m}:
                for nn in {n, -n}:
                    sign = (-1) ** ((mm + nn) % 2) if signed else 1
                    key = (mm * mm + nn * nn, mm + nn if two_variable else 0)
                    coeffs[key] = coeffs.get(key, 0) + sign
            n += 1
        m += 1
    if two_variable:
        return JForm(2, {k: Fraction(c) for k, c in coeffs.items() if c}, order + 1)
    return QSeries(2, {n: Fraction(c) for (n, _), c in coeffs.items() if c}, order + 1)


def phi_0_1(order: int) -> JForm:
    """The weight 0 index 1 generator, expansion (z + 10 + 1/z) + O(q)."""
    f2 = _theta2_squared(order, True).mul_qseries(_theta2_squared(order, False).inverse())
    f3 = _theta34_squared(order, False, True).mul_qseries(_theta34_squared(order, False, False).inverse())
    f4 = _theta34_squared(order, True, True).mul_qseries(_theta34_squared(order, True, False).inverse())
    return (f2 + f3 + f4).scale(Fraction(4))
