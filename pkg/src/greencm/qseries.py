"""Exact truncated q-series with rational exponents.

A series is stored as a map {n: coefficient} meaning sum_n c_n q^(n/D) for a
single global exponent denominator D, together with a truncation order:
exponents >= trunc are unknown.  Coefficients live in any exact commutative
ring that supports +, -, * with Fraction/int (Fraction, Rad, NFElem, LinComb).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def is_zero(x) -> bool:
    """Exact zero test across the coefficient rings used here."""
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def _squarefree_split(n: int):
    # n = s^2 * r with r squarefree; trial division is fine at our sizes
    s, r, d = 1, 1, 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            r *= d
        d += 1
    return s, r * n


class Rad:
    """Exact element of a real multiquadratic ring: sum of c_r * sqrt(r).

    Keys r are squarefree positive integers (r = 1 is the rational part).
    Closed under ring operations; used for the weight-3/2 theta coefficients
    and the radical prefactors of the odd-parity value formulas.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        self.parts = {}
        if parts:
            for r, c in parts.items():
                c = Fraction(c)
                if c:
                    self.parts[r] = self.parts.get(r, Fraction(0)) + c
            self.parts = {r: c for r, c in self.parts.items() if c}

    @staticmethod
    def of(c, r: int = 1) -> "Rad":
        """c * sqrt(r) with r > 0 (not necessarily squarefree)."""
        s, rf = _squarefree_split(r)
        return Rad({rf: Fraction(c) * s})

    @staticmethod
    def _coerce(x):
        if isinstance(x, Rad):
            return x
        if isinstance(x, (int, Fraction)):
            return Rad({1: Fraction(x)})
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.parts

    def is_rational(self) -> bool:
        return set(self.parts) <= {1}

    def rational_part(self) -> Fraction:
        return self.parts.get(1, Fraction(0))

    def __add__(self, other):
        other = Rad._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        parts = dict(self.parts)
        for r, c in other.parts.items():
            parts[r] = parts.get(r, Fraction(0)) + c
        return Rad(parts)

    __radd__ = __add__

    def __neg__(self):
        return Rad({r: -c for r, c in self.parts.items()})

    def __sub__(self, other):
        o = Rad._coerce(other)
        return self + (-o) if o is not NotImplemented else NotImplemented

    def __rsub__(self, other):
        return Rad._coerce(other) - self

    def __mul__(self, other):
        other = Rad._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        parts = {}
        for r1, c1 in self.parts.items():
            for r2, c2 in other.parts.items():
                g = gcd(r1, r2)
                # sqrt(r1) sqrt(r2) = g * sqrt(r1 r2 / g^2)
                r = (r1 // g) * (r2 // g)
                parts[r] = parts.get(r, Fraction(0)) + c1 * c2 * g
        return Rad(parts)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = Rad._coerce(other)
        return other is not NotImplemented and self.parts == other.parts

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def __repr__(self):
        if not self.parts:
            return "0"
        bits = []
        for r in sorted(self.parts):
            c = self.parts[r]
            bits.append(str(c) if r == 1 else f"{c}*sqrt({r})")
        return " + ".join(bits)

    def mpf(self, mp):
        """Evaluate in the given mpmath context."""
        tot = mp.mpf(0)
        for r, c in self.parts.items():
            tot += mp.mpf(c.numerator) / c.denominator * mp.sqrt(r)
        return tot


class LinComb:
    """Formal linear combination of hashable keys with exact coefficients.

    Acts as a coefficient ring for QSeries as long as no two symbols are
    multiplied; scalar * symbol products are the only ones that occur when
    expanding a constant-term pairing over unknown Fourier coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not is_zero(c):
                    self.terms[k] = c

    @staticmethod
    def symbol(key) -> "LinComb":
        return LinComb({key: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def _merge(self, other, sign=1):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            cur = terms.get(k, Fraction(0)) + sign * c
            if is_zero(cur):
                terms.pop(k, None)
            else:
                terms[k] = cur
        return LinComb(terms)

    def __add__(self, other):
        if isinstance(other, LinComb):
            return self._merge(other)
        if isinstance(other, (int, Fraction, Rad)) and is_zero(other):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LinComb({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, LinComb):
            return self._merge(other, -1)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, LinComb):
            raise TypeError("product of two formal linear combinations")
        return LinComb({k: c * other for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"({c})*{k}" for k, c in sorted(self.terms.items(), key=str)) or "0"


class QSeries:
    """Truncated Laurent q-series with exponents in (1/den) * Z.

    coeffs maps integer n to the coefficient of q^(n/den); exponents >= trunc
    are unknown (trunc=None means the series is known exactly).
    """

    __slots__ = ("den", "coeffs", "trunc")

    def __init__(self, den: int, coeffs: dict, trunc=None):
        if den <= 0:
            raise ValueError("exponent denominator must be positive")
        self.trunc = Fraction(trunc) if trunc is not None else None
        kept = {}
        for n, c in coeffs.items():
            if self.trunc is not None and Fraction(n, den) >= self.trunc:
                continue
            if not is_zero(c):
                kept[n] = c
        # canonical denominator: the lcm of exponent denominators in use
        g = den
        for n in kept:
            g = gcd(g, n)
            if g == 1:
                break
        if g > 1:
            kept = {n // g: c for n, c in kept.items()}
            den //= g
        self.den = den
        self.coeffs = kept

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(trunc=None) -> "QSeries":
        return QSeries(1, {}, trunc)

    @staticmethod
    def one(trunc=None) -> "QSeries":
        return QSeries(1, {0: Fraction(1)}, trunc)

    @staticmethod
    def monomial(exp, coef=1, trunc=None) -> "QSeries":
        e = Fraction(exp)
        return QSeries(e.denominator, {e.numerator: coef}, trunc)

    @staticmethod
    def from_pairs(pairs, trunc=None) -> "QSeries":
        """Build from (exponent, coefficient) pairs with rational exponents."""
        den = 1
        for e, _ in pairs:
            den = den * Fraction(e).denominator // gcd(den, Fraction(e).denominator)
        coeffs = {}
        for e, c in pairs:
            e = Fraction(e)
            n = e.numerator * (den // e.denominator)
            coeffs[n] = coeffs.get(n, 0) + c
        return QSeries(den, coeffs, trunc)

    # -- basic queries ------------------------------------------------------

    def exponents(self):
        return sorted(Fraction(n, self.den) for n in self.coeffs)

    def coefficient(self, exp):
        """Coefficient of q^exp; raises if exp is beyond the truncation."""
        e = Fraction(exp)
        if self.trunc is not None and e >= self.trunc:
            raise ValueError(f"coefficient at q^{e} unknown (truncated at {self.trunc})")
        if self.den % e.denominator:
            return Fraction(0)
        return self.coeffs.get(e.numerator * (self.den // e.denominator), Fraction(0))

    def valuation(self):
        """Smallest exponent with nonzero coefficient (None if no terms)."""
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), self.den)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        """Exact equality of all coefficients below the common truncation."""
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, other)
        return not (self - other).coeffs

    def __repr__(self):
        terms = []
        for e in self.exponents()[:8]:
            terms.append(f"{self.coefficient(e)}*q^({e})")
        tail = " + ..." if len(self.coeffs) > 8 else ""
        o = f" + O(q^{self.trunc})" if self.trunc is not None else ""
        return (" + ".join(terms) or "0") + tail + o

    # -- ring operations ----------------------------------------------------

    def _align(self, other):
        den = self.den * other.den // gcd(self.den, other.den)
        a = {n * (den // self.den): c for n, c in self.coeffs.items()}
        b = {n * (den // other.den): c for n, c in other.coeffs.items()}
        return den, a, b

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, other)
        den, a, b = self._align(other)
        for n, c in b.items():
            cur = a.get(n)
            a[n] = c if cur is None else cur + c
        return QSeries(den, a, _min_trunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.den, {n: -c for n, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries(self.den, {n: c * other for n, c in self.coeffs.items()}, self.trunc)
        den, a, b = self._align(other)
        va = min(a) if a else None
        vb = min(b) if b else None
        # truncation of the product: unknown tail of one factor times the
        # lowest term of the other
        cands = []
        if self.trunc is not None:
            if vb is None and other.trunc is None:
                pass  # other == 0 exactly: product is exactly 0
            else:
                lo = Fraction(vb, den) if vb is not None else other.trunc
                cands.append(self.trunc + lo)
        if other.trunc is not None:
            if va is None and self.trunc is None:
                pass
            else:
                lo = Fraction(va, den) if va is not None else self.trunc
                cands.append(other.trunc + lo)
        trunc = min(cands) if cands else None
        limit = None if trunc is None else trunc * den
        prod: dict = {}
        for n1, c1 in a.items():
            for n2, c2 in b.items():
                n = n1 + n2
                if limit is not None and n >= limit:
                    continue
                cur = prod.get(n)
                prod[n] = c1 * c2 if cur is None else cur + c1 * c2
        return QSeries(den, prod, trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries.one(None)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "QSeries":
        """Inverse of a series whose lowest term is invertible."""
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("inverting the zero series")
        if self.trunc is None:
            raise ValueError("inverse of an untruncated series is generally infinite")
        lead = self.coefficient(v)
        if isinstance(lead, int):
            lead = Fraction(lead)
        if isinstance(lead, Fraction):
            lead_inv = 1 / lead
        else:
            lead_inv = lead.inverse()
        # f = lead q^v (1 - r) with r = O(q^(1/den)); invert by geometric series
        r = QSeries.one(self.trunc - v) - (self * QSeries.monomial(-v, lead_inv))
        out = QSeries.one(self.trunc - v)
        power = QSeries.one(self.trunc - v)
        n_terms = (self.trunc - v) * self.den
        rv = r.valuation()
        if rv is not None and rv > 0:
            steps = int(n_terms / (rv * self.den)) + 1
        else:
            steps = int(n_terms) + 1
        for _ in range(steps):
            power = power * r
            if power.is_zero():
                break
            out = out + power
        return out * QSeries.monomial(-v, lead_inv)

    def qd(self) -> "QSeries":
        """The normalized derivative q d/dq: q^e -> e q^e."""
        return QSeries(
            self.den,
            {n: c * Fraction(n, self.den) for n, c in self.coeffs.items()},
            self.trunc,
        )

    def qd_iter(self, k: int) -> "QSeries":
        s = self
        for _ in range(k):
            s = s.qd()
        return s

    def shift(self, exp) -> "QSeries":
        """Multiply by q^exp."""
        return self * QSeries.monomial(exp)

    def rescale_exponents(self, factor) -> "QSeries":
        """q^e -> q^(factor*e); used for f(tau) -> f(4 tau) style substitution."""
        f = Fraction(factor)
        den = self.den * f.denominator
        coeffs = {n * f.numerator: c for n, c in self.coeffs.items()}
        trunc = None if self.trunc is None else self.trunc * f
        return QSeries(den, coeffs, trunc)

    def truncate(self, trunc) -> "QSeries":
        t = Fraction(trunc)
        if self.trunc is not None and self.trunc < t:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.den, self.coeffs, t)

    def map_coefficients(self, fn) -> "QSeries":
        return QSeries(self.den, {n: fn(c) for n, c in self.coeffs.items()}, self.trunc)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
