"""Number fields as Q[x]/(p) with one pinned complex embedding.

Elements are reduced polynomial residues with Fraction coordinates.  The
embedding is an isolating disc for one root of the minimal polynomial;
numerical values are produced on demand at a requested bit precision, with
the doubled-precision agreement contract used throughout for certification.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp, workprec


class DataError(ValueError):
    """Invalid table/field data (reducible polynomial, bad isolating box)."""


# -- exact polynomial helpers (coefficient lists, ascending degree) ----------


def poly_degree(p):
    d = len(p) - 1
    while d > 0 and p[d] == 0:
        d -= 1
    return d


def poly_trim(p):
    return list(p[: poly_degree(p) + 1])


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return poly_trim([x - y for x, y in zip(a, b)])


def poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = poly_trim([Fraction(x) for x in b])
    db = len(b) - 1
    inv = 1 / b[-1]
    q = [Fraction(0)] * max(1, len(a) - db)
    while poly_degree(a) >= db and any(a):
        da = poly_degree(a)
        c = a[da] * inv
        q[da - db] = c
        for i in range(db + 1):
            a[da - db + i] -= c * b[i]
        a[da] = Fraction(0)
    return poly_trim(q), poly_trim(a)


def poly_eval_mp(p, x):
    tot = mp.mpf(0)
    for c in reversed(p):
        tot = tot * x + (mp.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mp.mpf(c))
    return tot


def _rational_roots(p):
    """Rational roots of an integer polynomial, by the rational root theorem."""
    p = [int(c) for c in p]
    while p and p[0] == 0:
        return [Fraction(0)]
    a0, an = abs(p[0]), abs(p[poly_degree(p)])
    roots = []

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out += [d, n // d]
            d += 1
        return out

    for r in divisors(a0):
        for s in divisors(an):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if sum(c * cand**i for i, c in enumerate(p)) == 0:
                    roots.append(cand)
    return roots


class NumberField:
    """Q[x]/(p) with p monic irreducible over Z and one pinned embedding.

    embedding = (re, im, radius): a disc certified (at load) to contain
    exactly one complex root of p.
    """

    def __init__(self, minpoly, embedding):
        p = [int(c) for c in minpoly]
        if poly_degree(p) < 1 or p[poly_degree(p)] != 1:
            raise DataError("minimal polynomial must be monic of degree >= 1")
        self.minpoly = tuple(p[: poly_degree(p) + 1])
        self.degree = len(self.minpoly) - 1
        re, im, rad = embedding
        self.embedding = (Fraction(re), Fraction(im), Fraction(rad))
        self._check_irreducible()
        self._check_isolating()
        self._root_cache = {}

    # -- certification at load ------------------------------------------------

    def _all_roots(self, prec=220):
        with workprec(prec):
            coeffs = [mp.mpf(c) for c in reversed(self.minpoly)]
            return mp.polyroots(coeffs, maxsteps=200, extraprec=80)

    def _check_irreducible(self):
        if self.degree == 1:
            return
        if _rational_roots(self.minpoly):
            raise DataError("minimal polynomial has a rational root")
        if self.degree == 2:
            return
        # numeric factor search: a true integer factor of degree k corresponds
        # to a subset of roots whose product polynomial has integer
        # coefficients; near-integer candidates are confirmed by exact division.
        roots = self._all_roots()
        n = self.degree
        from itertools import combinations

        with workprec(220):
            tol = mp.mpf("1e-30")
            for k in range(1, n // 2 + 1):
                for subset in combinations(range(n), k):
                    poly = [mp.mpc(1)]
                    for i in subset:
                        r = roots[i]
                        poly = [mp.mpc(0)] + poly
                        poly = [poly[j] - r * (poly[j + 1] if j + 1 < len(poly) else 0) for j in range(len(poly))]
                    cand, ok = [], True
                    for c in poly:
                        ci = mp.nint(mp.re(c))
                        if abs(mp.im(c)) > tol or abs(mp.re(c) - ci) > tol:
                            ok = False
                            break
                        cand.append(int(ci))
                    if not ok or cand[-1] != 1:
                        continue
                    _, rem = poly_divmod([Fraction(c) for c in self.minpoly], [Fraction(c) for c in cand])
                    if not any(rem):
                        raise DataError("minimal polynomial is reducible")

    def _check_isolating(self):
        re, im, rad = self.embedding
        roots = self._all_roots()
        with workprec(220):
            center = mp.mpc(mp.mpf(re.numerator) / re.denominator, mp.mpf(im.numerator) / im.denominator)
            r = mp.mpf(rad.numerator) / rad.denominator
            inside = [z for z in roots if abs(z - center) <= r]
            if len(inside) != 1:
                raise DataError(f"isolating box contains {len(inside)} roots, expected 1")

    # -- embedding ------------------------------------------------------------

    def root(self, prec: int):
        """The pinned root to prec bits (Newton refinement from the box)."""
        cached = self._root_cache.get(prec)
        if cached is not None:
            return cached
        re, im, rad = self.embedding
        wp = prec + 48 + 8 * self.degree
        p = [Fraction(c) for c in self.minpoly]
        dp = [i * c for i, c in enumerate(p)][1:]
        with workprec(wp):
            x = mp.mpc(mp.mpf(re.numerator) / re.denominator, mp.mpf(im.numerator) / im.denominator)
            r = mp.mpf(rad.numerator) / rad.denominator
            for _ in range(200):
                fx = poly_eval_mp(p, x)
                fpx = poly_eval_mp(dp, x)
                if fpx == 0:
                    raise DataError("derivative vanished during refinement")
                step = fx / fpx
                x = x - step
                if abs(step) < mp.mpf(2) ** (-(prec + 24)):
                    break
            else:
                raise DataError("Newton refinement did not converge in the box")
            re0, im0 = mp.mpf(re.numerator) / re.denominator, mp.mpf(im.numerator) / im.denominator
            if abs(x - mp.mpc(re0, im0)) > 2 * r:
                raise DataError("refined root escaped the isolating box")
            # Newton-Kantorovich style residual check
            beta = abs(poly_eval_mp(p, x) / poly_eval_mp(dp, x))
            if beta > mp.mpf(2) ** (-(prec + 8)):
                raise DataError("root refinement failed to certify the requested precision")
            result = mp.mpc(x)
        self._root_cache[prec] = result
        return result

    def conjugate_embeddings(self, prec: int = 128):
        """All complex roots of the minimal polynomial at moderate precision."""
        return self._all_roots(prec)

    def one(self):
        return NFElem(self, [1])

    def gen(self):
        return NFElem(self, [0, 1])

    def element(self, coords):
        return NFElem(self, coords)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly and self.embedding == other.embedding

    def __repr__(self):
        return f"NumberField({list(self.minpoly)})"


RATIONALS = None  # initialized lazily below


def rational_field() -> NumberField:
    """Q presented as Q[x]/(x - 1) pinned at 1; handy for rational log tests."""
    global RATIONALS
    if RATIONALS is None:
        RATIONALS = NumberField([-1, 1], (1, 0, Fraction(1, 2)))
    return RATIONALS


class NFElem:
    """Element of a NumberField: reduced residue with Fraction coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        self.field = field
        cs = [Fraction(c) for c in coords]
        if len(cs) > field.degree:
            cs = self._reduce(cs)
        cs += [Fraction(0)] * (field.degree - len(cs))
        self.coords = tuple(cs)

    def _reduce(self, cs):
        p = [Fraction(c) for c in self.field.minpoly]
        _, r = poly_divmod(cs, p)
        r += [Fraction(0)] * (self.field.degree - len(r))
        return r[: self.field.degree]

    def is_zero(self):
        return not any(self.coords)

    def __add__(self, other):
        other = self._coerce(other)
        return NFElem(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [a * other for a in self.coords])
        if not isinstance(other, NFElem) or other.field != self.field:
            return NotImplemented
        return NFElem(self.field, poly_mul(list(self.coords), list(other.coords)))

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ValueError("elements of different number fields")
            return other
        return NFElem(self.field, [Fraction(other)])

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid in Q[x]: maintain s_i with s_i * self == r_i (mod p)
        r0 = [Fraction(c) for c in self.field.minpoly]
        r1 = poly_trim(list(self.coords))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        if poly_degree(r0) != 0:
            raise ZeroDivisionError("element not invertible (reducible modulus?)")
        inv_lead = 1 / r0[0]
        return NFElem(self.field, [c * inv_lead for c in s0])

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.coords == other.coords

    def __repr__(self):
        return f"NFElem{list(self.coords)}"

    def embed(self, prec: int = 64):
        root = self.field.root(prec + 16)
        with workprec(prec + 32):
            tot = mp.mpc(0)
            for c in reversed(self.coords):
                tot = tot * root + mp.mpf(c.numerator) / c.denominator
            return mp.mpc(tot)

    def log_abs(self, prec: int = 64):
        """log |sigma(self)| at the pinned embedding, to roughly prec bits."""
        if self.is_zero():
            raise ZeroDivisionError("log of zero element")
        with workprec(prec + 48):
            val = abs(self.embed(prec + 32))
            return +mp.log(val)


def real_root_refine(field: NumberField, prec: int):
    """The pinned root of the field's minimal polynomial to prec bits."""
    root = field.root(prec)
    with workprec(prec + 8):
        if abs(mp.im(root)) < mp.mpf(2) ** (-prec):
            return mp.re(root)
        return root


def nf_log_abs(elem: NFElem, prec: int = 64):
    return elem.log_abs(prec)
