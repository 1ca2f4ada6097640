"""Classical level-one q-series and half-integral-weight seed series.

All expansions are exact: Eisenstein series via Bernoulli numbers, the
discriminant function via the pentagonal number theorem, the j-function as
E4^3/Delta, the unary theta series, and the Cohen Eisenstein series of
weights 5/2 and 7/2 via generalized Bernoulli numbers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .qseries import QSeries
from .quadforms import kronecker


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    # B_n = -1/(n+1) * sum_{k<n} C(n+1,k) B_k
    tot = Fraction(0)
    for k in range(n):
        tot += comb(n + 1, k) * bernoulli(k)
    return -tot / (n + 1)


def _sigma(n: int, k: int) -> int:
    tot = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            tot += d**k
            if d != n // d:
                tot += (n // d) ** k
        d += 1
    return tot


class ScalarForm:
    """A q-expansion tagged with its weight (integer or half-integer)."""

    def __init__(self, weight, series: QSeries):
        self.weight = Fraction(weight)
        self.series = series

    def __repr__(self):
        return f"ScalarForm(weight={self.weight}, {self.series!r})"


def eisenstein_series(k: int, order: int) -> ScalarForm:
    """Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise ValueError("weight must be an even integer >= 4")
    factor = Fraction(-2 * k) / bernoulli(k)
    coeffs = {0: Fraction(1)}
    for n in range(1, order + 1):
        coeffs[n] = factor * _sigma(n, k - 1)
    return ScalarForm(k, QSeries(1, coeffs, order + 1))


def eta_power_series(order: int) -> QSeries:
    """prod (1-q^n) to the given order (pentagonal number theorem)."""
    coeffs = {}
    k = 0
    while True:
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e <= order:
                coeffs[e] = coeffs.get(e, 0) + (-1) ** (kk % 2)
        if k * (3 * k - 1) // 2 > order and k * (3 * k + 1) // 2 > order:
            break
        k += 1
    return QSeries(1, {n: Fraction(c) for n, c in coeffs.items()}, order + 1)


def delta_series(order: int) -> ScalarForm:
    """The discriminant cusp form q prod (1-q^n)^24."""
    p = eta_power_series(order)
    return ScalarForm(12, (p**24).shift(1))


def j_series(order: int) -> QSeries:
    """The modular j-function q^-1 + 744 + ... to the given order."""
    e4 = eisenstein_series(4, order + 2).series
    delta = delta_series(order + 2).series
    return (e4**3 * delta.inverse()).truncate(order + 1)


def theta_series_scalar(order: int) -> QSeries:
    """theta = sum q^(n^2), the weight 1/2 unary theta."""
    coeffs = {0: Fraction(1)}
    n = 1
    while n * n <= order:
        coeffs[n * n] = Fraction(2)
        n += 1
    return QSeries(1, coeffs, order + 1)


def level_one_weakly_holomorphic(weight: int, pole_order: int, order: int) -> list[QSeries]:
    """Basis-by-pole-depth of weight-`weight` weakly holomorphic forms for
    the full modular group with pole order at most pole_order at infinity.

    Returns E4^a E6^b Delta^l j^i for the unique reduced (a, b, l) and
    i = 0..(pole_order + l).
    """
    if weight % 2:
        raise ValueError("integer weight must be even")
    a, b = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 2: (2, 1)}[weight % 12]
    l = (weight - 4 * a - 6 * b) // 12
    top = pole_order + l
    if top < 0:
        return []
    work = order + top + 4
    e4 = eisenstein_series(4, work).series
    e6 = eisenstein_series(6, work).series
    delta = delta_series(work).series
    jq = j_series(work)
    base = (e4**a) * (e6**b)
    base = base * (delta**l if l >= 0 else delta.inverse() ** (-l))
    out = []
    cur = base
    for _ in range(top + 1):
        out.append(cur.truncate(order + 1))
        cur = cur * jq
    return out


def standard_input(j: int, order: int) -> ScalarForm:
    """The canonical weight -2j input with principal part exactly q^-1.

    Even j in {2, 4, 6}: E4^(3 - j/2) / Delta.  For j = 1: E10 / Delta.
    """
    work = order + 4
    delta_inv = delta_series(work).series.inverse()
    if j == 1:
        num = eisenstein_series(10, work).series
    elif j in (2, 4, 6):
        e4 = eisenstein_series(4, work).series
        num = e4 ** (3 - j // 2) if j < 6 else QSeries.one(work + 1)
    else:
        raise ValueError(f"no named weight {-2*j} input for j={j}; supply an expansion")
    f = (num * delta_inv).truncate(order + 1)
    assert f.coefficient(-1) == 1 and f.valuation() == -1
    return ScalarForm(-2 * j, f)


# -- Cohen Eisenstein series -------------------------------------------------


def fundamental_decomposition(n: int):
    """n = D * f^2 with D a fundamental discriminant (D = 1 allowed);
    n must be a nonzero integer congruent to 0 or 1 mod 4."""
    if n == 0:
        raise ValueError("need a nonzero integer")
    s, m, d = 1, abs(n), 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
            s *= d
        d += 1
    m = m if n > 0 else -m  # signed squarefree part; n = m * s^2
    if m % 4 == 1:
        D, f = m, s
    else:
        if s % 2:
            raise ValueError(f"{n} is not congruent to 0 or 1 mod 4")
        D, f = 4 * m, s // 2
    assert D * f * f == n
    return D, f


@lru_cache(maxsize=None)
def generalized_bernoulli(r: int, D: int) -> Fraction:
    """B_{r, chi_D} for the Kronecker character mod |D|."""
    M = abs(D)
    # B_r(x) = sum_k C(r,k) B_k x^(r-k)
    tot = Fraction(0)
    for a in range(1, M + 1):
        chi = kronecker(D, a)
        if not chi:
            continue
        x = Fraction(a, M)
        bx = sum(comb(r, k) * bernoulli(k) * x ** (r - k) for k in range(r + 1))
        tot += chi * bx
    return Fraction(M) ** (r - 1) * tot


def dirichlet_l_negative(r: int, D: int) -> Fraction:
    """L(1 - r, chi_D) as an exact rational."""
    if D == 1:
        return -bernoulli(r) / r  # zeta(1 - r)
    return -generalized_bernoulli(r, D) / r


def _moebius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def cohen_number(r: int, N: int) -> Fraction:
    """Cohen's H(r, N) for r >= 2 (exact rational)."""
    if r < 2:
        raise ValueError("Cohen numbers computed here only for r >= 2")
    if N == 0:
        return -bernoulli(2 * r) / (2 * r)
    n = (-1) ** r * N
    if n % 4 not in (0, 1):
        return Fraction(0)
    D, f = fundamental_decomposition(n)
    tot = Fraction(0)
    for d in range(1, f + 1):
        if f % d == 0:
            mu = _moebius(d)
            if mu:
                tot += mu * kronecker(D, d) * d ** (r - 1) * _sigma(f // d, 2 * r - 1)
    return dirichlet_l_negative(r, D) * tot


def cohen_eisenstein(r: int, order: int) -> QSeries:
    """The weight r + 1/2 Cohen Eisenstein series sum H(r, N) q^N."""
    coeffs = {}
    for N in range(order + 1):
        c = cohen_number(r, N)
        if c:
            coeffs[N] = c
    return QSeries(1, coeffs, order + 1)
