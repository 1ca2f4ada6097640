"""Bases of half-integral-weight plus-space forms, lifts, and dual bases.

Everything lives in the scalar model: a form of weight s + 1/2 is a q-series
with integer exponents supported on (-1)^s n = 0, 1 mod 4.  The two-component
vector-valued avatar places the coefficient of q^n at exponent n/4 in
component n mod 2.

Generators: for s even, products of the unary theta and the weight 5/2
Cohen Eisenstein series with level-one forms in 4*tau; for s odd, theta
decompositions of index-one weak Jacobi forms.  Bases are extracted by exact
row reduction, normalized so each element is q^(-m) plus a tail supported
above the gap bound.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from . import cache
from .jacobi import phi_0_1, phi_minus_2_1
from .qseries import QSeries, Rad
from .quadforms import is_fundamental, kronecker
from .scalarforms import (
    ScalarForm,
    cohen_eisenstein,
    eta_power_series,
    level_one_weakly_holomorphic,
    theta_series_scalar,
)


def plus_parity(weight) -> int:
    """+1 if the support is n = 0,1 mod 4, -1 if n = 0,3 mod 4."""
    s = Fraction(weight) - Fraction(1, 2)
    if s.denominator != 1:
        raise ValueError(f"{weight} is not a half-integer weight")
    return -1 if int(s) % 2 else 1


def admissible(weight, n: int) -> bool:
    return (plus_parity(weight) * n) % 4 in (0, 1)


class PlusForm:
    """Plus-space form in the scalar model, with a vector-valued accessor."""

    def __init__(self, weight, series: QSeries):
        self.weight = Fraction(weight)
        self.series = series
        for e in series.exponents():
            if e.denominator != 1 or not admissible(self.weight, e.numerator):
                raise ValueError(f"exponent {e} violates the plus-space support")

    def vv_components(self) -> dict[int, QSeries]:
        """Components over the rank-one discriminant group Z/2: the scalar
        coefficient at q^n sits at exponent n/4 in component n mod 2."""
        comps = {0: {}, 1: {}}
        for n, c in self.series.coeffs.items():
            comps[abs(n) % 2][n] = c
        t = self.series.trunc
        return {
            mu: QSeries(4 * self.series.den, dict(comps[mu]), None if t is None else t / 4)
            for mu in (0, 1)
        }

    def scale(self, factor) -> "PlusForm":
        return PlusForm(self.weight, self.series * factor)

    def __repr__(self):
        return f"PlusForm(weight={self.weight}, {self.series!r})"


def _scalar_from_vv(comps: dict[int, QSeries], weight) -> PlusForm:
    """Inverse avatar map: component exponents e go to scalar exponent 4e."""
    total = QSeries.zero()
    for mu, s in comps.items():
        total = total + s.rescale_exponents(4)
    return PlusForm(weight, total)


def _plus_generators(weight: Fraction, pole: int, order: int) -> list[QSeries]:
    """Scalar-model generators spanning the plus space down to pole depth."""
    s = int(weight - Fraction(1, 2))
    out = []
    if plus_parity(weight) == 1:
        p4 = (pole + 8) // 4 + 1
        theta = theta_series_scalar(order + 4 * p4 + 4)
        for g in level_one_weakly_holomorphic(s, p4, (order + 4 * p4) // 4 + 2):
            out.append((theta * g.rescale_exponents(4)).truncate(order + 1))
        if s >= 2 or True:
            h52 = cohen_eisenstein(2, order + 4 * p4 + 4)
            for g in level_one_weakly_holomorphic(s - 2, p4, (order + 4 * p4) // 4 + 2):
                out.append((h52 * g.rescale_exponents(4)).truncate(order + 1))
    else:
        kj = s + 1  # weight of the index-one Jacobi avatar
        jorder = (order + pole) // 4 + pole + 4
        p01 = phi_0_1(jorder)
        p21 = phi_minus_2_1(jorder)
        for base, wt in ((p01, kj), (p21, kj + 2)):
            for g in level_one_weakly_holomorphic(wt, pole // 4 + 2, jorder):
                comps = base.mul_qseries(g).theta_decompose()
                form = _scalar_from_vv(comps, weight)
                out.append(form.series.truncate(order + 1))
    return out


def _echelonize(rows: list[QSeries], order: int):
    """Exact reduced row echelon over the admissible exponent ladder.

    Returns (pivots, forms): pivot exponents ascending and, for each, the
    unique combination with coefficient 1 there and 0 at every other pivot.
    """
    rows = [r.truncate(order + 1) for r in rows if not r.is_zero()]
    work = []
    for r in rows:
        if r.den != 1:
            raise ValueError("scalar-model rows must have integer exponents")
        work.append({n: c for n, c in r.coeffs.items() if c})
    pivots: dict[int, dict] = {}
    for row in work:
        row = dict(row)
        while row:
            lead = min(row)
            if lead in pivots:
                factor = row[lead]
                prow = pivots[lead]
                for n, c in prow.items():
                    cur = row.get(n, Fraction(0)) - factor * c
                    if cur:
                        row[n] = cur
                    else:
                        row.pop(n, None)
            else:
                inv = 1 / row[lead]
                pivots[lead] = {n: c * inv for n, c in row.items()}
                break
    # back-substitute: clear pivot columns from every other pivot row
    for lead in sorted(pivots, reverse=True):
        prow = pivots[lead]
        for other_lead, other in pivots.items():
            if other_lead == lead:
                continue
            c = other.get(lead)
            if c:
                for n, v in prow.items():
                    cur = other.get(n, Fraction(0)) - c * v
                    if cur:
                        other[n] = cur
                    else:
                        other.pop(n, None)
    return pivots


class PlusBasis:
    """Reduced basis {f_m} of a weakly holomorphic plus space.

    f_m = q^(-m) + (tail supported on admissible exponents above the gap);
    indices m run over admissible integers with -m at a pivot exponent.
    """

    def __init__(self, weight, pole: int, order: int, cache_dir=None):
        self.weight = Fraction(weight)
        self.order = order
        self.pole = pole
        key = f"plusbasis_w{self.weight.numerator}_{self.weight.denominator}_p{pole}_o{order}"
        cached = cache.load(key, cache_dir) if cache_dir is not False else None
        if cached is not None:
            self._pivots = {
                int(n): {int(k): cache.frac_in(v) for k, v in row.items()}
                for n, row in cached["pivots"].items()
            }
        else:
            gens = _plus_generators(self.weight, pole, order)
            self._pivots = _echelonize(gens, order)
            if cache_dir is not False:
                cache.store(
                    key,
                    {
                        "weight": cache.frac_out(self.weight),
                        "pivots": {
                            str(n): {str(k): cache.frac_out(v) for k, v in row.items()}
                            for n, row in self._pivots.items()
                        },
                    },
                    cache_dir,
                )
        self.gap = max(self._pivots) if self._pivots else None

    def indices(self) -> list[int]:
        """Available basis indices m (f_m has leading term q^(-m))."""
        return sorted(-n for n in self._pivots)

    def element(self, m: int) -> PlusForm:
        if -m not in self._pivots:
            raise ValueError(
                f"no basis element with principal part q^(-{m}) at weight {self.weight}; "
                f"pivot exponents reach only {self.gap}"
            )
        return PlusForm(self.weight, QSeries(1, dict(self._pivots[-m]), self.order + 1))


def plus_space_basis(j: int, depth: int, order: int, cache_dir=None) -> list[PlusForm]:
    """The first `depth` basis elements of weight 1/2 - j (ascending index)."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    basis = PlusBasis(Fraction(1, 2) - j, 4 * depth + 8, order, cache_dir)
    ms = [m for m in basis.indices() if m > 0 or (m >= 0 and j == 0)]
    return [basis.element(m) for m in ms[:depth]]


def zagier_lift(f: ScalarForm, d: int, j: int, order: int, cache_dir=None) -> PlusForm:
    """Lift of a weight -2j form to weight 1/2 - j, defined by its principal
    part: |d|^(-j/2) sum_{m>0} c_f(-m) sum_{n|m} (d|n) n^j q^(-|d| m^2/n^2).

    The |d|^(j/2)-cleared combination has rational coordinates in the basis;
    the returned form carries exact sqrt(|d|)-coefficients when j is odd.
    """
    if f.weight != -2 * j:
        raise ValueError(f"input has weight {f.weight}, expected {-2 * j}")
    if not is_fundamental(d) or ((-1) ** j) * d >= 0:
        raise ValueError(f"need a fundamental discriminant with (-1)^j d < 0, got {d}")
    pp = [(int(-e), f.series.coefficient(e)) for e in f.series.exponents() if e < 0]
    if any(e.denominator != 1 for e in f.series.exponents()):
        raise ValueError("input must have an integral q-expansion")
    max_index = max((abs(d) * m * m for m, _ in pp), default=0)
    basis = PlusBasis(Fraction(1, 2) - j, max_index + 8, order, cache_dir)
    total = QSeries.zero(order + 1)
    for m, c in pp:
        for n in range(1, m + 1):
            if m % n:
                continue
            chi = kronecker(d, n)
            if not chi:
                continue
            idx = abs(d) * m * m // (n * n)
            try:
                elt = basis.element(idx)
            except ValueError as exc:
                raise ValueError(
                    f"principal part q^(-{idx}) not realizable in the plus space"
                ) from exc
            total = total + elt.series * (Fraction(c) * chi * n**j)
    if j % 2 == 0:
        scale = Fraction(1, abs(d) ** (j // 2))
        return PlusForm(Fraction(1, 2) - j, total * scale)
    scale = Rad.of(Fraction(1, abs(d) ** ((j + 1) // 2)), abs(d))  # |d|^(-j/2)
    return PlusForm(Fraction(1, 2) - j, total.map_coefficients(lambda c: scale * c))


# -- dual bases ---------------------------------------------------------------


class DualityFamily:
    """Paired bases at weights k and 2 - k with the duality normalization.

    The weight-k side g_n is the reduced-basis element q^(-n) + tail; the
    weight-(2-k) side f_m additionally has vanishing coefficients at the
    pivot indices of the holomorphic subspace of its own weight.
    """

    def __init__(self, k, pole: int, order: int, cache_dir=None):
        self.k = Fraction(k)
        self.k2 = 2 - self.k
        if plus_parity(self.k) != -plus_parity(self.k2):
            raise AssertionError("dual weights must carry opposite support parities")
        self.low = PlusBasis(self.k, pole, order, cache_dir)
        self.order = order
        gens = _plus_generators(self.k2, pole + 8, order)
        self._pivots_high = _echelonize(gens, order)
        # holomorphic pivot indices at weight 2-k: admissible e >= 0 that are
        # NOT free tail columns, i.e. exponents of dual-basis leading terms
        self.hol_pivots = sorted(n for n in self._pivots_high if n >= 0)

    def g(self, n: int) -> PlusForm:
        return self.low.element(n)

    def f(self, m: int) -> PlusForm:
        """Weight 2-k element: q^(-m) + tail vanishing at the hol pivots."""
        if -m not in self._pivots_high:
            raise ValueError(f"index {m} not realizable at weight {self.k2}")
        row = dict(self._pivots_high[-m])
        # reduced echelon already clears all other pivot columns, including
        # the nonnegative (holomorphic) ones
        return PlusForm(self.k2, QSeries(1, row, self.order + 1))

    def f_indices(self):
        return sorted(-n for n in self._pivots_high if n < 0)

    def g_indices(self):
        return sorted(-n for n in self.low._pivots if n < 0)

    def pairing_defect(self, m: int, n: int) -> Fraction:
        """a_m(n) + b_n(m); zero exactly when duality holds."""
        a = self.f(m).series.coefficient(n)
        b = self.g(n).series.coefficient(m)
        return a + b


def shimura_lift(coefficient, m0: Fraction, mu0, d0: int, j: int, n_max: int):
    """Coefficients B(n) = sum_{d|n} d^(2j) (d0|d) b(m0 n^2/d^2, mu0 n/d).

    `coefficient` is a callable (m, mu) -> value; mu0 must support integer
    scalar multiplication (DiscVector) or be an int taken mod 2.
    """
    out = {}
    for n in range(1, n_max + 1):
        tot = None
        for d in range(1, n + 1):
            if n % d:
                continue
            chi = kronecker(d0, d)
            if not chi:
                continue
            t = n // d
            term = (d ** (2 * j) * chi) * coefficient(m0 * t * t, mu0 * t)
            tot = term if tot is None else tot + term
        out[n] = tot if tot is not None else Fraction(0)
    return out
