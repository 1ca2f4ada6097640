"""Binary quadratic forms, class groups, genus characters, Heegner divisors.

Forms [a, b, c] are positive definite with discriminant D = b^2 - 4ac < 0.
Reduction follows the classical convention |b| <= a <= c with b >= 0 when
|b| = a or a = c.  Twisted Heegner divisors weight each class by
(2 / stabilizer order) times a genus character value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from mpmath import mp, workprec


def is_discriminant(d: int) -> bool:
    return d % 4 in (0, 1)


def is_fundamental(d: int) -> bool:
    """Fundamental discriminant (1 counts, as the trivial twist)."""
    if d == 1:
        return True
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return n != 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor out twos of n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol for odd n via quadratic reciprocity
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n % a, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
    return sign if n == 1 else 0


@dataclass(frozen=True)
class BQF:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __post_init__(self):
        if self.disc >= 0 or self.a <= 0:
            raise ValueError(f"form {self} is not positive definite")

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def transform(self, m11: int, m12: int, m21: int, m22: int) -> "BQF":
        """Action of an SL2(Z) matrix on the form."""
        if m11 * m22 - m12 * m21 != 1:
            raise ValueError("not an SL2(Z) matrix")
        a, b, c = self.a, self.b, self.c
        a2 = a * m11 * m11 + b * m11 * m21 + c * m21 * m21
        c2 = a * m12 * m12 + b * m12 * m22 + c * m22 * m22
        b2 = 2 * a * m11 * m12 + b * (m11 * m22 + m12 * m21) + 2 * c * m21 * m22
        return BQF(a2, b2, c2)


def reduce_form(f: BQF) -> BQF:
    a, b, c = f.a, f.b, f.c
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if abs(b) > a:
            # translate b into (-a, a]
            r = (a - b) // (2 * a)
            b2 = b + 2 * r * a
            c = a * r * r + b * r + c
            b = b2
            continue
        break
    if (abs(b) == a or a == c) and b < 0:
        b = -b
    return BQF(a, b, c)


def class_representatives(D: int) -> list[BQF]:
    """Reduced primitive forms of discriminant D < 0, one per class."""
    if D >= 0 or not is_discriminant(D):
        raise ValueError(f"invalid negative discriminant {D}")
    forms = []
    amax = isqrt(-D // 3) if D <= -3 else 0
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            f = BQF(a, b, c)
            if f.content() == 1:
                forms.append(f)
    return forms


def all_representatives(D: int) -> list[BQF]:
    """Reduced forms of discriminant D, imprimitive ones included."""
    out = []
    g = 1
    while g * g <= -D // 3 + 1:
        if D % (g * g) == 0 and is_discriminant(D // (g * g)):
            out.extend(BQF(g * f.a, g * f.b, g * f.c) for f in class_representatives(D // (g * g)))
        g += 1
    return sorted(out, key=lambda f: (f.a, f.b, f.c))


def class_number(D: int) -> int:
    return len(class_representatives(D))


def stabilizer_order(f: BQF) -> int:
    """Order of the stabilizer in SL2(Z): 4 at i, 6 at rho, else 2."""
    r = reduce_form(f)
    g = r.content()
    if (r.a, r.b, r.c) == (g, 0, g):
        return 4
    if (r.a, r.b, r.c) == (g, g, g):
        return 6
    return 2


def genus_character(delta: int, f: BQF) -> int:
    """Genus character chi_delta of a form, via a represented value.

    Zero unless delta divides the discriminant and gcd(a,b,c,delta) = 1;
    otherwise (delta / n) for any represented n coprime to delta.  A valid n
    is constructed by CRT over the primes of delta from the values at
    (1,0), (0,1), (1,1), so the search cannot fail.
    """
    if not is_fundamental(delta):
        raise ValueError(f"{delta} is not a fundamental discriminant")
    if delta == 1:
        return 1
    if f.disc % delta:
        return 0
    if gcd(f.content(), delta) > 1:
        return 0
    # small direct search first
    for x in range(0, 3):
        for y in range(-2, 3):
            n = f(x, y)
            if n and gcd(n, delta) == 1:
                return kronecker(delta, n)
    # guaranteed construction: pick (x,y) mod p avoiding p | f(x,y)
    primes = _prime_divisors(abs(delta))
    x, y, mod = 0, 0, 1
    for p in primes:
        for cx, cy in ((1, 0), (0, 1), (1, 1)):
            if f(cx, cy) % p:
                x = _crt(x, mod, cx, p)
                y = _crt(y, mod, cy, p)
                break
        else:  # p divides a, c, a+b+c hence all of a, b, c
            return 0
        mod *= p
    n = f(x, y)
    assert n and gcd(n, delta) == 1
    return kronecker(delta, n)


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    # m1, m2 coprime
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


class CMPoint:
    """CM point: root of a positive definite form in the upper half-plane."""

    def __init__(self, form: BQF):
        self.form = form

    @property
    def disc(self) -> int:
        return self.form.disc

    def approx(self, prec: int = 64):
        """z = (-b + i sqrt(|D|)) / (2a) as an mpc at prec bits."""
        with workprec(prec + 16):
            a, b = self.form.a, self.form.b
            return mp.mpc(Fraction(-b, 2 * a), 0) + mp.mpc(0, 1) * mp.sqrt(abs(self.disc)) / (2 * a)

    def __repr__(self):
        return f"CMPoint[{self.form.a},{self.form.b},{self.form.c}]"

    def __eq__(self, other):
        return isinstance(other, CMPoint) and reduce_form(self.form) == reduce_form(other.form)

    def __hash__(self):
        r = reduce_form(self.form)
        return hash((r.a, r.b, r.c))


class HeegnerDivisor:
    """Weighted formal sum of CM points, weights exact rationals."""

    def __init__(self, terms):
        self.terms = [(Fraction(w), pt) for w, pt in terms if w]
        seen = set()
        for _, pt in self.terms:
            if pt in seen:
                raise ValueError("divisor points must be pairwise inequivalent")
            seen.add(pt)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_weight(self):
        return sum(abs(w) for w, _ in self.terms)

    def __repr__(self):
        return " + ".join(f"({w})*{pt}" for w, pt in self.terms) or "0"


def twisted_divisor(delta: int, r: int, m: Fraction) -> HeegnerDivisor:
    """Twisted Heegner divisor of index m: classes of forms of discriminant
    -4 m |delta|, each weighted by (2/w) * chi_delta."""
    m = Fraction(m)
    if m <= 0:
        raise ValueError("index must be positive")
    if not is_fundamental(delta):
        raise ValueError(f"{delta} is not fundamental (or 1)")
    if (delta - r * r) % 4:
        raise ValueError(f"need delta = r^2 mod 4, got delta={delta}, r={r}")
    D = -4 * m * abs(delta)
    if D.denominator != 1:
        raise ValueError(f"-4 m |delta| = {D} is not an integer")
    D = int(D)
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a discriminant")
    terms = []
    for f in all_representatives(D):
        chi = genus_character(delta, f)
        if chi:
            terms.append((Fraction(2 * chi, stabilizer_order(f)), CMPoint(f)))
    return HeegnerDivisor(terms)


def heegner_divisor(d: int) -> HeegnerDivisor:
    """The untwisted divisor of discriminant d < 0 (all classes, weight 2/w)."""
    return twisted_divisor(1, 1, Fraction(-d, 4))


def exponent2_survey(bound: int):
    """Count fundamental discriminants -bound < D < 0 and how many have
    class number one or class group of exponent 2.

    A class has order dividing 2 exactly when its reduced form is ambiguous
    (b = 0, a = b, or a = c), so the exponent condition holds iff every
    reduced primitive form is ambiguous.
    """
    if bound < 4:
        raise ValueError("bound must be at least 4")
    fields = 0
    small_exponent = 0
    for d in range(-3, -bound, -1):
        if not is_discriminant(d) or not is_fundamental(d):
            continue
        fields += 1
        if all(f.b == 0 or f.a == f.b or f.a == f.c for f in class_representatives(d)):
            small_exponent += 1
    return fields, small_exponent
