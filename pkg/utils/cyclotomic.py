"""
Exact arithmetic in the cyclotomic integers Z[zeta_N].

Elements are integer coefficient vectors on the powers zeta_N^k,
0 <= k < N. Equality is decided after reduction modulo the N-th
cyclotomic polynomial, so two different vectors can be equal.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Optional


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_divide(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _exact_divide(numerator: list, monic: list) -> list:
    num = list(numerator)
    deg = len(monic) - 1
    quotient = [0] * (len(num) - deg)
    for k in range(len(num) - 1, deg - 1, -1):
        c = num[k]
        if c:
            quotient[k - deg] = c
            for i, m in enumerate(monic):
                num[k - deg + i] -= c * m
    if any(num[:deg]):
        raise ArithmeticError("Polynomial division is not exact")
    return quotient


class CyclotomicInteger:
    """An element of Z[zeta_order]."""

    __slots__ = ("order", "coefficients")

    def __init__(self, order: int, coefficients: Iterable[int]):
        coefficients = list(coefficients)
        if len(coefficients) != order:
            raise ValueError("Coefficient vector length must equal the order")
        self.order = order
        self.coefficients = tuple(int(c) for c in coefficients)

    @classmethod
    def constant(cls, value: int, order: int = 1) -> "CyclotomicInteger":
        return cls(order, [value] + [0] * (order - 1))

    @classmethod
    def root(cls, order: int, k: int) -> "CyclotomicInteger":
        coefficients = [0] * order
        coefficients[k % order] = 1
        return cls(order, coefficients)

    def lift(self, order: int) -> "CyclotomicInteger":
        """Embed into Z[zeta_order] (order must be a multiple of self.order)."""
        if order % self.order:
            raise ValueError(f"Cannot embed order {self.order} into order {order}")
        step = order // self.order
        coefficients = [0] * order
        for k, c in enumerate(self.coefficients):
            coefficients[k * step] = c
        return CyclotomicInteger(order, coefficients)

    def _common(self, other: "CyclotomicInteger"):
        order = _lcm(self.order, other.order)
        return self.lift(order), other.lift(order)

    def __add__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        a, b = self._common(other)
        return CyclotomicInteger(a.order, [x + y for x, y in zip(a.coefficients, b.coefficients)])

    def __neg__(self) -> "CyclotomicInteger":
        return CyclotomicInteger(self.order, [-c for c in self.coefficients])

    def __sub__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        return self + (-other)

    def __mul__(self, other) -> "CyclotomicInteger":
        if isinstance(other, int):
            return CyclotomicInteger(self.order, [c * other for c in self.coefficients])
        a, b = self._common(other)
        n = a.order
        out = [0] * n
        for i, x in enumerate(a.coefficients):
            if x:
                for j, y in enumerate(b.coefficients):
                    if y:
                        out[(i + j) % n] += x * y
        return CyclotomicInteger(n, out)

    __rmul__ = __mul__

    def conjugate(self) -> "CyclotomicInteger":
        n = self.order
        out = [0] * n
        for k, c in enumerate(self.coefficients):
            out[(-k) % n] += c
        return CyclotomicInteger(n, out)

    def reduced(self) -> tuple:
        """Canonical coefficients in the power basis of Q(zeta_order)."""
        phi = cyclotomic_polynomial(self.order)
        deg = len(phi) - 1
        coefficients = list(self.coefficients)
        for k in range(len(coefficients) - 1, deg - 1, -1):
            c = coefficients[k]
            if c:
                for i, m in enumerate(phi):
                    coefficients[k - deg + i] -= c * m
        return tuple(coefficients[:deg])

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CyclotomicInteger.constant(other)
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        a, b = self._common(other)
        return a.reduced() == b.reduced()

    def __hash__(self):
        return hash(self.reduced())

    def __repr__(self) -> str:
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.coefficients) if c]
        return f"CyclotomicInteger({self.order}: {' + '.join(terms) or '0'})"


# ============================================================
# GAUSS SUMS
# ============================================================

def gauss_sum(values: Iterable[Fraction]) -> CyclotomicInteger:
    """Sum of exp(2 pi i v) over the given rationals, exactly."""
    values = [Fraction(v) % 1 for v in values]
    order = 1
    for v in values:
        order = _lcm(order, v.denominator)
    coefficients = [0] * order
    for v in values:
        coefficients[v.numerator * (order // v.denominator)] += 1
    return CyclotomicInteger(order, coefficients)


def _squarefree_split(n: int):
    """n = s^2 * t with t squarefree."""
    s, t = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            t *= p
        p += 1
    return s, t * n


def _reference_sum(t: int):
    """
    Gauss sum with known signature on a group of squarefree order t.

    Odd t uses x^2/t on Z/t (signature 0 or 2 by the classical evaluation);
    the factor 2 is carried by the semion x^2/4 on Z/2 (signature 1).
    """
    odd = t // 2 if t % 2 == 0 else t
    total = gauss_sum(Fraction(x * x, odd) for x in range(odd))
    sigma = 0 if odd % 4 == 1 else 2
    if t % 2 == 0:
        total = total * gauss_sum([Fraction(0), Fraction(1, 4)])
        sigma += 1
    return total, sigma


def signature_mod_8(total: CyclotomicInteger, group_order: int) -> Optional[int]:
    """
    The k with total == sqrt(group_order) * zeta_8^k, or None.

    The square root is generally irrational, so the sum is multiplied by a
    reference sum of order t (group_order = s^2 t) to land on the integer s*t.
    """
    s, t = _squarefree_split(group_order)
    reference, sigma_ref = _reference_sum(t)
    product = total * reference
    scale = CyclotomicInteger.constant(s * t)
    for k in range(8):
        if product == scale * CyclotomicInteger.root(8, k):
            return (k - sigma_ref) % 8
    return None


def has_magnitude(total: CyclotomicInteger, group_order: int) -> bool:
    """|total|^2 == group_order, exactly."""
    return total * total.conjugate() == CyclotomicInteger.constant(group_order)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
