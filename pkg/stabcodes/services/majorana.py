# stabcodes/services/majorana.py
"""
Majorana strings μ(x) = χ_1^{x_1} ... χ_{2n}^{x_{2n}} (ascending order) and
the odd F₂ form that describes their commutation and parity.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from stabcodes.exceptions import DimensionMismatch

logger = logging.getLogger(__name__)

Bits = Tuple[int, ...]

HALF = Fraction(1, 2)


def _bits(values: Sequence[int]) -> Bits:
    return tuple(int(v) % 2 for v in values)


def _check_lengths(x: Sequence[int], y: Sequence[int]):
    if len(x) != len(y):
        raise DimensionMismatch(f"Bit vectors of lengths {len(x)} and {len(y)}")


@dataclass(frozen=True)
class MajoranaString:
    """ω^phase · μ(bits), ω = e^{2πi/8}."""
    bits: Bits
    phase: int = 0

    def __post_init__(self):
        if len(self.bits) % 2:
            raise DimensionMismatch(f"Majorana strings have even length, got {len(self.bits)}")
        object.__setattr__(self, "bits", _bits(self.bits))
        object.__setattr__(self, "phase", self.phase % 8)

    @classmethod
    def identity(cls, n: int) -> "MajoranaString":
        return cls((0,) * (2 * n))

    @classmethod
    def chi(cls, i: int, n: int) -> "MajoranaString":
        """χ_i, 1-based."""
        if not 1 <= i <= 2 * n:
            raise ValueError(f"Mode index {i} outside 1..{2 * n}")
        return cls(tuple(int(k == i - 1) for k in range(2 * n)))

    @property
    def n(self) -> int:
        return len(self.bits) // 2

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def __mul__(self, other: "MajoranaString") -> "MajoranaString":
        return majorana_mul(self, other)

    def __str__(self) -> str:
        factors = [f"χ{i + 1}" for i, b in enumerate(self.bits) if b] or ["1"]
        prefix = f"ω^{self.phase}·" if self.phase else ""
        return prefix + "".join(factors)


def majorana_mul(a: MajoranaString, b: MajoranaString) -> MajoranaString:
    """Normal-order μ(x)μ(y): each χ_j of y passes every χ_i of x with i > j."""
    _check_lengths(a.bits, b.bits)
    swaps = 0
    later = 0
    for i in range(len(a.bits) - 1, -1, -1):
        if b.bits[i]:
            swaps += later
        if a.bits[i]:
            later += 1
    bits = tuple((x + y) % 2 for x, y in zip(a.bits, b.bits))
    return MajoranaString(bits, a.phase + b.phase + 4 * (swaps % 2))


def kappa(x: Sequence[int], y: Sequence[int]) -> Fraction:
    """Σ_{i≠j} x_i y_j / 2 mod 1."""
    _check_lengths(x, y)
    x, y = _bits(x), _bits(y)
    total = sum(x) * sum(y) - sum(a * b for a, b in zip(x, y))
    return Fraction(total, 2) % 1


# ============================================================
# ODD F₂ FORM
# ============================================================

@dataclass(frozen=True)
class OddFormF2:
    """n copies of the block (0 1/2; 1/2 1/2) on (Z/2)^{2n}."""
    n: int
    block: tuple = field(default=((Fraction(0), HALF), (HALF, HALF)), repr=False)

    @property
    def rank(self) -> int:
        return 2 * self.n

    @property
    def c_hat(self) -> Bits:
        return tuple(int(k % 2 == 0) for k in range(self.rank))

    def _check(self, *vectors):
        for v in vectors:
            if len(v) != self.rank:
                raise DimensionMismatch(f"Expected {self.rank} coordinates, got {len(v)}")

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        self._check(x, y)
        total = Fraction(0)
        for k in range(self.n):
            for i in range(2):
                for j in range(2):
                    total += x[2 * k + i] * y[2 * k + j] * self.block[i][j]
        return total % 1

    def c(self, x: Sequence[int]) -> Fraction:
        """b(x, x) in {0, 1/2}."""
        return self.b(x, x)


def to_form_coordinates(bits: Sequence[int]) -> Bits:
    """Per mode pair, χ_{2k-1} ↦ e_{2k} and χ_{2k} ↦ e_{2k-1} + e_{2k}."""
    if len(bits) % 2:
        raise DimensionMismatch(f"Expected an even number of bits, got {len(bits)}")
    out = []
    for k in range(0, len(bits), 2):
        first, second = bits[k] % 2, bits[k + 1] % 2
        out.extend([second, (first + second) % 2])
    return tuple(out)


def modified_commutator(form: OddFormF2, x: Sequence[int], y: Sequence[int]) -> Fraction:
    """
    b(X, Y) + 2·c(X)·c(Y) mod 1 for X, Y the form coordinates of the strings.

    On odd Y this is b(X, Y - ĉ).
    """
    _check_lengths(x, y)
    fx, fy = to_form_coordinates(x), to_form_coordinates(y)
    return (form.b(fx, fy) + 2 * form.c(fx) * form.c(fy)) % 1


def parity(form: OddFormF2, x: Sequence[int]) -> Fraction:
    return form.c(to_form_coordinates(x))


# ============================================================
# CODES
# ============================================================

@dataclass
class MajoranaCodeReport:
    ok: bool
    odd: List[int] = field(default_factory=list)
    anticommuting: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def diagnostics(self) -> List[str]:
        lines = [f"generator {i} has odd parity" for i in self.odd]
        lines.extend(f"generators {i} and {j} anticommute" for i, j in self.anticommuting)
        return lines

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "odd": self.odd,
            "anticommuting": [list(pair) for pair in self.anticommuting],
            "diagnostics": self.diagnostics,
        }


def is_majorana_code(generators: Sequence[Sequence[int]]) -> MajoranaCodeReport:
    """
    Generators span a commutative group of even strings. κ is bilinear and
    parity is a homomorphism, so checking generators suffices.
    """
    generators = [_bits(g) for g in generators]
    if not generators:
        return MajoranaCodeReport(ok=True)
    length = len(generators[0])
    for g in generators:
        _check_lengths(generators[0], g)
    form = OddFormF2(length // 2)
    report = MajoranaCodeReport(ok=True)
    for i, g in enumerate(generators):
        if parity(form, g):
            report.odd.append(i)
        for j in range(i + 1, len(generators)):
            if kappa(g, generators[j]):
                report.anticommuting.append((i, j))
    report.ok = not report.odd and not report.anticommuting
    logger.debug("Majorana code check on %s generators: %s", len(generators), report.ok)
    return report


def verify_kappa(n: int) -> Tuple[int, List[Tuple[Bits, Bits]]]:
    """Exhaustively compare modified_commutator with κ on (Z/2)^{2n}; returns (pairs, mismatches)."""
    form = OddFormF2(n)
    vectors = [tuple((v >> k) & 1 for k in range(2 * n)) for v in range(4 ** n)]
    mismatches = []
    for x in vectors:
        for y in vectors:
            if modified_commutator(form, x, y) != kappa(x, y):
                mismatches.append((x, y))
    return len(vectors) ** 2, mismatches
