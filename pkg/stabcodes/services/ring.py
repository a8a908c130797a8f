# stabcodes/services/ring.py
"""
Exact arithmetic in the Laurent ring R = Z[x1^±1, ..., xd^±1].

Coefficients live in one of three domains: integers, rationals, or
rationals modulo 1 (the quotient Q[Λ]/Z[Λ] in which pairings take values).
Everything here is an immutable value; no floating point is involved.
"""
import enum
import itertools
import logging
import re
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from stabcodes.exceptions import (
    DimensionMismatch,
    DocumentError,
    IllDefined,
    ZeroDeterminant,
)
from utils.smith import bareiss_determinant, rational_inverse

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


class Domain(enum.Enum):
    INTEGER = "integer"
    RATIONAL = "rational"
    MOD_ONE = "mod_one"

    def normalize(self, value):
        if self is Domain.INTEGER:
            if isinstance(value, int):
                return value
            value = Fraction(value)
            if value.denominator != 1:
                raise IllDefined(f"{value} is not an integer coefficient")
            return int(value)
        if self is Domain.RATIONAL:
            return Fraction(value)
        return Fraction(value) % 1

    @staticmethod
    def for_sum(a: "Domain", b: "Domain") -> "Domain":
        if Domain.MOD_ONE in (a, b):
            return Domain.MOD_ONE
        if Domain.RATIONAL in (a, b):
            return Domain.RATIONAL
        return Domain.INTEGER

    @staticmethod
    def for_product(a: "Domain", b: "Domain") -> "Domain":
        if Domain.MOD_ONE in (a, b):
            other = b if a is Domain.MOD_ONE else a
            if other is not Domain.INTEGER:
                raise IllDefined("Classes mod 1 can only be multiplied by integral elements")
            return Domain.MOD_ONE
        return Domain.for_sum(a, b)


# ============================================================
# LAURENT POLYNOMIALS
# ============================================================

class LaurentPoly:
    """
    A sparse Laurent polynomial: exponent tuple -> coefficient.

    Zero coefficients are never stored, so two polynomials are equal
    exactly when their term maps are.
    """

    __slots__ = ("terms", "dimension", "domain")

    def __init__(self, terms: Dict[Monomial, object], dimension: int,
                 domain: Domain = Domain.INTEGER):
        clean = {}
        for exponents, coefficient in terms.items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != dimension:
                raise DimensionMismatch(
                    f"Monomial {exponents} does not have {dimension} exponents"
                )
            coefficient = domain.normalize(coefficient)
            if coefficient != 0:
                clean[exponents] = coefficient
        self.terms = clean
        self.dimension = dimension
        self.domain = domain

    # ── constructors ─────────────────────────────────────────────────────────

    @classmethod
    def zero(cls, dimension: int, domain: Domain = Domain.INTEGER) -> "LaurentPoly":
        return cls({}, dimension, domain)

    @classmethod
    def constant(cls, value, dimension: int, domain: Optional[Domain] = None) -> "LaurentPoly":
        if domain is None:
            domain = Domain.INTEGER if Fraction(value).denominator == 1 else Domain.RATIONAL
        return cls({(0,) * dimension: value}, dimension, domain)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient=1,
                 domain: Domain = Domain.INTEGER) -> "LaurentPoly":
        return cls({tuple(exponents): coefficient}, len(exponents), domain)

    @classmethod
    def variable(cls, index: int, dimension: int) -> "LaurentPoly":
        """x_{index+1}, zero-based index."""
        exponents = [0] * dimension
        exponents[index] = 1
        return cls.monomial(exponents)

    @classmethod
    def parse(cls, text: str, dimension: int, domain: Optional[Domain] = None,
              line: int = 1, column: int = 1) -> "LaurentPoly":
        return _PolyParser(text, dimension, line, column).parse(domain)

    # ── queries ──────────────────────────────────────────────────────────────

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_integral(self) -> bool:
        """All coefficients are integers (the polynomial lies in R)."""
        return all(Fraction(c).denominator == 1 for c in self.terms.values())

    def trace(self):
        """The coefficient of the constant monomial."""
        default = 0 if self.domain is Domain.INTEGER else Fraction(0)
        return self.terms.get((0,) * self.dimension, default)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.trace()

    def unit_factor(self) -> Optional[Tuple[object, Monomial]]:
        """(coefficient, exponents) when self is a single term, else None."""
        if len(self.terms) != 1:
            return None
        (exponents, coefficient), = self.terms.items()
        return coefficient, exponents

    def coefficients(self) -> List:
        return [self.terms[m] for m in sorted(self.terms)]

    # ── arithmetic ───────────────────────────────────────────────────────────

    def _check(self, other: "LaurentPoly"):
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"Cannot combine polynomials in {self.dimension} and {other.dimension} variables"
            )

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.dimension)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return LaurentPoly(terms, self.dimension, Domain.for_sum(self.domain, other.domain))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()}, self.dimension, self.domain)

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            domain = self.domain
            if isinstance(other, Fraction) and other.denominator != 1:
                domain = Domain.for_product(self.domain, Domain.RATIONAL)
            return LaurentPoly({m: c * other for m, c in self.terms.items()}, self.dimension, domain)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        domain = Domain.for_product(self.domain, other.domain)
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return LaurentPoly(terms, self.dimension, domain)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            unit = self.unit_factor()
            if unit is None or abs(unit[0]) != 1:
                raise ValueError(f"{self} is not a unit")
            return LaurentPoly.monomial([-e for e in unit[1]], unit[0]) ** (-exponent)
        result = LaurentPoly.constant(1, self.dimension)
        for _ in range(exponent):
            result = result * self
        return result

    def involution(self) -> "LaurentPoly":
        """x_i -> x_i^-1; coefficients are untouched."""
        return LaurentPoly(
            {tuple(-e for e in m): c for m, c in self.terms.items()},
            self.dimension,
            self.domain,
        )

    def shift(self, exponents: Sequence[int]) -> "LaurentPoly":
        """Multiplication by the monomial x^exponents."""
        return LaurentPoly(
            {tuple(a + b for a, b in zip(m, exponents)): c for m, c in self.terms.items()},
            self.dimension,
            self.domain,
        )

    def to_domain(self, domain: Domain) -> "LaurentPoly":
        return LaurentPoly(self.terms, self.dimension, domain)

    def mod_one(self) -> "LaurentPoly":
        return self.to_domain(Domain.MOD_ONE)

    def reduce_mod_torus(self, ell: int) -> "TorusRingElem":
        if ell <= 0:
            raise ValueError(f"Torus size must be positive, got {ell}")
        terms: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            key = tuple(e % ell for e in m)
            terms[key] = terms.get(key, 0) + c
        return TorusRingElem(LaurentPoly(terms, self.dimension, self.domain), ell)

    # ── protocol ─────────────────────────────────────────────────────────────

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.dimension)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    def __hash__(self):
        # Constants compare equal to int and Fraction, so they hash like them.
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.dimension, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m in sorted(self.terms):
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            body = _format_monomial(m)
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out


def _format_monomial(exponents: Monomial) -> str:
    parts = []
    for i, e in enumerate(exponents, start=1):
        if e == 0:
            continue
        parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    return "*".join(parts)


# ============================================================
# POLYNOMIAL GRAMMAR
# ============================================================

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<op>[-+*/^]))")


class _PolyParser:
    """
    Recursive descent over: expr := [sign] term (sign term)*,
    term := factor ('*'? factor)*, factor := int ['/' int] | var ['^' ['-'] int].
    """

    def __init__(self, text: str, dimension: int, line: int, column: int):
        self.text = text
        self.dimension = dimension
        self.line = line
        self.column = column
        self.tokens = self._tokenize()
        self.pos = 0

    def _error(self, message: str, offset: int):
        raise DocumentError(message, self.line, self.column + offset)

    def _tokenize(self):
        tokens = []
        index = 0
        text = self.text
        while index < len(text):
            if text[index].isspace():
                index += 1
                continue
            match = _TOKEN.match(text, index)
            if not match:
                self._error(f"Unexpected character {text[index]!r}", index)
            kind = match.lastgroup
            start = match.start(kind)
            tokens.append((kind, match.group(kind), start))
            index = match.end()
        return tokens

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self):
        token = self._peek()
        if token is None:
            self._error("Unexpected end of polynomial", len(self.text))
        self.pos += 1
        return token

    def parse(self, domain: Optional[Domain]) -> LaurentPoly:
        if not self.tokens:
            self._error("Empty polynomial", 0)
        terms: Dict[Monomial, Fraction] = {}
        sign = 1
        token = self._peek()
        if token[0] == "op" and token[1] in "+-":
            sign = -1 if token[1] == "-" else 1
            self.pos += 1
        while True:
            coefficient, exponents = self._term()
            terms[exponents] = terms.get(exponents, Fraction(0)) + sign * coefficient
            token = self._peek()
            if token is None:
                break
            if token[0] == "op" and token[1] in "+-":
                sign = -1 if token[1] == "-" else 1
                self.pos += 1
                continue
            self._error(f"Unexpected {token[1]!r}", token[2])
        if domain is None:
            integral = all(c.denominator == 1 for c in terms.values())
            domain = Domain.INTEGER if integral else Domain.RATIONAL
        try:
            return LaurentPoly(terms, self.dimension, domain)
        except IllDefined as exc:
            self._error(str(exc), 0)

    def _term(self):
        coefficient_box = [Fraction(1)]
        exponents = [0] * self.dimension
        self._factor(exponents, coefficient_box)
        while True:
            token = self._peek()
            if token is None or (token[0] == "op" and token[1] in "+-"):
                break
            if token[0] == "op" and token[1] == "*":
                self.pos += 1
            self._factor(exponents, coefficient_box)
        return coefficient_box[0], tuple(exponents)

    def _factor(self, exponents: list, coefficient_box: list):
        kind, value, offset = self._take()
        if kind == "num":
            number = Fraction(int(value))
            token = self._peek()
            if token is not None and token[0] == "op" and token[1] == "/":
                self.pos += 1
                kind2, value2, offset2 = self._take()
                if kind2 != "num" or int(value2) == 0:
                    self._error("Expected a nonzero denominator", offset2)
                number /= int(value2)
            coefficient_box[0] *= number
            return
        if kind == "var":
            index = int(value[1:])
            if not 1 <= index <= self.dimension:
                self._error(
                    f"Variable {value} outside x1..x{self.dimension}", offset
                )
            power = 1
            token = self._peek()
            if token is not None and token[0] == "op" and token[1] == "^":
                self.pos += 1
                negative = False
                kind2, value2, offset2 = self._take()
                if kind2 == "op" and value2 == "-":
                    negative = True
                    kind2, value2, offset2 = self._take()
                if kind2 != "num":
                    self._error("Expected an integer exponent", offset2)
                power = -int(value2) if negative else int(value2)
            exponents[index - 1] += power
            return
        self._error(f"Unexpected {value!r}", offset)


# ============================================================
# MATRICES
# ============================================================

class PolyMatrix:
    """Dense rows x cols matrix of LaurentPoly entries in a fixed dimension."""

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]], dimension: int,
                 cols: Optional[int] = None):
        entries = [list(row) for row in entries]
        width = len(entries[0]) if entries else (cols or 0)
        for row in entries:
            if len(row) != width:
                raise DimensionMismatch("Ragged polynomial matrix")
            for entry in row:
                if entry.dimension != dimension:
                    raise DimensionMismatch(
                        f"Entry {entry} is not in {dimension} variables"
                    )
        self.entries = entries
        self.rows = len(entries)
        self.cols = width
        self.dimension = dimension

    # ── constructors ─────────────────────────────────────────────────────────

    @classmethod
    def zeros(cls, rows: int, cols: int, dimension: int,
              domain: Domain = Domain.INTEGER) -> "PolyMatrix":
        return cls([[LaurentPoly.zero(dimension, domain) for _ in range(cols)] for _ in range(rows)],
                   dimension, cols)

    @classmethod
    def identity(cls, n: int, dimension: int) -> "PolyMatrix":
        return cls([[LaurentPoly.constant(int(i == j), dimension) for j in range(n)] for i in range(n)],
                   dimension, n)

    @classmethod
    def from_values(cls, rows: Iterable[Iterable], dimension: int,
                    cols: Optional[int] = None) -> "PolyMatrix":
        """Entries may be LaurentPoly, numbers or polynomial strings."""
        out = []
        for row in rows:
            converted = []
            for value in row:
                if isinstance(value, LaurentPoly):
                    converted.append(value)
                elif isinstance(value, str):
                    converted.append(LaurentPoly.parse(value, dimension))
                else:
                    converted.append(LaurentPoly.constant(value, dimension))
            out.append(converted)
        return cls(out, dimension, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[LaurentPoly]], n_rows: int,
                     dimension: int) -> "PolyMatrix":
        entries = [[columns[j][i] for j in range(len(columns))] for i in range(n_rows)]
        return cls(entries, dimension, len(columns))

    @staticmethod
    def block_diagonal(a: "PolyMatrix", b: "PolyMatrix") -> "PolyMatrix":
        if a.dimension != b.dimension:
            raise DimensionMismatch("Block matrices live in different dimensions")
        d = a.dimension
        zero = LaurentPoly.zero(d)
        entries = [list(row) + [zero] * b.cols for row in a.entries]
        entries += [[zero] * a.cols + list(row) for row in b.entries]
        return PolyMatrix(entries, d, a.cols + b.cols)

    # ── access ───────────────────────────────────────────────────────────────

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> List[LaurentPoly]:
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self) -> List[List[LaurentPoly]]:
        return [self.column(j) for j in range(self.cols)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        return all(entry.is_integral() for row in self.entries for entry in row)

    def is_constant(self) -> bool:
        return all(entry.is_constant() for row in self.entries for entry in row)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries], self.dimension, self.cols)

    # ── algebra ──────────────────────────────────────────────────────────────

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([self.column(j) for j in range(self.cols)], self.dimension, self.rows)

    def conjugate_transpose(self) -> "PolyMatrix":
        return self.transpose().map(LaurentPoly.involution)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_shape(other)
        return PolyMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.dimension, self.cols,
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_shape(other)
        return PolyMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.dimension, self.cols,
        )

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def scale(self, factor) -> "PolyMatrix":
        return self.map(lambda e: e * factor)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.dimension != other.dimension:
            raise DimensionMismatch("Matrices live in different dimensions")
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        d = self.dimension
        entries = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                total = LaurentPoly.zero(d)
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        total = total + a * b
                row.append(total)
            entries.append(row)
        return PolyMatrix(entries, d, other.cols)

    def apply(self, vector: Sequence[LaurentPoly]) -> List[LaurentPoly]:
        column = PolyMatrix.from_columns([list(vector)], self.cols, self.dimension)
        return (self @ column).column(0)

    def _check_shape(self, other: "PolyMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols) or self.dimension != other.dimension:
            raise DimensionMismatch(
                f"Shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    # ── determinant / adjugate ───────────────────────────────────────────────

    def _require_square(self):
        if not self.is_square():
            raise DimensionMismatch(f"Matrix is {self.rows}x{self.cols}, not square")

    @cached_property
    def _minor_table(self) -> dict:
        return {}

    def _minor(self, rows: Tuple[int, ...], cols: Tuple[int, ...]) -> LaurentPoly:
        """Determinant of the submatrix, Laplace expansion along its first row, memoized."""
        if not rows:
            return LaurentPoly.constant(1, self.dimension)
        key = (rows, cols)
        table = self._minor_table
        if key in table:
            return table[key]
        total = LaurentPoly.zero(self.dimension)
        head, rest = rows[0], rows[1:]
        for position, j in enumerate(cols):
            entry = self.entries[head][j]
            if not entry:
                continue
            minor = self._minor(rest, cols[:position] + cols[position + 1:])
            term = entry * minor
            total = total - term if position % 2 else total + term
        table[key] = total
        return total

    @cached_property
    def determinant(self) -> LaurentPoly:
        self._require_square()
        if self.is_constant():
            value = bareiss_determinant([[e.constant_value() for e in row] for row in self.entries])
            return LaurentPoly.constant(value, self.dimension)
        return self._minor(tuple(range(self.rows)), tuple(range(self.cols)))

    @cached_property
    def adjugate(self) -> "PolyMatrix":
        """adj(A) with A @ adj(A) == det(A) * I."""
        self._require_square()
        n = self.rows
        all_rows = tuple(range(n))
        all_cols = tuple(range(n))
        entries = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = self._minor(all_rows[:j] + all_rows[j + 1:], all_cols[:i] + all_cols[i + 1:])
                entries[i][j] = -minor if (i + j) % 2 else minor
        return PolyMatrix(entries, self.dimension, n)

    def det_adjugate(self) -> Tuple[LaurentPoly, "PolyMatrix"]:
        return self.determinant, self.adjugate

    def inverse(self) -> "PolyMatrix":
        """
        Inverse over Q[Λ]; defined when det = c * monomial with c != 0.

        Entries are rational Laurent polynomials.
        """
        self._require_square()
        if self.is_constant():
            values = [[e.constant_value() for e in row] for row in self.entries]
            try:
                inv = rational_inverse(values)
            except ValueError as exc:
                raise ZeroDeterminant("Matrix is singular") from exc
            return PolyMatrix.from_values(inv, self.dimension, self.cols)
        unit = self.determinant.unit_factor()
        if unit is None:
            raise ZeroDeterminant(f"Determinant {self.determinant} is not invertible over Q[Λ]")
        coefficient, exponents = unit
        inverse_det = LaurentPoly.monomial([-e for e in exponents], Fraction(1) / coefficient,
                                           Domain.RATIONAL)
        return self.adjugate.scale(inverse_det)

    # ── protocol ─────────────────────────────────────────────────────────────

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.dimension) == (other.rows, other.cols, other.dimension) \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.dimension,
                     tuple(tuple(row) for row in self.entries)))

    def __repr__(self) -> str:
        return f"PolyMatrix({self})"

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries) + "]"


# ============================================================
# TORUS QUOTIENTS R_ℓ = R / (x_i^ℓ - 1)
# ============================================================

def torus_monomials(dimension: int, ell: int) -> List[Monomial]:
    """Exponents in [0, ℓ)^d in index order (first variable most significant)."""
    return list(itertools.product(range(ell), repeat=dimension))


def torus_index(exponents: Sequence[int], ell: int) -> int:
    index = 0
    for e in exponents:
        index = index * ell + (e % ell)
    return index


class TorusRingElem:
    """An element of R_ℓ, stored with every exponent in [0, ℓ)."""

    __slots__ = ("base", "ell")

    def __init__(self, base: LaurentPoly, ell: int):
        if ell <= 0:
            raise ValueError(f"Torus size must be positive, got {ell}")
        if any(not 0 <= e < ell for m in base.terms for e in m):
            base = base.reduce_mod_torus(ell).base
        self.base = base
        self.ell = ell

    @property
    def dimension(self) -> int:
        return self.base.dimension

    def _check(self, other: "TorusRingElem"):
        if self.ell != other.ell:
            raise DimensionMismatch(f"Torus sizes {self.ell} and {other.ell} differ")

    def __add__(self, other: "TorusRingElem") -> "TorusRingElem":
        self._check(other)
        return TorusRingElem(self.base + other.base, self.ell)

    def __neg__(self) -> "TorusRingElem":
        return TorusRingElem(-self.base, self.ell)

    def __sub__(self, other: "TorusRingElem") -> "TorusRingElem":
        return self + (-other)

    def __mul__(self, other: "TorusRingElem") -> "TorusRingElem":
        self._check(other)
        return (self.base * other.base).reduce_mod_torus(self.ell)

    def involution(self) -> "TorusRingElem":
        return self.base.involution().reduce_mod_torus(self.ell)

    def regular_matrix(self) -> np.ndarray:
        """
        Matrix of multiplication by self on the monomial basis of R_ℓ.

        Entry [idx(m), idx(m')] is the coefficient of x^(m - m').
        """
        monomials = torus_monomials(self.dimension, self.ell)
        size = len(monomials)
        out = np.zeros((size, size), dtype=object)
        for col, source in enumerate(monomials):
            for exponents, c in self.base.terms.items():
                target = tuple((a + b) % self.ell for a, b in zip(source, exponents))
                out[torus_index(target, self.ell), col] += c
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusRingElem):
            return NotImplemented
        return self.ell == other.ell and self.base == other.base

    def __hash__(self):
        return hash((self.ell, self.base))

    def __repr__(self) -> str:
        return f"TorusRingElem({self.base} mod ℓ={self.ell})"


def regular_representation(matrix: PolyMatrix, ell: int) -> np.ndarray:
    """
    Replace every entry by its ℓ-torus circulant block.

    The result is (rows·ℓ^d) x (cols·ℓ^d); row block i, column block j
    holds the regular matrix of entry (i, j).
    """
    block = ell ** matrix.dimension
    out = np.zeros((matrix.rows * block, matrix.cols * block), dtype=object)
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            entry = matrix[i, j]
            if entry:
                out[i * block:(i + 1) * block, j * block:(j + 1) * block] = \
                    entry.reduce_mod_torus(ell).regular_matrix()
    return out


def vector_to_torus(vector: Sequence[LaurentPoly], ell: int) -> List:
    """Coordinates of a column vector over R in Z^{n·ℓ^d} (block per entry)."""
    if not vector:
        return []
    dimension = vector[0].dimension
    block = ell ** dimension
    out = [0] * (len(vector) * block)
    for i, entry in enumerate(vector):
        for exponents, c in entry.terms.items():
            out[i * block + torus_index(exponents, ell)] += c
    return out


def torus_to_vector(coordinates: Sequence, n: int, dimension: int, ell: int) -> List[LaurentPoly]:
    """Inverse of vector_to_torus, with exponents in [0, ℓ)."""
    block = ell ** dimension
    monomials = torus_monomials(dimension, ell)
    out = []
    for i in range(n):
        terms = {monomials[k]: coordinates[i * block + k] for k in range(block)}
        out.append(LaurentPoly(terms, dimension))
    return out
