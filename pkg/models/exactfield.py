"""Exact field arithmetic, dense square matrices and univariate polynomials.

Field elements are plain sympy domain elements (``QQ`` or ``GF(p)``); a
``FieldSpec`` knows how to make, print, divide and order them.  ``Matrix``
and ``Poly`` are immutable wrappers that keep their ``FieldSpec`` next to
the entries so mixed-field arithmetic fails loudly instead of coercing.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

from sympy import GF, QQ, isprime
from sympy.polys.densearith import dup_add, dup_div, dup_mul, dup_sub
from sympy.polys.densetools import dup_eval
from sympy.polys.factortools import dup_factor_list
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import CoercionFailed

from models.errors import (
    DimensionMismatch, DivisionByZero, EmptyPolynomial, FieldMismatch,
    InvalidField, ParseError, SingularMatrix,
)

logger = logging.getLogger(__name__)

# Moduli must fit a machine word.
MAX_MODULUS = 2**63 - 1


class FieldKind(str, Enum):
    rational = "rational"
    prime = "prime"


@lru_cache(maxsize=None)
def _domain(kind: FieldKind, modulus: Optional[int]):
    # One domain object per field; GF(p) elements of equal modulus share a class.
    if kind is FieldKind.rational:
        return QQ
    return GF(modulus)


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind = FieldKind.rational
    modulus: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", FieldKind(self.kind))
        if self.kind is FieldKind.rational:
            if self.modulus is not None:
                raise InvalidField("the rational field carries no modulus")
            return
        if self.modulus is None or not isprime(self.modulus):
            raise InvalidField(f"modulus must be a prime, got {self.modulus}")
        if self.modulus > MAX_MODULUS:
            raise InvalidField(f"modulus {self.modulus} does not fit a machine word")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(FieldKind.rational)

    @classmethod
    def prime(cls, modulus: int) -> "FieldSpec":
        return cls(FieldKind.prime, modulus)

    @classmethod
    def from_label(cls, label: str) -> "FieldSpec":
        """Parse ``rational`` or ``p:<prime>``."""
        text = label.strip().lower()
        if text in ("rational", "q", "qq"):
            return cls.rational()
        if text.startswith("p:"):
            try:
                return cls.prime(int(text[2:]))
            except ValueError:
                pass
        raise InvalidField(f"unknown field label {label!r}; use 'rational' or 'p:<prime>'")

    @property
    def label(self) -> str:
        if self.kind is FieldKind.rational:
            return "rational"
        return f"p:{self.modulus}"

    def __str__(self) -> str:
        return self.label

    @property
    def domain(self):
        return _domain(self.kind, self.modulus)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.rational else self.modulus

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __call__(self, value):
        """Bring ``value`` into the field."""
        domain = self.domain
        if isinstance(value, domain.dtype):
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int):
            return domain(value)
        if isinstance(value, Fraction):
            return self.div(domain(value.numerator), domain(value.denominator))
        try:
            return domain.convert(value)
        except CoercionFailed as exc:
            raise FieldMismatch(f"{value!r} is not an element of {self.label}") from exc

    def parse(self, text: str):
        num_text, slash, den_text = text.strip().partition("/")
        try:
            num = int(num_text)
            den = int(den_text) if slash else 1
        except ValueError as exc:
            raise ParseError(f"not a field value: {text!r}") from exc
        if den == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        if self.kind is FieldKind.rational:
            return QQ(num, den)
        return self.div(self.domain(num), self.domain(den))

    def format(self, value) -> str:
        if self.kind is FieldKind.rational:
            num, den = int(value.numerator), int(value.denominator)
            return str(num) if den == 1 else f"{num}/{den}"
        return str(int(value) % self.modulus)

    def is_zero(self, value) -> bool:
        return value == self.zero

    def div(self, a, b):
        if b == self.zero:
            raise DivisionByZero("division by zero")
        return a / b

    def inv(self, value):
        return self.div(self.one, value)

    def power(self, value, exponent: int):
        if exponent == 0:
            return self.one
        if exponent < 0:
            value, exponent = self.inv(value), -exponent
        return value ** exponent

    def sort_key(self, value):
        if self.kind is FieldKind.rational:
            return Fraction(int(value.numerator), int(value.denominator))
        return int(value) % self.modulus

    def sum(self, values: Iterable):
        total = self.zero
        for value in values:
            total += value
        return total

    def product(self, values: Iterable):
        total = self.one
        for value in values:
            total *= value
        return total


# Matrices

@dataclass(frozen=True)
class Matrix:
    """Dense n x n matrix over an exact field, rows and columns indexed from 0."""

    field: FieldSpec
    rows: Tuple[Tuple[Any, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0 or any(len(row) != n for row in self.rows):
            raise DimensionMismatch("a square matrix with at least one row is required")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        return cls(field, tuple(tuple(field(v) for v in row) for row in rows))

    @classmethod
    def from_function(cls, field: FieldSpec, n: int, entry: Callable[[int, int], Any]) -> "Matrix":
        return cls(field, tuple(tuple(field(entry(i, j)) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, tuple((field.zero,) * n for _ in range(n)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls.diagonal(field, [field.one] * n)

    @classmethod
    def diagonal(cls, field: FieldSpec, values: Sequence) -> "Matrix":
        values = [field(v) for v in values]
        return cls.from_function(field, len(values), lambda i, j: values[i] if i == j else field.zero)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, key: Tuple[int, int]):
        i, j = key
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(row[j] for row in self.rows)

    def _check_compatible(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} matrix combined with {other.field} matrix")
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n}x{self.n} matrix combined with {other.n}x{other.n}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        return Matrix(self.field, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        return Matrix(self.field, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return self.scale(-self.field.one)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def scale(self, factor) -> "Matrix":
        factor = self.field(factor)
        return Matrix(self.field, tuple(tuple(factor * v for v in row) for row in self.rows))

    def shift(self, value) -> "Matrix":
        """Return ``self - value * I``."""
        value = self.field(value)
        return Matrix(self.field, tuple(
            tuple(v - value if i == j else v for j, v in enumerate(row))
            for i, row in enumerate(self.rows)))

    def apply(self, vector: Sequence) -> Tuple[Any, ...]:
        if len(vector) != self.n:
            raise DimensionMismatch("vector length does not match matrix dimension")
        return tuple(self.field.sum(a * b for a, b in zip(row, vector)) for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)))

    def trace(self):
        return self.field.sum(self.rows[i][i] for i in range(self.n))

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(v == zero for row in self.rows for v in row)

    def nonzero_entries(self) -> List[Tuple[int, int]]:
        zero = self.field.zero
        return [(i, j) for i, row in enumerate(self.rows) for j, v in enumerate(row) if v != zero]

    def power(self, exponent: int) -> "Matrix":
        if exponent < 0:
            return self.inverse().power(-exponent)
        result = Matrix.identity(self.field, self.n)
        for _ in range(exponent):
            result = result @ self
        return result

    def inverse(self) -> "Matrix":
        n, field = self.n, self.field
        augmented = [list(row) + [field.one if i == j else field.zero for j in range(n)]
                     for i, row in enumerate(self.rows)]
        reduced, pivots = row_reduce(field, augmented)
        if pivots[:n] != tuple(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix(field, tuple(tuple(row[n:]) for row in reduced))

    def rank(self) -> int:
        return len(row_reduce(self.field, self.rows)[1])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    a._check_compatible(b)
    field = a.field
    columns = list(zip(*b.rows))
    return Matrix(field, tuple(
        tuple(field.sum(x * y for x, y in zip(row, col)) for col in columns)
        for row in a.rows))


def row_reduce(field: FieldSpec, rows: Sequence[Sequence]) -> Tuple[List[List[Any]], Tuple[int, ...]]:
    """Gauss-Jordan elimination with the first nonzero entry as pivot.

    Works on any rectangular array; returns the reduced rows and the pivot
    columns.
    """
    work = [list(row) for row in rows]
    if not work:
        return work, ()
    zero = field.zero
    pivots = []
    top = 0
    for col in range(len(work[0])):
        pivot = next((r for r in range(top, len(work)) if work[r][col] != zero), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        scale = field.inv(work[top][col])
        work[top] = [v * scale for v in work[top]]
        for r in range(len(work)):
            factor = work[r][col]
            if r != top and factor != zero:
                work[r] = [a - factor * b for a, b in zip(work[r], work[top])]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work, tuple(pivots)


def rank_of(field: FieldSpec, rows: Sequence[Sequence]) -> int:
    return len(row_reduce(field, rows)[1])


def solve_linear(field: FieldSpec, rows: Sequence[Sequence], rhs: Sequence) -> Optional[Tuple[Any, ...]]:
    """One exact solution of ``rows . x = rhs`` with free variables at zero.

    Returns None when the system is inconsistent.
    """
    width = len(rows[0])
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    reduced, pivots = row_reduce(field, augmented)
    if width in pivots:
        return None
    solution = [field.zero] * width
    for row, col in zip(reduced, pivots):
        solution[col] = row[-1]
    return tuple(solution)


# Polynomials

@dataclass(frozen=True)
class Poly:
    """Univariate polynomial in lambda, coefficients lowest degree first."""

    field: FieldSpec
    coeffs: Tuple[Any, ...] = ()

    def __post_init__(self):
        coeffs = [self.field(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == self.field.zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, field: FieldSpec, value) -> "Poly":
        return cls(field, (value,))

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable) -> "Poly":
        result = cls.constant(field, field.one)
        for root in roots:
            result = result * cls(field, (-field(root), field.one))
        return result

    @classmethod
    def _from_dup(cls, field: FieldSpec, dense: Sequence) -> "Poly":
        return cls(field, tuple(reversed(dense)))

    def _dup(self) -> List[Any]:
        return list(reversed(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} polynomial combined with {other.field} polynomial")
            return other
        return Poly.constant(self.field, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        return Poly._from_dup(self.field, dup_add(self._dup(), other._dup(), self.field.domain))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        return Poly._from_dup(self.field, dup_sub(self._dup(), other._dup(), self.field.domain))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            factor = self.field(other)
            return Poly(self.field, tuple(factor * c for c in self.coeffs))
        other = self._coerce(other)
        return Poly._from_dup(self.field, dup_mul(self._dup(), other._dup(), self.field.domain))

    __rmul__ = __mul__

    def __call__(self, value):
        return dup_eval(self._dup(), self.field(value), self.field.domain)

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        quotient, remainder = dup_div(self._dup(), other._dup(), self.field.domain)
        return Poly._from_dup(self.field, quotient), Poly._from_dup(self.field, remainder)

    def monic(self) -> "Poly":
        if self.is_zero:
            raise EmptyPolynomial("the zero polynomial has no leading coefficient")
        return self * self.field.inv(self.leading)

    def evaluate_matrix(self, m: Matrix) -> Matrix:
        """Horner evaluation at a square matrix."""
        if m.field != self.field:
            raise FieldMismatch(f"{self.field} polynomial evaluated at a {m.field} matrix")
        result = Matrix.zeros(self.field, m.n)
        for c in reversed(self.coeffs):
            result = (result @ m).shift(-c)
        return result


def char_poly(m: Matrix) -> Poly:
    """Monic det(lambda I - m) via sympy's division-free Berkowitz kernel."""
    dense = DomainMatrix([list(row) for row in m.rows], (m.n, m.n), m.field.domain)
    return Poly._from_dup(m.field, dense.charpoly())


def field_roots(p: Poly, spec: Optional[FieldSpec] = None) -> List[Any]:
    """Roots of ``p`` lying in the field, repeated by multiplicity, in sort order.

    Only linear factors are read off the factorization; a polynomial that
    does not split yields fewer roots than its degree.
    """
    field = p.field
    if spec is not None and spec != field:
        raise FieldMismatch(f"{field} polynomial searched for roots in {spec}")
    if p.is_zero:
        raise EmptyPolynomial("every element is a root of the zero polynomial")
    if p.degree == 0:
        return []
    _, factors = dup_factor_list(p._dup(), field.domain)
    roots = []
    for dense, multiplicity in factors:
        factor = Poly._from_dup(field, dense)
        if factor.degree == 1:
            roots.extend([-factor.monic().coeffs[0]] * multiplicity)
    roots.sort(key=field.sort_key)
    rest, _ = p.divmod(Poly.from_roots(field, roots))
    logger.debug("found %d of %d roots over %s; degree %d cofactor left", len(roots), p.degree, field, rest.degree)
    return roots


# Quadratic extension F[q] with q^2 = beta q - 1

class ExtElement:
    """``a + b q`` where q is a root of lambda^2 - beta lambda + 1.

    Only meaningful when that polynomial has no root in the base field, so
    that F[q] is a field and every nonzero element has nonzero norm.
    """

    __slots__ = ("field", "beta", "a", "b")

    def __init__(self, field: FieldSpec, beta, a, b):
        self.field = field
        self.beta = field(beta)
        self.a = field(a)
        self.b = field(b)

    @classmethod
    def generator(cls, field: FieldSpec, beta) -> "ExtElement":
        return cls(field, beta, field.zero, field.one)

    def _lift(self, other) -> "ExtElement":
        if isinstance(other, ExtElement):
            if other.field != self.field or other.beta != self.beta:
                raise FieldMismatch("elements of different quadratic extensions")
            return other
        return ExtElement(self.field, self.beta, other, self.field.zero)

    def __add__(self, other):
        other = self._lift(other)
        return ExtElement(self.field, self.beta, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, self.beta, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        bb = self.b * other.b
        return ExtElement(self.field, self.beta,
                          self.a * other.a - bb,
                          self.a * other.b + self.b * other.a + bb * self.beta)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a + self.a * self.b * self.beta + self.b * self.b

    def inverse(self) -> "ExtElement":
        norm = self.norm()
        return ExtElement(self.field, self.beta,
                          self.field.div(self.a + self.b * self.beta, norm),
                          self.field.div(-self.b, norm))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, exponent: int):
        base = self if exponent >= 0 else self.inverse()
        result = self._lift(self.field.one)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        try:
            other = self._lift(other)
        except (FieldMismatch, DivisionByZero):
            return False
        return self.a == other.a and self.b == other.b

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.field, self.beta, self.a, self.b))

    @property
    def in_base_field(self) -> bool:
        return self.b == self.field.zero

    def to_base(self):
        if not self.in_base_field:
            raise FieldMismatch("element does not lie in the base field")
        return self.a

    def format(self) -> str:
        f = self.field.format
        return f"{f(self.a)} + ({f(self.b)})*q"

    def __repr__(self) -> str:
        return f"ExtElement({self.format()}, q^2 = {self.field.format(self.beta)}q - 1)"
