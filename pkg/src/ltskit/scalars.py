"""Exact scalar rings.

Everything downstream computes over the rationals QQ or over a quadratic
extension A_mu = QQ[x]/(x^2 - mu).  The dual numbers are the case mu = 0
(x is traditionally written eps there), the Gaussian-like case is mu = -1,
the split case mu = 1.  On top of A_mu sits the four-dimensional algebra
of "degenerate quaternions": 2x2 matrices (a b; b~ a~) over A_mu, where
a~ denotes conjugation (negation of the radical coordinate).

All values are immutable; arithmetic is exact (``fractions.Fraction``
underneath, no floating point).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


class NotAUnit(ArithmeticError):
    """Inversion was requested for a ring element without an inverse."""


class RingMismatch(ValueError):
    """Operands live in different scalar rings."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


class ExtElement:
    """Element base + x*radical of A_mu = QQ[x]/(x^2 - mu).

    Stored as the coordinate pair (base, radical); multiplication uses
    x^2 = mu exactly.  Conjugation negates the radical coordinate.
    """

    __slots__ = ("base", "radical", "mu")

    def __init__(self, base, radical=0, mu=0):
        object.__setattr__(self, "base", as_fraction(base))
        object.__setattr__(self, "radical", as_fraction(radical))
        object.__setattr__(self, "mu", as_fraction(mu))

    def __setattr__(self, *_):
        raise AttributeError("ExtElement is immutable")

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.mu != self.mu:
                raise RingMismatch(f"mixing A_{self.mu} with A_{other.mu}")
            return other
        return ExtElement(as_fraction(other), 0, self.mu)

    def __add__(self, other):
        o = self._coerce(other)
        return ExtElement(self.base + o.base, self.radical + o.radical, self.mu)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return ExtElement(self.base - o.base, self.radical - o.radical, self.mu)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return ExtElement(
            self.base * o.base + self.mu * self.radical * o.radical,
            self.base * o.radical + self.radical * o.base,
            self.mu,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return ExtElement(-self.base, -self.radical, self.mu)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def conjugate(self):
        return ExtElement(self.base, -self.radical, self.mu)

    def norm(self) -> Fraction:
        # N(a) = a * conj(a), rational because the radical parts cancel.
        return self.base * self.base - self.mu * self.radical * self.radical

    def is_unit(self) -> bool:
        return self.norm() != 0

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise NotAUnit(f"{self} has norm 0 in A_{self.mu}")
        return ExtElement(self.base / n, -self.radical / n, self.mu)

    def is_zero(self) -> bool:
        return self.base == 0 and self.radical == 0

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return self.mu == other.mu and self.base == other.base and self.radical == other.radical
        if isinstance(other, (int, Fraction)):
            return self.radical == 0 and self.base == other
        return NotImplemented

    def __hash__(self):
        if self.radical == 0:
            return hash(self.base)
        return hash((self.base, self.radical, self.mu))

    def __repr__(self):
        return f"ExtElement({self.base}, {self.radical}, mu={self.mu})"

    def __str__(self):
        sym = "eps" if self.mu == 0 else "x"
        if self.radical == 0:
            return str(self.base)
        if self.base == 0:
            return f"{self.radical}*{sym}"
        return f"{self.base} + {self.radical}*{sym}"


class RationalField:
    """The field QQ; elements are plain ``Fraction`` values."""

    is_field = True
    name = "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, value):
        if isinstance(value, ExtElement):
            if value.radical != 0:
                raise RingMismatch("element has a radical part, not rational")
            return value.base
        return as_fraction(value)

    def conjugate(self, a):
        return a

    def is_unit(self, a) -> bool:
        return a != 0

    def inverse(self, a):
        if a == 0:
            raise NotAUnit("0 is not invertible")
        return 1 / as_fraction(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class QuadraticExtension:
    """The ring A_mu = QQ[x]/(x^2 - mu)."""

    def __init__(self, mu):
        self.mu = as_fraction(mu)

    @property
    def is_field(self) -> bool:
        # x^2 - mu is irreducible over QQ exactly when mu is not a square.
        return not is_rational_square(self.mu)

    @property
    def name(self) -> str:
        return f"A_{self.mu}"

    def zero(self):
        return ExtElement(0, 0, self.mu)

    def one(self):
        return ExtElement(1, 0, self.mu)

    def gen(self):
        return ExtElement(0, 1, self.mu)

    def coerce(self, value):
        if isinstance(value, ExtElement):
            if value.mu != self.mu:
                raise RingMismatch(f"element of A_{value.mu} used in A_{self.mu}")
            return value
        return ExtElement(as_fraction(value), 0, self.mu)

    def conjugate(self, a):
        return self.coerce(a).conjugate()

    def is_unit(self, a) -> bool:
        return self.coerce(a).is_unit()

    def inverse(self, a):
        return self.coerce(a).inverse()

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and other.mu == self.mu

    def __hash__(self):
        return hash(("A", self.mu))

    def __repr__(self):
        return self.name


QQ = RationalField()


def dual_numbers() -> QuadraticExtension:
    return QuadraticExtension(0)


class Matrix:
    """Dense matrix over QQ or A_mu (row-major, immutable).

    This is the construction-level matrix type: small, exact, ring-generic.
    The heavy rational tensor arithmetic lives in :mod:`ltskit.exactlinalg`.
    """

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows, cols, entries, ring=QQ):
        entries = tuple(ring.coerce(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, data, ring=QQ):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        flat = [e for row in data for e in row]
        return cls(rows, cols, flat, ring)

    @classmethod
    def zeros(cls, rows, cols, ring=QQ):
        return cls(rows, cols, [ring.zero()] * (rows * cols), ring)

    @classmethod
    def identity(cls, n, ring=QQ):
        return cls(n, n, [ring.one() if i == j else ring.zero() for i in range(n) for j in range(n)], ring)

    @classmethod
    def diagonal(cls, diag, ring=QQ):
        n = len(diag)
        ents = [diag[i] if i == j else ring.zero() for i in range(n) for j in range(n)]
        return cls(n, n, ents, ring)

    @classmethod
    def from_blocks(cls, blocks):
        """Assemble from a 2D grid of Matrix blocks with matching shapes."""
        ring = blocks[0][0].ring
        data = []
        for brow in blocks:
            height = brow[0].rows
            for r in range(height):
                row = []
                for blk in brow:
                    row.extend(blk[r, c] for c in range(blk.cols))
                data.append(row)
        return cls.from_rows(data, ring)

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.ring)

    def __sub__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.ring)

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.entries], self.ring)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = []
        for i in range(self.rows):
            mine = self.row(i)
            for j in range(other.cols):
                acc = self.ring.zero()
                for k in range(self.cols):
                    acc = acc + mine[k] * other[k, j]
                out.append(acc)
        return Matrix(self.rows, other.cols, out, self.ring)

    def __mul__(self, scalar):
        s = self.ring.coerce(scalar)
        return Matrix(self.rows, self.cols, [a * s for a in self.entries], self.ring)

    __rmul__ = __mul__

    def scale(self, scalar):
        return self * scalar

    def transpose(self):
        ents = [self[j, i] for i in range(self.cols) for j in range(self.rows)]
        return Matrix(self.cols, self.rows, ents, self.ring)

    def conjugate(self):
        return Matrix(self.rows, self.cols, [self.ring.conjugate(a) for a in self.entries], self.ring)

    def commutator(self, other):
        return self @ other - other @ self

    def trace(self):
        acc = self.ring.zero()
        for i in range(min(self.rows, self.cols)):
            acc = acc + self[i, i]
        return acc

    def is_zero(self) -> bool:
        zero = self.ring.zero()
        return all(e == zero for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(self[i, j]) for j in range(self.cols)) for i in range(self.rows))
        return f"Matrix[{body}]"


@dataclass(frozen=True)
class DegenerateQuaternions:
    """The algebra D_mu of 2x2 matrices (a b; b~ a~) over A_mu.

    Membership is the predicate F X F = conj(X) with F the flip
    antidiag(1, 1).  The distinguished involution tau is conjugation by
    diag(1, -1); its fixed ring is the diagonal subring, a copy of A_mu.
    The structure map f sends X to F*X and anticommutes with tau.

    Basis over QQ (x denotes the radical generator of A_mu):

        e0 = (1 0; 0 1)    e1 = (x 0; 0 -x)
        e2 = (0 1; 1 0)    e3 = (0 x; -x 0)
    """

    mu: Fraction
    ring: QuadraticExtension
    basis: tuple
    product_table: tuple

    def flip(self) -> Matrix:
        A = self.ring
        return Matrix.from_rows([[A.zero(), A.one()], [A.one(), A.zero()]], A)

    def signature(self) -> Matrix:
        A = self.ring
        return Matrix.from_rows([[A.one(), A.zero()], [A.zero(), -A.one()]], A)

    def contains(self, X: Matrix) -> bool:
        F = self.flip()
        return F @ X @ F == X.conjugate()

    def tau(self, X: Matrix) -> Matrix:
        I11 = self.signature()
        return I11 @ X @ I11

    def structure_map(self, X: Matrix) -> Matrix:
        return self.flip() @ X

    def coords(self, X: Matrix):
        """Coordinates of a member in the basis (e0, e1, e2, e3)."""
        if not self.contains(X):
            raise ValueError("matrix is not a degenerate quaternion")
        a, b = X[0, 0], X[0, 1]
        return (a.base, a.radical, b.base, b.radical)

    def from_coords(self, coords) -> Matrix:
        acc = Matrix.zeros(2, 2, self.ring)
        for c, e in zip(coords, self.basis):
            acc = acc + e * c
        return acc

    def is_fixed_by_tau(self, X: Matrix) -> bool:
        return self.tau(X) == X

    def diagonal_embedding(self, a: ExtElement) -> Matrix:
        """The isomorphism A_mu -> D^tau, a |-> diag(a, conj(a))."""
        A = self.ring
        a = A.coerce(a)
        return Matrix.from_rows([[a, A.zero()], [A.zero(), a.conjugate()]], A)


def build_degenerate_quaternions(mu=0) -> DegenerateQuaternions:
    """Construct D_mu with its basis and product table, verifying the algebra axioms.

    Checks performed exhaustively on the four-element basis (enough by
    bilinearity): closure under the product, membership predicate,
    associativity, tau an involutive automorphism whose fixed ring is the
    diagonal subring, and anticommutation of tau with the structure map.
    """
    mu = as_fraction(mu)
    A = QuadraticExtension(mu)
    x = A.gen()
    one, zero = A.one(), A.zero()
    basis = (
        Matrix.from_rows([[one, zero], [zero, one]], A),
        Matrix.from_rows([[x, zero], [zero, -x]], A),
        Matrix.from_rows([[zero, one], [one, zero]], A),
        Matrix.from_rows([[zero, x], [-x, zero]], A),
    )
    D = DegenerateQuaternions(mu=mu, ring=A, basis=basis, product_table=())

    table = []
    for ei in basis:
        row = []
        for ej in basis:
            prod = ei @ ej
            if not D.contains(prod):
                raise AssertionError("basis product escapes the membership predicate")
            row.append(D.coords(prod))
        table.append(tuple(row))
    D = DegenerateQuaternions(mu=mu, ring=A, basis=basis, product_table=tuple(table))

    for ei in basis:
        for ej in basis:
            for ek in basis:
                if (ei @ ej) @ ek != ei @ (ej @ ek):
                    raise AssertionError("associativity fails on basis triple")
    for ei in basis:
        if D.tau(D.tau(ei)) != ei:
            raise AssertionError("tau is not involutive")
        if D.tau(D.structure_map(ei)) != -D.structure_map(D.tau(ei)):
            raise AssertionError("tau does not anticommute with the structure map")
        for ej in basis:
            if D.tau(ei @ ej) != D.tau(ei) @ D.tau(ej):
                raise AssertionError("tau is not multiplicative")
    # Fixed ring of tau = diagonal subring, isomorphic to A_mu.
    for coords in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        X = D.from_coords(coords)
        diag = coords[2] == 0 and coords[3] == 0
        if D.is_fixed_by_tau(X) != diag:
            raise AssertionError("fixed ring of tau is not the diagonal subring")
    for a in (one, x, x + one):
        for b in (one, x, x - one):
            lhs = D.diagonal_embedding(a * b)
            rhs = D.diagonal_embedding(a) @ D.diagonal_embedding(b)
            if lhs != rhs:
                raise AssertionError("diagonal embedding is not multiplicative")
    return D
