"""Dense exact linear algebra over the rationals.

Two layers:

* ``RatTensor`` -- an n-way tensor of rationals stored as an integer numpy
  array plus a common positive denominator.  All tensor contractions run
  through :func:`exact_einsum`, which uses int64 arithmetic when a safe
  a-priori bound says it cannot overflow and falls back to Python big
  integers (object dtype) otherwise.  No floating point enters any value
  that is returned; floats are only used to compute conservative overflow
  bounds on nonnegative data.

* Gaussian elimination over ``Fraction`` (reference path) plus a certified
  modular fast path for large integer systems: eliminate modulo a few
  word-sized primes, reconstruct rational results by CRT + rational
  reconstruction, then *verify the claimed result exactly*.  A successful
  elimination mod p certifies the pivot minor is invertible over Q (rank
  lower bound), and the exactly verified null vectors certify the nullity
  (rank upper bound), so every returned answer is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import numpy as np

from .scalars import QQ, Matrix, RingMismatch, as_fraction


class UnsupportedRing(ValueError):
    """Elimination was requested over a ring it does not support."""


_INT64_SAFE = 2 ** 61


def _as_int_array(values, force_object=False):
    arr = np.asarray(values, dtype=object)
    if force_object:
        return arr
    try:
        return arr.astype(np.int64)
    except (OverflowError, TypeError):
        return arr


def _gcd_reduce(arr) -> int:
    flat = arr.ravel()
    if flat.size == 0:
        return 0
    if flat.dtype == object:
        return int(reduce(math.gcd, (abs(int(v)) for v in flat), 0))
    return int(np.gcd.reduce(np.abs(flat)))


class RatTensor:
    """Immutable rational tensor: integer entries over a common denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, normalize=True):
        num = _as_int_array(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("denominator 0")
        if den < 0:
            num, den = -num, -den
        if normalize and den != 1:
            g = math.gcd(_gcd_reduce(num), den)
            if g > 1:
                if num.dtype == object:
                    num = np.array([int(v) // g for v in num.ravel()], dtype=object).reshape(num.shape)
                else:
                    num = num // g
                den //= g
        if num.dtype == object:
            try:
                num = num.astype(np.int64)
            except (OverflowError, TypeError):
                pass
        num.setflags(write=False)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RatTensor is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, shape):
        return cls(np.zeros(shape, dtype=np.int64), 1, normalize=False)

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=np.int64), 1, normalize=False)

    @classmethod
    def from_fractions(cls, data, shape=None):
        arr = np.asarray(data, dtype=object)
        if shape is not None:
            arr = arr.reshape(shape)
        fracs = [as_fraction(v) for v in arr.ravel()]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fracs]
        return cls(np.array(nums, dtype=object).reshape(arr.shape), den)

    @classmethod
    def from_sparse(cls, shape, entries):
        """Build from sparse entries ``(*index, value)`` with exact values."""
        arr = np.zeros(shape, dtype=object)
        arr[...] = Fraction(0)
        for entry in entries:
            *idx, val = entry
            idx = tuple(int(i) for i in idx)
            for axis, (i, n) in enumerate(zip(idx, shape)):
                if not 0 <= i < n:
                    raise IndexError(f"index {i} out of range for axis {axis} (dim {n})")
            arr[idx] = arr[idx] + as_fraction(val)
        return cls.from_fractions(arr)

    # -- basic queries -----------------------------------------------------

    @property
    def shape(self):
        return self.num.shape

    @property
    def ndim(self):
        return self.num.ndim

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def max_abs(self) -> int:
        if self.num.size == 0:
            return 0
        if self.num.dtype == object:
            return max(abs(int(v)) for v in self.num.ravel())
        return int(np.abs(self.num).max())

    def first_nonzero(self):
        idx = np.argwhere(np.asarray(self.num != 0))
        return tuple(int(i) for i in idx[0]) if len(idx) else None

    def fraction(self, *index) -> Fraction:
        return Fraction(int(self.num[tuple(index)]), self.den)

    def fractions(self):
        """Dense object array of Fractions."""
        out = np.empty(self.shape, dtype=object)
        flat = out.reshape(-1)
        for i, v in enumerate(self.num.ravel()):
            flat[i] = Fraction(int(v), self.den)
        return out

    def tolist(self):
        return self.fractions().tolist()

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other):
        if not isinstance(other, RatTensor):
            raise TypeError("expected RatTensor")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        lcm = self.den * other.den // math.gcd(self.den, other.den)
        return lcm, lcm // self.den, lcm // other.den

    def _scaled_num(self, factor):
        if factor == 1:
            return self.num
        bound = float(self.max_abs()) * float(factor)
        if self.num.dtype == object or bound >= _INT64_SAFE:
            return np.array([int(v) * factor for v in self.num.ravel()], dtype=object).reshape(self.shape)
        return self.num * np.int64(factor)

    def __add__(self, other):
        lcm, fa, fb = self._aligned(other)
        a, b = self._scaled_num(fa), other._scaled_num(fb)
        if a.dtype == object or b.dtype == object:
            a, b = a.astype(object), b.astype(object)
        return RatTensor(a + b, lcm)

    def __sub__(self, other):
        lcm, fa, fb = self._aligned(other)
        a, b = self._scaled_num(fa), other._scaled_num(fb)
        if a.dtype == object or b.dtype == object:
            a, b = a.astype(object), b.astype(object)
        return RatTensor(a - b, lcm)

    def __neg__(self):
        return RatTensor(-self.num, self.den, normalize=False)

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return RatTensor(self._scaled_num(s.numerator), self.den * s.denominator)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RatTensor):
            return NotImplemented
        if self.shape != other.shape or self.den != other.den:
            return False
        return bool(np.all(np.asarray(self.num == other.num)))

    def __hash__(self):
        return hash((self.shape, self.den, tuple(int(v) for v in self.num.ravel())))

    # -- shape manipulation -------------------------------------------------

    def reshape(self, shape):
        return RatTensor(self.num.reshape(shape), self.den, normalize=False)

    def transpose(self, axes=None):
        return RatTensor(np.transpose(self.num, axes), self.den, normalize=False)

    def swapaxes(self, a, b):
        return RatTensor(np.swapaxes(self.num, a, b), self.den, normalize=False)

    def __getitem__(self, key):
        view = self.num[key]
        if np.isscalar(view) or view.ndim == 0:
            return Fraction(int(view), self.den)
        return RatTensor(np.array(view), self.den)

    def __repr__(self):
        return f"RatTensor(shape={self.shape}, den={self.den})"


def _bound_einsum(spec, arrays) -> float:
    floats = []
    for a in arrays:
        f = np.abs(a).astype(np.float64) if a.dtype != object else np.array(
            [abs(float(int(v))) for v in a.ravel()], dtype=np.float64
        ).reshape(a.shape)
        floats.append(f)
    out = np.einsum(spec, *floats)
    return float(out.max()) * 1.001 if out.size else 0.0


def exact_einsum(spec, *tensors) -> RatTensor:
    """Exact einsum over RatTensors (int64 when provably safe, else bignum)."""
    nums = [t.num for t in tensors]
    den = 1
    for t in tensors:
        den *= t.den
    bound = _bound_einsum(spec, nums)
    if bound < _INT64_SAFE and all(a.dtype != object for a in nums):
        out = np.einsum(spec, *nums)
    else:
        out = np.einsum(spec, *[a.astype(object) for a in nums])
    out = np.asarray(out)
    return RatTensor(out, den)


def tensor_from_matrix(mat: Matrix) -> RatTensor:
    if mat.ring != QQ:
        raise UnsupportedRing("only rational matrices convert to RatTensor")
    return RatTensor.from_fractions(np.array(mat.entries, dtype=object).reshape(mat.rows, mat.cols))


def matrix_from_tensor(t: RatTensor) -> Matrix:
    if t.ndim != 2:
        raise ValueError("rank-2 tensor expected")
    return Matrix(t.shape[0], t.shape[1], list(t.fractions().ravel()), QQ)


# ---------------------------------------------------------------------------
# Fraction-level Gaussian elimination
# ---------------------------------------------------------------------------


def _to_fraction_rows(M):
    if isinstance(M, RatTensor):
        if M.ndim != 2:
            raise ValueError("rank-2 tensor expected")
        return [list(row) for row in M.fractions()]
    if isinstance(M, Matrix):
        if M.ring != QQ:
            raise UnsupportedRing(
                "elimination needs a field; flatten A_mu-linear systems to rational form first"
            )
        return [[as_fraction(v) for v in M.row(i)] for i in range(M.rows)]
    return [[as_fraction(v) for v in row] for row in M]


def rref_fraction(rows):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


class TrackedSpan:
    """Incrementally maintained reduced echelon basis with combo tracking.

    Each basis row is stored together with the coefficients expressing it
    in terms of the vectors that were ever offered via :meth:`add` (indexed
    by insertion order of the *offered* vectors, not of the accepted ones).
    """

    def __init__(self, ambient):
        self.ambient = ambient
        self.rows = []
        self.combos = []
        self.pivots = []
        self._offered = 0

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return (residual, coeffs) with vec = sum coeffs[i]*rows[i] + residual."""
        v = [as_fraction(x) for x in vec]
        coeffs = [Fraction(0)] * len(self.rows)
        for k, (row, piv) in enumerate(zip(self.rows, self.pivots)):
            c = v[piv]
            if c:
                coeffs[k] = c
                v = [a - c * b for a, b in zip(v, row)]
        return v, coeffs

    def contains(self, vec) -> bool:
        residual, _ = self.reduce(vec)
        return all(x == 0 for x in residual)

    def add(self, vec, combo=None) -> bool:
        """Insert vec; returns True if it enlarged the span."""
        tag = self._offered
        self._offered += 1
        residual, coeffs = self.reduce(vec)
        piv = next((i for i, x in enumerate(residual) if x != 0), None)
        if combo is None:
            combo = {tag: Fraction(1)}
        rescombo = dict(combo)
        for k, c in enumerate(coeffs):
            if c:
                for t, w in self.combos[k].items():
                    rescombo[t] = rescombo.get(t, Fraction(0)) - c * w
        if piv is None:
            return False
        inv = 1 / residual[piv]
        residual = [x * inv for x in residual]
        rescombo = {t: w * inv for t, w in rescombo.items() if w * inv != 0}
        # Keep the reduced echelon invariant: clear this pivot column above.
        for k in range(len(self.rows)):
            f = self.rows[k][piv]
            if f:
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], residual)]
                for t, w in rescombo.items():
                    self.combos[k][t] = self.combos[k].get(t, Fraction(0)) - f * w
                self.combos[k] = {t: w for t, w in self.combos[k].items() if w != 0}
        pos = next((i for i, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.rows.insert(pos, residual)
        self.combos.insert(pos, rescombo)
        self.pivots.insert(pos, piv)
        return True

    def coefficients(self, vec):
        """Coordinates of vec in the current basis; None if not in the span."""
        residual, coeffs = self.reduce(vec)
        if any(x != 0 for x in residual):
            return None
        return coeffs


class LinearSubspace:
    """Subspace of Q^n, canonically represented by its reduced echelon basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient, basis, pivots):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", tuple(tuple(r) for r in basis))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, *_):
        raise AttributeError("LinearSubspace is immutable")

    @classmethod
    def from_vectors(cls, vectors, ambient=None):
        vectors = [list(map(as_fraction, v)) for v in vectors]
        if ambient is None:
            if not vectors:
                raise ValueError("ambient dimension needed for empty generating set")
            ambient = len(vectors[0])
        rows, pivots = rref_fraction(vectors)
        return cls(ambient, rows, pivots)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, [], [])

    @classmethod
    def full(cls, ambient):
        eye = [[Fraction(int(i == j)) for j in range(ambient)] for i in range(ambient)]
        return cls(ambient, eye, list(range(ambient)))

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, vec):
        v = [as_fraction(x) for x in vec]
        if len(v) != self.ambient:
            raise ValueError("vector has wrong length")
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def coefficients(self, vec):
        v = [as_fraction(x) for x in vec]
        coeffs = []
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            coeffs.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        return coeffs

    def contains_subspace(self, other) -> bool:
        return all(self.contains(row) for row in other.basis)

    def sum_(self, other):
        if other.ambient != self.ambient:
            raise ValueError("ambient mismatch")
        return LinearSubspace.from_vectors(list(self.basis) + list(other.basis), self.ambient)

    def intersect(self, other):
        # x in rowspace(B) iff N x = 0 for N a kernel basis of the map
        # v |-> B-coordinates residual; concretely rowspace(B)^perp = ker(B .);
        # so U cap V = ker(stack(ker-basis(U), ker-basis(V))).
        nu = nullspace(list(self.basis) if self.basis else [[Fraction(0)] * self.ambient])
        nv = nullspace(list(other.basis) if other.basis else [[Fraction(0)] * self.ambient])
        stacked = list(nu.basis) + list(nv.basis)
        if not stacked:
            return LinearSubspace.full(self.ambient)
        return nullspace(stacked)

    def __eq__(self, other):
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"LinearSubspace(dim {self.dim} of Q^{self.ambient})"


# ---------------------------------------------------------------------------
# Modular fast path (certified)
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below_2_26(count):
    primes, n = [], 2 ** 26 - 1
    while len(primes) < count:
        if _is_prime(n):
            primes.append(n)
        n -= 2
    return primes


_PRIMES = _primes_below_2_26(16)


def _rref_mod(A, p):
    """In-place style RREF of int64 matrix A modulo p.  Vectorized numpy.

    Returns (R, pivot_cols).  All arithmetic is exact modular integer
    arithmetic; products stay below 2^52 because p < 2^26.
    """
    R = np.array(A % p, dtype=np.int64)
    nrows, ncols = R.shape
    pivots = []
    rank = 0
    for col in range(ncols):
        block = R[rank:, col]
        nz = np.nonzero(block)[0]
        if len(nz) == 0:
            continue
        sel = rank + int(nz[0])
        if sel != rank:
            R[[rank, sel]] = R[[sel, rank]]
        inv = pow(int(R[rank, col]), -1, p)
        R[rank] = (R[rank] * inv) % p
        factors = R[:, col].copy()
        factors[rank] = 0
        R -= np.outer(factors, R[rank])
        R %= p
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return R[:rank], pivots


def _crt_pair(r1, m1, r2, m2):
    inv = pow(m1 % m2, -1, m2)
    t = ((r2 - r1) * inv) % m2
    return r1 + m1 * t, m1 * m2


def _rational_reconstruct(u: int, m: int):
    """Find p/q = u (mod m) with |p|, q <= sqrt(m/2), or None."""
    u %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, u
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    num, den = r1, t1
    if den < 0:
        num, den = -num, -den
    if math.gcd(num, den) != 1:
        return None
    return Fraction(num, den)


def _int_rows(M):
    """Scale each Fraction row to integers (row scaling keeps the nullspace)."""
    rows = _to_fraction_rows(M)
    out = []
    for row in rows:
        den = 1
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def _exact_matvec_zero(int_rows, vec_fracs) -> bool:
    den = 1
    for v in vec_fracs:
        den = den * v.denominator // math.gcd(den, v.denominator)
    iv = [int(v * den) for v in vec_fracs]
    for row in int_rows:
        if sum(a * b for a, b in zip(row, iv)):
            return False
    return True


def _nullspace_modular(int_rows, attempts=3):
    """Certified modular nullspace of an integer matrix (rows as lists).

    The elimination mod p produces pivot columns whose pivot minor is
    invertible mod p, hence invertible over Q: rank >= r.  Reconstructed
    null vectors are verified exactly: nullity >= ncols - r.  Together the
    rank equals r and the verified vectors form a complete basis.
    """
    ncols = len(int_rows[0])
    A = np.array(int_rows, dtype=object)
    used = 0
    for attempt in range(attempts):
        nprimes = 2 + 2 * attempt
        primes = _PRIMES[used : used + nprimes]
        used += nprimes
        rrefs = []
        pivset = None
        ok = True
        for p in primes:
            Ap = np.array([[v % p for v in row] for row in int_rows], dtype=np.int64)
            R, piv = _rref_mod(Ap, p)
            if pivset is None:
                pivset = piv
            elif piv != pivset:
                ok = False
                break
            rrefs.append((R, p))
        if not ok or pivset is None:
            continue
        free = [c for c in range(ncols) if c not in pivset]
        # CRT-combine the rref entries, then rationally reconstruct.
        rank = len(pivset)
        combined = np.zeros((rank, ncols), dtype=object)
        modulus = 1
        first = True
        for R, p in rrefs:
            if first:
                combined[...] = R.astype(object)
                modulus = p
                first = False
            else:
                for i in range(rank):
                    for j in range(ncols):
                        r, m = _crt_pair(int(combined[i, j]), modulus, int(R[i, j]), p)
                        combined[i, j] = r
                modulus *= p
        basis = []
        good = True
        for f in free:
            vec = [Fraction(0)] * ncols
            vec[f] = Fraction(1)
            for i, c in enumerate(pivset):
                q = _rational_reconstruct(int(combined[i, f]), modulus)
                if q is None:
                    good = False
                    break
                vec[c] = -q
            if not good:
                break
            basis.append(vec)
        if not good:
            continue
        if all(_exact_matvec_zero(int_rows, v) for v in basis):
            return basis, len(pivset)
    return None


_FRACTION_ELIM_BUDGET = 3_000_000


def nullspace(M) -> LinearSubspace:
    """Canonical basis of {v : M v = 0} over Q.

    Small systems run plain Fraction elimination; large ones go through the
    certified modular path, with Fraction elimination as the fallback.
    Raises :class:`UnsupportedRing` for matrices over a non-field ring.
    """
    rows = _to_fraction_rows(M)
    if not rows:
        raise ValueError("empty matrix")
    ncols = len(rows[0])
    cost = len(rows) * ncols * min(len(rows), ncols)
    if cost > _FRACTION_ELIM_BUDGET:
        result = _nullspace_modular(_int_rows(rows))
        if result is not None:
            basis, rank = result
            space = LinearSubspace.from_vectors(basis, ncols) if basis else LinearSubspace.zero(ncols)
            assert space.dim == ncols - rank
            return space
    R, pivots = rref_fraction(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -R[i][f]
        basis.append(vec)
    if not basis:
        return LinearSubspace.zero(ncols)
    return LinearSubspace.from_vectors(basis, ncols)


def rank(M) -> int:
    rows = _to_fraction_rows(M)
    return len(rref_fraction(rows)[0])


def solve_linear(M, b):
    """One exact solution of M x = b, or None if the system is infeasible.

    Large integer systems first try a modular solve whose result is then
    verified exactly; if that fails (or reports inconsistency) the Fraction
    elimination gives the definitive answer.
    """
    rows = _to_fraction_rows(M)
    rhs = [as_fraction(v) for v in b]
    if len(rhs) != len(rows):
        raise ValueError("rhs length mismatch")
    ncols = len(rows[0])
    cost = len(rows) * ncols * min(len(rows), ncols)
    if cost > _FRACTION_ELIM_BUDGET:
        sol = _solve_modular(rows, rhs)
        if sol is not None:
            return sol
    aug = [row + [rv] for row, rv in zip(rows, rhs)]
    R, pivots = rref_fraction(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][ncols]
    return x


def _solve_modular(rows, rhs, attempts=3):
    den = 1
    scaled = []
    for row, rv in zip(rows, rhs):
        d = rv.denominator
        for v in row:
            d = d * v.denominator // math.gcd(d, v.denominator)
        scaled.append(([int(v * d) for v in row], int(rv * d)))
        den = d
    int_rows = [r for r, _ in scaled]
    int_rhs = [v for _, v in scaled]
    ncols = len(int_rows[0])
    used = 8  # do not reuse the primes consumed by typical nullspace calls
    for attempt in range(attempts):
        nprimes = 2 + 2 * attempt
        primes = _PRIMES[used : used + nprimes]
        used += nprimes
        combined = None
        modulus = 1
        pivset = None
        ok = True
        for p in primes:
            Ap = np.array(
                [[v % p for v in row] + [rv % p] for row, rv in zip(int_rows, int_rhs)],
                dtype=np.int64,
            )
            R, piv = _rref_mod(Ap, p)
            if ncols in piv:
                ok = False  # looks inconsistent; let the exact path decide
                break
            if pivset is None:
                pivset = piv
                combined = R.astype(object)
                modulus = p
            elif piv != pivset:
                ok = False
                break
            else:
                for i in range(combined.shape[0]):
                    for j in range(combined.shape[1]):
                        r, m = _crt_pair(int(combined[i, j]), modulus, int(R[i, j]), p)
                        combined[i, j] = r
                modulus *= p
        if not ok or pivset is None:
            continue
        x = [Fraction(0)] * ncols
        good = True
        for i, c in enumerate(pivset):
            q = _rational_reconstruct(int(combined[i, ncols]), modulus)
            if q is None:
                good = False
                break
            x[c] = q
        if not good:
            continue
        if all(
            sum(a * b for a, b in zip(row, x)) == rv
            for row, rv in zip(rows, rhs)
        ):
            return x
    return None


def span_closure(ops, bracket=None) -> LinearSubspace:
    """Smallest subspace containing ``ops`` closed under the (commutator) bracket.

    ``ops`` are square rational matrices (scalars.Matrix or rank-2 RatTensor);
    the returned subspace lives in the flattened coordinates.  Terminates
    because the ambient space is finite dimensional.
    """
    mats = []
    for op in ops:
        if isinstance(op, Matrix):
            op = tensor_from_matrix(op)
        if op.ndim != 2 or op.shape[0] != op.shape[1]:
            raise ValueError("square operators expected")
        mats.append(op)
    if not mats:
        raise ValueError("need at least one operator")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise ValueError("operators of mixed dimension")
    if bracket is None:
        bracket = lambda a, b: exact_einsum("ij,jk->ik", a, b) - exact_einsum("ij,jk->ik", b, a)
    span = TrackedSpan(n * n)
    reps = []
    stack = list(mats)
    while stack:
        cand = stack.pop()
        if span.add(list(cand.fractions().ravel())):
            for r in reps:
                stack.append(bracket(cand, r))
            stack.append(bracket(cand, cand))
            reps.append(cand)
    return LinearSubspace(n * n, span.rows, span.pivots)


def basis_matrices(space: LinearSubspace, n: int):
    """Unflatten the echelon basis of a subspace of Q^(n*n) into matrices."""
    return [RatTensor.from_fractions(np.array(row, dtype=object).reshape(n, n)) for row in space.basis]
