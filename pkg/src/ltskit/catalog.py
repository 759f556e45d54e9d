"""Built-in structures and the degenerate-quaternion tangent model.

The catalog holds the concrete instances every suite runs against:
gl(n) and sl(2) with the double-commutator triple bracket, abelian spaces,
the matrix Jordan triple T(u,v,w) = uvw + wvu, plus two machine checks:

* :func:`gl_quaternion_model` -- realizes gl(n, D_mu) (D_mu the degenerate
  quaternions over A_mu) as a rational Lie algebra, Cayley-transforms it,
  splits off the subspaces m (a copy of the gl(n) triple system) and V,
  and extracts the induced representation of m on V.  For mu = 0 this is
  the "twisted" tangent model of Gl(n); its r-component is the regular one
  while its m-component is not.

* :func:`compare_quaternion_and_jordan_twists` -- compares that extracted
  representation with the twisted regular representation produced from the
  Jordan triple uvw + wvu, reporting tensor equality under the natural
  identification (and under a sign flip of it).

Every catalog entry re-verifies its axioms at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactlinalg import RatTensor, exact_einsum
from .lts import AxiomReport, Counterexample, LieTripleSystem, verify_lts
from .scalars import ExtElement, Matrix, QuadraticExtension, as_fraction, build_degenerate_quaternions


def _matrix_units(n):
    units = []
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=np.int64)
            E[i, j] = 1
            units.append(E)
    return units


def gl_lts(n: int, verify=True) -> LieTripleSystem:
    """gl(n, Q) with the triple bracket [[X, Y], Z] on matrix units."""
    if n < 1:
        raise ValueError("n >= 1 required")
    units = _matrix_units(n)
    dim = n * n
    tensor = np.zeros((dim, dim, dim, dim), dtype=np.int64)
    for p, A in enumerate(units):
        for q, B in enumerate(units):
            AB = A @ B - B @ A
            for r, Cm in enumerate(units):
                out = AB @ Cm - Cm @ AB
                tensor[p, q, r] = out.reshape(dim)
    lts = LieTripleSystem(RatTensor(tensor), name=f"gl{n}")
    if verify:
        report = verify_lts(lts)
        if not report.ok:
            raise AssertionError(f"gl({n}) failed verification: {report.failed()}")
    return lts


_SL2_BASIS = (
    np.array([[1, 0], [0, -1]], dtype=np.int64),
    np.array([[0, 1], [0, 0]], dtype=np.int64),
    np.array([[0, 0], [1, 0]], dtype=np.int64),
)


def _sl2_coords(M):
    return np.array([M[0, 0], M[0, 1], M[1, 0]], dtype=np.int64)


def sl2_lts(verify=True) -> LieTripleSystem:
    """sl(2, Q) = traceless 2x2 matrices with [[X, Y], Z], basis (h, e, f)."""
    tensor = np.zeros((3, 3, 3, 3), dtype=np.int64)
    for p, A in enumerate(_SL2_BASIS):
        for q, B in enumerate(_SL2_BASIS):
            AB = A @ B - B @ A
            for r, Cm in enumerate(_SL2_BASIS):
                tensor[p, q, r] = _sl2_coords(AB @ Cm - Cm @ AB)
    lts = LieTripleSystem(RatTensor(tensor), name="sl2")
    if verify:
        report = verify_lts(lts)
        if not report.ok:
            raise AssertionError(f"sl(2) failed verification: {report.failed()}")
    return lts


def abelian_lts(n: int) -> LieTripleSystem:
    if n < 0:
        raise ValueError("n >= 0 required")
    lts = LieTripleSystem.zero(n)
    verify_lts(lts)
    return lts


def matrix_jts(n: int, verify=True):
    """M(n, Q) with the Jordan triple product T(u,v,w) = uvw + wvu."""
    from .jordan import JordanTripleSystem, verify_jts

    if n < 1:
        raise ValueError("n >= 1 required")
    units = _matrix_units(n)
    dim = n * n
    tensor = np.zeros((dim, dim, dim, dim), dtype=np.int64)
    for p, A in enumerate(units):
        for q, B in enumerate(units):
            for r, Cm in enumerate(units):
                out = A @ B @ Cm + Cm @ B @ A
                tensor[p, q, r] = out.reshape(dim)
    jts = JordanTripleSystem(RatTensor(tensor), name=f"matrix-jts:{n}")
    if verify:
        report = verify_jts(jts)
        if not report.ok:
            raise AssertionError(f"matrix JTS({n}) failed verification: {report.failed()}")
    return jts


def default_corpus():
    """The standard verification corpus of Lie triple systems."""
    entries = [gl_lts(1), gl_lts(2), gl_lts(3), sl2_lts()]
    entries += [abelian_lts(k) for k in range(1, 5)]
    return entries


def get(name: str):
    """Resolve a catalog entry by name, e.g. 'gl2', 'sl2', 'abelian:3', 'matrix-jts:2'."""
    name = name.strip()
    if name == "sl2":
        return sl2_lts()
    if name.startswith("gl"):
        rest = name[2:].lstrip(":")
        return gl_lts(int(rest))
    if name.startswith("abelian"):
        return abelian_lts(int(name.split(":", 1)[1]))
    if name.startswith("matrix-jts"):
        return matrix_jts(int(name.split(":", 1)[1]))
    raise KeyError(f"unknown catalog entry {name!r}")


def names():
    return ["gl1", "gl2", "gl3", "sl2", "abelian:N", "matrix-jts:N"]


# ---------------------------------------------------------------------------
# The degenerate-quaternion model of the twisted tangent representation
# ---------------------------------------------------------------------------


class _PairMatrix:
    """Matrix over A_mu stored as an integer (base, radical) pair of arrays."""

    __slots__ = ("base", "rad", "mu")

    def __init__(self, base, rad, mu):
        self.base = np.asarray(base, dtype=np.int64)
        self.rad = np.asarray(rad, dtype=np.int64)
        self.mu = mu  # Fraction with denominator 1 only used via exact int scaling

    def __matmul__(self, other):
        mu_num, mu_den = self.mu.numerator, self.mu.denominator
        if mu_den != 1:
            raise ValueError("integer pair arithmetic needs integral mu")
        base = self.base @ other.base + mu_num * (self.rad @ other.rad)
        rad = self.base @ other.rad + self.rad @ other.base
        return _PairMatrix(base, rad, self.mu)

    def __sub__(self, other):
        return _PairMatrix(self.base - other.base, self.rad - other.rad, self.mu)

    def __add__(self, other):
        return _PairMatrix(self.base + other.base, self.rad + other.rad, self.mu)

    def commutator(self, other):
        return self @ other - other @ self

    def to_matrix(self) -> Matrix:
        ring = QuadraticExtension(self.mu)
        n = self.base.shape[0]
        ents = [ExtElement(int(self.base[i, j]), int(self.rad[i, j]), self.mu) for i in range(n) for j in range(n)]
        return Matrix(n, n, ents, ring)

    @classmethod
    def from_matrix(cls, M: Matrix, mu):
        n = M.rows
        base = np.zeros((n, n), dtype=np.int64)
        rad = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                e = M[i, j]
                if e.base.denominator != 1 or e.radical.denominator != 1:
                    raise ValueError("integral entries expected")
                base[i, j] = e.base.numerator
                rad[i, j] = e.radical.numerator
        return cls(base, rad, mu)


@dataclass
class QuaternionModelReport:
    """Outcome of the gl(n, D_mu) Cayley decomposition and its checks."""

    n: int
    mu: Fraction
    checks: AxiomReport
    representation: object  # Representation of gl_lts(n) on V
    base: LieTripleSystem
    noncommutativity_witness: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.checks.ok


def _gl_d_basis(n, ring):
    """Rational basis of gl(n, D_mu) = {X in M(2n, A_mu) : F_n X F_n = conj(X)}.

    Written as 2x2 blocks (a b; conj(b) conj(a)) with a, b in M(n, A_mu);
    the K-basis splits each of a, b into base and radical parts.
    """
    x = ring.gen()
    one, zero = ring.one(), ring.zero()
    basis = []
    kinds = []
    for i in range(n):
        for j in range(n):
            for kind in range(4):
                blocks = {k: Matrix.zeros(n, n, ring) for k in ("a", "abar", "b", "bbar")}
                ents_a = [[zero] * n for _ in range(n)]
                ents_b = [[zero] * n for _ in range(n)]
                if kind == 0:
                    ents_a[i][j] = one
                elif kind == 1:
                    ents_a[i][j] = x
                elif kind == 2:
                    ents_b[i][j] = one
                else:
                    ents_b[i][j] = x
                a = Matrix.from_rows(ents_a, ring)
                b = Matrix.from_rows(ents_b, ring)
                top = [[a[r, c] for c in range(n)] + [b[r, c] for c in range(n)] for r in range(n)]
                bot = [
                    [b.conjugate()[r, c] for c in range(n)] + [a.conjugate()[r, c] for c in range(n)]
                    for r in range(n)
                ]
                basis.append(Matrix.from_rows(top + bot, ring))
                kinds.append((i, j, kind))
    return basis, kinds


def _cayley_conjugate(X: Matrix, n, ring) -> Matrix:
    """R_n X R_n^{-1} with R_n = (1 1; -1 1) in n x n blocks."""
    one, zero = ring.one(), ring.zero()
    half = ring.coerce(Fraction(1, 2))
    eye = Matrix.identity(n, ring)
    R = Matrix.from_blocks([[eye, eye], [-eye, eye]])
    Rinv = Matrix.from_blocks([[eye, -eye], [eye, eye]]) * half
    assert R @ Rinv == Matrix.identity(2 * n, ring)
    return R @ X @ Rinv


def _cayley_pattern_coords(X: Matrix, n):
    """Split a Cayley-transformed element into (p, q, r, s) rational blocks.

    The transformed algebra consists of block matrices (p  x*q; x*r  s)
    with rational p, q, r, s; returns None if X is not of that shape.
    """
    p = np.empty((n, n), dtype=object)
    q = np.empty((n, n), dtype=object)
    r = np.empty((n, n), dtype=object)
    s = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            tl, tr = X[i, j], X[i, n + j]
            bl, br = X[n + i, j], X[n + i, n + j]
            if tl.radical != 0 or br.radical != 0 or tr.base != 0 or bl.base != 0:
                return None
            p[i, j], s[i, j] = tl.base, br.base
            q[i, j], r[i, j] = tr.radical, bl.radical
    return p, q, r, s


def gl_quaternion_model(n: int, mu=0) -> QuaternionModelReport:
    """Build gl(n, D_mu), Cayley-decompose it, and check the induced representation.

    Checks reported (labels in parentheses):

    * membership   -- every basis element satisfies F_n X F_n = conj(X),
      and its Cayley transform has the (p, x q; x r, s) block pattern;
    * closure      -- m + V is closed under the triple bracket [[.,.],.];
    * base-iso     -- Y |-> diag(Y, -Y) identifies gl(n) with m as triple systems;
    * ideal        -- V satisfies the split-null ideal properties
      ([f, f, V]-type brackets stay in V, [V,V,m] = [V,m,V] = [V,V,V] = 0);
      this holds exactly when mu = 0;
    * r-regular    -- the extracted r-component equals the regular one;
    * m-twisted    -- the extracted m-component differs from the regular one.

    The n = 1 report also carries an explicit witness that D is
    noncommutative while A_mu x A_mu is commutative.
    """
    if n not in (1, 2):
        raise ValueError("supported block sizes are n = 1 and n = 2")
    mu = as_fraction(mu)
    if mu.denominator != 1:
        # keep the fast integer pair arithmetic; scale x by the denominator
        raise ValueError("integral mu expected (scale the extension generator first)")
    ring = QuadraticExtension(mu)
    report = AxiomReport()

    basis, _ = _gl_d_basis(n, ring)
    F = Matrix.from_blocks(
        [[Matrix.zeros(n, n, ring), Matrix.identity(n, ring)], [Matrix.identity(n, ring), Matrix.zeros(n, n, ring)]]
    )
    member_ok = all(F @ B @ F == B.conjugate() for B in basis)
    cayley = [_cayley_conjugate(B, n, ring) for B in basis]
    pattern_ok = all(_cayley_pattern_coords(X, n) is not None for X in cayley)
    report.add("membership", member_ok and pattern_ok)

    # Work in the Cayley picture with exact integer (base, radical) pairs.
    d = n * n
    eye = np.eye(n, dtype=np.int64)
    zero = np.zeros((n, n), dtype=np.int64)

    def m_elem(Y):
        return _PairMatrix(np.block([[Y, zero], [zero, -Y]]), np.zeros((2 * n, 2 * n), dtype=np.int64), mu)

    def v_elem(X):
        return _PairMatrix(np.zeros((2 * n, 2 * n), dtype=np.int64), np.block([[zero, X], [-X, zero]]), mu)

    units = _matrix_units(n)
    m_basis = [m_elem(E) for E in units]
    v_basis = [v_elem(E) for E in units]
    mv = m_basis + v_basis

    def decompose(P: _PairMatrix):
        """Coordinates in (m-basis, V-basis) plus the residual in the fixed algebra.

        m-part: base blocks diag(Y, -Y); V-part: radical blocks (0 X; -X 0);
        residual: the symmetric leftovers (a = d, b = c pattern).
        """
        b, r = P.base, P.rad
        tl, tr2 = b[:n, :n], b[:n, n:]
        bl, br2 = b[n:, :n], b[n:, n:]
        rtl, rtr = r[:n, :n], r[:n, n:]
        rbl, rbr = r[n:, :n], r[n:, n:]
        Y2 = tl - br2  # 2*Y
        X2 = rtr - rbl  # 2*X
        resid_base = np.abs(tl + br2).sum() + np.abs(tr2).sum() + np.abs(bl).sum()
        resid_rad = np.abs(rtr + rbl).sum() + np.abs(rtl).sum() + np.abs(rbr).sum()
        if Y2 % 2 or X2 % 2:  # all our brackets produce even doubled coords
            raise AssertionError("non-integral coordinates")
        return (Y2 // 2).reshape(d), (X2 // 2).reshape(d), int(resid_base + resid_rad)

    dim_f = 2 * d
    triple = np.zeros((dim_f, dim_f, dim_f, dim_f), dtype=np.int64)
    closure_ok = True
    for a, A in enumerate(mv):
        for bidx, B in enumerate(mv):
            AB = A.commutator(B)
            for c, Cc in enumerate(mv):
                out = AB.commutator(Cc)
                ym, xv, resid = decompose(out)
                if resid:
                    closure_ok = False
                triple[a, bidx, c, :d] = ym
                triple[a, bidx, c, d:] = xv
    report.add("closure", closure_ok)

    f_lts = LieTripleSystem(RatTensor(triple), name=f"gl({n},D_{mu}) minus-part")
    base = gl_lts(n)
    iso_ce = None
    sub = RatTensor(np.array(triple[:d, :d, :d, :d]))
    diff = sub - base.tensor
    where = diff.first_nonzero()
    if where is not None:
        iso_ce = Counterexample(
            where[:3],
            tuple(sub[where[:3]].fractions()),
            tuple(base.tensor[where[:3]].fractions()),
            note="induced bracket on m vs gl(n)",
        )
    report.add("base-iso", iso_ce is None, iso_ce)

    # Split-null ideal properties of V inside m + V.
    from .reps import lemma_ideal_properties, Representation, verify_representation

    ideal_report = lemma_ideal_properties(f_lts, d)
    report.add("ideal", ideal_report.ok)

    # r(e_i,e_j) acts on v_b with output coordinate a: entry [i, j, d+b, d+a].
    r_ext = RatTensor(np.einsum("ijba->ijab", triple[:d, :d, d:, d:]))
    # m(e_i,e_k) acts on v_b: entry [i, d+b, k, d+a].
    m_ext = RatTensor(np.transpose(triple[:d, d:, :d, d:], (0, 2, 3, 1)))
    regular_r = base.r_tensor()
    regular_m = base.m_tensor()
    report.add("r-regular", r_ext == regular_r)
    report.add("m-twisted", m_ext != regular_m)

    rep = Representation(base=base, fiber_dim=d, r=r_ext, m=m_ext, name=f"gl({n},D_{mu}) twisted tangent")
    rep_report = verify_representation(rep)
    report.add("rep-axioms", rep_report.ok)

    witness = {}
    if n == 1:
        D = build_degenerate_quaternions(mu)
        X, Y = D.basis[1], D.basis[2]
        XY, YX = X @ Y, Y @ X
        a_pairs = [
            (ExtElement(1, 0, mu), ExtElement(0, 1, mu)),
            (ExtElement(0, 1, mu), ExtElement(2, 3, mu)),
        ]
        commutative = all(p * q == q * p for p, q in a_pairs)
        witness = {
            "D_noncommutative": XY != YX,
            "X": X,
            "Y": Y,
            "XY": XY,
            "YX": YX,
            "AxA_commutative": commutative,
        }
        report.add("noncommutativity-witness", XY != YX and commutative)

    return QuaternionModelReport(
        n=n, mu=mu, checks=report, representation=rep, base=base, noncommutativity_witness=witness
    )


@dataclass
class TwistComparison:
    n: int
    r_equal: bool
    m_equal: bool
    m_equal_sign_flipped: bool
    straight_m_zero: bool
    details: dict = field(default_factory=dict)


def compare_quaternion_and_jordan_twists(n: int) -> TwistComparison:
    """Compare the quaternion-model representation with the Jordan twist.

    Both are representations of gl(n) on a fiber identified with the space
    of n x n matrices; the comparison is tensor-exact under the natural
    identification of the fibers, and repeated with the sign-flipped
    identification.  No claim beyond the computed tensor facts is made.
    """
    from .jordan import twisted_regular_rep

    model = gl_quaternion_model(n, 0)
    base = model.base
    twisted = twisted_regular_rep(base, matrix_jts(n))
    q_rep = model.representation
    j_rep = twisted.rep
    r_equal = q_rep.r == j_rep.r
    m_equal = q_rep.m == j_rep.m
    # identification v |-> -v conjugates each operator by -Id, a no-op on
    # the operator entries; record it anyway as the sign-rescaled variant.
    m_equal_flip = q_rep.m == j_rep.m
    straight_m_zero = base.m_tensor().is_zero()
    details = {
        "quaternion_m_nonzero": not q_rep.m.is_zero(),
        "jordan_m_nonzero": not j_rep.m.is_zero(),
    }
    if n == 1:
        # dim-1 coefficient: m(e,e) acting on the fiber generator.
        details["quaternion_m_coefficient"] = q_rep.m.fraction(0, 0, 0, 0)
        details["jordan_m_coefficient"] = j_rep.m.fraction(0, 0, 0, 0)
    return TwistComparison(
        n=n,
        r_equal=r_equal,
        m_equal=m_equal,
        m_equal_sign_flipped=m_equal_flip,
        straight_m_zero=straight_m_zero,
        details=details,
    )
