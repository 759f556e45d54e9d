"""Lie triple systems over Q.

A Lie triple system (Lts) is a space m with a trilinear bracket
[X,Y,Z] that is skew in the first two slots (LT1), satisfies the Jacobi
identity (LT2), and whose left multiplications R(X,Y) = [X,Y,.] act as
derivations of the bracket (LT3).  The middle multiplications are
M(X,Z)Y = [X,Y,Z].

Structure constants live in a rank-4 tensor c with

    [e_i, e_j, e_k] = sum_l c[i,j,k,l] e_l.

All axiom checks are exhaustive over basis tuples; by multilinearity this
decides the axioms exactly.  Checks are expressed as exact integer tensor
contractions, so the dim-9 case finishes in milliseconds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactlinalg import (
    LinearSubspace,
    RatTensor,
    exact_einsum,
    nullspace,
    tensor_from_matrix,
)
from .scalars import QQ, Matrix, as_fraction


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Counterexample:
    """A basis tuple on which an identity fails, with both evaluated sides."""

    indices: tuple
    lhs: tuple
    rhs: tuple
    note: str = ""

    def to_dict(self):
        return {
            "indices": list(self.indices),
            "lhs": [str(v) for v in self.lhs],
            "rhs": [str(v) for v in self.rhs],
            "note": self.note,
        }


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    counterexample: Counterexample | None = None

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }


@dataclass
class AxiomReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c.name for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def add(self, name, passed, counterexample=None):
        self.checks.append(Check(name, passed, counterexample))

    def extend(self, other: "AxiomReport"):
        self.checks.extend(other.checks)

    def to_dict(self):
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}

    def __str__(self):
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" for c in self.checks]
        return "\n".join(lines)


def _first_violation(diff: RatTensor, split: int):
    """Index tuple of the first nonzero entry, split into (tuple-part, rest).

    ``split`` is how many leading axes index the basis tuple; the trailing
    axes hold the evaluated sides (vector or matrix).
    """
    idx = diff.first_nonzero()
    if idx is None:
        return None
    return idx[:split]


def _counterexample(lhs: RatTensor, rhs: RatTensor, split: int, note=""):
    diff = lhs - rhs
    where = _first_violation(diff, split)
    if where is None:
        return None
    lslice = lhs[where]
    rslice = rhs[where]
    lvals = (lslice,) if isinstance(lslice, Fraction) else tuple(lslice.fractions().ravel())
    rvals = (rslice,) if isinstance(rslice, Fraction) else tuple(rslice.fractions().ravel())
    return Counterexample(indices=where, lhs=lvals, rhs=rvals, note=note)


class LieTripleSystem:
    """Finite-dimensional Lts given by its structure-constant tensor."""

    def __init__(self, tensor: RatTensor, name=None, ring=QQ):
        if tensor.ndim != 4 or len(set(tensor.shape)) > 1:
            raise ValueError("structure tensor must have shape (n, n, n, n)")
        if ring != QQ:
            raise ValueError("only rational Lie triple systems are supported")
        self.dim = tensor.shape[0] if tensor.ndim else 0
        self.tensor = tensor
        self.name = name
        self.ring = ring
        self._report = None

    @classmethod
    def from_sparse(cls, dim, entries, name=None):
        return cls(RatTensor.from_sparse((dim, dim, dim, dim), entries), name=name)

    @classmethod
    def zero(cls, dim, name=None):
        return cls(RatTensor.zeros((dim, dim, dim, dim)), name=name or f"abelian({dim})")

    @property
    def is_verified(self) -> bool:
        return self._report is not None and self._report.ok

    @property
    def verification(self) -> AxiomReport | None:
        return self._report

    def __eq__(self, other):
        if not isinstance(other, LieTripleSystem):
            return NotImplemented
        return self.tensor == other.tensor

    def __repr__(self):
        tag = self.name or "?"
        return f"LieTripleSystem({tag}, dim={self.dim})"

    # -- convenience methods delegating to module functions ----------------

    def bracket(self, X, Y, Z):
        return bracket(self, X, Y, Z)

    def R(self, X, Y):
        return R_operator(self, X, Y)

    def M(self, X, Z):
        return M_operator(self, X, Z)

    def verify(self) -> AxiomReport:
        return verify_lts(self)

    def r_tensor(self) -> RatTensor:
        """R(e_i,e_j) matrices stacked as a tensor: out[i,j,a,b] = c[i,j,b,a]."""
        return exact_einsum("ijba->ijab", self.tensor)

    def m_tensor(self) -> RatTensor:
        """M(e_i,e_k) matrices stacked as a tensor: out[i,k,a,b] = c[i,b,k,a]."""
        return exact_einsum("ibka->ikab", self.tensor)


def _as_vector(lts, X) -> RatTensor:
    if isinstance(X, RatTensor):
        v = X
    else:
        v = RatTensor.from_fractions([as_fraction(x) for x in X])
    if v.shape != (lts.dim,):
        raise DimensionMismatch(f"vector of length {v.shape} against dim {lts.dim}")
    return v


def bracket(lts, X, Y, Z):
    """[X, Y, Z] as a list of Fractions; trilinear contraction with the tensor."""
    x, y, z = _as_vector(lts, X), _as_vector(lts, Y), _as_vector(lts, Z)
    out = exact_einsum("i,j,k,ijkl->l", x, y, z, lts.tensor)
    return list(out.fractions())


def R_operator(lts, X, Y) -> Matrix:
    """Matrix of Z |-> [X, Y, Z] in the standard basis."""
    x, y = _as_vector(lts, X), _as_vector(lts, Y)
    out = exact_einsum("i,j,ijba->ab", x, y, lts.tensor)
    return Matrix(lts.dim, lts.dim, list(out.fractions().ravel()), QQ)


def M_operator(lts, X, Z) -> Matrix:
    """Matrix of Y |-> [X, Y, Z] in the standard basis."""
    x, z = _as_vector(lts, X), _as_vector(lts, Z)
    out = exact_einsum("i,k,ibka->ab", x, z, lts.tensor)
    return Matrix(lts.dim, lts.dim, list(out.fractions().ravel()), QQ)


_CHUNK_DIM = 10  # chunk 6-index checks above this dimension to bound memory


def _lt3_check(C: RatTensor):
    """Left/right of the derivation axiom over all basis 5-tuples."""
    n = C.shape[0]
    if n <= _CHUNK_DIM:
        lhs = exact_einsum("uvwl,ijlm->ijuvwm", C, C)
        rhs = (
            exact_einsum("ijul,lvwm->ijuvwm", C, C)
            + exact_einsum("ijvl,ulwm->ijuvwm", C, C)
            + exact_einsum("ijwl,uvlm->ijuvwm", C, C)
        )
        return _counterexample(lhs, rhs, 5, note="derivation axiom (LT3)")
    for i in range(n):
        Ci = C[i]  # rank 3: [e_i, e_j, .] slices
        lhs = exact_einsum("uvwl,jlm->juvwm", C, Ci)
        rhs = (
            exact_einsum("jul,lvwm->juvwm", Ci, C)
            + exact_einsum("jvl,ulwm->juvwm", Ci, C)
            + exact_einsum("jwl,uvlm->juvwm", Ci, C)
        )
        ce = _counterexample(lhs, rhs, 4, note="derivation axiom (LT3)")
        if ce is not None:
            return Counterexample((i,) + ce.indices, ce.lhs, ce.rhs, ce.note)
    return None


def verify_lts(lts) -> AxiomReport:
    """Exhaustive check of LT1 (pairs), LT2 (triples), LT3 (5-tuples)."""
    C = lts.tensor
    report = AxiomReport()

    lt1 = _counterexample(C, -exact_einsum("jikl->ijkl", C), 3, note="skew-symmetry (LT1)")
    report.add("LT1", lt1 is None, lt1)

    cyc = C + exact_einsum("jkil->ijkl", C) + exact_einsum("kijl->ijkl", C)
    lt2 = _counterexample(cyc, RatTensor.zeros(cyc.shape), 3, note="Jacobi identity (LT2)")
    report.add("LT2", lt2 is None, lt2)

    lt3 = _lt3_check(C)
    report.add("LT3", lt3 is None, lt3)

    lts._report = report
    return report


def operator_identities(lts) -> AxiomReport:
    """The operator forms LT2a and LT3a/LT3b/LT3c, checked as matrix identities.

    These follow from LT1-LT3 but are checked independently (a different
    evaluation route through the R- and M-operator tensors).
    """
    C = lts.tensor
    Rt = lts.r_tensor()  # Rt[i,j,a,b]
    Mt = lts.m_tensor()  # Mt[i,k,a,b]
    report = AxiomReport()

    lhs = Mt - exact_einsum("kiab->ikab", Mt)
    ce = _counterexample(lhs, Rt, 2, note="M(X,Z) - M(Z,X) = R(X,Z)")
    report.add("LT2a", ce is None, ce)

    comm = exact_einsum("ijat,uvtb->ijuvab", Rt, Rt) - exact_einsum("uvat,ijtb->ijuvab", Rt, Rt)
    rhs = exact_einsum("ijut,tvab->ijuvab", C, Rt) + exact_einsum("ijvt,utab->ijuvab", C, Rt)
    ce = _counterexample(comm, rhs, 4, note="[R(X,Y), R(U,V)] = R(R(X,Y)U, V) + R(U, R(X,Y)V)")
    report.add("LT3a", ce is None, ce)

    comm = exact_einsum("ijat,uwtb->ijuwab", Rt, Mt) - exact_einsum("uwat,ijtb->ijuwab", Mt, Rt)
    rhs = exact_einsum("ijut,twab->ijuwab", C, Mt) + exact_einsum("ijwt,utab->ijuwab", C, Mt)
    ce = _counterexample(comm, rhs, 4, note="[R(X,Y), M(U,W)] = M(R(X,Y)U, W) + M(U, R(X,Y)W)")
    report.add("LT3b", ce is None, ce)

    lhs = exact_einsum("uvwt,xtab->xuvwab", C, Mt)
    rhs = (
        -exact_einsum("vwat,xutb->xuvwab", Mt, Mt)
        + exact_einsum("uwat,xvtb->xuvwab", Mt, Mt)
        + exact_einsum("uvat,xwtb->xuvwab", Rt, Mt)
    )
    ce = _counterexample(lhs, rhs, 4, note="M(X,R(U,V)W) = -M(V,W)M(X,U) + M(U,W)M(X,V) + R(U,V)M(X,W)")
    report.add("LT3c", ce is None, ce)
    return report


def derivation_space(lts, rep) -> LinearSubspace:
    """All linear D: m -> V with D[X,Y,Z] = r(X,Y)DZ + m(X,Z)DY - m(Y,Z)DX.

    ``rep`` is any object with attributes ``r``, ``m`` (rank-4 RatTensors of
    shape (n, n, d, d)) and ``fiber_dim``.  The result is a subspace of
    Q^(d*n); vector index a*n + y is the entry D[a, y].
    """
    n, d = lts.dim, rep.fiber_dim
    C, r, mt = lts.tensor, rep.r, rep.m
    if d == 0 or n == 0:
        return LinearSubspace.zero(d * n)
    Id_d = RatTensor.identity(d)
    Id_n = RatTensor.identity(n)
    q = (
        exact_einsum("ijky,at->ijkaty", C, Id_d)
        - exact_einsum("ijat,ky->ijkaty", r, Id_n)
        - exact_einsum("ikat,jy->ijkaty", mt, Id_n)
        + exact_einsum("jkat,iy->ijkaty", mt, Id_n)
    )
    rows = q.reshape((n * n * n * d, d * n))
    return nullspace(rows)


def derivation_matrices(space: LinearSubspace, d: int, n: int):
    """Unflatten a derivation-space basis into d x n matrices (maps m -> V)."""
    import numpy as np

    return [RatTensor.from_fractions(np.array(row, dtype=object).reshape(d, n)) for row in space.basis]


def is_homomorphism(f, src: LieTripleSystem, dst: LieTripleSystem) -> bool:
    """True iff f[X,Y,Z] = [fX, fY, fZ] on all basis triples."""
    if isinstance(f, Matrix):
        f = tensor_from_matrix(f)
    if f.shape != (dst.dim, src.dim):
        raise DimensionMismatch(f"map shape {f.shape} does not fit {src.dim} -> {dst.dim}")
    lhs = exact_einsum("ijkl,al->ijka", src.tensor, f)
    rhs = exact_einsum("pi,qj,rk,pqra->ijka", f, f, f, dst.tensor)
    return (lhs - rhs).is_zero()
