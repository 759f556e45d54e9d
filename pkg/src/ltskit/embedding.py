"""Lie algebras with involution and the standard imbedding.

Every Lie algebra g with an involution sigma yields a Lie triple system on
the -1 eigenspace m via [[X,Y],Z]; conversely every Lts arises that way
from its *standard imbedding* g = h + m, where h is the span of the
operators R(X,Y) (already a Lie algebra by the derivation axiom) and

    [(D,X), (D',X')] = ([D,D'] + R(X,X'), DX' - D'X).

Modules with involution over (g, sigma) correspond to representations of
m: one direction forms the semidirect product b = g |x W and reads the
split-null structure off the -1 eigenspace m + W^-; the other realizes
the plus part inside Hom(m, V) (the operators Y |-> m(X,Y)v, i.e. the
bracket [V, m] taken in the standard imbedding of the split null
extension) and assembles the g-action explicitly.

The operator dictionary in the imbedding reads

    R(X,Y) = ad([X,Y])|_m,        M(X,Z) = -ad(Z) o ad(X)|_m ;

note the minus sign in the second identity: with M(X,Z)Y = [X,Y,Z] and
the double-bracket convention, ad(Z)(ad(X)(Y)) = [Z,[X,Y]] = -[[X,Y],Z].
Both identities are machine-checked in :func:`imbedding_operator_identities`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactlinalg import (
    LinearSubspace,
    RatTensor,
    TrackedSpan,
    exact_einsum,
    nullspace,
)
from .lts import AxiomReport, LieTripleSystem, _counterexample, derivation_space, verify_lts
from .reps import Representation, split_null_extension, verify_representation


class LiftError(ValueError):
    """The r-data does not factor through the span of the R(X,Y) operators."""


class InvolutiveLieAlgebra:
    """Lie algebra with an involutive automorphism.

    ``bracket3[i,j,l]`` is the coefficient of e_l in [e_i, e_j]; ``sigma``
    the matrix of the involution.  Standard imbeddings carry extra data:
    the +1 part comes first in the basis (``h_dim`` entries), ``h_matrices``
    realizes it as operators on m, and ``r_combos[k]`` expresses the k-th
    h-basis element as a combination of the generators R(e_i, e_j)
    (tag i*n + j).
    """

    def __init__(self, bracket3: RatTensor, sigma: RatTensor, name=None,
                 h_dim=None, h_matrices=None, r_combos=None, base=None):
        if bracket3.ndim != 3 or len(set(bracket3.shape)) > 1:
            raise ValueError("bracket tensor must have shape (N, N, N)")
        self.dim = bracket3.shape[0]
        self.bracket3 = bracket3
        self.sigma = sigma
        self.name = name
        self.h_dim = h_dim
        self.h_matrices = h_matrices
        self.r_combos = r_combos
        self.base = base
        self._report = None

    @property
    def is_verified(self):
        return self._report is not None and self._report.ok

    def signature(self):
        """Diagonal of sigma as +1/-1 entries; requires a diagonal involution."""
        s = self.sigma
        diag = []
        for i in range(self.dim):
            for j in range(self.dim):
                v = s.fraction(i, j)
                if i == j:
                    if v not in (1, -1):
                        raise ValueError("involution is not diagonal +-1 in this basis")
                    diag.append(int(v))
                elif v != 0:
                    raise ValueError("involution is not diagonal in this basis")
        return tuple(diag)

    def minus_positions(self):
        return [i for i, s in enumerate(self.signature()) if s < 0]

    def __repr__(self):
        return f"InvolutiveLieAlgebra({self.name or '?'}, dim={self.dim})"


def verify_involutive_lie_algebra(ila: InvolutiveLieAlgebra) -> AxiomReport:
    c3, s = ila.bracket3, ila.sigma
    report = AxiomReport()
    ce = _counterexample(c3, -exact_einsum("jil->ijl", c3), 2, note="antisymmetry")
    report.add("antisymmetry", ce is None, ce)
    # Jacobi: [[x,y],z] + [[y,z],x] + [[z,x],y] = 0
    jac = (
        exact_einsum("ijt,tkl->ijkl", c3, c3)
        + exact_einsum("jkt,til->ijkl", c3, c3)
        + exact_einsum("kit,tjl->ijkl", c3, c3)
    )
    ce = _counterexample(jac, RatTensor.zeros(jac.shape), 3, note="Jacobi identity")
    report.add("jacobi", ce is None, ce)
    ce = _counterexample(
        exact_einsum("it,tj->ij", s, s), RatTensor.identity(ila.dim), 2, note="sigma^2 = id"
    )
    report.add("involutive", ce is None, ce)
    lhs = exact_einsum("pi,qj,pqt->ijt", s, s, c3)
    rhs = exact_einsum("ijl,tl->ijt", c3, s)
    ce = _counterexample(lhs, rhs, 2, note="sigma is a bracket automorphism")
    report.add("automorphism", ce is None, ce)
    ila._report = report
    return report


def standard_imbedding(lts: LieTripleSystem) -> InvolutiveLieAlgebra:
    """g = h + m with h = span{R(X,Y)} and the canonical graded bracket."""
    if not lts.is_verified:
        report = verify_lts(lts)
        if not report.ok:
            raise ValueError(f"standard imbedding needs a verified system, failed {report.failed()}")
    n = lts.dim
    Rt = lts.r_tensor()
    span = TrackedSpan(n * n)
    for i in range(n):
        for j in range(n):
            span.add(list(Rt[i, j].fractions().ravel()))
    h = span.dim
    N = h + n
    h_mats = [RatTensor.from_fractions(np.array(row, dtype=object).reshape(n, n)) for row in span.rows]

    c3 = np.zeros((N, N, N), dtype=object)
    c3[...] = Fraction(0)
    # [h_k, h_l] = commutator, expressed in the h basis (closed by LT3a).
    for k, A in enumerate(h_mats):
        for l, B in enumerate(h_mats):
            if l <= k:
                continue
            comm = exact_einsum("ij,jk->ik", A, B) - exact_einsum("ij,jk->ik", B, A)
            coeffs = span.coefficients(list(comm.fractions().ravel()))
            if coeffs is None:
                raise AssertionError("span of R-operators is not bracket closed")
            for t, c in enumerate(coeffs):
                c3[k, l, t] = c
                c3[l, k, t] = -c
    # [h_k, X] = h_k X in m,  [X, Y] = R(X, Y) in h.
    for k, A in enumerate(h_mats):
        Af = A.fractions()
        for x in range(n):
            for a in range(n):
                c3[k, h + x, h + a] = Af[a, x]
                c3[h + x, k, h + a] = -Af[a, x]
    r_coeffs = {}
    for i in range(n):
        for j in range(n):
            coeffs = span.coefficients(list(Rt[i, j].fractions().ravel()))
            r_coeffs[(i, j)] = coeffs
            for t, c in enumerate(coeffs):
                c3[h + i, h + j, t] = c

    sigma = RatTensor.from_fractions(
        np.diag([Fraction(1)] * h + [Fraction(-1)] * n).astype(object)
    )
    ila = InvolutiveLieAlgebra(
        RatTensor.from_fractions(c3),
        sigma,
        name=f"imbedding({lts.name})" if lts.name else "imbedding",
        h_dim=h,
        h_matrices=h_mats,
        r_combos=[dict(c) for c in span.combos],
        base=lts,
    )
    report = verify_involutive_lie_algebra(ila)
    if not report.ok:
        raise AssertionError(f"standard imbedding failed verification: {report.failed()}")
    return ila


def imbedding_operator_identities(ila: InvolutiveLieAlgebra) -> AxiomReport:
    """Check R(X,Y) = ad([X,Y])|_m and M(X,Z) = -ad(Z) o ad(X)|_m in g."""
    if ila.base is None or ila.h_dim is None:
        raise ValueError("needs a standard imbedding with its base system")
    base, h = ila.base, ila.h_dim
    c3 = ila.bracket3
    n = base.dim
    report = AxiomReport()
    W1 = c3[h:, h:, :]  # [X, Y] in g coordinates
    S = c3[:, h:, h:]  # [u, m-vector] restricted to m
    ad_of_bracket = exact_einsum("xyu,uba->xyab", W1, S)
    ce = _counterexample(ad_of_bracket, base.r_tensor(), 2, note="R(X,Y) = ad([X,Y])|_m")
    report.add("R-identity", ce is None, ce)
    Sm = c3[h:, :, h:]  # [Z, u] restricted to m, indexed (z, u, a)
    minus_adz_adx = -exact_einsum("xyu,zua->xzay", W1, Sm)
    ce = _counterexample(minus_adz_adx, base.m_tensor(), 2, note="M(X,Z) = -ad(Z) o ad(X)|_m")
    report.add("M-identity", ce is None, ce)
    return report


def minus_part(ila: InvolutiveLieAlgebra) -> LieTripleSystem:
    """The Lts on the -1 eigenspace of sigma with [X,Y,Z] = [[X,Y],Z]."""
    N = ila.dim
    space = nullspace([
        [ila.sigma.fraction(i, j) + (1 if i == j else 0) for j in range(N)] for i in range(N)
    ])
    k = space.dim
    if k == 0:
        lts = LieTripleSystem.zero(0, name="minus(0)")
        verify_lts(lts)
        return lts
    B = RatTensor.from_fractions(np.array([list(r) for r in space.basis], dtype=object))
    t1 = exact_einsum("ap,bq,pql->abl", B, B, ila.bracket3)
    t2 = exact_einsum("abl,cs,lst->abct", t1, B, ila.bracket3)
    unit_rows = all(
        sum(1 for v in row if v != 0) == 1 and row[piv] == 1
        for row, piv in zip(space.basis, space.pivots)
    )
    tensor = np.zeros((k, k, k, k), dtype=object)
    tensor[...] = Fraction(0)
    t2f = t2.fractions()
    if unit_rows:
        pos = list(space.pivots)
        comp = [i for i in range(N) if i not in pos]
        if comp and np.any(t2f[:, :, :, comp] != 0):
            raise AssertionError("minus part is not closed under the triple bracket")
        tensor = t2f[:, :, :, pos]
    else:
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    coeffs = space.coefficients(list(t2f[a, b, c]))
                    if coeffs is None:
                        raise AssertionError("minus part is not closed under the triple bracket")
                    tensor[a, b, c] = coeffs
    lts = LieTripleSystem(
        RatTensor.from_fractions(tensor),
        name=f"minus({ila.name})" if ila.name else "minus part",
    )
    verify_lts(lts)
    return lts


# ---------------------------------------------------------------------------
# Modules with involution
# ---------------------------------------------------------------------------


@dataclass
class InvolutiveModule:
    """A (g, sigma)-module W with involution tau and W = W+ + W-.

    ``rho[x]`` is the matrix of the action of the x-th basis vector of g;
    ``signature`` holds +1/-1 per basis index of W (tau is diagonal in the
    chosen basis).  Extension modules additionally carry the plus part
    realized inside Hom(m, V): ``plus_basis`` (d x n matrices, echelon) and
    ``plus_space`` for coordinate queries.
    """

    host: InvolutiveLieAlgebra
    dim: int
    rho: RatTensor
    tau: RatTensor
    signature: tuple
    name: str | None = None
    plus_basis: list | None = None
    plus_space: LinearSubspace | None = None

    @property
    def plus_dim(self):
        return sum(1 for s in self.signature if s > 0)

    def minus_positions(self):
        return [i for i, s in enumerate(self.signature) if s < 0]

    def plus_coefficients(self, D: RatTensor):
        if self.plus_space is None:
            raise ValueError("module carries no Hom(m,V) realization of its plus part")
        coeffs = self.plus_space.coefficients(list(D.fractions().ravel()))
        if coeffs is None:
            raise ValueError("operator is not in the plus part")
        return coeffs


def verify_involutive_module(w: InvolutiveModule) -> AxiomReport:
    g = w.host
    report = AxiomReport()
    lhs = exact_einsum("xyt,tab->xyab", g.bracket3, w.rho)
    rhs = exact_einsum("xat,ytb->xyab", w.rho, w.rho) - exact_einsum("yat,xtb->xyab", w.rho, w.rho)
    ce = _counterexample(lhs, rhs, 2, note="rho is a Lie algebra action")
    report.add("action", ce is None, ce)
    ce = _counterexample(
        exact_einsum("at,tb->ab", w.tau, w.tau), RatTensor.identity(w.dim), 1, note="tau^2 = id"
    )
    report.add("involutive", ce is None, ce)
    lhs = exact_einsum("tx,tab->xab", g.sigma, w.rho)
    rhs = exact_einsum("at,xts,sb->xab", w.tau, w.rho, w.tau)
    ce = _counterexample(lhs, rhs, 1, note="rho(sigma X) = tau rho(X) tau")
    report.add("equivariance", ce is None, ce)
    return report


def _well_defined_lift(base, rep, plus_action_of_generator):
    """The map R(e_i,e_j) |-> (r(e_i,e_j), action on the plus part) must kill
    every linear relation among the generators."""
    n = base.dim
    Rt = base.r_tensor()
    cols = [list(Rt[i, j].fractions().ravel()) for i in range(n) for j in range(n)]
    A = [[cols[t][f] for t in range(n * n)] for f in range(n * n)]
    kernel = nullspace(A)
    for cvec in kernel.basis:
        acc_r = RatTensor.zeros((rep.fiber_dim, rep.fiber_dim))
        acc_p = None
        for t, c in enumerate(cvec):
            if c == 0:
                continue
            i, j = divmod(t, n)
            acc_r = acc_r + c * rep.r[i, j]
            img = plus_action_of_generator(i, j)
            acc_p = img * c if acc_p is None else acc_p + c * img
        if not acc_r.is_zero() or (acc_p is not None and not acc_p.is_zero()):
            raise LiftError("r-data is not constant on relations among R(X,Y) operators")


def involutive_extension(rep: Representation, plus="der") -> InvolutiveModule:
    """Extend a representation fiber V to a (g, sigma)-module with involution.

    The plus part is a subspace of Hom(m, V): either the full derivation
    space (``plus='der'``, used by the tensor and hom constructions) or the
    span of the operators D_{X,v}: Y |-> m(X,Y)v (``plus='bracket'``, the
    bracket [V, m] inside the imbedding of the split null extension).
    Action of g = h + m:

        L in h:  a |-> rho_V(L) a,        D |-> rho_V(L) o D - D o L,
        X in m:  a |-> D_{X,a},           D |-> -D(X),

    where rho_V is the lift of r through the R(X,Y) generators (checked to
    be well defined).
    """
    base = rep.base
    g = standard_imbedding(base)
    n, d = base.dim, rep.fiber_dim
    h = g.h_dim
    # generator operators D_{x,v}[a,y] = m(e_x, e_y) v restricted to entry a
    G = exact_einsum("xyav->xvay", rep.m)
    gen_flat = {}
    span = TrackedSpan(d * n)
    for x in range(n):
        for v in range(d):
            vec = list(G[x, v].fractions().ravel())
            gen_flat[(x, v)] = vec
            span.add(vec)
    if plus == "bracket":
        plus_space = LinearSubspace(d * n, span.rows, span.pivots)
    elif plus == "der":
        plus_space = derivation_space(base, rep)
        for (x, v), vec in gen_flat.items():
            if not plus_space.contains(vec):
                raise AssertionError("bracket operators escape the derivation space")
    else:
        raise ValueError("plus must be 'der' or 'bracket'")
    plus_basis = [
        RatTensor.from_fractions(np.array(row, dtype=object).reshape(d, n))
        for row in plus_space.basis
    ]
    p = len(plus_basis)
    w = p + d

    def plus_action_of_generator(i, j):
        # r(e_i,e_j) o D - D o R(e_i,e_j), stacked over the plus basis
        out = np.zeros((p, d * n), dtype=object)
        out[...] = Fraction(0)
        for q, D in enumerate(plus_basis):
            img = exact_einsum("at,ty->ay", rep.r[i, j], D) - exact_einsum(
                "ay,yt->at", D, base.r_tensor()[i, j]
            )
            out[q] = img.fractions().ravel()
        return RatTensor.from_fractions(out)

    _well_defined_lift(base, rep, plus_action_of_generator)

    rho = np.zeros((g.dim, w, w), dtype=object)
    rho[...] = Fraction(0)
    for k in range(h):
        combo = g.r_combos[k]
        rv = RatTensor.zeros((d, d))
        for tag, c in combo.items():
            i, j = divmod(tag, n)
            rv = rv + c * rep.r[i, j]
        rvf = rv.fractions()
        rho[k, p:, p:] = rvf
        for q, D in enumerate(plus_basis):
            img = exact_einsum("at,ty->ay", rv, D)
            acc = img.fractions()
            Lk = g.h_matrices[k]
            acc = acc - exact_einsum("ay,yt->at", D, Lk).fractions()
            coeffs = plus_space.coefficients(list(acc.ravel()))
            if coeffs is None:
                raise LiftError("h-action does not preserve the plus part")
            for t, c in enumerate(coeffs):
                rho[k, t, q] = c
    for x in range(n):
        for v in range(d):
            coeffs = plus_space.coefficients(gen_flat[(x, v)])
            if coeffs is None:
                raise AssertionError("generator operator escaped the plus part")
            for t, c in enumerate(coeffs):
                rho[h + x, t, p + v] = c
        for q, D in enumerate(plus_basis):
            for a in range(d):
                rho[h + x, p + a, q] = -D.fraction(a, x)

    tau = RatTensor.from_fractions(
        np.diag([Fraction(1)] * p + [Fraction(-1)] * d).astype(object)
    )
    module = InvolutiveModule(
        host=g,
        dim=w,
        rho=RatTensor.from_fractions(rho),
        tau=tau,
        signature=tuple([1] * p + [-1] * d),
        name=f"ext({rep.name}, {plus})",
        plus_basis=plus_basis,
        plus_space=plus_space,
    )
    report = verify_involutive_module(module)
    if not report.ok:
        raise AssertionError(f"involutive extension failed verification: {report.failed()}")
    return module


def involutive_module_from_rep(rep: Representation) -> InvolutiveModule:
    """W = [V, m] + V with tau = (+1, -1), the bracket taken inside the
    standard imbedding of the split null extension.

    The split null extension f = m + V is built and imbedded; the operators
    [v, X] of the imbedding restrict (injectively) to Hom(m, V), which is
    where the plus part is realized.  The restriction is cross-checked
    against the generators D_{X,v} before the module is assembled.
    """
    f = split_null_extension(rep)
    b = standard_imbedding(f)
    n, d = rep.base.dim, rep.fiber_dim
    # [v, X] in b is the operator R_f(v, X); restricted to m it equals
    # Y |-> -m(X,Y)v, so the restriction spans the same space as the
    # generators D_{X,v}.  Cross-check dimensions through b.
    Rt_f = f.r_tensor()
    span_b = TrackedSpan(d * n)
    for v in range(d):
        for x in range(n):
            op = Rt_f[n + v, x]  # operator on f
            restricted = [op.fraction(n + a, y) for a in range(d) for y in range(n)]
            vcomp_on_v = [op.fraction(i, n + j) for i in range(n + d) for j in range(d)]
            if any(val != 0 for val in vcomp_on_v):
                raise AssertionError("[V, m] does not kill the fiber")
            span_b.add(restricted)
    module = involutive_extension(rep, plus="bracket")
    if span_b.dim != module.plus_dim:
        raise AssertionError("plus part disagrees with [V, m] inside the imbedding")
    module.name = f"module({rep.name})"
    return module


def adjoint_module(ila: InvolutiveLieAlgebra) -> InvolutiveModule:
    """W = g acting on itself by ad, with tau = sigma."""
    rho = exact_einsum("xel->xle", ila.bracket3)
    return InvolutiveModule(
        host=ila,
        dim=ila.dim,
        rho=rho,
        tau=ila.sigma,
        signature=ila.signature(),
        name=f"adjoint({ila.name})",
    )


def tensor_product_module(wa: InvolutiveModule, wb: InvolutiveModule) -> InvolutiveModule:
    """(V (x) W, rho_V (x) 1 + 1 (x) rho_W, tau_V (x) tau_W)."""
    if wa.host.bracket3 != wb.host.bracket3 or wa.host.sigma != wb.host.sigma:
        raise ValueError("modules live over different hosts")
    da, db = wa.dim, wb.dim
    Ia, Ib = RatTensor.identity(da), RatTensor.identity(db)
    rho = exact_einsum("xac,bd->xabcd", wa.rho, Ib) + exact_einsum("ac,xbd->xabcd", Ia, wb.rho)
    tau = exact_einsum("ac,bd->abcd", wa.tau, wb.tau)
    w = da * db
    sig = tuple(sa * sb for sa in wa.signature for sb in wb.signature)
    return InvolutiveModule(
        host=wa.host,
        dim=w,
        rho=rho.reshape((wa.host.dim, w, w)),
        tau=tau.reshape((w, w)),
        signature=sig,
        name=f"({wa.name}) (x) ({wb.name})",
    )


def hom_module_of(wa: InvolutiveModule, wb: InvolutiveModule) -> InvolutiveModule:
    """Hom(V, W) with (rho phi) = rho_W o phi - phi o rho_V and tau-conjugation."""
    if wa.host.bracket3 != wb.host.bracket3 or wa.host.sigma != wb.host.sigma:
        raise ValueError("modules live over different hosts")
    da, db = wa.dim, wb.dim
    Ia, Ib = RatTensor.identity(da), RatTensor.identity(db)
    rho = exact_einsum("xbg,ac->xbagc", wb.rho, Ia) - exact_einsum("bg,xca->xbagc", Ib, wa.rho)
    tau = exact_einsum("bg,ca->bagc", wb.tau, wa.tau)
    w = da * db
    sig = tuple(sb * sa for sb in wb.signature for sa in wa.signature)
    return InvolutiveModule(
        host=wa.host,
        dim=w,
        rho=rho.reshape((wa.host.dim, w, w)),
        tau=tau.reshape((w, w)),
        signature=sig,
        name=f"hom({wa.name}, {wb.name})",
    )


def rep_from_involutive_module(w: InvolutiveModule) -> Representation:
    """Representation on W^- read off the semidirect product b = g |x W.

    b carries the involution sigma x tau; its -1 eigenspace m + W^- is a
    triple system of split-null shape, whose (r, m) components are

        r(X,Y)w = [[X,Y], w],      m(X,Z)v = [[X,v], Z]   (brackets in b).

    The split-null ideal properties of W^- are checked on the way, and the
    extracted pair is verified as a representation.
    """
    g = w.host
    N, wd = g.dim, w.dim
    Nb = N + wd
    den = g.bracket3.den * w.rho.den // math.gcd(g.bracket3.den, w.rho.den)
    c3b = np.zeros((Nb, Nb, Nb), dtype=object)
    c3b[...] = 0
    c3b[:N, :N, :N] = g.bracket3.num.astype(object) * (den // g.bracket3.den)
    rn = w.rho.num.astype(object) * (den // w.rho.den)
    c3b[:N, N:, N:] = np.einsum("xav->xva", rn)
    c3b[N:, :N, N:] = -np.einsum("xau->uxa", rn)
    c3b = RatTensor(c3b, den)

    mg = [i for i in range(N) if g.signature()[i] < 0]
    wm = [N + p for p in w.minus_positions()]
    n, dm = len(mg), len(wm)

    base = g.base if g.base is not None else minus_part(g)
    if g.base is not None:
        recovered = minus_part(g)
        if recovered != base:
            raise AssertionError("host's minus part does not match its base system")

    idx = np.arange(Nb)
    # r(X,Y) on W^-: [[m_i, m_j], w_b]
    A1 = RatTensor(c3b.num[np.ix_(mg, mg, idx)], c3b.den)
    r_full = exact_einsum("ijt,tbl->ijbl", A1, RatTensor(c3b.num[:, wm, :], c3b.den))
    comp = [l for l in range(Nb) if l not in wm]
    if comp and np.any(r_full.num[:, :, :, comp] != 0):
        raise AssertionError("[[m,m],W^-] escapes W^-")
    r = RatTensor(np.einsum("ijba->ijab", r_full.num[:, :, :, wm]), r_full.den)
    # m(X,Z) on W^-: [[m_i, w_v], m_k]
    B1 = RatTensor(c3b.num[np.ix_(mg, wm, idx)], c3b.den)
    m_full = exact_einsum("ivt,tkl->ivkl", B1, RatTensor(c3b.num[:, mg, :], c3b.den))
    if comp and np.any(m_full.num[:, :, :, comp] != 0):
        raise AssertionError("[[m,W^-],m] escapes W^-")
    m = RatTensor(np.einsum("ivka->ikav", m_full.num[:, :, :, wm]), m_full.den)

    # two or more W^- arguments annihilate the triple bracket
    P = RatTensor(c3b.num[np.ix_(wm, wm, idx)], c3b.den)
    for other in (mg, wm):
        Q = exact_einsum("uvt,tkl->uvkl", P, RatTensor(c3b.num[:, other, :], c3b.den))
        if not Q.is_zero():
            raise AssertionError("brackets with two fiber arguments do not vanish")
    Pm = RatTensor(c3b.num[np.ix_(wm, mg, idx)], c3b.den)
    Q = exact_einsum("uit,tvl->uivl", Pm, RatTensor(c3b.num[:, wm, :], c3b.den))
    if not Q.is_zero():
        raise AssertionError("[W^-, m, W^-] does not vanish")

    rep = Representation(base, dm, r, m, name=f"rep({w.name})" if w.name else None)
    report = verify_representation(rep)
    if not report.ok:
        raise AssertionError(f"extracted pair fails the representation axioms: {report.failed()}")
    return rep
