"""Solutions of the feedback equation.

Three faces of the same operation:

* ``ex_goi1``: exact alternating-path summation for partial injections,
  defined whenever the product of the two operators is nilpotent;
* ``feedback_dense``: the resolvent form (p + p''v)(1 - uv)^-1(up + p'')
  for dense contractions, defined whenever 1 - uv is invertible;
* ``plug_dialectal``: the dialect-extended execution of two hermitian
  contractions, gated by a certified spectral radius below 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CarrierError,
    FeedbackSingularError,
    IndeterminateError,
    NotNilpotentError,
    NotOrthogonalError,
)
from .groupoid import (
    PartialInjectionOp,
    Region,
    compose,
    nilpotency,
    restrict_outside,
    sum_disjoint,
)
from .linalg import DenseOperator, operator_norm, projection_onto, spectral_radius, union_carrier
from .measurement import (
    DialectalOperator,
    dagger,
    ddagger,
    extended_pair,
    is_indeterminate,
    meas_hyp,
    meas_mat,
)

_NORM_SLACK = 1e-6


@dataclass(frozen=True)
class InterfaceSplit:
    """Partition of a carrier into the kept part and the fed-back part."""

    kept: frozenset
    cut: frozenset

    def __post_init__(self):
        object.__setattr__(self, "kept", frozenset(self.kept))
        object.__setattr__(self, "cut", frozenset(self.cut))
        if self.kept & self.cut:
            raise CarrierError("kept and cut parts must be disjoint")


# ----------------------------------------------------------------------
# Exact execution


def ex_goi1(u: PartialInjectionOp, v: PartialInjectionOp, cut_region=None) -> PartialInjectionOp:
    """(1-p) sum_k (u v)^k u (1-p), p the projection onto the cut region.

    ``cut_region`` is a Region or a projection operator; by default the
    support of v.  Computed by exact summation of the alternating paths
    that start and end outside the cut region; requires u v nilpotent.
    """
    if cut_region is None:
        region = Region.from_support(v)
    elif isinstance(cut_region, PartialInjectionOp):
        region = Region.from_support(cut_region)
    else:
        region = cut_region
    uv = compose(u, v)
    res = nilpotency(uv)
    if not res.is_nilpotent:
        raise NotNilpotentError(f"product is {res.kind}", witness=res.witness)
    total = PartialInjectionOp.zero()
    term = u
    for _ in range(res.degree or 1):
        kept = restrict_outside(term, region)
        if not kept.is_zero():
            total = sum_disjoint(total, kept)
        term = compose(uv, term)
        if term.is_zero():
            break
    return total


def alternating_execution(U: PartialInjectionOp, V: PartialInjectionOp, region: Region) -> PartialInjectionOp:
    """Sum of every alternating U/V word, restricted to end outside the region.

    This is the expansion of (pU + q)(1 - VU)^-1(p + Vq); requires UV
    nilpotent.
    """
    uv = compose(U, V)
    res = nilpotency(uv)
    if not res.is_nilpotent:
        raise NotOrthogonalError(f"product is {res.kind}")
    total = PartialInjectionOp.zero()
    for first in (U, V):
        term = first
        second = V if first is U else U
        flip = {id(U): V, id(V): U}
        nxt = second
        while not term.is_zero():
            kept = restrict_outside(term, region)
            if not kept.is_zero():
                total = sum_disjoint(total, kept)
            term = compose(nxt, term)
            nxt = flip[id(nxt)]
    return total


# ----------------------------------------------------------------------
# Dense feedback


def feedback_dense(u: DenseOperator, v: DenseOperator, split: InterfaceSplit) -> DenseOperator:
    """(p + p''v)(1 - uv)^-1(up + p'') restricted to the kept carrier.

    ``u`` acts on kept + cut, ``v`` on cut + (its own kept part p'').
    """
    if split.cut - set(u.carrier):
        raise CarrierError("cut labels must belong to u's carrier")
    if operator_norm(u) > 1.0 + _NORM_SLACK or operator_norm(v) > 1.0 + _NORM_SLACK:
        raise CarrierError("feedback operands must be contractions")
    carrier = union_carrier(u.carrier, v.carrier)
    ue = u.embed(carrier).mat
    ve = v.embed(carrier).mat
    kept_u = [l for l in carrier if l in set(u.carrier) and l not in split.cut]
    kept_v = [l for l in carrier if l in set(v.carrier) and l not in split.cut]
    p = projection_onto(carrier, kept_u).mat
    ppp = projection_onto(carrier, kept_v).mat
    n = len(carrier)
    one_minus = np.eye(n, dtype=complex) - ue @ ve
    try:
        inv = np.linalg.solve(one_minus, np.eye(n, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise FeedbackSingularError("1 - uv is singular") from exc
    resid = float(np.max(np.abs(one_minus @ inv - np.eye(n))))
    if resid > 1e-6:
        raise FeedbackSingularError(f"1 - uv is numerically singular (residual {resid:.2e})")
    w = (p + ppp @ ve) @ inv @ (ue @ p + ppp)
    kept_all = [l for l in carrier if l not in split.cut and (l in set(u.carrier) or l in set(v.carrier))]
    full = DenseOperator(tuple(carrier), w)
    return full.restrict(kept_all)


# ----------------------------------------------------------------------
# Dialectal execution


def plug_dialectal(A: DialectalOperator, B: DialectalOperator) -> DialectalOperator:
    """Execution A . B over the shared carrier, dialects tensored.

    With no shared carrier this degenerates to the union A^dag + B^ddag.
    Symbolic payloads are plugged exactly by alternating path summation;
    dense payloads use the resolvent.  Gate: spectral radius of the
    extended product certified below 1, otherwise NotOrthogonalError
    (certified at or above 1) or IndeterminateError (straddling).
    """
    shared = [l for l in A.carrier if l in set(B.carrier)]
    result_carrier = tuple(l for l in A.carrier if l not in set(shared)) + tuple(
        l for l in B.carrier if l not in set(shared)
    )
    if A.is_symbolic and B.is_symbolic:
        Ad = dagger(A, B.dialect, B.pseudo_trace)
        Bd = ddagger(B, A.dialect, A.pseudo_trace)
        region = Region.from_locations(shared)
        op = alternating_execution(Ad.op, Bd.op, region)
        return DialectalOperator(result_carrier, Ad.dialect, Ad.pseudo_trace, op)

    Ad, Bd = extended_pair(A.as_dense(), B.as_dense())
    carrier = Ad.carrier
    amat = Ad.dense_payload()
    bmat = Bd.dense_payload()
    prod = amat @ bmat
    if prod.dim:
        report = spectral_radius(prod)
        if not report.exact_zero:
            if report.at_least_one():
                raise NotOrthogonalError("extended product has spectral radius >= 1")
            if report.straddles_one():
                raise IndeterminateError("spectral certificate straddles 1")
    dim = Ad.dialect.dim
    shared_set = set(shared)
    p_labels = [(l, c) for l in carrier if l in set(A.carrier) - shared_set for c in range(dim)]
    q_labels = [(l, c) for l in carrier if l in set(B.carrier) - shared_set for c in range(dim)]
    labels = amat.carrier
    p = projection_onto(labels, p_labels).mat
    q = projection_onto(labels, q_labels).mat
    n = len(labels)
    one_minus = np.eye(n, dtype=complex) - bmat.mat @ amat.mat
    try:
        inv = np.linalg.solve(one_minus, np.eye(n, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise NotOrthogonalError("1 - BA is singular") from exc
    w = (p @ amat.mat + q) @ inv @ (p + bmat.mat @ q)
    full = DenseOperator(labels, w)
    kept_labels = tuple((l, c) for l in result_carrier for c in range(dim))
    out = full.restrict(kept_labels)
    # round off the hermitian defect introduced by the solve
    sym = DenseOperator(out.carrier, 0.5 * (out.mat + out.mat.conj().T))
    if out.max_abs_diff(sym) > 1e-7:
        raise NotOrthogonalError("execution result is not hermitian")
    return DialectalOperator(result_carrier, Ad.dialect, Ad.pseudo_trace, sym)


# ----------------------------------------------------------------------
# Residuals


def adjunction_residual_hyp(u: DenseOperator, v: DenseOperator, w: DenseOperator, split: InterfaceSplit) -> float:
    """|meas(u, v + w) - meas(u, v) - meas(u . v, w)| for the determinant measurement."""
    carrier = tuple(union_carrier(u.carrier, v.carrier, w.carrier))
    ue = u.embed(carrier)
    lhs = meas_hyp(ue, v.embed(carrier) + w.embed(carrier))
    first = meas_hyp(u, v)
    ex = feedback_dense(u, v, split)
    second = meas_hyp(ex, w)
    if any(math.isinf(x) for x in (lhs, first, second)):
        return 0.0 if math.isinf(lhs) and math.isinf(first + second) else math.inf
    return abs(lhs - (first + second))


def union_dialectal(G: DialectalOperator, H: DialectalOperator) -> DialectalOperator:
    """Disjoint-carrier union G^dag + H^ddag with tensored dialect."""
    if set(G.carrier) & set(H.carrier):
        raise CarrierError("union requires disjoint carriers")
    Gd, Hd = extended_pair(G.as_dense(), H.as_dense())
    mat = Gd.dense_payload() + Hd.dense_payload()
    return DialectalOperator(Gd.carrier, Gd.dialect, Gd.pseudo_trace, mat)


def adjunction_residual_mat(F: DialectalOperator, G: DialectalOperator, H: DialectalOperator) -> float:
    """|meas(F, G u H) - rho_H(1) meas(F, G) - meas(H, F . G)|."""
    lhs = meas_mat(F, union_dialectal(G, H))
    mg = meas_mat(F, G)
    plugged = plug_dialectal(F, G)
    mh = meas_mat(H, plugged)
    vals = [lhs, mg, mh]
    if any(is_indeterminate(x) for x in vals):
        return math.inf
    if any(math.isinf(x) for x in vals):
        return 0.0 if math.isinf(lhs) and (math.isinf(mg) or math.isinf(mh)) else math.inf
    return abs(lhs - (H.pseudo_trace.unit() * mg + mh))


def associativity_residual(a: DialectalOperator, f: DialectalOperator, b: DialectalOperator):
    """Distance between (a.f).b and a.(f.b); exact bool on symbolic payloads."""
    left = plug_dialectal(plug_dialectal(a, f), b)
    right = plug_dialectal(a, plug_dialectal(f, b))
    if left.is_symbolic and right.is_symbolic:
        return left.op == right.op
    lmat = left.as_dense().dense_payload()
    rmat = right.as_dense().dense_payload()
    return lmat.max_abs_diff(rmat)
