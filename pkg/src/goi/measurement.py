"""Traces, dialect extensions, log-determinant measurements, orthogonality.

The measurement between two dialect-carrying hermitian contractions is
the series sum_k trace(M^k)/k of their extended product M, equal to
-log det(1 - M) blockwise when the spectral radius of M is certified
below 1, and declared infinite when it is certified at or above 1.  A
certificate that straddles 1 yields the first-class Indeterminate value,
which is never silently collapsed into a logical claim.

Trace convention: locations are counted (the trace of the identity on a
carrier is the carrier size); dialect blocks carry one real weight each
against the block-normalised trace.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .config import struct_tol
from .errors import CarrierError
from .groupoid import Idx, PartialInjectionOp, compose, nilpotency
from .linalg import DenseOperator, spectral_radius, union_carrier

log = logging.getLogger(__name__)

_NORM_SLACK = 1e-6


class _Indeterminate:
    """Outcome of a spectral certificate that straddles 1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Indeterminate"


INDETERMINATE = _Indeterminate()
Meas = Union[float, _Indeterminate]


def is_indeterminate(x) -> bool:
    return x is INDETERMINATE


def meas_close(x: Meas, y: Meas, tol: float) -> bool:
    if is_indeterminate(x) or is_indeterminate(y):
        return False
    if math.isinf(x) or math.isinf(y):
        return math.isinf(x) and math.isinf(y)
    return abs(x - y) <= tol


# ----------------------------------------------------------------------
# Dialects and pseudo-traces


@dataclass(frozen=True)
class Dialect:
    """Finite type-I algebra: a list of matrix-block dimensions.

    ``assignment`` maps each flat coordinate to its block index, so that
    tensor products (whose natural coordinates interleave blocks) stay
    representable without re-indexing.
    """

    blocks: tuple[int, ...]
    assignment: tuple[int, ...] = ()

    def __post_init__(self):
        blocks = tuple(int(k) for k in self.blocks)
        if not blocks or any(k <= 0 for k in blocks):
            raise ValueError("dialect needs at least one positive block")
        object.__setattr__(self, "blocks", blocks)
        if not self.assignment:
            assign = []
            for b, k in enumerate(blocks):
                assign.extend([b] * k)
            object.__setattr__(self, "assignment", tuple(assign))
        else:
            object.__setattr__(self, "assignment", tuple(int(b) for b in self.assignment))
        if len(self.assignment) != sum(blocks):
            raise ValueError("coordinate assignment does not match block dimensions")

    @property
    def dim(self) -> int:
        return len(self.assignment)

    def n_blocks(self) -> int:
        return len(self.blocks)

    def coords_of_block(self, b: int) -> tuple[int, ...]:
        return tuple(c for c, blk in enumerate(self.assignment) if blk == b)

    def is_factor(self) -> bool:
        return len(self.blocks) == 1

    def tensor(self, other: "Dialect") -> "Dialect":
        pairs = [(i, j) for i in range(len(self.blocks)) for j in range(len(other.blocks))]
        pair_pos = {p: t for t, p in enumerate(pairs)}
        blocks = tuple(self.blocks[i] * other.blocks[j] for i, j in pairs)
        assign = []
        for a in range(self.dim):
            for b in range(other.dim):
                assign.append(pair_pos[(self.assignment[a], other.assignment[b])])
        return Dialect(blocks, tuple(assign))

    def oplus(self, other: "Dialect") -> "Dialect":
        blocks = self.blocks + other.blocks
        shift = len(self.blocks)
        assign = self.assignment + tuple(b + shift for b in other.assignment)
        return Dialect(blocks, assign)


TRIVIAL_DIALECT = Dialect((1,))


@dataclass(frozen=True)
class PseudoTrace:
    """One real weight per dialect block against the normalised block trace."""

    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    def unit(self) -> float:
        """Value on the identity: sum of the weights."""
        return float(sum(self.weights))

    def is_faithful(self) -> bool:
        return all(w > 0 for w in self.weights)

    def tensor(self, other: "PseudoTrace") -> "PseudoTrace":
        return PseudoTrace(tuple(a * b for a in self.weights for b in other.weights))

    def oplus(self, other: "PseudoTrace") -> "PseudoTrace":
        return PseudoTrace(self.weights + other.weights)

    def scale(self, lam: float) -> "PseudoTrace":
        return PseudoTrace(tuple(lam * w for w in self.weights))


UNIT_TRACE = PseudoTrace((1.0,))


def pseudo_trace_eval(alpha: PseudoTrace, dialect: Dialect, m) -> complex:
    """Weighted sum of normalised block traces of a dialect-indexed matrix."""
    mat = m.mat if isinstance(m, DenseOperator) else np.asarray(m, dtype=complex)
    if mat.shape != (dialect.dim, dialect.dim):
        raise CarrierError("matrix does not match the dialect dimension")
    if len(alpha.weights) != len(dialect.blocks):
        raise CarrierError("pseudo-trace and dialect block counts differ")
    total = 0.0 + 0j
    for b, k in enumerate(dialect.blocks):
        coords = dialect.coords_of_block(b)
        total += alpha.weights[b] / k * sum(mat[c, c] for c in coords)
    return complex(total)


# ----------------------------------------------------------------------
# Dialectal operators


def dial_labels(carrier, dim: int) -> tuple:
    return tuple((loc, c) for loc in carrier for c in range(dim))


@dataclass(frozen=True)
class DialectalOperator:
    """Hermitian contraction on carrier x dialect with its pseudo-trace.

    The payload is either a dense matrix on (location, coordinate) labels
    or an exact partial injection whose indices are (location, coordinate)
    pairs.  Entries across distinct dialect blocks must vanish: the
    operator lives in the direct-sum algebra.
    """

    carrier: tuple
    dialect: Dialect
    pseudo_trace: PseudoTrace
    op: object  # DenseOperator | PartialInjectionOp

    def __post_init__(self):
        carrier = tuple(self.carrier)
        object.__setattr__(self, "carrier", carrier)
        if len(self.pseudo_trace.weights) != len(self.dialect.blocks):
            raise CarrierError("pseudo-trace does not fit the dialect")
        if isinstance(self.op, DenseOperator):
            want = dial_labels(carrier, self.dialect.dim)
            if self.op.carrier != want:
                raise CarrierError("dense payload labels must be carrier x coordinates, location-major")
            self._check_dense(self.op)
        elif isinstance(self.op, PartialInjectionOp):
            self._check_symbolic(self.op)
        else:
            raise TypeError("payload must be DenseOperator or PartialInjectionOp")

    def _check_dense(self, op: DenseOperator):
        tol = struct_tol()
        if not op.is_hermitian(max(tol, 1e-9)):
            raise CarrierError("dialectal operator must be hermitian")
        from .linalg import operator_norm

        if op.dim and operator_norm(op) > 1.0 + _NORM_SLACK:
            raise CarrierError("dialectal operator must be a contraction")
        for (la, ca), i in zip(op.carrier, range(op.dim)):
            for (lb, cb), j in zip(op.carrier, range(op.dim)):
                if self.dialect.assignment[ca] != self.dialect.assignment[cb] and abs(op.mat[i, j]) > tol:
                    raise CarrierError("operator mixes dialect blocks")

    def _check_symbolic(self, op: PartialInjectionOp):
        if not op.is_finite():
            raise CarrierError("symbolic dialectal payloads must be finite tables")
        locs = set(self.carrier)
        for src, (dst, _) in op.table.items():
            if src.value not in locs or dst.value not in locs:
                raise CarrierError("symbolic payload leaves the carrier")
            if src.slot >= self.dialect.dim or dst.slot >= self.dialect.dim:
                raise CarrierError("symbolic payload leaves the dialect")
            if self.dialect.assignment[src.slot] != self.dialect.assignment[dst.slot]:
                raise CarrierError("operator mixes dialect blocks")

    # -- views ----------------------------------------------------------

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.op, PartialInjectionOp)

    def dense_payload(self) -> DenseOperator:
        if isinstance(self.op, DenseOperator):
            return self.op
        labels = dial_labels(self.carrier, self.dialect.dim)
        pos = {lab: i for i, lab in enumerate(labels)}
        mat = np.zeros((len(labels), len(labels)), dtype=complex)
        for src, (dst, w) in self.op.table.items():
            mat[pos[(dst.value, dst.slot)], pos[(src.value, src.slot)]] = w
        return DenseOperator(labels, mat)

    def as_dense(self) -> "DialectalOperator":
        if not self.is_symbolic:
            return self
        return DialectalOperator(self.carrier, self.dialect, self.pseudo_trace, self.dense_payload())

    def on_carrier(self, carrier) -> "DialectalOperator":
        """Same operator viewed on a larger carrier (zero extension)."""
        carrier = tuple(carrier)
        if set(self.carrier) == set(carrier) and not self.is_symbolic:
            if self.carrier == carrier:
                return self
        if not set(self.carrier) <= set(carrier):
            raise CarrierError("cannot shrink a carrier by zero extension")
        if self.is_symbolic:
            return DialectalOperator(carrier, self.dialect, self.pseudo_trace, self.op)
        labels = dial_labels(carrier, self.dialect.dim)
        return DialectalOperator(carrier, self.dialect, self.pseudo_trace, self.dense_payload().embed(labels))


def zero_dialectal(carrier, dialect: Dialect = TRIVIAL_DIALECT, alpha: PseudoTrace = UNIT_TRACE) -> DialectalOperator:
    carrier = tuple(carrier)
    return DialectalOperator(carrier, dialect, alpha, DenseOperator.zeros(dial_labels(carrier, dialect.dim)))


def from_location_matrix(carrier, mat, dialect: Dialect = TRIVIAL_DIALECT, alpha: PseudoTrace = UNIT_TRACE) -> DialectalOperator:
    """Lift a plain location matrix to a trivial-dialect dialectal operator."""
    carrier = tuple(carrier)
    mat = np.asarray(mat, dtype=complex)
    if dialect.dim != 1:
        raise CarrierError("from_location_matrix expects the trivial dialect")
    return DialectalOperator(carrier, dialect, alpha, DenseOperator(dial_labels(carrier, 1), mat))


# ----------------------------------------------------------------------
# Dialect extension (dagger / ddagger)


def _pair_coord(a: int, b: int, dim_b: int) -> int:
    return a * dim_b + b


def dagger(A: DialectalOperator, d: Dialect, beta: PseudoTrace | None = None) -> DialectalOperator:
    """Extend by the identity on a fresh right dialect: A (x) 1."""
    beta = beta if beta is not None else PseudoTrace((1.0,) * len(d.blocks))
    dialect = A.dialect.tensor(d)
    alpha = A.pseudo_trace.tensor(beta)
    if A.is_symbolic:
        table = {}
        for src, (dst, w) in A.op.table.items():
            for b in range(d.dim):
                table[Idx(src.value, _pair_coord(src.slot, b, d.dim))] = (
                    Idx(dst.value, _pair_coord(dst.slot, b, d.dim)),
                    w,
                )
        return DialectalOperator(A.carrier, dialect, alpha, PartialInjectionOp(table))
    ka, kb = A.dialect.dim, d.dim
    n = len(A.carrier)
    m4 = A.op.mat.reshape(n, ka, n, ka)
    out = np.einsum("iajc,bd->iabjcd", m4, np.eye(kb, dtype=complex))
    mat = out.reshape(n * ka * kb, n * ka * kb)
    return DialectalOperator(A.carrier, dialect, alpha, DenseOperator(dial_labels(A.carrier, ka * kb), mat))


def ddagger(B: DialectalOperator, d: Dialect, alpha_left: PseudoTrace | None = None) -> DialectalOperator:
    """Extend by the identity on a fresh left dialect: swap of 1 (x) B."""
    alpha_left = alpha_left if alpha_left is not None else PseudoTrace((1.0,) * len(d.blocks))
    dialect = d.tensor(B.dialect)
    alpha = alpha_left.tensor(B.pseudo_trace)
    if B.is_symbolic:
        table = {}
        for src, (dst, w) in B.op.table.items():
            for a in range(d.dim):
                table[Idx(src.value, _pair_coord(a, src.slot, B.dialect.dim))] = (
                    Idx(dst.value, _pair_coord(a, dst.slot, B.dialect.dim)),
                    w,
                )
        return DialectalOperator(B.carrier, dialect, alpha, PartialInjectionOp(table))
    ka, kb = d.dim, B.dialect.dim
    n = len(B.carrier)
    m4 = B.op.mat.reshape(n, kb, n, kb)
    out = np.einsum("ibjd,ac->iabjcd", m4, np.eye(ka, dtype=complex))
    mat = out.reshape(n * ka * kb, n * ka * kb)
    return DialectalOperator(B.carrier, dialect, alpha, DenseOperator(dial_labels(B.carrier, ka * kb), mat))


def extended_pair(A: DialectalOperator, B: DialectalOperator) -> tuple[DialectalOperator, DialectalOperator]:
    """A and B extended to the common dialect (A's left, B's right) on the union carrier."""
    carrier = union_carrier(A.carrier, B.carrier)
    Ad = dagger(A, B.dialect, B.pseudo_trace).on_carrier(carrier)
    Bd = ddagger(B, A.dialect, A.pseudo_trace).on_carrier(carrier)
    return Ad, Bd


# ----------------------------------------------------------------------
# ldet and the measurements


def _block_log_sum(one_minus: DenseOperator, carrier, dialect: Dialect, weights: PseudoTrace, absolute: bool) -> Meas:
    total = 0.0
    for b, k in enumerate(dialect.blocks):
        coords = dialect.coords_of_block(b)
        labels = [(loc, c) for loc in carrier for c in coords]
        sub = one_minus.restrict(labels)
        d = complex(np.linalg.det(sub.mat)) if sub.dim else 1.0 + 0j
        if absolute:
            mag = abs(d)
            if mag <= 1e-300:
                return math.inf
            val = math.log(mag)
        else:
            if abs(d.imag) > 1e-9 * max(1.0, abs(d)):
                log.warning("measurement determinant has complex residue %s", d)
            if d.real <= 1e-300:
                return math.inf
            val = math.log(d.real)
        total += -(weights.weights[b] / k) * val
    return total


def _ldet_raw(mat: DenseOperator, carrier, dialect: Dialect, weights: PseudoTrace, absolute: bool) -> Meas:
    if not absolute and mat.dim:
        report = spectral_radius(mat)
        if not report.exact_zero:
            if report.at_least_one():
                return math.inf
            if report.straddles_one():
                return INDETERMINATE
    eye = DenseOperator.identity(mat.carrier)
    return _block_log_sum(eye - mat, carrier, dialect, weights, absolute)


def ldet(M: DialectalOperator, *, absolute: bool = False) -> Meas:
    """sum_k trace(M^k)/k for the operator's trace, i.e. -log det(1 - M).

    Gate: certified spectral radius below 1 gives the finite value; at or
    above 1 gives +inf; a straddling certificate gives Indeterminate.
    With ``absolute=True`` the gate is skipped and |det| is used (the
    Fuglede-Kadison convention), with +inf exactly on singular 1 - M.

    A symbolic payload is classified exactly: a nilpotent partial
    injection has no fixed point in any power, so every trace term
    vanishes and the series is 0; a cyclic one has spectral radius 1.
    """
    if not absolute and M.is_symbolic:
        res = nilpotency(M.op)
        if res.kind == "nilpotent":
            return 0.0
        if res.kind == "cyclic":
            return math.inf
        return INDETERMINATE
    dense = M.as_dense()
    return _ldet_raw(dense.dense_payload(), dense.carrier, dense.dialect, dense.pseudo_trace, absolute)


def ldet_series(M: DialectalOperator, terms: int = 60) -> float:
    """Truncated series sum_{k<=terms} trace(M^k)/k (test oracle)."""
    dense = M.as_dense()
    mat = dense.dense_payload().mat
    n_coords = dense.dialect.dim
    n = len(dense.carrier)
    total = 0.0
    power = np.eye(mat.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        power = power @ mat
        tr = 0.0 + 0j
        m4 = power.reshape(n, n_coords, n, n_coords)
        for b, kb in enumerate(dense.dialect.blocks):
            coords = dense.dialect.coords_of_block(b)
            block_tr = sum(m4[i, c, i, c] for i in range(n) for c in coords)
            tr += dense.pseudo_trace.weights[b] / kb * block_tr
        total += tr.real / k
    return total


def _symbolic_product_meas(A: DialectalOperator, B: DialectalOperator) -> Meas | None:
    if not (A.is_symbolic and B.is_symbolic):
        return None
    Ad = dagger(A, B.dialect, B.pseudo_trace)
    Bd = ddagger(B, A.dialect, A.pseudo_trace)
    prod = compose(Ad.op, Bd.op)
    res = nilpotency(prod)
    if res.kind == "nilpotent":
        return 0.0
    if res.kind == "cyclic":
        return math.inf
    return INDETERMINATE


def meas_mat(A: DialectalOperator, B: DialectalOperator) -> Meas:
    """ldet of 1 minus the dialect-extended product, with the spectral gate.

    On two symbolic payloads the answer is exact: nilpotent products give
    0, cyclic products give +inf (a partial-isometry product has spectral
    radius 1 exactly when some power survives forever).
    """
    exact = _symbolic_product_meas(A, B)
    if exact is not None:
        return exact
    Ad, Bd = extended_pair(A.as_dense(), B.as_dense())
    prod_mat = Ad.dense_payload() @ Bd.dense_payload()
    return _ldet_raw(prod_mat, Ad.carrier, Ad.dialect, Ad.pseudo_trace, absolute=False)


def meas_hyp(u, v, blocks=None) -> Meas:
    """-log of the positive determinant of 1 - uv (counting trace).

    ``u`` and ``v`` are plain DenseOperators on a common label set, or
    dialectal operators (then their extensions and weights are used and
    the determinant is still taken in absolute value, without a gate).
    """
    if isinstance(u, DialectalOperator) or isinstance(v, DialectalOperator):
        Ad, Bd = extended_pair(u.as_dense(), v.as_dense())
        prod = Ad.dense_payload() @ Bd.dense_payload()
        eye = DenseOperator.identity(prod.carrier)
        return _block_log_sum(eye - prod, Ad.carrier, Ad.dialect, Ad.pseudo_trace, absolute=True)
    carrier = union_carrier(u.carrier, v.carrier)
    ue = u.embed(carrier)
    ve = v.embed(carrier)
    prod = ue @ ve
    eye = DenseOperator.identity(carrier)
    one_minus = eye - prod
    d = abs(complex(np.linalg.det(one_minus.mat))) if one_minus.dim else 1.0
    if d <= 1e-300:
        return math.inf
    return -math.log(d)


# the measurement module deliberately has no densities on Project; the
# scalar measurements below duck-type on .wager / .dialectal


def sca_mat(a, b) -> Meas:
    """alpha(1) * wager_b + beta(1) * wager_a + meas_mat(A, B)."""
    A, B = a.dialectal, b.dialectal
    m = meas_mat(A, B)
    if is_indeterminate(m):
        return INDETERMINATE
    if math.isinf(a.wager) or math.isinf(b.wager) or math.isinf(m):
        return math.inf
    return A.pseudo_trace.unit() * b.wager + B.pseudo_trace.unit() * a.wager + m


def sca_hyp(a, b) -> Meas:
    """Determinant-based variant: wager terms plus meas_hyp of the extensions."""
    A, B = a.dialectal, b.dialectal
    m = meas_hyp(A, B)
    if math.isinf(a.wager) or math.isinf(b.wager) or (not is_indeterminate(m) and math.isinf(m)):
        return math.inf
    return A.pseudo_trace.unit() * b.wager + B.pseudo_trace.unit() * a.wager + m


def sca_verdict(value: Meas, tol: float | None = None) -> tuple[str, bool]:
    """Classify a scalar measurement for the orthogonality test.

    Returns (verdict, suspicious): verdict in {"orthogonal", "zero",
    "infinite", "indeterminate"}; suspicious flags magnitudes within a
    decade of the zero tolerance.
    """
    tol = struct_tol() if tol is None else tol
    if is_indeterminate(value):
        return "indeterminate", False
    if math.isinf(value):
        return "infinite", False
    if abs(value) <= tol:
        return "zero", False
    return "orthogonal", abs(value) <= 10 * tol


def orthogonal_mat(a, b, tol: float | None = None) -> bool:
    return sca_verdict(sca_mat(a, b), tol)[0] == "orthogonal"


def orthogonal_hyp(a, b, tol: float | None = None) -> bool:
    return sca_verdict(sca_hyp(a, b), tol)[0] == "orthogonal"


# ----------------------------------------------------------------------
# Variants (dialect isomorphisms)


@dataclass(frozen=True)
class DialectIso:
    """Block permutation plus one unitary per (target) block.

    Sends block ``perm[i]`` of the source dialect to position ``i``; the
    unitary ``unitaries[i]`` rotates inside that block.
    """

    perm: tuple[int, ...]
    unitaries: tuple

    @staticmethod
    def identity(dialect: Dialect) -> "DialectIso":
        return DialectIso(tuple(range(len(dialect.blocks))), tuple(np.eye(k) for k in dialect.blocks))


def apply_variant(A: DialectalOperator, iso: DialectIso) -> DialectalOperator:
    """Conjugate the dialect by an isomorphism; pseudo-trace follows."""
    src = A.as_dense()
    old = src.dialect
    new_blocks = tuple(old.blocks[p] for p in iso.perm)
    new_dialect = Dialect(new_blocks)
    new_weights = PseudoTrace(tuple(src.pseudo_trace.weights[p] for p in iso.perm))
    K = old.dim
    W = np.zeros((K, K), dtype=complex)
    for new_b, old_b in enumerate(iso.perm):
        old_coords = old.coords_of_block(old_b)
        new_coords = new_dialect.coords_of_block(new_b)
        U = np.asarray(iso.unitaries[new_b], dtype=complex)
        if U.shape != (len(old_coords), len(old_coords)):
            raise CarrierError("unitary does not fit its block")
        for r, nc in enumerate(new_coords):
            for s, oc in enumerate(old_coords):
                W[nc, oc] = U[r, s]
    n = len(src.carrier)
    big = np.kron(np.eye(n, dtype=complex), W)
    mat = big @ src.dense_payload().mat @ big.conj().T
    return DialectalOperator(src.carrier, new_dialect, new_weights, DenseOperator(dial_labels(src.carrier, K), mat))


def variant_invariance_residual(a, iso: DialectIso, probe) -> float:
    """|sca(a, probe) - sca(a_variant, probe)| with infinities matched."""
    from .projects import Project  # local import to avoid a cycle

    base = sca_mat(a, probe)
    varied = Project(a.wager, apply_variant(a.dialectal, iso))
    other = sca_mat(varied, probe)
    if is_indeterminate(base) or is_indeterminate(other):
        return math.inf
    if math.isinf(base) or math.isinf(other):
        return 0.0 if math.isinf(base) and math.isinf(other) else math.inf
    return abs(base - other)
