"""Dense complex-matrix kernel.

Operators are square complex matrices whose rows and columns are labelled
by an ordered carrier of opaque tokens.  All arithmetic aligns operands by
label, never by raw position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import struct_tol
from .errors import CarrierError, NumericError

Label = object  # opaque totally-ordered token; ints and tuples in practice

_NORM_CAP = 200_000
_NORM_RTOL = 1e-10


def _sorted_labels(labels: Iterable) -> tuple:
    labels = list(labels)
    try:
        return tuple(sorted(labels))
    except TypeError:
        return tuple(sorted(labels, key=repr))


@dataclass(frozen=True)
class DenseOperator:
    """Square complex matrix indexed by an ordered carrier of labels."""

    carrier: tuple
    mat: np.ndarray

    def __post_init__(self):
        carrier = tuple(self.carrier)
        mat = np.array(self.mat, dtype=np.complex128)
        n = len(carrier)
        if mat.shape != (n, n):
            raise CarrierError(f"matrix shape {mat.shape} does not fit carrier of size {n}")
        if len(set(carrier)) != n:
            raise CarrierError("carrier labels must be distinct")
        if n and not (np.all(np.isfinite(mat.real)) and np.all(np.isfinite(mat.imag))):
            raise NumericError("operator entries must be finite")
        mat.setflags(write=False)
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "mat", mat)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(carrier: Iterable) -> "DenseOperator":
        carrier = tuple(carrier)
        return DenseOperator(carrier, np.zeros((len(carrier), len(carrier)), dtype=np.complex128))

    @staticmethod
    def identity(carrier: Iterable) -> "DenseOperator":
        carrier = tuple(carrier)
        return DenseOperator(carrier, np.eye(len(carrier), dtype=np.complex128))

    @staticmethod
    def diagonal(carrier: Iterable, values: Sequence[complex]) -> "DenseOperator":
        carrier = tuple(carrier)
        return DenseOperator(carrier, np.diag(np.array(values, dtype=np.complex128)))

    @staticmethod
    def from_entries(carrier: Iterable, entries: dict) -> "DenseOperator":
        """Build from a {(row_label, col_label): value} mapping."""
        carrier = tuple(carrier)
        pos = {l: i for i, l in enumerate(carrier)}
        mat = np.zeros((len(carrier), len(carrier)), dtype=np.complex128)
        for (r, c), v in entries.items():
            mat[pos[r], pos[c]] = v
        return DenseOperator(carrier, mat)

    # -- basic structure ----------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.carrier)

    def index_of(self, label) -> int:
        try:
            return self.carrier.index(label)
        except ValueError:
            raise CarrierError(f"label {label!r} not in carrier") from None

    def aligned_to(self, carrier: Sequence) -> np.ndarray:
        """Matrix re-ordered to the given carrier (same label set)."""
        carrier = tuple(carrier)
        if carrier == self.carrier:
            return self.mat
        if set(carrier) != set(self.carrier):
            raise CarrierError("carriers hold different label sets")
        perm = [self.carrier.index(l) for l in carrier]
        return self.mat[np.ix_(perm, perm)]

    def embed(self, carrier: Sequence) -> "DenseOperator":
        """Zero-padded copy on a larger carrier."""
        carrier = tuple(carrier)
        if not set(self.carrier) <= set(carrier):
            raise CarrierError("embedding carrier must contain the original")
        mat = np.zeros((len(carrier), len(carrier)), dtype=np.complex128)
        idx = [carrier.index(l) for l in self.carrier]
        mat[np.ix_(idx, idx)] = self.mat
        return DenseOperator(carrier, mat)

    def restrict(self, labels: Iterable) -> "DenseOperator":
        labels = tuple(labels)
        idx = [self.index_of(l) for l in labels]
        return DenseOperator(labels, self.mat[np.ix_(idx, idx)])

    # -- arithmetic sugar ----------------------------------------------

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.carrier, self.mat + other.aligned_to(self.carrier))

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.carrier, self.mat - other.aligned_to(self.carrier))

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        return mat_mul(self, other)

    def scale(self, z: complex) -> "DenseOperator":
        return DenseOperator(self.carrier, z * self.mat)

    def max_abs_diff(self, other: "DenseOperator") -> float:
        d = self.mat - other.aligned_to(self.carrier)
        return float(np.max(np.abs(d))) if d.size else 0.0

    # -- predicates ----------------------------------------------------

    def is_hermitian(self, tol: float | None = None) -> bool:
        tol = struct_tol() if tol is None else tol
        if not self.dim:
            return True
        return float(np.max(np.abs(self.mat - self.mat.conj().T))) <= tol

    def is_projection(self, tol: float | None = None) -> bool:
        tol = struct_tol() if tol is None else tol
        if not self.dim:
            return True
        return (
            self.is_hermitian(tol)
            and float(np.max(np.abs(self.mat @ self.mat - self.mat))) <= tol
        )

    def is_partial_isometry(self, tol: float | None = None) -> bool:
        tol = struct_tol() if tol is None else tol
        if not self.dim:
            return True
        a = self.mat
        return float(np.max(np.abs(a @ a.conj().T @ a - a))) <= tol


@dataclass(frozen=True)
class SpectralReport:
    """Certified spectral-radius estimate.

    ``spectral_radius`` is a rigorous upper bound (Gelfand, Frobenius
    norm of repeated squares); ``lower_bound`` comes from trace powers.
    """

    norm: float
    spectral_radius: float
    lower_bound: float
    exact_zero: bool = False
    note: str = ""

    def below_one(self) -> bool:
        return self.exact_zero or self.spectral_radius < 1.0

    def at_least_one(self) -> bool:
        return (not self.below_one()) and self.lower_bound >= 1.0 - 1e-12

    def straddles_one(self) -> bool:
        return not self.below_one() and not self.at_least_one()


def mat_mul(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    """Label-aligned matrix product; carriers must hold the same labels."""
    return DenseOperator(a.carrier, a.mat @ b.aligned_to(a.carrier))


def adjoint(a: DenseOperator) -> DenseOperator:
    return DenseOperator(a.carrier, a.mat.conj().T)


def operator_norm(a: DenseOperator) -> float:
    """Largest singular value by power iteration on a*a."""
    n = a.dim
    if n == 0:
        return 0.0
    h = a.mat.conj().T @ a.mat
    fro = float(np.linalg.norm(h))
    if fro == 0.0:
        return 0.0
    rng = np.random.default_rng(0x5EED)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(_NORM_CAP):
        w = h @ v
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            # v happened to live in the kernel; restart deterministically
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            v /= np.linalg.norm(v)
            continue
        lam = float(np.real(np.vdot(v, w)))
        v = w / nw
        resid = float(np.linalg.norm(h @ v - lam * v))
        if resid <= _NORM_RTOL * max(lam, 1e-300):
            return math.sqrt(max(lam, 0.0))
    raise NumericError("power iteration did not converge")


def spectral_radius(a: DenseOperator, tol: float = 1e-9) -> SpectralReport:
    """Gelfand estimate by repeated squaring with certified bounds."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = a.dim
    if n == 0 or not np.any(a.mat):
        return SpectralReport(0.0, 0.0, 0.0, exact_zero=True, note="zero operator")
    nrm = operator_norm(a)

    b = np.array(a.mat)
    log_norm = 0.0  # log of the scale factor pulled out of b
    power = 1
    upper = float(np.linalg.norm(b))  # Frobenius bound at power 1
    lower = abs(np.trace(b)) / n
    note = ""
    for _ in range(60):
        b2 = b @ b
        fro = float(np.linalg.norm(b2))
        power *= 2
        if fro == 0.0:
            return SpectralReport(nrm, 0.0, 0.0, exact_zero=True, note="nilpotent: some power vanishes")
        log_norm = 2.0 * log_norm + math.log(fro)
        b = b2 / fro
        cand = math.exp(log_norm / power) * (1.0 + 1e-13)
        tr_b = abs(np.trace(b))
        if tr_b > 0:
            lower = max(lower, math.exp((math.log(tr_b) + log_norm - math.log(n)) / power))
        if cand < upper:
            if upper - cand <= tol * max(cand, 1e-300) and power >= 16:
                upper = cand
                break
            upper = cand
    if lower > upper:
        lower = upper
    if 0.999 <= upper and lower <= 1.001 and not (upper < 1.0 or lower >= 1.0 - 1e-12):
        note = "bounds straddle 1"
    return SpectralReport(nrm, upper, lower, note=note)


def plain_det(a: DenseOperator) -> complex:
    """Ordinary determinant via pivoted elimination."""
    if a.dim == 0:
        return 1.0 + 0j
    return complex(np.linalg.det(a.mat))


def fk_det(a: DenseOperator, blocks: Sequence[tuple[int, float]] | None = None) -> float:
    """Positive determinant exp(tr log |a|) for a given trace.

    Without ``blocks`` the trace is the normalized one, so the result is
    ``|det a| ** (1/n)``.  With ``blocks`` (a partition of the carrier
    into contiguous runs with one weight each) the value is
    ``prod_b |det a_b| ** (weight_b / size_b)``; the matrix must be
    block diagonal for that partition.  Singular input yields 0.
    """
    n = a.dim
    if n == 0:
        return 1.0
    if blocks is None:
        blocks = [(n, 1.0)]
    if sum(size for size, _ in blocks) != n:
        raise CarrierError("block sizes must partition the carrier")
    if len(blocks) > 1:
        mask = np.zeros((n, n), dtype=bool)
        offset = 0
        for size, _ in blocks:
            mask[offset : offset + size, offset : offset + size] = True
            offset += size
        stray = float(np.max(np.abs(np.where(mask, 0.0, a.mat)))) if n else 0.0
        if stray > 1e-7:
            raise NumericError("matrix is not block diagonal for the given partition")
    log_total = 0.0
    offset = 0
    for size, weight in blocks:
        sub = a.mat[offset : offset + size, offset : offset + size]
        d = abs(np.linalg.det(sub)) if size else 1.0
        if d == 0.0:
            return 0.0
        log_total += (weight / size) * math.log(d)
        offset += size
    return math.exp(log_total)


def direct_sum(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    if set(a.carrier) & set(b.carrier):
        raise CarrierError("direct sum requires disjoint carriers")
    carrier = a.carrier + b.carrier
    n, m = a.dim, b.dim
    mat = np.zeros((n + m, n + m), dtype=np.complex128)
    mat[:n, :n] = a.mat
    mat[n:, n:] = b.mat
    return DenseOperator(carrier, mat)


def tensor(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    carrier = tuple((la, lb) for la in a.carrier for lb in b.carrier)
    return DenseOperator(carrier, np.kron(a.mat, b.mat))


def union_carrier(*carriers: Sequence) -> tuple:
    seen: list = []
    have = set()
    for carrier in carriers:
        for l in carrier:
            if l not in have:
                have.add(l)
                seen.append(l)
    return tuple(seen)


def projection_onto(carrier: Sequence, labels: Iterable) -> DenseOperator:
    labels = set(labels)
    return DenseOperator.diagonal(carrier, [1.0 if l in labels else 0.0 for l in carrier])
