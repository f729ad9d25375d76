"""Truncated Fock-space oracle: brute-force states and evolution.

Small mode counts only. Everything here is deliberately independent of the
Gaussian engine: operators are sparse matrices, evolution is a matrix
exponential, moments are direct sums over basis occupations. Agreement
between the two routes is what certifies the engine.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from .errors import CutoffError, DomainError, NumericsError, ValidationError

MAX_MODES = 4
MAX_DIMENSION = 1_000_000

# Probability allowed at the cutoff level of a two-mode squeezed vacuum.
TMSV_TAIL = 1e-10

# Unitarity drift tolerated after a matrix-exponential step.
NORM_DRIFT = 1e-10


class FockSpace:
    """Tensor product of truncated single-mode Fock spaces.

    cutoffs[i] is the largest occupation kept in mode i. Basis order is
    lexicographic in the occupation tuple (n_1, ..., n_M), mode 1 slowest,
    which matches a chained Kronecker product with mode 1 leftmost.
    """

    def __init__(self, cutoffs: Sequence[int]):
        cutoffs = tuple(int(c) for c in cutoffs)
        if not 1 <= len(cutoffs) <= MAX_MODES:
            raise DomainError(f"between 1 and {MAX_MODES} modes supported, got {len(cutoffs)}")
        if any(c < 1 for c in cutoffs):
            raise CutoffError(f"every cutoff must be >= 1, got {cutoffs}")
        self.cutoffs = cutoffs
        self.dims = tuple(c + 1 for c in cutoffs)
        self.dim = int(np.prod(self.dims))
        if self.dim > MAX_DIMENSION:
            raise CutoffError(f"dimension {self.dim} exceeds the {MAX_DIMENSION} limit")

    @property
    def num_modes(self) -> int:
        return len(self.cutoffs)

    def occupation(self, mode: int) -> np.ndarray:
        """Occupation of one mode along the whole basis, as a flat vector."""
        d = self.dims
        inner = int(np.prod(d[mode + 1:], dtype=np.int64)) if mode + 1 < len(d) else 1
        outer = int(np.prod(d[:mode], dtype=np.int64)) if mode > 0 else 1
        return np.tile(np.repeat(np.arange(d[mode]), inner), outer).astype(float)

    def annihilation(self, mode: int) -> sp.csr_matrix:
        """Sparse annihilation operator for one mode."""
        single = sp.diags(np.sqrt(np.arange(1, self.dims[mode])), offsets=1, format="csr")
        op = sp.identity(1, format="csr")
        for m, d in enumerate(self.dims):
            block = single if m == mode else sp.identity(d, format="csr")
            op = sp.kron(op, block, format="csr")
        return op

    def creation(self, mode: int) -> sp.csr_matrix:
        return self.annihilation(mode).T.tocsr()

    def basis_index(self, occupations: Sequence[int]) -> int:
        occupations = tuple(int(n) for n in occupations)
        if len(occupations) != self.num_modes:
            raise DomainError("occupation tuple length does not match the mode count")
        for n, c in zip(occupations, self.cutoffs):
            if not 0 <= n <= c:
                raise CutoffError(f"occupation {occupations} outside cutoffs {self.cutoffs}")
        return int(np.ravel_multi_index(occupations, self.dims))


class FockState:
    """Normalized state vector over a :class:`FockSpace`."""

    def __init__(self, space: FockSpace, amplitudes: np.ndarray, normalize: bool = False):
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape != (space.dim,):
            raise ValidationError(f"amplitude vector has shape {amplitudes.shape}, expected {(space.dim,)}")
        norm = float(np.linalg.norm(amplitudes))
        if norm == 0.0:
            raise ValidationError("state vector is zero")
        if normalize:
            amplitudes = amplitudes / norm
        elif abs(norm - 1.0) > 1e-8:
            raise ValidationError(f"state vector norm {norm:.12g} is not 1")
        self.space = space
        self.amplitudes = amplitudes

    @classmethod
    def vacuum(cls, space: FockSpace) -> "FockState":
        amp = np.zeros(space.dim, dtype=complex)
        amp[0] = 1.0
        return cls(space, amp)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def tail_population(self) -> float:
        """Largest probability of any mode sitting exactly at its cutoff."""
        probs = self.probabilities()
        worst = 0.0
        for m in range(self.space.num_modes):
            at_top = self.space.occupation(m) == self.space.cutoffs[m]
            worst = max(worst, float(probs[at_top].sum()))
        return worst


def two_mode_squeezed_vacuum(space: FockSpace, mode_a: int, mode_b: int,
                             ratio: float) -> FockState:
    """Two-mode squeezed vacuum with amplitudes proportional to ratio^n on |n, n>.

    ratio = -tanh(r) for squeeze phase pi (the Bogoliubov ground-state case).
    The cutoff of both modes must keep the exact occupation tail at or below
    TMSV_TAIL.
    """
    if mode_a == mode_b:
        raise DomainError("two-mode squeezed vacuum needs two distinct modes")
    if not abs(ratio) < 1.0:
        raise DomainError(f"|ratio| must be < 1, got {ratio!r}")
    n_top = min(space.cutoffs[mode_a], space.cutoffs[mode_b])
    if ratio != 0.0:
        rho2 = ratio * ratio
        # exact geometric occupation law: P(n) = (1 - rho^2) rho^(2n)
        required = math.ceil(math.log(TMSV_TAIL / (1.0 - rho2)) / math.log(rho2))
        if n_top < required:
            raise CutoffError(
                f"cutoff {n_top} leaves tail above {TMSV_TAIL:g}; need n_max >= {required}")
    amp = np.zeros(space.dim, dtype=complex)
    occ = [0] * space.num_modes
    for n in range(n_top + 1):
        occ[mode_a] = n
        occ[mode_b] = n
        amp[space.basis_index(occ)] = ratio ** n
    return FockState(space, amp, normalize=True)


def evolve(state: FockState, hamiltonian: sp.spmatrix, t: float) -> FockState:
    """Evolve by exp(-i H t). H is in angular-frequency units and must be Hermitian."""
    if not math.isfinite(t):
        raise DomainError(f"evolution time must be finite, got {t!r}")
    h = sp.csc_matrix(hamiltonian)
    if h.shape != (state.space.dim, state.space.dim):
        raise ValidationError(f"Hamiltonian shape {h.shape} does not match dimension {state.space.dim}")
    drift = abs(h - h.conjugate().T)
    scale = max(1.0, abs(h).max())
    if drift.count_nonzero() and drift.max() > 1e-12 * scale:
        raise ValidationError("Hamiltonian is not Hermitian")
    if t == 0.0:
        return FockState(state.space, state.amplitudes.copy())
    amp = expm_multiply(-1j * t * h, state.amplitudes)
    norm = float(np.linalg.norm(amp))
    if abs(norm - 1.0) > NORM_DRIFT:
        raise NumericsError(f"norm drift {abs(norm - 1.0):g} after evolution exceeds {NORM_DRIFT:g}")
    return FockState(state.space, amp / norm)


def moments(state: FockState, mode_a: int, mode_b: int
            ) -> tuple[float, float, float, float | None]:
    """(n_a, n_b, Var(n_a - n_b), xi) by direct summation over the basis.

    xi is None when both modes are empty.
    """
    probs = state.probabilities()
    occ_a = state.space.occupation(mode_a)
    occ_b = state.space.occupation(mode_b)
    n_a = float(probs @ occ_a)
    n_b = float(probs @ occ_b)
    diff = occ_a - occ_b
    mean_diff = float(probs @ diff)
    var = float(probs @ (diff - mean_diff) ** 2)
    total = n_a + n_b
    xi = var / total if total > 0.0 else None
    return n_a, n_b, var, xi
