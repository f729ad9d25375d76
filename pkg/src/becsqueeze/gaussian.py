"""Exact Gaussian-state engine for quadratic bosonic Hamiltonians.

Conventions, fixed once and used everywhere:

- Quadratures x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)), so
  [x, p] = i and the vacuum covariance is the identity over 2.
- The quadrature vector is interleaved, (x_1, p_1, ..., x_M, p_M).
- Hamiltonians are specified in angular-frequency units (H/hbar), as
  H = (1/2) xi^T G xi + c^T xi with G real symmetric. Heisenberg flow is
  d xi / dt = Sigma G xi + Sigma c with Sigma the symplectic form.
- A linear drive H = z a^dag + conj(z) a displaces the mode by
  alpha(t) = -i z t; phase_rotate(theta) sends a to exp(-i theta) a,
  i.e. it is free evolution under H = omega n for theta = omega t.
- two_mode_squeeze(r, phi) is conjugation by
  U = exp[r (e^{i phi} a^dag b^dag - e^{-i phi} a b)], whose Heisenberg
  action is a -> cosh(r) a + e^{i phi} sinh(r) b^dag.

Moments of number operators come from Wick's theorem evaluated on the
(mean, covariance) pair; for Q = (1/2) xi^T A xi this gives

    Var(Q) = (1/2) tr(A C A C) + (1/8) tr(A Sigma A Sigma) + mu^T A C A mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .errors import (
    DomainError,
    ModeCollisionError,
    NumericsError,
    RegistryError,
    UndefinedSqueezingError,
    ValidationError,
)

# Variances more negative than this are treated as real errors rather than
# round-off; anything in (-VAR_CLAMP, 0) is clamped to zero.
VAR_CLAMP = 1e-10


def symplectic_form(num_modes: int) -> np.ndarray:
    """Symplectic form Sigma with [xi_a, xi_b] = i Sigma_ab, interleaved order."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * num_modes, 2 * num_modes))
    for m in range(num_modes):
        out[2 * m:2 * m + 2, 2 * m:2 * m + 2] = j
    return out


class ModeRegistry:
    """Ordered set of distinct, hashable mode labels.

    The label carries all physical meaning (here usually a signed
    dimensionless momentum); the engine only maps labels to quadrature
    index pairs.
    """

    def __init__(self, labels: Iterable[Hashable]):
        labels = tuple(labels)
        if not labels:
            raise RegistryError("a mode registry needs at least one mode")
        self._index = {}
        for pos, label in enumerate(labels):
            if label in self._index:
                raise RegistryError(f"duplicate mode label {label!r}")
            self._index[label] = pos
        self.labels = labels

    @property
    def num_modes(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise RegistryError(f"unknown mode label {label!r}; registry has {self.labels}") from None

    def quad_indices(self, label: Hashable) -> tuple[int, int]:
        """(x, p) positions of a mode in the quadrature vector."""
        m = self.index(label)
        return 2 * m, 2 * m + 1

    def __contains__(self, label) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, ModeRegistry) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"ModeRegistry({list(self.labels)!r})"


@dataclass(frozen=True)
class GaussianState:
    """Gaussian state as (mean, covariance) over a mode registry.

    cov holds symmetrized second moments of the centered quadratures;
    the vacuum has cov = I/2 and mean = 0.
    """

    registry: ModeRegistry
    mean: np.ndarray
    cov: np.ndarray

    @classmethod
    def vacuum(cls, registry: ModeRegistry) -> "GaussianState":
        n = 2 * registry.num_modes
        return cls(registry, np.zeros(n), 0.5 * np.eye(n))

    # -- symplectic maps ---------------------------------------------------

    def apply_symplectic(self, s: np.ndarray, d: np.ndarray | None = None) -> "GaussianState":
        """Return the state after the affine Heisenberg map xi -> S xi + d."""
        n = 2 * self.registry.num_modes
        s = np.asarray(s, dtype=float)
        if s.shape != (n, n):
            raise ValidationError(f"symplectic matrix has shape {s.shape}, expected {(n, n)}")
        mean = s @ self.mean
        if d is not None:
            mean = mean + np.asarray(d, dtype=float)
        cov = s @ self.cov @ s.T
        return GaussianState(self.registry, mean, 0.5 * (cov + cov.T))

    def displace(self, label: Hashable, alpha: complex) -> "GaussianState":
        """Coherent displacement of one mode by complex amplitude alpha."""
        ix, ip = self.registry.quad_indices(label)
        mean = self.mean.copy()
        mean[ix] += math.sqrt(2.0) * alpha.real
        mean[ip] += math.sqrt(2.0) * alpha.imag
        return GaussianState(self.registry, mean, self.cov.copy())

    def phase_rotate(self, label: Hashable, theta: float) -> "GaussianState":
        """Rotate one mode, a -> exp(-i theta) a."""
        s = np.eye(2 * self.registry.num_modes)
        ix, ip = self.registry.quad_indices(label)
        c, sn = math.cos(theta), math.sin(theta)
        s[ix, ix] = c
        s[ix, ip] = sn
        s[ip, ix] = -sn
        s[ip, ip] = c
        return self.apply_symplectic(s)

    def two_mode_squeeze(self, label_a: Hashable, label_b: Hashable,
                         r: float, phase: float = 0.0) -> "GaussianState":
        """Two-mode squeezing between two distinct modes.

        Heisenberg action: a -> cosh(r) a + e^{i phase} sinh(r) b^dag and
        symmetrically for b.
        """
        if label_a == label_b:
            raise ModeCollisionError(f"two_mode_squeeze needs two distinct modes, got {label_a!r} twice")
        if not math.isfinite(r) or not math.isfinite(phase):
            raise DomainError("squeeze amplitude and phase must be finite")
        ax, ap = self.registry.quad_indices(label_a)
        bx, bp = self.registry.quad_indices(label_b)
        ch, sh = math.cosh(r), math.sinh(r)
        cp, sp = math.cos(phase), math.sin(phase)
        s = np.eye(2 * self.registry.num_modes)
        for (ix, ip, jx, jp) in ((ax, ap, bx, bp), (bx, bp, ax, ap)):
            s[ix, ix] = ch
            s[ix, jx] = sh * cp
            s[ix, jp] = sh * sp
            s[ip, ip] = ch
            s[ip, jx] = sh * sp
            s[ip, jp] = -sh * cp
        return self.apply_symplectic(s)

    # -- moments -----------------------------------------------------------

    def mean_number(self, label: Hashable) -> float:
        """Expected occupation of one mode."""
        ix, ip = self.registry.quad_indices(label)
        quad = 0.5 * (self.cov[ix, ix] + self.cov[ip, ip] - 1.0)
        return quad + 0.5 * (self.mean[ix] ** 2 + self.mean[ip] ** 2)

    def number_diff_variance(self, label_a: Hashable, label_b: Hashable) -> float:
        """Variance of n_a - n_b via Wick's theorem on the quadrature moments."""
        if label_a == label_b:
            raise ModeCollisionError("number difference needs two distinct modes")
        ax, ap = self.registry.quad_indices(label_a)
        bx, bp = self.registry.quad_indices(label_b)
        idx = [ax, ap, bx, bp]
        c4 = self.cov[np.ix_(idx, idx)]
        mu4 = self.mean[idx]
        a4 = np.diag([1.0, 1.0, -1.0, -1.0])
        ac = a4 @ c4
        # n_a - n_b = (1/2) xi^T A xi - const with A = diag(I, -I) on these
        # four quadratures; for that A the (1/8) tr(A Sigma A Sigma) term in
        # the Wick formula is identically -1/2.
        var = 0.5 * np.trace(ac @ ac) - 0.5 + mu4 @ a4 @ c4 @ a4 @ mu4
        if var < 0.0:
            if var < -VAR_CLAMP:
                raise NumericsError(f"number-difference variance {var:g} is negative beyond round-off")
            var = 0.0
        return float(var)

    def xi(self, label_a: Hashable, label_b: Hashable) -> float:
        """Relative number squeezing Var(n_a - n_b) / (n_a + n_b).

        Equals 1 for independent coherent modes, 0 for twin beams.
        """
        total = self.mean_number(label_a) + self.mean_number(label_b)
        if total <= 0.0:
            raise UndefinedSqueezingError(
                f"xi undefined: modes {label_a!r}, {label_b!r} hold no population")
        return self.number_diff_variance(label_a, label_b) / total

    def validate(self, atol: float = 1e-10) -> None:
        """Check symmetry and the uncertainty relation C + i Sigma/2 >= 0."""
        if not np.all(np.isfinite(self.mean)) or not np.all(np.isfinite(self.cov)):
            raise NumericsError("state contains non-finite entries")
        asym = np.max(np.abs(self.cov - self.cov.T))
        if asym > atol:
            raise NumericsError(f"covariance asymmetry {asym:g} exceeds {atol:g}")
        sigma = symplectic_form(self.registry.num_modes)
        eigs = np.linalg.eigvalsh(self.cov + 0.5j * sigma)
        if eigs.min() < -atol:
            raise NumericsError(f"uncertainty violation: min eig {eigs.min():g}")


def bogoliubov_map(registry: ModeRegistry,
                   pairs: Sequence[tuple[Hashable, Hashable, float, float]]
                   ) -> tuple[np.ndarray, np.ndarray]:
    """Symplectic change of basis between quasiparticle and particle quadratures.

    Each entry of ``pairs`` is (label_plus, label_minus, u, v) for a
    +k/-k doublet with alpha_k = u a_k + v a^dag_{-k}. Returns (B, B_inv)
    where particle quadratures = B @ quasiparticle quadratures. Every
    registry mode must appear in exactly one pair.
    """
    n = 2 * registry.num_modes
    b = np.zeros((n, n))
    binv = np.zeros((n, n))
    seen = set()
    for label_p, label_m, u, v in pairs:
        if abs(u * u - v * v - 1.0) > 1e-9:
            raise ValidationError(f"pair ({label_p!r}, {label_m!r}): u^2 - v^2 = {u*u - v*v:g} != 1")
        px, pp = registry.quad_indices(label_p)
        mx, mp_ = registry.quad_indices(label_m)
        if label_p in seen or label_m in seen or label_p == label_m:
            raise RegistryError(f"mode pair ({label_p!r}, {label_m!r}) overlaps a previous pair")
        seen.update((label_p, label_m))
        # x_a(k) = u x_al(k) - v x_al(-k);  p_a(k) = u p_al(k) + v p_al(-k)
        b[px, px] = u
        b[px, mx] = -v
        b[pp, pp] = u
        b[pp, mp_] = v
        b[mx, mx] = u
        b[mx, px] = -v
        b[mp_, mp_] = u
        b[mp_, pp] = v
        # x_al(k) = u x_a(k) + v x_a(-k);  p_al(k) = u p_a(k) - v p_a(-k)
        binv[px, px] = u
        binv[px, mx] = v
        binv[pp, pp] = u
        binv[pp, mp_] = -v
        binv[mx, mx] = u
        binv[mx, px] = v
        binv[mp_, mp_] = u
        binv[mp_, pp] = -v
    missing = set(registry.labels) - seen
    if missing:
        raise RegistryError(f"modes not covered by any pair: {sorted(missing, key=repr)}")
    return b, binv


def bogoliubov_ground_state(registry: ModeRegistry,
                            pairs: Sequence[tuple[Hashable, Hashable, float]]) -> GaussianState:
    """Quasiparticle vacuum expressed in the particle basis.

    ``pairs`` lists (label_plus, label_minus, beta) doublets; the ground
    state is the product of two-mode squeezed vacua with tanh(r) = beta and
    squeeze phase pi, which reproduces the amplitude pattern (-beta)^n on
    the |n, n> pair ladder.
    """
    state = GaussianState.vacuum(registry)
    seen = set()
    for label_p, label_m, beta in pairs:
        if not 0.0 <= beta < 1.0:
            raise DomainError(f"pair ({label_p!r}, {label_m!r}): beta = {beta:g} outside [0, 1)")
        if label_p in seen or label_m in seen:
            raise RegistryError(f"mode pair ({label_p!r}, {label_m!r}) overlaps a previous pair")
        seen.update((label_p, label_m))
        state = state.two_mode_squeeze(label_p, label_m, math.atanh(beta), phase=math.pi)
    missing = set(registry.labels) - seen
    if missing:
        raise RegistryError(f"modes not covered by any pair: {sorted(missing, key=repr)}")
    return state


class QuadraticForm:
    """Hamiltonian H/hbar built from ladder-operator terms.

    Terms may carry an oscillation frequency nu, meaning their coefficient
    is multiplied by exp(i nu t) (with the Hermitian conjugate oscillating
    oppositely), which is how rotating-frame Hamiltonians enter. The form
    keeps, per distinct frequency, the assembled cos/sin components of the
    quadratic matrix G and linear vector c.
    """

    def __init__(self, registry: ModeRegistry):
        self.registry = registry
        self._n = 2 * registry.num_modes
        # freq -> [G_cos, G_sin, c_cos, c_sin]
        self._parts: dict[float, list[np.ndarray]] = {}

    def _part(self, freq: float):
        freq = float(freq)
        if not math.isfinite(freq):
            raise ValidationError(f"oscillation frequency must be finite, got {freq!r}")
        if freq not in self._parts:
            n = self._n
            self._parts[freq] = [np.zeros((n, n)), np.zeros((n, n)), np.zeros(n), np.zeros(n)]
        return self._parts[freq]

    @staticmethod
    def _split(g: complex) -> tuple[float, float]:
        g = complex(g)
        if not (math.isfinite(g.real) and math.isfinite(g.imag)):
            raise ValidationError(f"term coefficient must be finite, got {g!r}")
        return g.real, g.imag

    def add_number(self, label: Hashable, w: float) -> "QuadraticForm":
        """Add w * n_label. w must be real; a complex weight is not Hermitian."""
        if isinstance(w, complex) and w.imag != 0.0:
            raise ValidationError(f"number-operator weight must be real, got {w!r}")
        w = float(w.real if isinstance(w, complex) else w)
        ix, ip = self.registry.quad_indices(label)
        gc = self._part(0.0)[0]
        gc[ix, ix] += w
        gc[ip, ip] += w
        return self

    def add_hopping(self, label_a: Hashable, label_b: Hashable,
                    g: complex, freq: float = 0.0) -> "QuadraticForm":
        """Add g e^{i freq t} a^dag_a a_b + h.c. between distinct modes."""
        if label_a == label_b:
            raise ModeCollisionError("hopping needs two distinct modes; use add_number for a weight on one mode")
        re, im = self._split(g)
        ax, ap = self.registry.quad_indices(label_a)
        bx, bp = self.registry.quad_indices(label_b)
        gr = np.zeros((self._n, self._n))
        gi = np.zeros((self._n, self._n))
        for (i, j) in ((ax, bx), (ap, bp)):
            gr[i, j] += 1.0
            gr[j, i] += 1.0
        for (i, j, sign) in ((ax, bp, -1.0), (ap, bx, +1.0)):
            gi[i, j] += sign
            gi[j, i] += sign
        part = self._part(freq)
        part[0] += re * gr + im * gi
        part[1] += -im * gr + re * gi
        return self

    def add_pair(self, label_a: Hashable, label_b: Hashable,
                 h: complex, freq: float = 0.0) -> "QuadraticForm":
        """Add h e^{i freq t} a^dag_a a^dag_b + h.c. (label_a == label_b allowed)."""
        re, im = self._split(h)
        ax, ap = self.registry.quad_indices(label_a)
        gr = np.zeros((self._n, self._n))
        gi = np.zeros((self._n, self._n))
        if label_a == label_b:
            gr[ax, ax] += 2.0
            gr[ap, ap] -= 2.0
            gi[ax, ap] += 2.0
            gi[ap, ax] += 2.0
        else:
            bx, bp = self.registry.quad_indices(label_b)
            for (i, j, sign) in ((ax, bx, +1.0), (ap, bp, -1.0)):
                gr[i, j] += sign
                gr[j, i] += sign
            for (i, j) in ((ax, bp), (ap, bx)):
                gi[i, j] += 1.0
                gi[j, i] += 1.0
        part = self._part(freq)
        part[0] += re * gr + im * gi
        part[1] += -im * gr + re * gi
        return self

    def add_linear(self, label: Hashable, z: complex, freq: float = 0.0) -> "QuadraticForm":
        """Add z e^{i freq t} a^dag + h.c. on one mode."""
        re, im = self._split(z)
        ix, ip = self.registry.quad_indices(label)
        rt2 = math.sqrt(2.0)
        part = self._part(freq)
        part[2][ix] += rt2 * re
        part[2][ip] += rt2 * im
        part[3][ix] += -rt2 * im
        part[3][ip] += rt2 * re
        return self

    @property
    def is_static(self) -> bool:
        return all(f == 0.0 for f in self._parts)

    def frequencies(self) -> tuple[float, ...]:
        return tuple(sorted(self._parts))

    def assemble(self, t: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        """(G, c) at time t, with H = (1/2) xi^T G xi + c^T xi."""
        g = np.zeros((self._n, self._n))
        c = np.zeros(self._n)
        for freq, (gc, gs, cc, cs) in self._parts.items():
            if freq == 0.0:
                g += gc
                c += cc
            else:
                cw, sw = math.cos(freq * t), math.sin(freq * t)
                g += cw * gc + sw * gs
                c += cw * cc + sw * cs
        return g, c

    def static_part(self, freq_tol: float = 0.0) -> "QuadraticForm":
        """Rotating-wave truncation: keep components with |freq| <= freq_tol."""
        out = QuadraticForm(self.registry)
        for freq, arrays in self._parts.items():
            if abs(freq) <= freq_tol:
                part = out._part(0.0)
                for k in range(4):
                    part[k] = part[k] + arrays[k]
                out._parts[0.0] = part
        return out

    def transformed(self, t_matrix: np.ndarray, registry: ModeRegistry | None = None) -> "QuadraticForm":
        """Rewrite the form in new quadratures xi' with old = T @ new."""
        t_matrix = np.asarray(t_matrix, dtype=float)
        if t_matrix.shape != (self._n, self._n):
            raise ValidationError(f"basis-change matrix has shape {t_matrix.shape}, expected {(self._n, self._n)}")
        out = QuadraticForm(registry if registry is not None else self.registry)
        if out._n != self._n:
            raise RegistryError("basis change cannot alter the number of modes")
        for freq, (gc, gs, cc, cs) in self._parts.items():
            out._parts[freq] = [
                t_matrix.T @ gc @ t_matrix,
                t_matrix.T @ gs @ t_matrix,
                t_matrix.T @ cc,
                t_matrix.T @ cs,
            ]
        return out


def evolve_quadratic(state: GaussianState, form: QuadraticForm, t: float) -> GaussianState:
    """Evolve a Gaussian state under a quadratic Hamiltonian for duration t.

    Static forms use the exact matrix exponential of the affine Heisenberg
    generator; time-dependent forms integrate the (mean, covariance) flow
    with a tight-tolerance Runge-Kutta scheme.
    """
    if form.registry != state.registry:
        raise RegistryError("Hamiltonian and state are defined over different registries")
    if not (isinstance(t, (int, float)) and math.isfinite(t)) or t < 0.0:
        raise DomainError(f"evolution time must be finite and >= 0, got {t!r}")
    n = 2 * state.registry.num_modes
    sigma = symplectic_form(state.registry.num_modes)
    if t == 0.0:
        return GaussianState(state.registry, state.mean.copy(), state.cov.copy())

    if form.is_static:
        g, c = form.assemble(0.0)
        aug = np.zeros((n + 1, n + 1))
        aug[:n, :n] = sigma @ g
        aug[:n, n] = sigma @ c
        prop = expm(aug * t)
        return state.apply_symplectic(prop[:n, :n], prop[:n, n])

    def rhs(time, y):
        g, c = form.assemble(time)
        a = sigma @ g
        mean = y[:n]
        cov = y[n:].reshape(n, n)
        dmean = a @ mean + sigma @ c
        dcov = a @ cov + cov @ a.T
        return np.concatenate([dmean, dcov.ravel()])

    y0 = np.concatenate([state.mean, state.cov.ravel()])
    sol = solve_ivp(rhs, (0.0, t), y0, method="DOP853", rtol=1e-12, atol=1e-12)
    if not sol.success:
        raise NumericsError(f"time-dependent evolution failed: {sol.message}")
    mean = sol.y[:n, -1]
    cov = sol.y[n:, -1].reshape(n, n)
    return GaussianState(state.registry, mean, 0.5 * (cov + cov.T))
