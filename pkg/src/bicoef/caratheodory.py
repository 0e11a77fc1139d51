"""Positive-real-part (Caratheodory) elements from finite Herglotz atom mixtures.

Every element built here is a convex combination of Moebius atoms
(1 + e^{i*theta} z) / (1 - e^{i*theta} z), each of which has positive real
part on the disk, so class membership is exact by construction.  The
admissibility test for bare coefficient prefixes combines the modulus
condition |c_k| <= 2 with positive semidefiniteness of the Toeplitz moment
matrix; the modulus condition alone is available as the "modulus" mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TruncatedSeries, DEFAULT_ORDER

__all__ = [
    "CaratheodoryElement",
    "herglotz",
    "sample_random",
    "sample_batch",
    "is_admissible_prefix",
    "admissibility_mask_k2",
    "toeplitz_moment_matrix",
    "PASS",
    "FAIL_MODULUS",
    "FAIL_TOEPLITZ",
    "MODULUS_TOL",
    "EIG_TOL",
    "WEIGHT_TOL",
]

PASS = "PASS"
FAIL_MODULUS = "FAIL_MODULUS"
FAIL_TOEPLITZ = "FAIL_TOEPLITZ"

MODULUS_TOL = 1e-9   # slack on |c_k| <= 2
EIG_TOL = 1e-9       # smallest moment-matrix eigenvalue may dip this far below 0
WEIGHT_TOL = 1e-12   # atom weights must sum to 1 within this


@dataclass(frozen=True)
class CaratheodoryElement:
    """A coefficient prefix of an element p with p(0) = 1 and Re p > 0.

    ``atoms`` holds the generating (weight, angle) pairs when the element was
    produced constructively; reconstruction then gives
    c_k = 2 * sum_i t_i * exp(i*k*theta_i).
    """

    series: TruncatedSeries
    atoms: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.series.coeffs[0] != 1:
            raise ValueError("constant term must be exactly 1")

    @property
    def order(self) -> int:
        return self.series.order

    def c(self, k: int) -> complex:
        return self.series[k]

    def coeff_prefix(self, k: int | None = None) -> np.ndarray:
        """Coefficients c_1..c_k (defaults to the full known prefix)."""
        k = self.order if k is None else k
        return self.series.coeffs[1 : k + 1]

    def atom_value(self, z):
        """Exact evaluation sum_i t_i (1+e^{i th} z)/(1-e^{i th} z).

        Unlike truncated-series evaluation there is no tail error, so this is
        the right way to test Re p > 0 on a grid.  Requires atoms.
        """
        if self.atoms is None:
            raise ValueError("element carries no atom representation")
        zs = np.asarray(z, dtype=complex)
        acc = np.zeros_like(zs)
        for t, theta in self.atoms:
            u = np.exp(1j * theta) * zs
            acc = acc + t * (1 + u) / (1 - u)
        return complex(acc) if acc.ndim == 0 else acc


def _mixture_coeffs(weights, angles, order: int) -> np.ndarray:
    """(count, order) array of c_1..c_order, c_k = 2 sum_i t_i e^{ik th_i}."""
    k = np.arange(1, order + 1)
    phases = np.exp(1j * angles[:, :, None] * k)          # (count, m, order)
    return 2.0 * (weights[:, :, None] * phases).sum(axis=1)


def _atom_coeffs(weights, angles, order: int) -> np.ndarray:
    """c_0..c_order of a single mixture element; c_0 = 1."""
    w = np.asarray(weights, dtype=float)
    th = np.asarray(angles, dtype=float)
    c = np.empty(order + 1, dtype=complex)
    c[0] = 1.0
    c[1:] = _mixture_coeffs(w[None, :], th[None, :], order)[0]
    return c


def herglotz(atoms, order: int = DEFAULT_ORDER) -> CaratheodoryElement:
    """Element generated by a finite atom mixture [(t_i, theta_i), ...].

    Weights must be positive and sum to 1 within WEIGHT_TOL.
    """
    atoms = tuple((float(t), float(th)) for t, th in atoms)
    if not atoms:
        raise ValueError("need at least one atom")
    w = np.array([t for t, _ in atoms])
    if np.any(w <= 0):
        raise ValueError("atom weights must be positive")
    if abs(w.sum() - 1.0) > WEIGHT_TOL:
        raise ValueError(f"atom weights must sum to 1, got {w.sum()!r}")
    th = np.array([t for _, t in atoms])
    return CaratheodoryElement(TruncatedSeries(_atom_coeffs(w, th, order)), atoms)


def _spawn_streams(seed: int):
    ws, ts = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(ws), np.random.default_rng(ts)


def sample_batch(seed: int, count: int, atom_count: int, order: int = 2):
    """Vectorized atom sampling, deterministic per seed.

    Returns (weights, angles, coeffs) with shapes (count, m), (count, m) and
    (count, order); coeffs[:, k-1] holds c_k.  Weights come from the uniform
    distribution on the simplex (normalized exponentials), angles are uniform
    on [0, 2*pi).  Row i depends only on (seed, i), never on count, so a
    longer batch extends a shorter one.
    """
    if atom_count < 1:
        raise ValueError("atom_count must be >= 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    wrng, arng = _spawn_streams(seed)
    w = wrng.standard_exponential((count, atom_count))
    t = w / w.sum(axis=1, keepdims=True)
    theta = arng.uniform(0.0, 2.0 * np.pi, (count, atom_count))
    return t, theta, _mixture_coeffs(t, theta, order)


def sample_random(seed: int, atom_count: int, order: int = DEFAULT_ORDER) -> CaratheodoryElement:
    """One random atom-mixture element; bitwise deterministic per seed.

    Coincides with row 0 of :func:`sample_batch` for the same seed.
    """
    t, theta, _ = sample_batch(seed, 1, atom_count, order=1)
    atoms = tuple(zip(t[0].tolist(), theta[0].tolist()))
    return herglotz(atoms, order=order)


def toeplitz_moment_matrix(c) -> np.ndarray:
    """Hermitian (K+1)x(K+1) moment matrix of the prefix c_1..c_K.

    Unit diagonal, entry (i, j) = c_{j-i}/2 above it, conjugates below.
    Positive semidefiniteness characterizes admissible prefixes.
    """
    c = np.asarray(c, dtype=complex)
    k = c.size
    m = np.eye(k + 1, dtype=complex)
    for d in range(1, k + 1):
        for i in range(k + 1 - d):
            m[i, i + d] = c[d - 1] / 2.0
            m[i + d, i] = np.conj(c[d - 1]) / 2.0
    return m


def is_admissible_prefix(c, mode: str = "toeplitz",
                         modulus_tol: float = MODULUS_TOL,
                         eig_tol: float = EIG_TOL) -> str:
    """Verdict for a coefficient prefix c_1..c_K: PASS or a failure reason.

    The modulus condition is necessary; the Toeplitz positivity check (the
    default) is the full prefix characterization and strictly tightens it.
    """
    c = np.asarray(c, dtype=complex)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("need a 1-D prefix c_1..c_K with K >= 1")
    if np.any(np.abs(c) > 2.0 + modulus_tol):
        return FAIL_MODULUS
    if mode == "modulus":
        return PASS
    if mode != "toeplitz":
        raise ValueError(f"unknown mode {mode!r}")
    ev = np.linalg.eigvalsh(toeplitz_moment_matrix(c))
    if ev[0] < -eig_tol:
        return FAIL_TOEPLITZ
    return PASS


def admissibility_mask_k2(c1, c2, mode: str = "toeplitz",
                          modulus_tol: float = MODULUS_TOL,
                          eig_tol: float = EIG_TOL):
    """Vectorized K=2 admissibility for prefix arrays (c1[i], c2[i]).

    Returns boolean arrays (admissible, fail_modulus, fail_toeplitz); the two
    failure masks are disjoint, modulus checked first.  Agrees entrywise with
    :func:`is_admissible_prefix`.
    """
    c1 = np.asarray(c1, dtype=complex)
    c2 = np.asarray(c2, dtype=complex)
    fail_mod = (np.abs(c1) > 2.0 + modulus_tol) | (np.abs(c2) > 2.0 + modulus_tol)
    fail_toe = np.zeros_like(fail_mod)
    if mode == "modulus":
        return ~fail_mod, fail_mod, fail_toe
    if mode != "toeplitz":
        raise ValueError(f"unknown mode {mode!r}")
    idx = np.flatnonzero(~fail_mod)
    if idx.size:
        m = np.empty((idx.size, 3, 3), dtype=complex)
        a = c1[idx] / 2.0
        b = c2[idx] / 2.0
        m[:, 0, 0] = m[:, 1, 1] = m[:, 2, 2] = 1.0
        m[:, 0, 1] = m[:, 1, 2] = a
        m[:, 0, 2] = b
        m[:, 1, 0] = m[:, 2, 1] = np.conj(a)
        m[:, 2, 0] = np.conj(b)
        smallest = np.linalg.eigvalsh(m)[:, 0]
        fail_toe[idx] = smallest < -eig_tol
    return ~(fail_mod | fail_toe), fail_mod, fail_toe
