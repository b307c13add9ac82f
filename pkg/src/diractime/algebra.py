"""4x4 complex matrix kernel: Dirac matrices, brackets, Jacobi eigensolver.

Dirac-Pauli (standard) representation::

    beta = diag(1, 1, -1, -1)      alpha_i = [[0, s_i], [s_i, 0]]

with s_i the Pauli matrices and Sigma_i = diag(s_i, s_i).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ValidationError

Matrix4 = np.ndarray  # (4, 4) complex128

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
I2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)


@dataclass(frozen=True)
class DiracBasis:
    alpha: tuple[Matrix4, Matrix4, Matrix4]
    beta: Matrix4
    sigma: tuple[Matrix4, Matrix4, Matrix4]
    identity: Matrix4

    def gamma(self, i: int) -> Matrix4:
        """beta @ alpha_i (anti-Hermitian)."""
        return self.beta @ self.alpha[i]


def build_dirac_basis() -> DiracBasis:
    alpha = tuple(np.block([[Z2, s], [s, Z2]]) for s in PAULI)
    beta = np.block([[I2, Z2], [Z2, -I2]])
    sigma = tuple(np.block([[s, Z2], [Z2, s]]) for s in PAULI)
    return DiracBasis(alpha=alpha, beta=beta, sigma=sigma, identity=np.eye(4, dtype=complex))


DIRAC = build_dirac_basis()


def bracket(a: Matrix4, b: Matrix4, kind: Literal["commutator", "anticommutator"] = "commutator") -> Matrix4:
    if kind == "commutator":
        return a @ b - b @ a
    if kind == "anticommutator":
        return a @ b + b @ a
    raise ValidationError(f"unknown bracket kind {kind!r}")


def is_hermitian(m: Matrix4, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol * max(1.0, np.max(np.abs(m))))


def _check_hermitian(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    if not is_hermitian(m):
        raise ValidationError("matrix is not Hermitian")
    return m


def _jacobi_rotation(a: np.ndarray, p: int, q: int) -> np.ndarray:
    """Unitary G with (G^H a G)[p, q] == 0, touching only rows/columns p, q."""
    apq = a[p, q]
    mag = abs(apq)
    g = np.eye(4, dtype=complex)
    if mag == 0.0:
        return g
    phase = apq / mag
    # diag(1, conj(phase)) makes the (p, q) entry real; then a real symmetric rotation.
    tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.hypot(1.0, t)
    s = t * c
    g[p, p] = c
    g[p, q] = s
    g[q, p] = -s * np.conj(phase)
    g[q, q] = c * np.conj(phase)
    return g


def hermitian_eigensystem(m: Matrix4) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a Hermitian 4x4.

    Cyclic Jacobi sweeps. Degenerate eigenspaces come back as an arbitrary
    orthonormal basis.
    """
    a = _check_hermitian(m).copy()
    a = 0.5 * (a + a.conj().T)
    v = np.eye(4, dtype=complex)
    scale = max(np.max(np.abs(a)), 1e-300)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(a - np.diag(np.diag(a))) ** 2))
        if off <= JACOBI_TOL * scale:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                if abs(a[p, q]) <= 1e-300:
                    continue
                g = _jacobi_rotation(a, p, q)
                a = g.conj().T @ a @ g
                v = v @ g
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def unitary_exponential(m: Matrix4, s: float) -> Matrix4:
    """exp(i s m) for Hermitian m."""
    w, v = hermitian_eigensystem(m)
    return (v * np.exp(1j * s * w)) @ v.conj().T


def clifford_exponential(m: Matrix4, s: float) -> Matrix4:
    """exp(i s m) for Hermitian m with m @ m = lam**2 * I (e.g. H(p), T(r))."""
    m = np.asarray(m, dtype=complex)
    lam = np.sqrt(abs(np.real(np.trace(m @ m))) / 4.0)
    # sin(s lam)/lam -> s as lam -> 0
    sinc = s * np.sinc(s * lam / np.pi)
    return np.cos(s * lam) * np.eye(4) + 1j * sinc * m
