"""Gaussian spinor wave packets of definite energy branch and spin."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .algebra import PAULI
from .errors import ValidationError
from .hilbert import MomentumGrid, SpinorField, normalize, require_localized
from .operators import ModelParams, project_branch

BranchSpec = Literal["plus", "minus", "mixed"]


@dataclass(frozen=True)
class PacketSpec:
    """Recipe for a Gaussian packet.

    ``spin_axis=None`` means helicity: the spin axis follows ``p_center``
    (z when ``p_center`` is zero). ``spinor`` overrides the branch/spin
    construction with a constant 4-spinor (e.g. an alpha_z eigenvector).
    """

    p_center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    sigma_p: float | tuple[float, float, float] = 0.1
    r_center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    branch: BranchSpec = "plus"
    weight: float = 0.0
    spin_axis: tuple[float, float, float] | None = None
    spin_sign: int = 1
    spinor: tuple[complex, complex, complex, complex] | None = None

    def __post_init__(self):
        sig = np.broadcast_to(np.asarray(self.sigma_p, dtype=float), (3,))
        if not np.all(sig > 0):
            raise ValidationError("sigma_p must be positive")
        if self.branch not in ("plus", "minus", "mixed"):
            raise ValidationError(f"unknown branch {self.branch!r}")
        if not 0.0 <= self.weight <= 1.0:
            raise ValidationError("mixing weight must lie in [0, 1]")
        if self.spin_sign not in (1, -1):
            raise ValidationError("spin_sign must be +1 or -1")
        if self.spin_axis is not None and np.linalg.norm(self.spin_axis) == 0:
            raise ValidationError("spin_axis must be a non-zero vector")

    @property
    def sigma(self) -> np.ndarray:
        return np.broadcast_to(np.asarray(self.sigma_p, dtype=float), (3,)).copy()

    @property
    def axis(self) -> np.ndarray:
        if self.spin_axis is not None:
            n = np.asarray(self.spin_axis, dtype=float)
        elif np.linalg.norm(self.p_center) > 0:
            n = np.asarray(self.p_center, dtype=float)
        else:
            n = np.array([0.0, 0.0, 1.0])
        return n / np.linalg.norm(n)


def pauli_eigenspinor(axis: Sequence[float], sign: int = 1) -> np.ndarray:
    """Two-spinor chi with (sigma . n) chi = sign * chi, phase fixed by a real first nonzero entry."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    s = n[0] * PAULI[0] + n[1] * PAULI[1] + n[2] * PAULI[2]
    w, v = np.linalg.eigh(s)
    chi = v[:, np.argmin(np.abs(w - sign))]
    k = int(np.argmax(np.abs(chi) > 1e-12))
    return chi * np.exp(-1j * np.angle(chi[k]))


def alpha_eigenspinor(axis: int, sign: int = 1) -> np.ndarray:
    """Constant 4-spinor with alpha_axis v = sign v and <Sigma_axis> = +1."""
    chi = pauli_eigenspinor(np.eye(3)[axis], 1)
    return np.concatenate([chi, sign * PAULI[axis] @ chi]) / np.sqrt(2.0)


def rest_spinor(branch: str, axis: Sequence[float], sign: int) -> np.ndarray:
    chi = pauli_eigenspinor(axis, sign)
    z = np.zeros(2, dtype=complex)
    return np.concatenate([chi, z]) if branch == "plus" else np.concatenate([z, chi])


def check_containment(spec: PacketSpec, grid: MomentumGrid) -> None:
    for i in grid.active_axes:
        if abs(spec.p_center[i]) + 4 * spec.sigma[i] >= grid.p_max[i]:
            raise ValidationError(
                f"packet not contained along axis {'xyz'[i]}: |p_center| + 4 sigma_p = "
                f"{abs(spec.p_center[i]) + 4 * spec.sigma[i]:.4g} >= p_max = {grid.p_max[i]:.4g}"
            )


def gaussian_envelope(spec: PacketSpec, grid: MomentumGrid) -> np.ndarray:
    """exp(-(p-P)^2 / 4 sigma^2) exp(-i p.R) on the active axes."""
    mesh = grid.mesh("momentum")
    env = np.ones(grid.shape, dtype=complex)
    for i in grid.active_axes:
        d = mesh[i] - spec.p_center[i]
        env = env * np.exp(-(d**2) / (4 * spec.sigma[i] ** 2) - 1j * mesh[i] * spec.r_center[i])
    return env


def _branch_spinors(branch: str, spec: PacketSpec, grid: MomentumGrid, params: ModelParams) -> np.ndarray:
    u0 = rest_spinor(branch, spec.axis, spec.spin_sign)
    const = SpinorField(grid, np.broadcast_to(u0[:, None, None, None], (4, *grid.shape)).astype(complex))
    u = project_branch(const, branch, params).data
    mag = np.sqrt(np.sum(np.abs(u) ** 2, axis=0))
    return u / np.where(mag > 0, mag, 1.0)


def build_gaussian(spec: PacketSpec, grid: MomentumGrid, params: ModelParams, localized: bool = True) -> SpinorField:
    """Normalized momentum-space packet: Gaussian envelope times a node-wise unit spinor.

    With ``localized`` (default) the packet must fall below the boundary
    tolerance in both representations, otherwise LocalizationError.
    """
    check_containment(spec, grid)
    env = gaussian_envelope(spec, grid)
    if spec.spinor is not None:
        v = np.asarray(spec.spinor, dtype=complex)
        spin = np.broadcast_to((v / np.linalg.norm(v))[:, None, None, None], (4, *grid.shape))
    elif spec.branch == "mixed":
        w = spec.weight
        spin = np.sqrt(1 - w) * _branch_spinors("plus", spec, grid, params) + np.sqrt(w) * _branch_spinors(
            "minus", spec, grid, params
        )
    else:
        spin = _branch_spinors(spec.branch, spec, grid, params)
    f = normalize(SpinorField(grid, env[None] * spin, "momentum"))
    if localized:
        require_localized(f)
    return f


def branch_purity(f: SpinorField, params: ModelParams) -> float:
    """<Lambda_+>: 1 for a pure positive-energy field, 0 for pure negative."""
    g = f.to_momentum()
    plus = project_branch(g, "plus", params)
    return float(np.real(np.vdot(g.data, plus.data)) / np.real(np.vdot(g.data, g.data)))
