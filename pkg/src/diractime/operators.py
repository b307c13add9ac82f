"""Physical operators: H(p), T(r), energy projectors, the spin-orbit K and the
Heisenberg-picture closed form for T(t).

Natural units hbar = c = 1 throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .algebra import DIRAC
from .errors import SingularProjectorError, ValidationError
from .hilbert import (
    MatrixField,
    SpinorField,
    apply_matrix,
    constant,
    coordinate,
    inner_product,
    require_localized,
    require_normalized,
    switch_representation,
)

Branch = Literal["plus", "minus"]


@dataclass(frozen=True)
class ModelParams:
    m0: float = 1.0
    tau0: float = 0.0
    q: float = 1.0

    def __post_init__(self):
        if not self.m0 >= 0:
            raise ValidationError(f"m0 must be >= 0, got {self.m0}")
        if not self.tau0 >= 0:
            raise ValidationError(f"tau0 must be >= 0, got {self.tau0}")


def _shifted(axis: int, shift: float):
    return lambda x, y, z: (x, y, z)[axis] - shift


def hamiltonian_field(params: ModelParams, A: Sequence[float] = (0.0, 0.0, 0.0)) -> MatrixField:
    """alpha.(p - q A) + beta m0 for a spatially uniform vector potential A."""
    qa = params.q * np.asarray(A, dtype=float)
    terms = tuple((_shifted(i, qa[i]) if qa[i] else coordinate(i), DIRAC.alpha[i]) for i in range(3))
    return MatrixField(terms + ((constant(params.m0), DIRAC.beta),), "momentum", "H")


def time_operator_field(params: ModelParams) -> MatrixField:
    """alpha.r + beta tau0, node-local in the position representation."""
    terms = tuple((coordinate(i), DIRAC.alpha[i]) for i in range(3))
    return MatrixField(terms + ((constant(params.tau0), DIRAC.beta),), "position", "T")


def hamiltonian_at(p: Sequence[float], params: ModelParams) -> np.ndarray:
    return hamiltonian_field(params).at(p)


def time_operator_at(r: Sequence[float], params: ModelParams) -> np.ndarray:
    return time_operator_field(params).at(r)


def energy(p: Sequence[float], params: ModelParams) -> float:
    return float(np.sqrt(np.dot(p, p) + params.m0**2))


def energy_projector(p: Sequence[float], branch: Branch, params: ModelParams) -> np.ndarray:
    """Lambda_+- = (E I +- H) / 2E."""
    e = energy(p, params)
    if e == 0.0:
        raise SingularProjectorError("energy projector undefined at E_p = 0")
    sign = _branch_sign(branch)
    return 0.5 * (np.eye(4) + sign * hamiltonian_at(p, params) / e)


def _branch_sign(branch: str) -> int:
    if branch == "plus":
        return 1
    if branch == "minus":
        return -1
    raise ValidationError(f"unknown branch {branch!r}")


# ---------------------------------------------------------------------------
# node-wise helpers acting on momentum-representation amplitude arrays


def energy_grid(f: SpinorField, params: ModelParams, A: Sequence[float] = (0.0, 0.0, 0.0)) -> np.ndarray:
    px, py, pz = f.grid.mesh("momentum")
    qa = params.q * np.asarray(A, dtype=float)
    return np.sqrt((px - qa[0]) ** 2 + (py - qa[1]) ** 2 + (pz - qa[2]) ** 2 + params.m0**2)


def _inv_e2(e: np.ndarray) -> np.ndarray:
    # zero-energy nodes (massless, p = 0) carry no weight for localized packets
    with np.errstate(divide="ignore"):
        return np.where(e > 0, 1.0 / np.where(e > 0, e, 1.0) ** 2, 0.0)


def apply_hamiltonian(data: np.ndarray, f: SpinorField, params: ModelParams, A=(0.0, 0.0, 0.0)) -> np.ndarray:
    return hamiltonian_field(params, A).apply(f.replace(data, "momentum")).data


def exp_hamiltonian(f: SpinorField, s: float, params: ModelParams, A=(0.0, 0.0, 0.0)) -> np.ndarray:
    """exp(i s H) psi node-wise (momentum data). Uses H^2 = E^2 I."""
    g = f.to_momentum()
    e = energy_grid(g, params, A)
    hpsi = apply_hamiltonian(g.data, g, params, A)
    return np.cos(s * e) * g.data + 1j * s * np.sinc(s * e / np.pi) * hpsi


def project_branch(f: SpinorField, branch: Branch, params: ModelParams) -> SpinorField:
    g = f.to_momentum()
    e = energy_grid(g, params)
    hpsi = apply_hamiltonian(g.data, g, params)
    inv = np.where(e > 0, 1.0 / np.where(e > 0, e, 1.0), 0.0)
    return g.replace(0.5 * (g.data + _branch_sign(branch) * inv * hpsi))


# ---------------------------------------------------------------------------
# spin-orbit operator


def position_components(f: SpinorField) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """r_i psi for i = x, y, z as momentum-representation arrays (spectral)."""
    pos = f.to_position()
    mesh = f.grid.mesh("position")
    out = []
    for i in range(3):
        if f.grid.shape[i] == 1:
            out.append(np.zeros_like(pos.data))
        else:
            out.append(switch_representation(pos.replace(mesh[i] * pos.data)).data)
    return tuple(out)


def apply_L(f: SpinorField) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orbital angular momentum L = r x p, as three momentum-representation arrays."""
    g = f.to_momentum()
    p = g.grid.mesh("momentum")
    r = position_components(g)
    # r_i and p_j commute for i != j, so (r x p)_k psi = eps_kij p_j (r_i psi)
    return (
        p[2] * r[1] - p[1] * r[2],
        p[0] * r[2] - p[2] * r[0],
        p[1] * r[0] - p[0] * r[1],
    )


def apply_sigma_dot_L(f: SpinorField) -> np.ndarray:
    lx, ly, lz = apply_L(f)
    return apply_matrix(DIRAC.sigma[0], lx) + apply_matrix(DIRAC.sigma[1], ly) + apply_matrix(DIRAC.sigma[2], lz)


def apply_K(f: SpinorField, check_localized: bool = True) -> SpinorField:
    """K psi = beta (2 S.L + 1) psi = beta (Sigma.L + 1) psi."""
    if f.representation != "momentum":
        raise ValidationError("apply_K expects a momentum-representation field")
    if check_localized:
        require_localized(f)
    return f.replace(apply_matrix(DIRAC.beta, apply_sigma_dot_L(f) + f.data))


@dataclass(frozen=True)
class SpinOrbitOperator:
    name: str = "K"

    def apply(self, f: SpinorField) -> SpinorField:
        return apply_K(f.to_momentum(), check_localized=False)


@dataclass(frozen=True)
class BetaKOperator:
    """beta K = Sigma.L + 1."""

    name: str = "betaK"

    def apply(self, f: SpinorField) -> SpinorField:
        g = f.to_momentum()
        return g.replace(apply_sigma_dot_L(g) + g.data)


# ---------------------------------------------------------------------------
# Heisenberg picture


def _heisenberg_pieces(f: SpinorField, t: float, params: ModelParams):
    g = f.to_momentum()
    p = g.grid.mesh("momentum")
    e = energy_grid(g, params)
    inv2 = _inv_e2(e)
    H = lambda d: apply_hamiltonian(d, g, params)  # noqa: E731
    Hinv = lambda d: inv2 * H(d)  # noqa: E731

    def expH(d, s):
        return np.cos(s * e) * d + 1j * s * np.sinc(s * e / np.pi) * H(d)

    def eta(i, d):
        # alpha_i(0) - p_i / H
        return apply_matrix(DIRAC.alpha[i], d) - p[i] * Hinv(d)

    return g, p, e, H, Hinv, expH, eta


def heisenberg_T_expectation(f0: SpinorField, t: float, params: ModelParams, check_localized: bool = True) -> float:
    """<T(t)> from the Heisenberg operators alpha(t), r(t), beta(t) applied to psi(0).

    alpha_i(t) = p_i/H + eta_i exp(-2iHt)
    r_i(t)     = r_i(0) + (p_i/H) t + eta_i (i/2) H^-1 (exp(-2iHt) - 1)
    beta(t)    = m/H + (beta - m/H) exp(-2iHt)
    with eta = alpha(0) - p/H, which anticommutes with H.
    """
    require_normalized(f0)
    if check_localized:
        require_localized(f0)
    g, p, e, H, Hinv, expH, eta = _heisenberg_pieces(f0, t, params)
    psi = g.data
    osc = expH(psi, -2.0 * t)
    r0 = position_components(g)
    total = 0.0 + 0.0j
    for i in g.grid.active_axes:
        a_t = p[i] * Hinv(psi) + eta(i, osc)
        r_t = r0[i] + t * p[i] * Hinv(psi) + eta(i, 0.5j * Hinv(osc - psi))
        total += inner_product(g.replace(a_t), g.replace(r_t))
    if params.tau0:
        b_t = params.m0 * Hinv(psi) + apply_matrix(DIRAC.beta, osc) - params.m0 * Hinv(osc)
        total += params.tau0 * inner_product(g, g.replace(b_t))
    return total.real


def factored_T_expectation(f0: SpinorField, t: float, params: ModelParams) -> complex:
    """<psi(0)| T_f(t) |psi(0)> with the factored closed form read left to right.

    T_f(t) = (p/H).r(0) + (p/H)^2 t + (m/H) tau0
            + exp(-2iHt) eta . { r(0) + (p/H) t + H^-1 sin(-Ht) [(p/H) exp(iHt) + eta exp(-iHt)] }
            + tau0 (beta - m/H) exp(-2iHt)
    Returned complex; used only to document disagreement with the exact evolution.
    """
    g, p, e, H, Hinv, expH, eta = _heisenberg_pieces(f0, t, params)
    psi = g.data
    r0 = position_components(g)
    sin_over_e = -t * np.sinc(t * e / np.pi)  # H^-1 sin(-Ht) = -sin(Et)/E
    out = np.zeros_like(psi)
    curly_parts = []
    for i in g.grid.active_axes:
        out += p[i] * Hinv(r0[i])
        out += t * p[i] ** 2 * _inv_e2(e) * psi
        inner = r0[i] + t * p[i] * Hinv(psi) + sin_over_e * (p[i] * Hinv(expH(psi, t)) + eta(i, expH(psi, -t)))
        curly_parts.append(expH(eta(i, inner), -2.0 * t))
    out += sum(curly_parts)
    out += params.m0 * params.tau0 * Hinv(psi)
    if params.tau0:
        osc = expH(psi, -2.0 * t)
        out += params.tau0 * (apply_matrix(DIRAC.beta, osc) - params.m0 * Hinv(osc))
    return inner_product(g, g.replace(out))
