"""Checkable computations built on the operator and dynamics layers.

Everything here is in natural units (hbar = c = 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .algebra import DIRAC, hermitian_eigensystem
from .dynamics import ObservableSeries, ehrenfest_T_rate
from .errors import ValidationError
from .hilbert import (
    MatrixField,
    SpinorField,
    apply_matrix,
    coordinate,
    expect_commutator,
    expect_complex,
    require_normalized,
    variance,
)
from .operators import (
    BetaKOperator,
    ModelParams,
    energy_projector,
    hamiltonian_field,
    time_operator_at,
    time_operator_field,
)
from .packets import rest_spinor

# ---------------------------------------------------------------------------
# eigen-system of T at a point on the z axis


@dataclass(frozen=True)
class TimeEigensystem:
    r: float
    tau0: float
    tau_r: float
    eigenvalues: np.ndarray  # (+tau_r, +tau_r, -tau_r, -tau_r)
    spin: np.ndarray  # (+1/2, -1/2, +1/2, -1/2)
    spinors: np.ndarray  # columns
    normalization: float
    numeric_eigenvalues: np.ndarray
    residual: float

    @property
    def gap(self) -> float:
        return float(self.eigenvalues[:2].min() - self.eigenvalues[2:].max())


def time_eigensystem(r_z: float, params: ModelParams) -> TimeEigensystem:
    """Closed-form spinor table for T = alpha_z r + beta tau0, checked against Jacobi."""
    if r_z < 0:
        raise ValidationError("radius must be non-negative")
    tau0 = params.tau0
    tau_r = float(np.hypot(r_z, tau0))
    x = r_z / (tau_r + tau0) if tau_r + tau0 > 0 else 0.0
    norm = 1.0 / np.sqrt(1.0 + x * x)
    u = norm * np.array(
        [
            [1, 0, x, 0],  # (+tau_r, +1/2)
            [0, 1, 0, -x],  # (+tau_r, -1/2)
            [-x, 0, 1, 0],  # (-tau_r, +1/2)
            [0, x, 0, 1],  # (-tau_r, -1/2)
        ],
        dtype=complex,
    ).T
    taus = np.array([tau_r, tau_r, -tau_r, -tau_r])
    t_mat = time_operator_at((0.0, 0.0, r_z), params)
    residual = float(max(np.linalg.norm(t_mat @ u[:, k] - taus[k] * u[:, k]) for k in range(4)))
    numeric, _ = hermitian_eigensystem(t_mat)
    return TimeEigensystem(
        r=float(r_z), tau0=tau0, tau_r=tau_r, eigenvalues=taus,
        spin=np.array([0.5, -0.5, 0.5, -0.5]), spinors=u, normalization=float(norm),
        numeric_eigenvalues=numeric, residual=residual,
    )


def eigensystem_mismatch(es: TimeEigensystem) -> float:
    """Distance between the tabulated spinors and numerically diagonalized eigenspaces.

    Compares eigenspace projectors, so degenerate rotations and phases drop out.
    """
    t_mat = time_operator_at((0.0, 0.0, es.r), ModelParams(m0=0.0, tau0=es.tau0))
    if es.tau_r == 0.0:
        # T vanishes: one four-fold eigenspace, any orthonormal basis spans it
        return float(np.max(np.abs(es.spinors @ es.spinors.conj().T - np.eye(4))))
    w, v = hermitian_eigensystem(t_mat)
    worst = 0.0
    for sign in (1, -1):
        cols = [0, 1] if sign > 0 else [2, 3]
        p_tab = es.spinors[:, cols] @ es.spinors[:, cols].conj().T
        num_cols = np.argsort(w)[2:] if sign > 0 else np.argsort(w)[:2]
        p_num = v[:, num_cols] @ v[:, num_cols].conj().T
        worst = max(worst, float(np.max(np.abs(p_tab - p_num))))
    return worst


# ---------------------------------------------------------------------------
# gamma = beta alpha terms


def gamma_p_field() -> MatrixField:
    return MatrixField(tuple((coordinate(i), DIRAC.gamma(i)) for i in range(3)), "momentum", "beta alpha.p", False)


def gamma_r_field() -> MatrixField:
    return MatrixField(tuple((coordinate(i), DIRAC.gamma(i)) for i in range(3)), "position", "beta alpha.r", False)


def definite_spin_vanishing_check(f: SpinorField, params: ModelParams | None = None) -> tuple[complex, complex]:
    """(<beta alpha.p>, <beta alpha.r>); both are purely imaginary (anti-Hermitian operators)."""
    require_normalized(f)
    return expect_complex(f, gamma_p_field()), expect_complex(f, gamma_r_field())


def plane_wave_beta_alpha_p(p: Sequence[float], branch: str, params: ModelParams,
                            spin_axis: Sequence[float] = (0.0, 0.0, 1.0), spin_sign: int = 1) -> complex:
    """u^+ beta alpha.p u for the single-momentum spinor u = Lambda(p) u_rest (normalized)."""
    u = energy_projector(p, branch, params) @ rest_spinor(branch, spin_axis, spin_sign)
    u = u / np.linalg.norm(u)
    m = sum(p[i] * DIRAC.gamma(i) for i in range(3))
    return complex(u.conj() @ m @ u)


# ---------------------------------------------------------------------------
# uncertainty


@dataclass(frozen=True)
class UncertaintyReport:
    dT: float
    dH: float
    robertson_bound: float
    spin_orbit_bound: float
    gamma_term: complex
    robertson_ok: bool
    spin_orbit_ok: bool

    @property
    def product(self) -> float:
        return self.dT * self.dH


def uncertainty_product(f: SpinorField, params: ModelParams, slack: float = 1e-9) -> UncertaintyReport:
    require_normalized(f)
    T = time_operator_field(params)
    H = hamiltonian_field(params)
    dT = float(np.sqrt(variance(f, T)))
    dH = float(np.sqrt(variance(f, H)))
    comm = expect_commutator(f, T, H)
    one_plus_2bk = 1.0 + 2.0 * expect_complex(f, BetaKOperator()).real
    gp, gr = expect_complex(f, gamma_p_field()), expect_complex(f, gamma_r_field())
    gamma = 2.0 * (params.tau0 * gp - params.m0 * gr)
    robertson = 0.5 * abs(comm)
    spin_orbit = 0.5 * abs(one_plus_2bk)
    return UncertaintyReport(
        dT=dT, dH=dH, robertson_bound=robertson, spin_orbit_bound=spin_orbit, gamma_term=gamma,
        robertson_ok=dT * dH >= robertson - slack,
        spin_orbit_ok=dT * dH >= spin_orbit - slack,
    )


@dataclass(frozen=True)
class RateReport:
    ehrenfest: float
    one_plus_2betaK: float
    gamma_contribution: float


def rate_report(f: SpinorField, params: ModelParams) -> RateReport:
    """d<T>/dt next to <I + 2 beta K>; their difference is the gamma term."""
    bk = expect_complex(f, BetaKOperator()).real
    gp, gr = expect_complex(f, gamma_p_field()), expect_complex(f, gamma_r_field())
    gamma = (-2j * (params.tau0 * gp - params.m0 * gr)).real
    return RateReport(ehrenfest=ehrenfest_T_rate(f, params), one_plus_2betaK=1 + 2 * bk, gamma_contribution=gamma)


# ---------------------------------------------------------------------------
# velocities and regimes


@dataclass(frozen=True)
class VelocityReport:
    v_gp: np.ndarray
    v_ph: np.ndarray
    T_slope: float

    @property
    def v_gp_magnitude(self) -> float:
        return float(np.linalg.norm(self.v_gp))

    @property
    def v_ph_magnitude(self) -> float:
        return float(np.linalg.norm(self.v_ph))

    @property
    def product(self) -> float:
        return self.v_ph_magnitude * self.v_gp_magnitude


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(x, y, 1)[0])


def velocity_extraction(series: ObservableSeries) -> VelocityReport:
    t = series.times
    if len(t) < 2 or t[-1] - t[0] <= 0:
        raise ValidationError("velocity extraction needs at least two distinct times")
    v_gp = np.array([_slope(t, series.r[:, i]) for i in range(3)])
    T_slope = _slope(t, series.T)
    if np.ptp(series.T) == 0:
        raise ValidationError("<T> is constant over the series; phase velocity undefined")
    v_ph = np.array([_slope(series.T, series.r[:, i]) for i in range(3)])
    return VelocityReport(v_gp=v_gp, v_ph=v_ph, T_slope=T_slope)


@dataclass(frozen=True)
class RegimePrediction:
    regime: str
    slope: float
    offset: float


def regime_expansion(params: ModelParams, p: float, regime: Literal["nonrel", "ultrarel"]) -> RegimePrediction:
    """Leading-order slope and offset of <T>(t) for r(0) = 0."""
    m, tau0 = params.m0, params.tau0
    if regime == "nonrel":
        if not p < 0.2 * m:
            raise ValidationError(f"nonrelativistic regime needs cp < 0.2 m0c^2 (p={p}, m0={m})")
        return RegimePrediction("nonrel", (p / m) ** 2, tau0)
    if regime == "ultrarel":
        if not p > 5 * m:
            raise ValidationError(f"ultrarelativistic regime needs cp > 5 m0c^2 (p={p}, m0={m})")
        return RegimePrediction("ultrarel", 1.0, (m / p) * tau0)
    raise ValidationError(f"unknown regime {regime!r}")


def fit_line(times: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    slope, offset = np.polyfit(times, values, 1)
    return float(slope), float(offset)


# ---------------------------------------------------------------------------
# momentum shift U(eps) = exp(i eps T)


def momentum_shift(f: SpinorField, epsilon: float, params: ModelParams) -> SpinorField:
    require_normalized(f)
    grid = f.grid
    limit = min(grid.shape[i] * grid.dp[i] for i in grid.active_axes) / 8
    if abs(epsilon) > limit:
        raise ValidationError(f"shift |eps| = {abs(epsilon)} exceeds representable {limit}")
    if epsilon == 0:
        return f.to_momentum()
    pos = f.to_position()
    x, y, z = grid.mesh("position")
    lam = np.sqrt(x**2 + y**2 + z**2 + params.tau0**2)
    tpsi = time_operator_field(params).apply(pos).data
    out = np.cos(epsilon * lam) * pos.data + 1j * epsilon * np.sinc(epsilon * lam / np.pi) * tpsi
    return pos.replace(out).to_momentum()


# ---------------------------------------------------------------------------
# Zitterbewegung


@dataclass(frozen=True)
class ZBWSpectrum:
    angular_frequency: float
    amplitude: float
    bin_width: float
    peak_bin_frequency: float


def zbw_spectrum(series: ObservableSeries, axis: int = 2, min_samples: int = 64) -> ZBWSpectrum:
    """Dominant oscillation of the detrended position expectation along ``axis``."""
    t = series.times
    if len(t) < min_samples:
        raise ValidationError(f"need at least {min_samples} samples, got {len(t)}")
    dt = np.diff(t)
    if np.ptp(dt) > 1e-9 * dt.mean():
        raise ValidationError("series must be uniformly sampled")
    z = series.r[:, axis]
    z = z - np.polyval(np.polyfit(t, z, 1), t)
    n = len(t)
    spec = np.fft.rfft(z)
    freqs = 2 * np.pi * np.fft.rfftfreq(n, dt.mean())
    k = int(np.argmax(np.abs(spec[1:]))) + 1
    bin_width = freqs[1]

    def neg_power(w):
        return -abs(np.sum(z * np.exp(-1j * w * (t - t[0]))))

    lo, hi = max(freqs[k] - bin_width, bin_width / 2), freqs[k] + bin_width
    res = minimize_scalar(neg_power, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    w = float(res.x)
    # least-squares sinusoid at the refined frequency
    design = np.column_stack([np.cos(w * t), np.sin(w * t), np.ones_like(t), t])
    coef, *_ = np.linalg.lstsq(design, series.r[:, axis], rcond=None)
    amplitude = float(np.hypot(coef[0], coef[1]))
    return ZBWSpectrum(angular_frequency=w, amplitude=amplitude, bin_width=float(bin_width),
                       peak_bin_frequency=float(freqs[k]))


# ---------------------------------------------------------------------------
# electromagnetic coupling

VectorPotential = Callable[[np.ndarray, np.ndarray, np.ndarray], tuple]
ScalarPotential = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


def _zero_scalar(x, y, z):
    return 0.0 * (x + y + z)


@dataclass(frozen=True)
class EMFieldSpec:
    A: VectorPotential
    Phi: ScalarPotential = _zero_scalar
    q: float = 1.0
    uniform_A: tuple[float, float, float] | None = None
    kind: str = "custom"

    @classmethod
    def constant(cls, A: Sequence[float], q: float = 1.0, Phi: ScalarPotential = _zero_scalar) -> "EMFieldSpec":
        a = tuple(float(v) for v in A)
        return cls(A=lambda x, y, z: (a[0] + 0 * x, a[1] + 0 * y, a[2] + 0 * z), Phi=Phi, q=q,
                   uniform_A=a, kind="constant")

    @classmethod
    def linear(cls, G: np.ndarray, q: float = 1.0, Phi: ScalarPotential = _zero_scalar) -> "EMFieldSpec":
        """A_i(r) = G_ij r_j."""
        G = np.asarray(G, dtype=float)
        return cls(A=lambda x, y, z: tuple(G[i, 0] * x + G[i, 1] * y + G[i, 2] * z for i in range(3)),
                   Phi=Phi, q=q, kind="linear")

    @classmethod
    def circular(cls, B: Sequence[float], q: float = 1.0, Phi: ScalarPotential = _zero_scalar) -> "EMFieldSpec":
        """Symmetric gauge of a uniform magnetic field, A = (B x r) / 2."""
        b = np.asarray(B, dtype=float)
        return cls(
            A=lambda x, y, z: (0.5 * (b[1] * z - b[2] * y), 0.5 * (b[2] * x - b[0] * z), 0.5 * (b[0] * y - b[1] * x)),
            Phi=Phi, q=q, kind="circular",
        )


@dataclass(frozen=True)
class EMRate:
    total: float
    free_part: float  # 1 + 2 <beta K>
    vector_potential_term: float  # -4 q <S.(r x A)>
    gamma_term: float  # -2i <beta (tau0 alpha.pi - m0 alpha.r)>
    phi_term: float = 0.0  # (1/i) <[T, q Phi]>


def em_T_rate(f: SpinorField, em: EMFieldSpec, params: ModelParams) -> EMRate:
    """Instantaneous d<T>/dt under minimal coupling, term by term.

    Phi is node-local like T, so its term is evaluated explicitly and
    vanishes up to rounding. The gamma term uses the kinetic
    momentum pi = p - qA(r), which is what the commutator produces.
    """
    require_normalized(f)
    mom = f.to_momentum()
    pos = mom.to_position()
    x, y, z = pos.grid.mesh("position")
    ax, ay, az = (np.broadcast_to(a, pos.grid.shape) for a in em.A(x, y, z))
    # (r x A)
    cx, cy, cz = y * az - z * ay, z * ax - x * az, x * ay - y * ax
    s_dot = (apply_matrix(DIRAC.sigma[0], pos.data) * cx + apply_matrix(DIRAC.sigma[1], pos.data) * cy
             + apply_matrix(DIRAC.sigma[2], pos.data) * cz)
    cell = pos.grid.cell_volume("position")
    s_r_x_a = 0.5 * np.vdot(pos.data, s_dot).real * cell
    ga_A = sum(apply_matrix(DIRAC.gamma(i), pos.data) * a for i, a in enumerate((ax, ay, az)))
    gamma_A = np.vdot(pos.data, ga_A) * cell
    gp = expect_complex(mom, gamma_p_field())
    gr = expect_complex(pos, gamma_r_field())
    gamma = (-2j * (params.tau0 * (gp - em.q * gamma_A) - params.m0 * gr)).real
    free = 1.0 + 2.0 * expect_complex(mom, BetaKOperator()).real
    vec = -4.0 * em.q * s_r_x_a
    phi = em.q * np.broadcast_to(em.Phi(x, y, z), pos.grid.shape)
    t_psi = time_operator_field(params).apply(pos).data
    phi_term = 2.0 * np.vdot(t_psi, phi * pos.data).imag * cell
    return EMRate(total=free + vec + gamma + phi_term, free_part=free, vector_potential_term=vec,
                  gamma_term=gamma, phi_term=phi_term)


def kinetic_momentum(f: SpinorField, em: EMFieldSpec) -> np.ndarray:
    """<pi> = <p> - q <A(r)>."""
    mom = f.to_momentum()
    pos = mom.to_position()
    rho_p = mom.density() * mom.grid.cell_volume("momentum")
    rho_x = pos.density() * pos.grid.cell_volume("position")
    pm = mom.grid.mesh("momentum")
    A = em.A(*pos.grid.mesh("position"))
    return np.array([np.sum(pm[i] * rho_p) - em.q * np.sum(np.broadcast_to(A[i], pos.grid.shape) * rho_x)
                     for i in range(3)])
