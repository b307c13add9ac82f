"""Invariant battery: every acceptance criterion as a runnable check.

Each ``criterion_*`` function returns a list of :class:`CheckResult` rows.
Scenarios (grids, packets, windows) are fixed here; only randomized
sub-batteries depend on the seed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analysis as an
from .algebra import DIRAC, bracket, hermitian_eigensystem
from .errors import LocalizationError
from .dynamics import (
    ehrenfest_T_rate,
    evolve_free,
    expectation_T,
    fd_T_rate,
    record_series,
)
from .hilbert import (
    MatrixField,
    SpinorField,
    boundary_amplitude,
    coordinate,
    expect_commutator,
    expect_complex,
    make_grid,
    make_line_grid,
    normalize,
)
from .operators import (
    BetaKOperator,
    ModelParams,
    factored_T_expectation,
    energy_grid,
    hamiltonian_at,
    heisenberg_T_expectation,
    time_operator_at,
)
from .packets import PacketSpec, alpha_eigenspinor, branch_purity, build_gaussian, gaussian_envelope


@dataclass(frozen=True)
class CheckResult:
    criterion: str
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.criterion}] {self.name}: value={self.value:.6e} tol={self.tolerance:.1e} {self.detail}".rstrip()


def _le(criterion, name, value, tol, detail=""):
    return CheckResult(criterion, name, bool(value <= tol), float(value), float(tol), detail)


def _ge(criterion, name, value, bound, detail=""):
    return CheckResult(criterion, name, bool(value >= bound), float(value), float(bound), detail)


# ---------------------------------------------------------------------------
# shared scenarios

LOCALIZED = 1e-10
# 3D, packets near p = 0 with offsets |P| <= 0.15, |R| <= 4: boundaries ~1e-15
GRID_REST = ((64, 64, 64), (1.2, 1.2, 1.2))
# centred rest packets (sigma = 0.08) only: boundaries ~3e-11 on 32^3
GRID_CENTRED = ((32, 32, 32), (0.8, 0.8, 0.8))
MAX_DRAWS = 100
# 1D mode long line for narrow packets (point-value velocity checks)
LINE_N, LINE_PMAX, LINE_SIGMA = 16384, 2.0, 5e-4


def rest_grid():
    return make_grid(*GRID_REST)


def centred_grid():
    return make_grid(*GRID_CENTRED)


def line_grid():
    return make_line_grid(LINE_N, LINE_PMAX)


def random_unit_vector(rng, n=3):
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_localized_field(grid, params: ModelParams, rng, tol: float = LOCALIZED) -> SpinorField:
    """Superposition of 2-3 Gaussians with random constant 4-spinors, retried until localized."""
    for _ in range(MAX_DRAWS):
        data = np.zeros((4, *grid.shape), dtype=complex)
        for _ in range(rng.integers(2, 4)):
            spec = PacketSpec(
                p_center=tuple(rng.uniform(-0.1, 0.1, 3)),
                sigma_p=tuple(rng.uniform(0.07, 0.09, 3)),
                r_center=tuple(rng.uniform(-3.0, 3.0, 3)),
            )
            spinor = rng.normal(size=4) + 1j * rng.normal(size=4)
            data += gaussian_envelope(spec, grid)[None] * spinor[:, None, None, None]
        f = normalize(SpinorField(grid, data))
        if max(boundary_amplitude(f, "momentum"), boundary_amplitude(f, "position")) < tol:
            return f
    raise LocalizationError(f"no localized draw in {MAX_DRAWS} attempts on {grid.shape}")


def random_packet(grid, params: ModelParams, rng) -> SpinorField:
    branch = ["plus", "minus", "mixed"][rng.integers(0, 3)]
    spec = PacketSpec(
        p_center=tuple(rng.uniform(-0.15, 0.15, 3)),
        sigma_p=float(rng.uniform(0.07, 0.09)),
        r_center=tuple(rng.uniform(-3.0, 3.0, 3)),
        branch=branch,
        weight=float(rng.uniform(0, 1)),
        spin_axis=tuple(random_unit_vector(rng)),
        spin_sign=int(rng.choice([-1, 1])),
    )
    return build_gaussian(spec, grid, params)


def definite_spin_packets(grid, params: ModelParams):
    """Single-branch helicity packets at rest-frame-symmetric envelopes."""
    out = []
    for branch in ("plus", "minus"):
        for pc, sign in (((0, 0, 0), 1), ((0, 0, 0.1), 1), ((0, 0, 0.1), -1), ((0.1, 0, 0), 1)):
            out.append(build_gaussian(PacketSpec(p_center=pc, sigma_p=0.08, branch=branch, spin_sign=sign), grid, params))
    return out


# ---------------------------------------------------------------------------
# 1. algebra


def criterion_1(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    a, b, I = DIRAC.alpha, DIRAC.beta, DIRAC.identity
    worst = 0.0
    for i in range(3):
        for j in range(3):
            worst = max(worst, np.abs(bracket(a[i], a[j], "anticommutator") - 2 * (i == j) * I).max())
        worst = max(worst, np.abs(bracket(a[i], b, "anticommutator")).max())
    worst = max(worst, np.abs(b @ b - I).max())
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    for k in range(3):
        s = sum(-0.5j * eps[k, i, j] * a[i] @ a[j] for i in range(3) for j in range(3))
        worst = max(worst, np.abs(s - DIRAC.sigma[k]).max())
    rows = [_le("1", "Clifford/anticommutation identities", worst, 1e-12)]
    params = ModelParams(m0=1.0, tau0=0.7)
    h_err = t_err = 0.0
    for _ in range(100):
        p, r = rng.normal(size=3) * 2, rng.normal(size=3) * 5
        h = hamiltonian_at(p, params)
        t = time_operator_at(r, params)
        h_err = max(h_err, np.abs(h @ h - (p @ p + params.m0**2) * I).max())
        t_err = max(t_err, np.abs(t @ t - (r @ r + params.tau0**2) * I).max() / max(1.0, r @ r))
    rows.append(_le("1", "H(p)^2 = (p^2 + m0^2) I at 100 random p", h_err, 1e-12))
    rows.append(_le("1", "T(r)^2 = (r^2 + tau0^2) I at 100 random r (relative)", t_err, 1e-12))
    w, _ = hermitian_eigensystem(time_operator_at((0, 0, 3), ModelParams(m0=1.0, tau0=4.0)))
    rows.append(_le("1", "eigenvalues of T(r=3, tau0=4) = -5,-5,5,5", np.abs(w - [-5, -5, 5, 5]).max(), 1e-12))
    return rows


# ---------------------------------------------------------------------------
# 2. eigensystem table


def criterion_2(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 2)
    resid = mismatch = gap_err = ortho = 0.0
    for _ in range(20):
        r, tau0 = rng.uniform(0, 10), rng.uniform(0.01, 5)
        params = ModelParams(m0=1.0, tau0=tau0)
        es = an.time_eigensystem(r, params)
        resid = max(resid, es.residual)
        mismatch = max(mismatch, an.eigensystem_mismatch(es))
        ortho = max(ortho, np.abs(es.spinors.conj().T @ es.spinors - np.eye(4)).max())
        w0, _ = hermitian_eigensystem(time_operator_at((0, 0, 0), params))
        gap_err = max(gap_err, abs((w0[2] - w0[1]) - 2 * tau0))
    return [
        _le("2", "table spinors: max ||T u - tau u||", resid, 1e-10),
        _le("2", "table vs Jacobi eigenspace projectors", mismatch, 1e-10),
        _le("2", "table spinors orthonormal", ortho, 1e-12),
        _le("2", "spectral gap = 2 tau0 (numerical)", gap_err, 1e-12),
    ]


# ---------------------------------------------------------------------------
# 3. commutator identity


def alpha_dot_r() -> MatrixField:
    return MatrixField(tuple((coordinate(i), DIRAC.alpha[i]) for i in range(3)), "position", "alpha.r")


def alpha_dot_p() -> MatrixField:
    return MatrixField(tuple((coordinate(i), DIRAC.alpha[i]) for i in range(3)), "momentum", "alpha.p")


def commutator_identity_error(f: SpinorField) -> float:
    lhs = expect_commutator(f, alpha_dot_r(), alpha_dot_p())
    # i <3 + 4 S.L> = i <1 + 2 beta K> + 2i ... ; beta K = Sigma.L + 1
    rhs = 1j * (3.0 + 2.0 * (expect_complex(f, BetaKOperator()) - 1.0))
    return abs(lhs - rhs) / abs(rhs)


def criterion_3(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 3)
    grid = rest_grid()
    params = ModelParams()
    worst = max(commutator_identity_error(random_localized_field(grid, params, rng)) for _ in range(20))
    return [_le("3", "<[alpha.r, alpha.p]> = i<3 + 4 S.L> on 20 random fields (relative)", worst, 1e-6)]


# ---------------------------------------------------------------------------
# 4. Ehrenfest


def criterion_4(seed: int = 0) -> list[CheckResult]:
    grid = rest_grid()
    rows = []
    cases = [
        ("free, plus", ModelParams(1.0, 0.0), PacketSpec(p_center=(0, 0, 0.1), sigma_p=0.08), (0, 0, 0)),
        ("free, mixed, tau0=0.5", ModelParams(1.0, 0.5), PacketSpec(sigma_p=0.08, branch="mixed", weight=0.4,
                                                                  r_center=(1, -1, 2)), (0, 0, 0)),
        ("const A, minus, tau0=0.3", ModelParams(1.0, 0.3), PacketSpec(p_center=(0.1, 0, 0), sigma_p=0.08,
                                                                      branch="minus"), (0.2, 0.0, -0.1)),
        ("const A, mixed", ModelParams(1.0, 0.0), PacketSpec(sigma_p=0.08, branch="mixed", weight=0.5,
                                                            r_center=(0, 2, 0)), (0.0, 0.3, 0.1)),
    ]
    for name, params, spec, A in cases:
        f = build_gaussian(spec, grid, params)
        rate = ehrenfest_T_rate(f, params, A)
        fd = fd_T_rate(f, params, A, h=1e-2)
        rows.append(_le("4", f"d<T>/dt finite difference vs <[T,H]>/i ({name}, relative)",
                        abs(fd - rate) / abs(rate), 1e-6, f"rate={rate:.9f}"))
    return rows


# ---------------------------------------------------------------------------
# 5, 6. group and phase velocity


def line_packet(p0: float, branch: str, params: ModelParams, grid=None) -> SpinorField:
    grid = grid or line_grid()
    return build_gaussian(PacketSpec(p_center=(0, 0, p0), sigma_p=LINE_SIGMA, branch=branch), grid, params)


def _window(n=16, t_end=20.0):
    return np.linspace(0.0, t_end, n)


def criterion_5(seed: int = 0) -> list[CheckResult]:
    params = ModelParams(1.0, 0.0)
    rows = []
    for p0 in (0.2, 0.75, 1.5):
        v_exact = p0 / np.hypot(p0, 1.0)
        for branch, sign in (("plus", 1), ("minus", -1)):
            s = record_series(line_packet(p0, branch, params), _window(), params, with_K=False)
            slope = an.fit_line(s.times, s.r[:, 2])[0]
            rows.append(_le("5", f"1D {branch} p0={p0}: <z> slope vs {sign:+d} c^2 p/E (relative)",
                            abs(slope - sign * v_exact) / v_exact, 1e-6, f"slope={slope:.10f}"))
    # 3D: slope equals the operator expectation <c^2 p_z / H> exactly
    grid = make_grid((32, 32, 64), (0.8, 0.8, 1.6))
    f = build_gaussian(PacketSpec(p_center=(0, 0, 0.75), sigma_p=0.08), grid, params)
    s = record_series(f, _window(8, 10.0), params, with_K=False)
    slope = an.fit_line(s.times, s.r[:, 2])[0]
    pz = grid.mesh("momentum")[2]
    v_op = float(np.sum(pz / energy_grid(f, params) * f.density()) * grid.cell_volume("momentum"))
    rows.append(_le("5", "3D p0=0.75: <z> slope vs <c^2 p_z/E> (relative)", abs(slope - v_op) / v_op, 1e-6,
                    f"slope={slope:.10f}"))
    return rows


def criterion_6(seed: int = 0) -> list[CheckResult]:
    rows = []
    params = ModelParams(1.0, 0.0)
    for p0 in (0.2, 0.75, 1.5):
        s = record_series(line_packet(p0, "plus", params), _window(), params, with_K=False)
        rep = an.velocity_extraction(s)
        rows.append(_le("6", f"1D p0={p0}: v_ph * v_gp = c^2 (relative)", abs(rep.product - 1.0), 1e-3,
                        f"v_gp={rep.v_gp[2]:.6f} v_ph={rep.v_ph[2]:.6f}"))
    massless = ModelParams(0.0, 0.0)
    s = record_series(line_packet(1.0, "plus", massless), _window(), massless, with_K=False)
    rep = an.velocity_extraction(s)
    rows.append(_le("6", "m0=0: |v_gp - c|", abs(rep.v_gp[2] - 1.0), 1e-6))
    rows.append(_le("6", "m0=0: |v_ph - c|", abs(rep.v_ph[2] - 1.0), 1e-6))
    rows.append(_le("6", "m0=0: max |<T(t)> - t|", np.abs(s.T - s.times).max(), 1e-6))
    rows.append(_le("6", "m0=0: max |<z(t)> - c<T(t)>|", np.abs(s.r[:, 2] - s.T).max(), 1e-6))
    return rows


# ---------------------------------------------------------------------------
# 7. slope of <T>


def criterion_7(seed: int = 0) -> list[CheckResult]:
    params = ModelParams(1.0, 0.0)
    rows = []
    # whole number of Zitterbewegung periods (pi for m0 = 1)
    times = np.linspace(0.0, 6 * np.pi, 25)
    grid = make_grid((32, 32, 256), (0.2, 0.2, 1.0))
    for branch in ("plus", "minus"):
        f = build_gaussian(PacketSpec(p_center=(0, 0, 0.75), sigma_p=0.02, branch=branch), grid, params)
        s = record_series(f, times, params, with_K=False)
        slope = an.fit_line(s.times, s.T)[0]
        rows.append(_le("7", f"3D {branch} p0=0.75: <T> slope vs (v_gp/c)^2 = 0.36", abs(slope - 0.36), 1e-3,
                        f"slope={slope:.6f}"))
        rows.append(_ge("7", f"3D {branch} p0=0.75: <T> slope positive", slope, 1e-12))
    for p0 in (0.2, 1.5):
        v2 = p0**2 / (1 + p0**2)
        for branch in ("plus", "minus"):
            s = record_series(line_packet(p0, branch, params), times, params, with_K=False)
            slope = an.fit_line(s.times, s.T)[0]
            rows.append(_le("7", f"1D {branch} p0={p0}: <T> slope vs (v_gp/c)^2", abs(slope - v2), 1e-3,
                            f"slope={slope:.6f}"))
    return rows


# ---------------------------------------------------------------------------
# 8. limits


def criterion_8(seed: int = 0) -> list[CheckResult]:
    rows = []
    params = ModelParams(1.0, 1.0)
    times = np.linspace(0.0, 6 * np.pi, 25)
    nonrel = an.regime_expansion(params, 0.1, "nonrel")
    f = build_gaussian(PacketSpec(p_center=(0, 0, 0.1), sigma_p=0.002), make_line_grid(8192, 0.2), params)
    slope, offset = an.fit_line(times, record_series(f, times, params, with_K=False).T)
    rows.append(_le("8", "nonrel p=0.1: slope vs 0.01 (relative)", abs(slope - nonrel.slope) / nonrel.slope, 0.10,
                    f"slope={slope:.6g}"))
    rows.append(_le("8", "nonrel p=0.1: offset vs tau0 (relative)", abs(offset - nonrel.offset) / nonrel.offset, 0.02,
                    f"offset={offset:.6g}"))
    ultra = an.regime_expansion(params, 10.0, "ultrarel")
    f = build_gaussian(PacketSpec(p_center=(0, 0, 10.0), sigma_p=0.01), make_line_grid(8192, 12.0), params)
    slope, offset = an.fit_line(times, record_series(f, times, params, with_K=False).T)
    rows.append(_le("8", "ultrarel p=10: slope vs 1 (relative)", abs(slope - ultra.slope), 0.01, f"slope={slope:.6g}"))
    rows.append(_le("8", "ultrarel p=10: offset vs (m0c^2/cp) tau0 (relative)",
                    abs(offset - ultra.offset) / ultra.offset, 0.10, f"offset={offset:.6g}"))
    return rows


# ---------------------------------------------------------------------------
# 9. uncertainty


def criterion_9(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 9)
    grid = rest_grid()
    rows = []
    violations = 0
    worst_margin = np.inf
    for k in range(32):
        params = ModelParams(1.0, float(rng.uniform(0, 1)))
        rep = an.uncertainty_product(random_packet(grid, params, rng), params)
        violations += not rep.robertson_ok
        worst_margin = min(worst_margin, rep.product - rep.robertson_bound)
    rows.append(_le("9", "Robertson violations over 32 random packets", violations, 0,
                    f"min(dTdH - bound)={worst_margin:.3e}"))
    params = ModelParams(1.0, 0.0)
    fails = 0
    worst_ratio = np.inf
    for f in definite_spin_packets(grid, params):
        rep = an.uncertainty_product(f, params)
        fails += not rep.spin_orbit_ok
        worst_ratio = min(worst_ratio, rep.product / rep.spin_orbit_bound)
    rows.append(_le("9", "spin-orbit bound violations over definite-spin single-branch packets", fails, 0,
                    f"min dTdH/spin_orbit_bound={worst_ratio:.4f}"))
    return rows


# ---------------------------------------------------------------------------
# 10. vanishing beta alpha terms


def criterion_10(seed: int = 0) -> list[CheckResult]:
    grid = rest_grid()
    params = ModelParams(1.0, 0.0)
    gp = gr = 0.0
    for f in definite_spin_packets(grid, params):
        a, b = an.definite_spin_vanishing_check(f, params)
        gp, gr = max(gp, abs(a)), max(gr, abs(b))
    pw = 0.0
    rng = np.random.default_rng(seed + 10)
    for _ in range(20):
        p = rng.normal(size=3)
        for branch in ("plus", "minus"):
            pw = max(pw, abs(an.plane_wave_beta_alpha_p(p, branch, params, tuple(random_unit_vector(rng)))))
    return [
        _le("10", "|<beta alpha.p>| on definite-spin packets", gp, 1e-8),
        _le("10", "|<beta alpha.r>| on definite-spin packets", gr, 1e-8),
        _le("10", "plane-wave u^+ beta alpha.p u", pw, 1e-12),
    ]


# ---------------------------------------------------------------------------
# 11. Zitterbewegung


def criterion_11(seed: int = 0) -> list[CheckResult]:
    params = ModelParams(1.0, 0.0)
    grid = make_grid(32, 0.5)
    times = np.linspace(0.0, 8 * np.pi, 128, endpoint=False)
    f = build_gaussian(PacketSpec(sigma_p=0.05, branch="mixed", weight=0.5, spin_axis=(0, 0, 1)), grid, params)
    zbw = an.zbw_spectrum(record_series(f, times, params, with_K=False))
    e_mean = float(np.sum(energy_grid(f, params) * f.density()) * grid.cell_volume("momentum"))
    pure = build_gaussian(PacketSpec(sigma_p=0.05, branch="plus", spin_axis=(0, 0, 1)), grid, params)
    zp = an.zbw_spectrum(record_series(pure, times, params, with_K=False))
    return [
        _le("11", "ZBW peak frequency vs 2<E>/hbar, in Fourier bins",
            abs(zbw.peak_bin_frequency - 2 * e_mean) / zbw.bin_width, 1.0, f"omega={zbw.angular_frequency:.5f}"),
        _le("11", "ZBW amplitude vs hbar/2m0c = 0.5 (relative)", abs(zbw.amplitude - 0.5) / 0.5, 0.10,
            f"amplitude={zbw.amplitude:.5f}"),
        _le("11", "pure positive branch: oscillation amplitude", zp.amplitude, 1e-6),
    ]


# ---------------------------------------------------------------------------
# 12. momentum shift


def _mean_pz(f: SpinorField) -> float:
    g = f.to_momentum()
    return float(np.sum(g.grid.mesh("momentum")[2] * g.density()) * g.grid.cell_volume("momentum"))


def criterion_12(seed: int = 0) -> list[CheckResult]:
    rows = []
    eps = 0.1
    grid = make_line_grid(2048, 4.0)
    for m0, check_purity in ((1.0, False), (0.0, True)):
        params = ModelParams(m0, 0.0)
        for sign in (1, -1):
            spec = PacketSpec(p_center=(0, 0, 1.5), sigma_p=0.05, spinor=tuple(alpha_eigenspinor(2, sign)))
            f = build_gaussian(spec, grid, params)
            g = an.momentum_shift(f, eps, params)
            shift = _mean_pz(g) - _mean_pz(f)
            rows.append(_le("12", f"1D m0={m0} alpha_z={sign:+d}: <p_z> shift vs {sign * eps:+.1f}",
                            abs(shift - sign * eps), 1e-8, f"shift={shift:.12f}"))
            if check_purity:
                rows.append(_le("12", f"1D m0=0 alpha_z={sign:+d}: branch purity preserved",
                                abs(branch_purity(g, params) - branch_purity(f, params)), 1e-8))
    rng = np.random.default_rng(seed + 12)
    params = ModelParams(1.0, 0.6)
    g3 = rest_grid()
    worst = 0.0
    for _ in range(5):
        f = random_localized_field(g3, params, rng)
        e1, e2 = rng.uniform(-0.05, 0.05, 2)
        a = an.momentum_shift(an.momentum_shift(f, e2, params), e1, params)
        b = an.momentum_shift(f, e1 + e2, params)
        worst = max(worst, np.abs(a.data - b.data).max() * np.sqrt(g3.cell_volume("momentum")))
    rows.append(_le("12", "group law U(e1)U(e2) = U(e1+e2) (max node amplitude)", worst, 1e-10))
    return rows


# ---------------------------------------------------------------------------
# 13. electromagnetic rate


def criterion_13(seed: int = 0) -> list[CheckResult]:
    grid = rest_grid()
    rows = []
    for tau0, A, spec in (
        (0.0, (0.2, 0.0, 0.0), PacketSpec(p_center=(0, 0, 0.1), sigma_p=0.08)),
        (0.5, (0.1, -0.2, 0.3), PacketSpec(sigma_p=0.08, branch="mixed", weight=0.3, r_center=(1, 0, -2))),
    ):
        params = ModelParams(1.0, tau0, q=1.0)
        f = build_gaussian(spec, grid, params)
        rate = an.em_T_rate(f, an.EMFieldSpec.constant(A, q=1.0), params).total
        fd = fd_T_rate(f, params, A)
        rows.append(_le("13", f"term-wise rate vs finite-difference evolution (A={A}, tau0={tau0})",
                        abs(rate - fd), 1e-5, f"rate={rate:.9f}"))
    params = ModelParams(1.0, 0.4)
    f = build_gaussian(PacketSpec(sigma_p=0.08, branch="mixed", weight=0.5, r_center=(0, 1, 0)), grid, params)
    free = an.em_T_rate(f, an.EMFieldSpec.constant((0, 0, 0)), params).total
    phi = an.EMFieldSpec.constant((0, 0, 0), Phi=lambda x, y, z: 0.3 * x * y + 0.1 * z**2 - 0.5 * z)
    with_phi = an.em_T_rate(f, phi, params).total
    rows.append(_le("13", "scalar potential leaves the rate at its free value", abs(with_phi - free), 1e-10))
    return rows


# ---------------------------------------------------------------------------
# 14. Heisenberg closed form


def criterion_14(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 14)
    grid = rest_grid()
    worst0 = 0.0
    for _ in range(10):
        params = ModelParams(1.0, float(rng.uniform(0, 1)))
        f = random_packet(grid, params, rng)
        worst0 = max(worst0, abs(heisenberg_T_expectation(f, 0.0, params) - expectation_T(f, params)))
    params = ModelParams(1.0, 0.3)
    f = build_gaussian(PacketSpec(sigma_p=0.08, branch="mixed", weight=0.5, spin_axis=(0, 0, 1)), centred_grid(), params)
    worst_t = worst_factored = 0.0
    for t in np.linspace(0.0, np.pi, 9):
        direct = expectation_T(evolve_free(f, t, params), params)
        worst_t = max(worst_t, abs(heisenberg_T_expectation(f, t, params) - direct))
        worst_factored = max(worst_factored, abs(factored_T_expectation(f, t, params) - direct))
    return [
        _le("14", "Heisenberg <T(0)> vs Schroedinger on 10 random packets", worst0, 1e-8),
        _le("14", "Heisenberg <T(t)> vs Schroedinger over one ZBW period", worst_t, 1e-4,
            f"factored closed form max deviation={worst_factored:.3e} (logged discrepancy)"),
    ]


# ---------------------------------------------------------------------------

CRITERIA: dict[str, Callable[[int], list[CheckResult]]] = {
    str(k): fn for k, fn in [
        (1, criterion_1), (2, criterion_2), (3, criterion_3), (4, criterion_4), (5, criterion_5),
        (6, criterion_6), (7, criterion_7), (8, criterion_8), (9, criterion_9), (10, criterion_10),
        (11, criterion_11), (12, criterion_12), (13, criterion_13), (14, criterion_14),
    ]
}


def run_battery(seed: int = 0, only: list[str] | None = None) -> list[CheckResult]:
    rows = []
    for key, fn in CRITERIA.items():
        if only and key not in only:
            continue
        rows.extend(fn(seed))
    return rows
