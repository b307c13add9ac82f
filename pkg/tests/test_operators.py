import numpy as np
import pytest
from hypothesis import given, strategies as st

from diractime.algebra import DIRAC, hermitian_eigensystem
from diractime.battery import random_localized_field
from diractime.errors import LocalizationError, SingularProjectorError, ValidationError
from diractime.hilbert import (
    MatrixField,
    SpinorField,
    coordinate,
    expect_commutator,
    expect_complex,
    inner_product,
    make_grid,
    make_line_grid,
    normalize,
)
from diractime.operators import (
    BetaKOperator,
    ModelParams,
    SpinOrbitOperator,
    apply_K,
    apply_sigma_dot_L,
    energy_projector,
    hamiltonian_at,
    hamiltonian_field,
    heisenberg_T_expectation,
    time_operator_at,
)
from diractime.dynamics import evolve_free, expectation_T
from diractime.packets import PacketSpec, build_gaussian

vec3 = st.lists(st.floats(-5, 5), min_size=3, max_size=3)
I4 = np.eye(4)


def eig(m):
    return hermitian_eigensystem(m)[0]


def test_params_validation():
    with pytest.raises(ValidationError):
        ModelParams(m0=-1.0)
    with pytest.raises(ValidationError):
        ModelParams(tau0=-0.1)
    with pytest.raises(ValidationError):
        ModelParams(m0=float("nan"))


def test_hamiltonian_examples():
    assert np.array_equal(hamiltonian_at((0, 0, 0), ModelParams(1.0)), DIRAC.beta)
    assert np.allclose(eig(hamiltonian_at((0, 0, 0), ModelParams(1.0))), [-1, -1, 1, 1], atol=1e-14)
    assert np.allclose(eig(hamiltonian_at((0, 0, 0.75), ModelParams(1.0))), [-1.25, -1.25, 1.25, 1.25], atol=1e-12)
    assert np.allclose(eig(hamiltonian_at((0, 0, 1), ModelParams(0.0))), [-1, -1, 1, 1], atol=1e-12)


def test_time_operator_examples():
    assert np.array_equal(time_operator_at((0, 0, 0), ModelParams(1.0, 2.0)), 2.0 * DIRAC.beta)
    t = time_operator_at((0, 0, 3), ModelParams(1.0, 4.0))
    assert np.max(np.abs(t @ t - 25 * I4)) <= 1e-12
    assert np.allclose(eig(t), [-5, -5, 5, 5], atol=1e-12)


@given(vec3, st.floats(0, 3))
def test_squares_are_scalar(v, s):
    params = ModelParams(s, s)
    h = hamiltonian_at(v, params)
    t = time_operator_at(v, params)
    v2 = float(np.dot(v, v))
    assert np.max(np.abs(h @ h - (v2 + s**2) * I4)) <= 1e-12 * max(1.0, v2 + s**2)
    assert np.max(np.abs(t @ t - (v2 + s**2) * I4)) <= 1e-12 * max(1.0, v2 + s**2)
    assert np.max(np.abs(h - h.conj().T)) == 0


def test_projector_examples():
    params = ModelParams(1.0)
    assert np.array_equal(energy_projector((0, 0, 0), "plus", params), np.diag([1, 1, 0, 0]).astype(complex))
    assert abs(np.trace(energy_projector((0, 0, 0.75), "plus", params)) - 2) <= 1e-12


@given(vec3, st.floats(0, 3))
def test_projector_algebra(p, m):
    params = ModelParams(m)
    if np.dot(p, p) + m * m < 1e-6:
        return
    lp = energy_projector(p, "plus", params)
    lm = energy_projector(p, "minus", params)
    for proj in (lp, lm):
        assert np.max(np.abs(proj @ proj - proj)) <= 1e-12
        assert np.max(np.abs(proj - proj.conj().T)) <= 1e-12
        assert abs(np.trace(proj).real - 2) <= 1e-12
    assert np.max(np.abs(lp + lm - I4)) <= 1e-12
    assert np.max(np.abs(lp @ lm)) <= 1e-12


def test_singular_projector():
    with pytest.raises(SingularProjectorError):
        energy_projector((0, 0, 0), "plus", ModelParams(0.0))
    with pytest.raises(ValidationError):
        energy_projector((0, 0, 1), "up", ModelParams(1.0))


def swave(grid):
    g = grid
    data = np.zeros((4, *g.shape), complex)
    data[0] = np.exp(-sum(m**2 for m in g.mesh("momentum")) / (4 * 0.08**2))
    return normalize(SpinorField(g, data))


def test_K_on_s_wave(rest_grid):
    f = swave(rest_grid)
    kf = apply_K(f)
    assert np.max(np.abs(kf.data - f.data)) <= 1e-8 * np.max(np.abs(f.data))
    assert abs(1 + 2 * expect_complex(f, BetaKOperator()) - 3) <= 1e-8


def test_K_expectation_is_real(moving_packet):
    k = expect_complex(moving_packet, SpinOrbitOperator())
    assert abs(k.imag) <= 1e-10


def test_K_requires_localization_and_momentum(rest_grid, params):
    wide = build_gaussian(PacketSpec(sigma_p=0.15), rest_grid, params, localized=False)
    with pytest.raises(LocalizationError):
        apply_K(wide)
    with pytest.raises(ValidationError):
        apply_K(swave(rest_grid).to_position())


def _dense_spin_orbit(grid):
    """Sigma.L / 2 as a dense (4N)x(4N) matrix from explicit DFT matrices."""
    n = grid.shape[0]
    p = grid.p_axes[0]
    x = grid.x_axes[0]
    # unitary map from orthonormal momentum amplitudes to position amplitudes
    F = np.exp(1j * np.outer(x, p)) / np.sqrt(n)
    R1 = F.conj().T @ np.diag(x) @ F
    P1 = np.diag(p).astype(complex)
    I1 = np.eye(n)

    def on(axis, m):
        mats = [I1, I1, I1]
        mats[axis] = m
        return np.kron(np.kron(mats[0], mats[1]), mats[2])

    R = [on(i, R1) for i in range(3)]
    P = [on(i, P1) for i in range(3)]
    L = [R[1] @ P[2] - R[2] @ P[1], R[2] @ P[0] - R[0] @ P[2], R[0] @ P[1] - R[1] @ P[0]]
    return 0.5 * sum(np.kron(DIRAC.sigma[k], L[k]) for k in range(3))


def test_spin_orbit_matches_dense_oracle():
    grid = make_grid(8, 1.0)
    px, py, pz = grid.mesh("momentum")
    env = np.exp(-(px**2 + py**2 + pz**2) / (4 * 0.3**2)) * np.exp(-1j * 0.4 * pz)
    data = np.zeros((4, *grid.shape), complex)
    data[0] = (px + 0.5j * py) * env  # p_x-odd, p_y-even real part
    data[1] = px * env
    data[3] = 0.2 * py * env
    f = normalize(SpinorField(grid, np.broadcast_to(data, (4, *grid.shape)).copy()))
    s_dot_l = 0.5 * inner_product(f, f.replace(apply_sigma_dot_L(f)))
    vec = f.data.reshape(-1) * np.sqrt(grid.cell_volume("momentum"))
    oracle = vec.conj() @ _dense_spin_orbit(grid) @ vec
    assert abs(oracle) > 0.1
    assert abs(s_dot_l - oracle) <= 1e-8


def test_K_commutes_with_H():
    grid = make_grid(64, 1.2)
    params = ModelParams(1.0, 0.0)
    rng = np.random.default_rng(11)
    for _ in range(3):
        f = random_localized_field(grid, params, rng)
        assert abs(expect_commutator(f, SpinOrbitOperator(), hamiltonian_field(params))) <= 1e-8


def test_alpha_r_alpha_p_commutator(moving_packet):
    ar = MatrixField(tuple((coordinate(i), DIRAC.alpha[i]) for i in range(3)), "position")
    ap = MatrixField(tuple((coordinate(i), DIRAC.alpha[i]) for i in range(3)), "momentum")
    lhs = expect_commutator(moving_packet, ar, ap)
    rhs = 1j * (3 + 2 * (expect_complex(moving_packet, BetaKOperator()) - 1))
    assert abs(lhs - rhs) <= 1e-6 * abs(rhs)


@pytest.mark.parametrize("tau0", [0.0, 0.4])
def test_heisenberg_at_zero(moving_packet, tau0):
    params = ModelParams(1.0, tau0)
    assert abs(heisenberg_T_expectation(moving_packet, 0.0, params) - expectation_T(moving_packet, params)) <= 1e-8


def test_heisenberg_tracks_direct_evolution(moving_packet):
    params = ModelParams(1.0, 0.3)
    for t in (0.4, 1.7, 3.0):
        direct = expectation_T(evolve_free(moving_packet, t, params), params)
        assert abs(heisenberg_T_expectation(moving_packet, t, params) - direct) <= 1e-8


def test_heisenberg_requires_normalized(moving_packet, params):
    with pytest.raises(ValidationError):
        heisenberg_T_expectation(moving_packet * 1.5, 0.3, params)


def test_heisenberg_slope_over_zbw_window():
    params = ModelParams(1.0, 0.0)
    f = build_gaussian(PacketSpec(p_center=(0, 0, 0.75), sigma_p=0.01), make_line_grid(8192, 2.0), params)
    t = np.linspace(0.0, np.pi, 9)
    vals = [heisenberg_T_expectation(f, x, params) for x in t]
    assert abs(np.polyfit(t, vals, 1)[0] - 0.36) <= 1e-3


def test_heisenberg_oscillation_period_is_half_compton_time():
    params = ModelParams(1.0, 0.0)
    grid = make_line_grid(2048, 2.0)
    f = build_gaussian(PacketSpec(sigma_p=0.05, branch="mixed", weight=0.5, spin_axis=(0, 0, 1),
                                  r_center=(0, 0, 2.0)), grid, params)
    t = np.linspace(0, 8 * np.pi, 64, endpoint=False)
    v = np.array([heisenberg_T_expectation(f, x, params) for x in t])
    v = v - np.polyval(np.polyfit(t, v, 1), t)
    w = 2 * np.pi * np.fft.rfftfreq(len(t), t[1] - t[0])
    peak = w[np.argmax(np.abs(np.fft.rfft(v))[1:]) + 1]
    assert abs(peak - 2.0) <= w[1]
