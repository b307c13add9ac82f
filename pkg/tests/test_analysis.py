import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diractime import analysis as an
from diractime.algebra import DIRAC, bracket
from diractime.battery import random_packet
from diractime.dynamics import ObservableSeries, ehrenfest_T_rate, fd_T_rate, record_series
from diractime.errors import ValidationError
from diractime.hilbert import (
    MatrixField,
    coordinate,
    expect_commutator,
    inner_product,
    make_grid,
    make_line_grid,
)
from diractime.operators import ModelParams, hamiltonian_field, time_operator_at, time_operator_field
from diractime.packets import PacketSpec, alpha_eigenspinor, branch_purity, build_gaussian

WIDE = make_grid(64, 1.2)


# --- eigensystem -----------------------------------------------------------


def test_table_example():
    es = an.time_eigensystem(3.0, ModelParams(1.0, 4.0))
    assert es.tau_r == 5.0
    assert np.allclose(es.spinors[:, 0], [0.94868, 0, 0.31623, 0], atol=1e-5)
    assert abs(es.normalization - (10 / 9) ** -0.5) <= 1e-15
    assert np.allclose(es.numeric_eigenvalues, [-5, -5, 5, 5], atol=1e-12)


def test_table_at_origin():
    es = an.time_eigensystem(0.0, ModelParams(1.0, 0.7))
    assert np.allclose(es.spinors, np.eye(4), atol=1e-15)
    assert np.allclose(es.eigenvalues, [0.7, 0.7, -0.7, -0.7])


def test_table_without_rest_time():
    es = an.time_eigensystem(1.0, ModelParams(1.0, 0.0))
    assert np.allclose(es.eigenvalues, [1, 1, -1, -1])
    assert abs(es.gap - 2.0) <= 1e-15
    assert an.eigensystem_mismatch(es) <= 1e-10


def test_negative_radius_rejected():
    with pytest.raises(ValidationError):
        an.time_eigensystem(-1.0, ModelParams())


@given(st.floats(0, 50), st.floats(0, 50))
def test_table_matches_jacobi(r, tau0):
    es = an.time_eigensystem(r, ModelParams(1.0, tau0))
    u = es.spinors
    scale = max(1.0, es.tau_r)
    assert np.max(np.abs(u.conj().T @ u - np.eye(4))) <= 1e-12
    assert es.residual <= 1e-12 * scale
    t = time_operator_at((0, 0, r), ModelParams(1.0, tau0))
    assert np.max(np.abs(t @ u - u * es.eigenvalues)) <= 1e-12 * scale
    assert an.eigensystem_mismatch(es) <= 1e-10
    # positive eigenvalues exceed negative ones by 2 tau_r >= 2 tau0
    assert (es.eigenvalues[0] - es.eigenvalues[2]) >= 2 * tau0 - 1e-12


# --- uncertainty -----------------------------------------------------------


@settings(max_examples=8)
@given(st.integers(0, 10**6), st.floats(0, 1))
def test_robertson_holds(seed, tau0):
    params = ModelParams(1.0, tau0)
    rep = an.uncertainty_product(random_packet(WIDE, params, np.random.default_rng(seed)), params)
    assert rep.robertson_ok
    assert rep.product >= rep.robertson_bound - 1e-9


def test_robertson_bound_is_the_full_commutator(moving_packet, params):
    rep = an.uncertainty_product(moving_packet, params)
    comm = expect_commutator(moving_packet, time_operator_field(params), hamiltonian_field(params))
    assert abs(rep.robertson_bound - 0.5 * abs(comm)) <= 1e-15
    rate = an.rate_report(moving_packet, params)
    assert abs(rate.ehrenfest - (rate.one_plus_2betaK + rate.gamma_contribution)) <= 1e-8


def test_definite_spin_spin_orbit_bound_equals_robertson():
    # expected to fail: the gamma term does not vanish for Gaussian packets
    params = ModelParams(1.0, 0.0)
    f = build_gaussian(PacketSpec(p_center=(0, 0, 0.3), sigma_p=0.08), WIDE, params)
    rep = an.uncertainty_product(f, params)
    assert abs(rep.robertson_bound - rep.spin_orbit_bound) <= 1e-6


def test_uncertainty_refined_grid_oracle():
    params = ModelParams(1.0, 0.0)
    spec = PacketSpec(p_center=(0, 0, 0.75), sigma_p=0.1)
    coarse = an.uncertainty_product(build_gaussian(spec, make_grid((32, 32, 64), (1.0, 1.0, 2.0)), params), params)
    fine = an.uncertainty_product(build_gaussian(spec, make_grid(64, (1.4, 1.4, 2.0)), params), params)
    assert abs(coarse.dT / fine.dT - 1) <= 0.01
    assert abs(coarse.dH / fine.dH - 1) <= 0.01


# --- velocities and limits -------------------------------------------------


def narrow_series(p0, branch="plus", m0=1.0, t_end=20.0, n=16, tau0=0.0):
    params = ModelParams(m0, tau0)
    p_max = max(2.0, 1.2 * abs(p0))
    f = build_gaussian(PacketSpec(p_center=(0, 0, p0), sigma_p=5e-4 * max(1.0, p_max / 2), branch=branch),
                       make_line_grid(16384, p_max), params)
    return record_series(f, np.linspace(0, t_end, n), params, with_K=False)


def test_velocity_example():
    rep = an.velocity_extraction(narrow_series(0.75))
    assert abs(rep.v_gp[2] - 0.6) <= 1e-5
    assert abs(rep.v_ph[2] - 5 / 3) <= 1e-4
    assert abs(rep.product - 1) <= 1e-3


@pytest.mark.parametrize("p0", [0.2, 0.5, 0.75, 1.5])
def test_velocity_product_is_c_squared(p0):
    rep = an.velocity_extraction(narrow_series(p0))
    assert abs(rep.product - 1) <= 1e-3
    assert rep.v_ph_magnitude >= 1.0


def test_massless_velocities():
    rep = an.velocity_extraction(narrow_series(1.0, m0=0.0))
    assert abs(rep.v_gp_magnitude - 1) <= 1e-6
    assert abs(rep.v_ph_magnitude - 1) <= 1e-6


def test_negative_branch_moves_backwards():
    rep = an.velocity_extraction(narrow_series(0.75, branch="minus"))
    assert abs(rep.v_gp[2] + 0.6) <= 1e-5
    assert rep.T_slope > 0


def test_degenerate_series_rejected():
    s = narrow_series(0.75, n=1)
    with pytest.raises(ValidationError):
        an.velocity_extraction(s)


def test_regime_predictions():
    p = ModelParams(1.0, 1.0)
    nr = an.regime_expansion(p, 0.1, "nonrel")
    assert abs(nr.slope - 0.01) <= 1e-15 and nr.offset == 1.0
    ur = an.regime_expansion(p, 10.0, "ultrarel")
    assert ur.slope == 1.0 and abs(ur.offset - 0.1) <= 1e-15
    assert an.regime_expansion(p, 0.0, "nonrel").slope == 0.0
    for bad in ((0.5, "nonrel"), (2.0, "ultrarel"), (1.0, "relativistic")):
        with pytest.raises(ValidationError):
            an.regime_expansion(p, *bad)


def test_rest_packet_time_nearly_frozen_at_rest_time():
    s = narrow_series(0.0, tau0=1.0)
    slope, offset = an.fit_line(s.times, s.T)
    sigma = 5e-4
    # residual drift from the momentum spread: <p^2/E^2> ~ sigma^2, <m/E> ~ 1 - sigma^2/2
    assert abs(slope - sigma**2) <= 1e-12
    assert abs(offset - (1 - sigma**2 / 2)) <= 1e-9


# --- momentum shift --------------------------------------------------------


def alpha_packet(sign, m0=1.0, p0=1.5):
    params = ModelParams(m0, 0.0)
    spec = PacketSpec(p_center=(0, 0, p0), sigma_p=0.05, spinor=tuple(alpha_eigenspinor(2, sign)))
    return build_gaussian(spec, make_line_grid(2048, 4.0), params), params


def mean_pz(f):
    g = f.to_momentum()
    return float(np.sum(g.grid.mesh("momentum")[2] * g.density()) * g.grid.cell_volume("momentum"))


def test_zero_shift_is_identity():
    f, params = alpha_packet(1)
    assert np.max(np.abs(an.momentum_shift(f, 0.0, params).data - f.data)) == 0


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("m0", [1.0, 0.0])
def test_alpha_eigenpacket_shift(sign, m0):
    f, params = alpha_packet(sign, m0)
    g = an.momentum_shift(f, 0.1, params)
    assert abs(mean_pz(g) - mean_pz(f) - sign * 0.1) <= 1e-8
    if m0 == 0.0:
        assert abs(branch_purity(g, params) - branch_purity(f, params)) <= 1e-8


def test_shift_representability():
    f, params = alpha_packet(1)
    limit = 2048 * f.grid.dp[2] / 8
    with pytest.raises(ValidationError):
        an.momentum_shift(f, 1.01 * limit, params)


@given(st.floats(-0.2, 0.2), st.floats(-0.2, 0.2), st.floats(0, 1))
def test_shift_group_law(e1, e2, tau0):
    f, _ = alpha_packet(1)
    params = ModelParams(1.0, tau0)
    a = an.momentum_shift(an.momentum_shift(f, e2, params), e1, params)
    b = an.momentum_shift(f, e1 + e2, params)
    assert np.max(np.abs(a.data - b.data)) * np.sqrt(f.grid.cell_volume("momentum")) <= 1e-10


# --- zitterbewegung --------------------------------------------------------


def zbw_series(branch, weight=0.5, n=128):
    params = ModelParams(1.0, 0.0)
    f = build_gaussian(PacketSpec(sigma_p=0.05, branch=branch, weight=weight, spin_axis=(0, 0, 1)),
                       make_grid(32, 0.5), params)
    return record_series(f, np.linspace(0, 8 * np.pi, n, endpoint=False), params, with_K=False)


def test_zbw_of_equal_mixture():
    spec = an.zbw_spectrum(zbw_series("mixed"))
    assert abs(spec.angular_frequency - 2.0) <= spec.bin_width
    assert abs(spec.amplitude / 0.5 - 1) <= 0.1
    assert spec.amplitude <= 0.5


def test_no_zbw_for_pure_branch():
    assert an.zbw_spectrum(zbw_series("plus", 0.0, n=64)).amplitude <= 1e-6


def test_zbw_sampling_checks():
    s = zbw_series("mixed", n=64)
    with pytest.raises(ValidationError):
        an.zbw_spectrum(s, min_samples=65)
    uneven = ObservableSeries(np.r_[s.times[:-1], s.times[-1] + 0.01], s.r, s.T, s.H, s.p, s.dT, s.dH,
                              s.betaK, s.purity)
    with pytest.raises(ValidationError):
        an.zbw_spectrum(uneven)


# --- electromagnetic coupling ----------------------------------------------


@pytest.fixture(scope="module")
def em_packet():
    params = ModelParams(1.0, 0.4)
    spec = PacketSpec(p_center=(0, 0, 0.3), sigma_p=0.08, branch="mixed", weight=0.3, spin_axis=(1, 0, 1))
    return build_gaussian(spec, make_grid((32, 32, 64), (0.8, 0.8, 1.6)), params), params


def test_field_off_matches_free_rate(em_packet):
    f, params = em_packet
    rate = an.em_T_rate(f, an.EMFieldSpec.constant((0, 0, 0)), params)
    assert abs(rate.total - ehrenfest_T_rate(f, params)) <= 1e-10


@pytest.mark.parametrize("A", [(0.2, 0, 0), (0.1, -0.2, 0.3)])
def test_constant_potential_matches_finite_difference(em_packet, A):
    f, params = em_packet
    rate = an.em_T_rate(f, an.EMFieldSpec.constant(A), params)
    assert abs(rate.total - fd_T_rate(f, params, A)) <= 1e-5


def test_scalar_potential_drops_out(em_packet):
    f, params = em_packet
    free = an.em_T_rate(f, an.EMFieldSpec.constant((0, 0, 0)), params).total
    em = an.EMFieldSpec.constant((0, 0, 0), Phi=lambda x, y, z: np.sin(0.1 * x) + 0.02 * y * z)
    rate = an.em_T_rate(f, em, params)
    assert abs(rate.total - free) <= 1e-10
    assert abs(rate.phi_term) <= 1e-10


@pytest.mark.parametrize("em", [
    an.EMFieldSpec.linear(np.array([[0.0, 0.05, 0.0], [0.02, 0.0, -0.03], [0.01, 0.0, 0.04]])),
    an.EMFieldSpec.circular((0.0, 0.0, 0.05)),
    an.EMFieldSpec.circular((0.03, -0.02, 0.01), q=-1.0),
])
def test_position_dependent_potential_against_node_commutator(em_packet, em):
    f, params = em_packet
    pos = f.to_position()
    x, y, z = pos.grid.mesh("position")
    A = [np.broadcast_to(a, pos.grid.shape) for a in em.A(x, y, z)]
    # oracle: explicit 4x4 commutator [T(r), alpha.A(r)] node by node
    out = np.zeros_like(pos.data)
    it = np.nditer(A[0], flags=["multi_index"])
    xs = pos.grid.x_axes
    for _ in it:
        i, j, k = it.multi_index
        r = (xs[0][i], xs[1][j], xs[2][k])
        aA = sum(A[c][i, j, k] * DIRAC.alpha[c] for c in range(3))
        out[:, i, j, k] = bracket(time_operator_at(r, params), aA) @ pos.data[:, i, j, k]
    coupling = inner_product(pos, pos.replace(out)) / 1j
    expected = ehrenfest_T_rate(f, params) - em.q * coupling.real
    assert abs(an.em_T_rate(f, em, params).total - expected) <= 1e-10


def test_kinetic_momentum_of_constant_field(em_packet):
    f, _ = em_packet
    pi = an.kinetic_momentum(f, an.EMFieldSpec.constant((0.1, 0.2, -0.3), q=2.0))
    p = an.kinetic_momentum(f, an.EMFieldSpec.constant((0, 0, 0)))
    assert np.allclose(pi - p, [-0.2, -0.4, 0.6], atol=1e-12)


# --- vanishing gamma terms -------------------------------------------------


def test_mixed_branch_gamma_terms_are_reported(em_packet):
    f, params = em_packet
    gp, gr = an.definite_spin_vanishing_check(f, params)
    assert np.isfinite(gp) and np.isfinite(gr)
    assert abs(gp.real) <= 1e-12 and abs(gr.real) <= 1e-12


@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.sampled_from(["plus", "minus"]),
       st.lists(st.floats(-1, 1), min_size=3, max_size=3), st.sampled_from([1, -1]), st.floats(0.1, 2))
def test_plane_wave_beta_alpha_p_vanishes(p, branch, axis, sign, m0):
    if np.linalg.norm(axis) < 1e-3:
        return
    val = an.plane_wave_beta_alpha_p(p, branch, ModelParams(m0), axis, sign)
    assert abs(val) <= 1e-12 * max(1.0, np.linalg.norm(p))


def test_gamma_fields_are_anti_hermitian():
    for fld in (an.gamma_p_field(), an.gamma_r_field()):
        m = fld.at((0.3, -0.1, 0.7))
        assert np.max(np.abs(m + m.conj().T)) <= 1e-15
    ar = MatrixField(tuple((coordinate(i), DIRAC.alpha[i]) for i in range(3)), "position")
    assert ar.hermitian
