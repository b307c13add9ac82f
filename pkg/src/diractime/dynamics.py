"""Exact node-wise time evolution and observable time series.

Free and spatially uniform vector-potential Hamiltonians are diagonal in
momentum, so psi(p, t) = exp(-i H(p) t) psi(p, 0) is exact for any t.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .hilbert import SpinorField, expect_commutator, expect_complex, require_normalized, thread_count
from .operators import (
    BetaKOperator,
    ModelParams,
    energy_grid,
    exp_hamiltonian,
    hamiltonian_field,
    time_operator_field,
)
from .packets import branch_purity

ZERO_A = (0.0, 0.0, 0.0)

SERIES_COLUMNS = (
    "t", "x", "y", "z", "T", "H", "px", "py", "pz", "dT", "dH", "betaK", "purity",
)


def evolve_free(f: SpinorField, t: float, params: ModelParams) -> SpinorField:
    return evolve_uniform_A(f, t, ZERO_A, params)


def evolve_uniform_A(f: SpinorField, t: float, A: Sequence[float], params: ModelParams) -> SpinorField:
    """exp(-i H_A t) with H_A = alpha.(p - qA) + beta m0, A constant."""
    if f.representation != "momentum":
        raise ValidationError("evolution expects a momentum-representation field")
    if t == 0:
        return f
    return f.replace(exp_hamiltonian(f, -t, params, A))


@dataclass(frozen=True)
class Snapshot:
    r: np.ndarray
    T: float
    H: float
    p: np.ndarray
    dT: float
    dH: float
    betaK: float
    purity: float


def snapshot(f: SpinorField, params: ModelParams, A: Sequence[float] = ZERO_A, with_K: bool = True) -> Snapshot:
    """Instantaneous expectations of a normalized field."""
    mom = f.to_momentum()
    pos = mom.to_position()
    rho_x = pos.density() * pos.grid.cell_volume("position")
    rho_p = mom.density() * mom.grid.cell_volume("momentum")
    xm = pos.grid.mesh("position")
    pm = mom.grid.mesh("momentum")
    r = np.array([np.sum(xm[i] * rho_x) for i in range(3)])
    p = np.array([np.sum(pm[i] * rho_p) for i in range(3)])
    T = expect_complex(pos, time_operator_field(params)).real
    # T^2 = r^2 + tau0^2 node-wise in position space
    T2 = float(np.sum((xm[0] ** 2 + xm[1] ** 2 + xm[2] ** 2 + params.tau0**2) * rho_x))
    H = expect_complex(mom, hamiltonian_field(params, A)).real
    H2 = float(np.sum(energy_grid(mom, params, A) ** 2 * rho_p))
    betaK = expect_complex(mom, BetaKOperator()).real if with_K else float("nan")
    return Snapshot(
        r=r, T=T, H=H, p=p,
        dT=float(np.sqrt(max(T2 - T * T, 0.0))),
        dH=float(np.sqrt(max(H2 - H * H, 0.0))),
        betaK=betaK,
        purity=branch_purity(mom, params),
    )


@dataclass(frozen=True)
class ObservableSeries:
    times: np.ndarray
    r: np.ndarray  # (n, 3)
    T: np.ndarray
    H: np.ndarray
    p: np.ndarray  # (n, 3)
    dT: np.ndarray
    dH: np.ndarray
    betaK: np.ndarray
    purity: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.times)

    def rows(self):
        for k in range(len(self.times)):
            yield (
                self.times[k], *self.r[k], self.T[k], self.H[k], *self.p[k],
                self.dT[k], self.dH[k], self.betaK[k], self.purity[k],
            )


def record_series(
    f0: SpinorField,
    times: Sequence[float],
    params: ModelParams,
    A: Sequence[float] | None = None,
    with_K: bool = True,
) -> ObservableSeries:
    """Evolve f0 independently to each time stamp and record expectations."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValidationError("times must be a non-empty 1-D sequence")
    if np.any(np.diff(times) <= 0):
        raise ValidationError("times must be strictly increasing")
    require_normalized(f0)
    A = ZERO_A if A is None else tuple(float(a) for a in A)
    f0 = f0.to_momentum()

    def one(t):
        return snapshot(evolve_uniform_A(f0, t, A, params), params, A, with_K)

    workers = min(thread_count(), len(times))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            snaps = list(pool.map(one, times))
    else:
        snaps = [one(t) for t in times]
    return ObservableSeries(
        times=times,
        r=np.array([s.r for s in snaps]),
        T=np.array([s.T for s in snaps]),
        H=np.array([s.H for s in snaps]),
        p=np.array([s.p for s in snaps]),
        dT=np.array([s.dT for s in snaps]),
        dH=np.array([s.dH for s in snaps]),
        betaK=np.array([s.betaK for s in snaps]),
        purity=np.array([s.purity for s in snaps]),
        meta={"m0": params.m0, "tau0": params.tau0, "q": params.q, "A": A},
    )


def expectation_T(f: SpinorField, params: ModelParams) -> float:
    return expect_complex(f.to_position(), time_operator_field(params)).real


def ehrenfest_T_rate(f: SpinorField, params: ModelParams, A: Sequence[float] = ZERO_A) -> float:
    """(1/i) <[T, H_A]> evaluated instantaneously."""
    return (expect_commutator(f, time_operator_field(params), hamiltonian_field(params, A)) / 1j).real


def fd_T_rate(f: SpinorField, params: ModelParams, A: Sequence[float] = ZERO_A, h: float = 1e-2) -> float:
    """Five-point centred difference of <T>(t) at t = 0 under exact evolution."""
    vals = [expectation_T(evolve_uniform_A(f, k * h, A, params), params) for k in (-2, -1, 1, 2)]
    return (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)
