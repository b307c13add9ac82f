"""Command-line front end.

    diractime <command> [--config FILE] [--out FILE] [overrides]

Config files are sectioned ``key = value`` text with ``#`` comments and
vectors written ``x,y,z``. Quantities in the file and on the command line
are in user units set by ``[units] hbar, c``; the default hbar = c = 1
makes user and internal units coincide. Internally time is kept in user
time units, energies are divided by hbar and lengths by c.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import analysis as an
from .battery import run_battery
from .dynamics import SERIES_COLUMNS, ObservableSeries, fd_T_rate, record_series
from .errors import ConfigError, ValidationError
from .hilbert import MomentumGrid, SpinorField, make_grid
from .operators import ModelParams, energy_grid
from .packets import PacketSpec, branch_purity, build_gaussian

COMMANDS = ("eigen", "evolve", "uncertainty", "velocities", "limits", "shift", "zbw", "emrate", "check")


# ---------------------------------------------------------------------------
# config file


@dataclass(frozen=True)
class Entry:
    value: str
    lineno: int | None


RawConfig = dict[str, dict[str, Entry]]

SCHEMA: dict[str, tuple[str, ...]] = {
    "units": ("hbar", "c"),
    "model": ("m0c2", "tau0", "q"),
    "grid": ("n", "p_max"),
    "packet": ("p_center", "sigma_p", "r_center", "branch", "weight", "spin_axis", "spin_sign"),
    "schedule": ("t_start", "t_end", "samples"),
    "em": ("kind", "A", "B", "G", "E"),
    "eigen": ("r",),
    "shift": ("epsilon",),
    "limits": ("regime",),
    "zbw": ("axis",),
    "check": ("seed", "only"),
}


def parse_config_text(text: str) -> RawConfig:
    out: RawConfig = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or len(line) < 3:
                raise ConfigError(f"malformed section header {raw.strip()!r}", lineno)
            section = line[1:-1].strip()
            if section not in SCHEMA:
                raise ConfigError(f"unknown section [{section}]", lineno)
            out.setdefault(section, {})
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if section is None:
            raise ConfigError("key outside of any [section]", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in SCHEMA[section]:
            raise ConfigError(f"unknown key {key!r} in [{section}]", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        out[section][key] = Entry(value, lineno)
    return out


def _float(e: Entry, name: str) -> float:
    try:
        return float(e.value)
    except ValueError:
        raise ConfigError(f"{name}: expected a number, got {e.value!r}", e.lineno) from None


def _int(e: Entry, name: str) -> int:
    try:
        return int(e.value)
    except ValueError:
        raise ConfigError(f"{name}: expected an integer, got {e.value!r}", e.lineno) from None


def _vector(e: Entry, name: str, size: int = 3, scalar_ok: bool = False) -> tuple[float, ...]:
    parts = [s.strip() for s in e.value.split(",")]
    try:
        vals = tuple(float(s) for s in parts)
    except ValueError:
        raise ConfigError(f"{name}: expected {size} comma-separated numbers, got {e.value!r}", e.lineno) from None
    if scalar_ok and len(vals) == 1:
        return vals * size
    if len(vals) != size:
        raise ConfigError(f"{name}: expected {size} components, got {len(vals)}", e.lineno)
    return vals


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class Units:
    """hbar in user energy x user time, c in user length / user time."""

    hbar: float = 1.0
    c: float = 1.0

    def energy_in(self, e):
        return np.asarray(e) / self.hbar

    def energy_out(self, e):
        return np.asarray(e) * self.hbar

    def length_in(self, x):
        return np.asarray(x) / self.c

    def length_out(self, x):
        return np.asarray(x) * self.c

    def momentum_in(self, p):
        return np.asarray(p) * self.c / self.hbar

    def momentum_out(self, p):
        return np.asarray(p) * self.hbar / self.c


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, already converted to internal units."""

    params: ModelParams = ModelParams()
    grid_n: tuple[int, int, int] = (32, 32, 256)
    grid_p_max: tuple[float, float, float] = (0.05, 0.05, 1.0)
    # narrow transverse width keeps <(p/E)^2> close to <p_z/E>^2
    packet: PacketSpec = PacketSpec(p_center=(0.0, 0.0, 0.75), sigma_p=(0.005, 0.005, 0.02))
    schedule: tuple[float, float, int] = (0.0, 20.0, 16)
    em: an.EMFieldSpec | None = None
    units: Units = Units()
    r: float = 3.0
    epsilon: float = 0.1
    regime: str = "auto"
    zbw_axis: int = 2
    seed: int = 0
    only: tuple[str, ...] = ()
    sources: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.schedule[2] < 1:
            raise ValidationError("schedule samples must be >= 1")
        if not self.schedule[1] >= self.schedule[0]:
            raise ValidationError("schedule t_end must be >= t_start")

    def grid(self) -> MomentumGrid:
        return make_grid(self.grid_n, self.grid_p_max)

    def times(self) -> np.ndarray:
        t0, t1, n = self.schedule
        if n == 1:
            return np.array([t0])
        return np.linspace(t0, t1, n)

    def initial_field(self) -> SpinorField:
        return build_gaussian(self.packet, self.grid(), self.params)

    def uniform_A(self) -> tuple[float, float, float] | None:
        if self.em is None:
            return None
        if self.em.uniform_A is None:
            raise ValidationError(f"time evolution supports only a constant vector potential, not {self.em.kind!r}")
        return self.em.uniform_A


def _em_from(section: dict[str, Entry], units: Units, q: float) -> an.EMFieldSpec | None:
    kind_e = section.get("kind", Entry("none", None))
    kind = kind_e.value
    E = _vector(section["E"], "E") if "E" in section else (0.0, 0.0, 0.0)
    # uniform electric field E = -grad Phi; convert q E r to internal energy
    e_int = tuple(float(units.energy_in(v) * units.c) for v in E)
    phi = (lambda x, y, z: -(e_int[0] * x + e_int[1] * y + e_int[2] * z)) if any(E) else an._zero_scalar
    # A enters as q A next to p, so it carries momentum units
    if kind == "none":
        if any(E):
            return an.EMFieldSpec.constant((0.0, 0.0, 0.0), q=q, Phi=phi)
        return None
    if kind == "constant":
        if "A" not in section:
            raise ConfigError("[em] kind = constant needs A", kind_e.lineno)
        A = tuple(float(v) for v in units.momentum_in(_vector(section["A"], "A")))
        return an.EMFieldSpec.constant(A, q=q, Phi=phi)
    if kind == "linear":
        if "G" not in section:
            raise ConfigError("[em] kind = linear needs G (9 values, row-major)", kind_e.lineno)
        G = np.array(_vector(section["G"], "G", size=9)).reshape(3, 3)
        return an.EMFieldSpec.linear(units.momentum_in(G) * units.c, q=q, Phi=phi)
    if kind == "circular":
        if "B" not in section:
            raise ConfigError("[em] kind = circular needs B", kind_e.lineno)
        B = np.array(_vector(section["B"], "B"))
        return an.EMFieldSpec.circular(units.momentum_in(B) * units.c, q=q, Phi=phi)
    raise ConfigError(f"[em] unknown kind {kind!r} (none|constant|linear|circular)", kind_e.lineno)


def build_run_config(raw: RawConfig) -> RunConfig:
    base = RunConfig()
    s = {name: raw.get(name, {}) for name in SCHEMA}

    def get(section, key, conv, default):
        return conv(s[section][key], f"{section}.{key}") if key in s[section] else default

    units = Units(get("units", "hbar", _float, 1.0), get("units", "c", _float, 1.0))
    if not (units.hbar > 0 and units.c > 0):
        raise ConfigError("units hbar and c must be positive", s["units"].get("hbar", Entry("", None)).lineno)

    def checked(section, key, fn):
        try:
            return fn()
        except ValidationError as exc:
            lineno = s[section][key].lineno if key in s[section] else None
            raise ConfigError(str(exc), lineno) from None

    m0 = float(units.energy_in(get("model", "m0c2", _float, units.energy_out(base.params.m0))))
    tau0 = get("model", "tau0", _float, base.params.tau0)
    q = get("model", "q", _float, base.params.q)
    params = checked("model", "m0c2" if "m0c2" in s["model"] else "tau0", lambda: ModelParams(m0, tau0, q))

    if "n" in s["grid"]:
        n = tuple(int(v) for v in _vector(s["grid"]["n"], "grid.n", scalar_ok=True))
        if any(v != int(v) for v in _vector(s["grid"]["n"], "grid.n", scalar_ok=True)):
            raise ConfigError("grid.n must be integers", s["grid"]["n"].lineno)
    else:
        n = base.grid_n
    p_max = get("grid", "p_max", lambda e, k: _vector(e, k, scalar_ok=True), None)
    p_max = tuple(float(v) for v in units.momentum_in(p_max)) if p_max is not None else base.grid_p_max
    checked("grid", "n" if "n" in s["grid"] else "p_max", lambda: make_grid(n, p_max))

    pk = base.packet
    spin_axis_raw = s["packet"].get("spin_axis")
    if spin_axis_raw is None or spin_axis_raw.value == "helicity":
        spin_axis = pk.spin_axis
    else:
        spin_axis = _vector(spin_axis_raw, "packet.spin_axis")
    branch = get("packet", "branch", lambda e, k: e.value, pk.branch)
    if branch not in ("plus", "minus", "mixed"):
        raise ConfigError(f"packet.branch must be plus|minus|mixed, got {branch!r}", s["packet"]["branch"].lineno)
    sigma = get("packet", "sigma_p", lambda e, k: _vector(e, k, scalar_ok=True), None)
    spin_sign = get("packet", "spin_sign", _int, pk.spin_sign)
    if spin_sign not in (-1, 1):
        raise ConfigError("packet.spin_sign must be +1 or -1", s["packet"]["spin_sign"].lineno)
    weight = get("packet", "weight", _float, pk.weight)
    if not 0.0 <= weight <= 1.0:
        raise ConfigError("packet.weight must lie in [0, 1]", s["packet"]["weight"].lineno)
    packet = PacketSpec(
        p_center=tuple(float(v) for v in units.momentum_in(get("packet", "p_center", _vector, pk.p_center))),
        sigma_p=tuple(float(v) for v in units.momentum_in(sigma)) if sigma is not None else pk.sigma_p,
        r_center=tuple(float(v) for v in units.length_in(get("packet", "r_center", _vector, pk.r_center))),
        branch=branch,
        weight=weight,
        spin_axis=spin_axis,
        spin_sign=spin_sign,
    )

    schedule = (
        get("schedule", "t_start", _float, base.schedule[0]),
        get("schedule", "t_end", _float, base.schedule[1]),
        get("schedule", "samples", _int, base.schedule[2]),
    )
    axis = get("zbw", "axis", lambda e, k: e.value, "z")
    if axis not in ("x", "y", "z"):
        raise ConfigError(f"zbw.axis must be x|y|z, got {axis!r}", s["zbw"]["axis"].lineno)
    regime = get("limits", "regime", lambda e, k: e.value, base.regime)
    if regime not in ("auto", "nonrel", "ultrarel"):
        raise ConfigError(f"limits.regime must be auto|nonrel|ultrarel, got {regime!r}", s["limits"]["regime"].lineno)
    only = get("check", "only", lambda e, k: tuple(v.strip() for v in e.value.split(",") if v.strip()), ())

    return checked("schedule", "samples", lambda: RunConfig(
        params=params,
        grid_n=n,
        grid_p_max=p_max,
        packet=packet,
        schedule=schedule,
        em=_em_from(s["em"], units, q),
        units=units,
        r=float(units.length_in(get("eigen", "r", _float, base.r))),
        epsilon=float(units.energy_in(get("shift", "epsilon", _float, base.epsilon))),
        regime=regime,
        zbw_axis="xyz".index(axis),
        seed=get("check", "seed", _int, base.seed),
        only=only,
        sources=raw,
    ))


# ---------------------------------------------------------------------------
# command line


def _override_lines(ns: argparse.Namespace) -> list[str]:
    """Translate flag overrides into config lines appended after the file."""
    table = [
        ("m0", "model", "m0c2"), ("tau0", "model", "tau0"), ("q", "model", "q"),
        ("n", "grid", "n"), ("p_max", "grid", "p_max"),
        ("p0", "packet", None), ("p_center", "packet", "p_center"), ("sigma", "packet", "sigma_p"),
        ("r_center", "packet", "r_center"), ("branch", "packet", "branch"), ("weight", "packet", "weight"),
        ("spin_axis", "packet", "spin_axis"), ("spin_sign", "packet", "spin_sign"),
        ("t_start", "schedule", "t_start"), ("t_end", "schedule", "t_end"), ("samples", "schedule", "samples"),
        ("r", "eigen", "r"), ("epsilon", "shift", "epsilon"), ("regime", "limits", "regime"),
        ("axis", "zbw", "axis"), ("seed", "check", "seed"), ("only", "check", "only"),
        ("A", "em", "A"),
    ]
    lines = []
    for attr, section, key in table:
        value = getattr(ns, attr, None)
        if value is None:
            continue
        if attr == "p0":
            lines += [f"[{section}]", f"p_center = 0,0,{value}"]
        else:
            lines += [f"[{section}]", f"{key} = {value}"]
        if attr == "A":
            lines.append("kind = constant")
    return lines


def _merge(base: RawConfig, extra: RawConfig) -> RawConfig:
    out = {k: dict(v) for k, v in base.items()}
    for section, entries in extra.items():
        for key, e in entries.items():
            out.setdefault(section, {})[key] = Entry(e.value, None)
    return out


def load_config(path: str | None, ns: argparse.Namespace | None = None) -> RunConfig:
    raw: RawConfig = {}
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
        raw = parse_config_text(text)
    if ns is not None:
        lines = _override_lines(ns)
        if lines:
            try:
                extra = parse_config_text("\n".join(lines))
            except ConfigError as exc:
                raise ConfigError(f"command-line override: {exc}") from None
            raw = _merge(raw, extra)
    return build_run_config(raw)


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.14e}"


def write_csv(stream, header: Sequence[str], rows) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_value(v) for v in row])


@dataclass
class Output:
    header: Sequence[str]
    rows: list
    report: list[str]
    code: int = 0


# each handler returns the CSV table and human-readable report lines


def cmd_eigen(cfg: RunConfig) -> Output:
    es = an.time_eigensystem(cfg.r, cfg.params)
    u = cfg.units
    header = ["tau", "spin"] + [f"u{k}_{part}" for k in range(4) for part in ("re", "im")]
    rows = []
    for j in range(4):
        vec = es.spinors[:, j]
        rows.append([es.eigenvalues[j], es.spin[j]] + [x for c in vec for x in (c.real, c.imag)])
    report = [
        f"r = {float(u.length_out(cfg.r)):.6g}, tau0 = {cfg.params.tau0:.6g}: tau = +-{es.tau_r:.12g}",
        f"table vs Jacobi residual = {es.residual:.3e}",
    ]
    return Output(header, rows, report)


def _series(cfg: RunConfig, with_K: bool = True) -> ObservableSeries:
    return record_series(cfg.initial_field(), cfg.times(), cfg.params, cfg.uniform_A(), with_K=with_K)


def series_rows(series: ObservableSeries, units: Units):
    for row in series.rows():
        t, x, y, z, T, H, px, py, pz, dT, dH, bk, pur = row
        yield (
            t, *u_len(units, (x, y, z)), T, float(units.energy_out(H)), *u_mom(units, (px, py, pz)),
            dT, float(units.energy_out(dH)), bk, pur,
        )


def u_len(units, v):
    return [float(a) for a in units.length_out(v)]


def u_mom(units, v):
    return [float(a) for a in units.momentum_out(v)]


def cmd_evolve(cfg: RunConfig) -> Output:
    series = _series(cfg)
    last = series.T[-1]
    report = [f"{len(series)} samples, t in [{series.times[0]:.6g}, {series.times[-1]:.6g}], final <T> = {last:.9g}"]
    return Output(SERIES_COLUMNS, list(series_rows(series, cfg.units)), report)


def cmd_uncertainty(cfg: RunConfig) -> Output:
    rep = an.uncertainty_product(cfg.initial_field(), cfg.params)
    hb = cfg.units.hbar
    header = ["dT", "dH", "product", "robertson_bound", "spin_orbit_bound", "robertson_ok", "spin_orbit_ok"]
    row = [rep.dT, rep.dH * hb, rep.dT * rep.dH * hb, rep.robertson_bound * hb, rep.spin_orbit_bound * hb,
           rep.robertson_ok, rep.spin_orbit_ok]
    report = [
        f"dT*dH = {rep.dT * rep.dH * hb:.9g}",
        f"Robertson bound {rep.robertson_bound * hb:.9g}: {'satisfied' if rep.robertson_ok else 'VIOLATED'}",
        f"(hbar/2)|<I + 2 beta K>| = {rep.spin_orbit_bound * hb:.9g}: {'satisfied' if rep.spin_orbit_ok else 'VIOLATED'}",
    ]
    return Output(header, [row], report)


def cmd_velocities(cfg: RunConfig) -> Output:
    rep = an.velocity_extraction(_series(cfg, with_K=False))
    c = cfg.units.c
    header = ["v_gp_x", "v_gp_y", "v_gp_z", "v_ph_x", "v_ph_y", "v_ph_z", "T_slope", "v_ph_v_gp_over_c2"]
    row = [*(rep.v_gp * c), *(rep.v_ph * c), rep.T_slope, rep.product]
    report = [
        f"v_gp = {rep.v_gp_magnitude * c:.9g}, v_ph = {rep.v_ph_magnitude * c:.9g}, dT/dt = {rep.T_slope:.9g}",
        f"v_ph*v_gp = {rep.product:.3f}" + (" c^2" if c != 1.0 else ""),
    ]
    return Output(header, [row], report)


def cmd_limits(cfg: RunConfig) -> Output:
    p = float(np.linalg.norm(cfg.packet.p_center))
    regime = cfg.regime
    if regime == "auto":
        m = cfg.params.m0
        regime = "nonrel" if p < 0.2 * m else "ultrarel" if p > 5 * m else None
        if regime is None:
            raise ValidationError(f"p = {p:.4g} is in neither limit regime for m0 = {m:.4g}")
    pred = an.regime_expansion(cfg.params, p, regime)
    series = _series(cfg, with_K=False)
    slope, offset = an.fit_line(series.times, series.T)
    header = ["regime", "p", "predicted_slope", "predicted_offset", "measured_slope", "measured_offset"]
    row = [regime, float(cfg.units.momentum_out(p)), pred.slope, pred.offset, slope, offset]
    report = [
        f"{regime}: predicted <T> = {pred.offset:.6g} + {pred.slope:.6g} t",
        f"{regime}: measured  <T> = {offset:.6g} + {slope:.6g} t",
    ]
    return Output(header, [row], report)


def _mean_p(f: SpinorField) -> np.ndarray:
    g = f.to_momentum()
    rho = g.density() * g.grid.cell_volume("momentum")
    return np.array([np.sum(m * rho) for m in g.grid.mesh("momentum")])


def cmd_shift(cfg: RunConfig) -> Output:
    f = cfg.initial_field()
    g = an.momentum_shift(f, cfg.epsilon, cfg.params)
    before, after = _mean_p(f), _mean_p(g)
    u = cfg.units
    header = ["epsilon", "px_before", "py_before", "pz_before", "px_after", "py_after", "pz_after",
              "purity_before", "purity_after"]
    row = [float(u.energy_out(cfg.epsilon)), *u_mom(u, before), *u_mom(u, after),
           branch_purity(f, cfg.params), branch_purity(g, cfg.params)]
    d = u_mom(u, after - before)
    report = [f"<p> shift = ({d[0]:.9g}, {d[1]:.9g}, {d[2]:.9g})"]
    return Output(header, [row], report)


def cmd_zbw(cfg: RunConfig) -> Output:
    f = cfg.initial_field()
    series = record_series(f, cfg.times(), cfg.params, cfg.uniform_A(), with_K=False)
    spec = an.zbw_spectrum(series, axis=cfg.zbw_axis)
    # both branches at |E_p|: the beat frequency is 2 <E_p>, not 2 <H>
    rho = f.density() * f.grid.cell_volume("momentum")
    expected = 2 * float(np.sum(energy_grid(f, cfg.params, cfg.uniform_A() or (0.0, 0.0, 0.0)) * rho))
    u = cfg.units
    header = ["angular_frequency", "peak_bin_frequency", "bin_width", "amplitude", "expected_frequency"]
    row = [spec.angular_frequency, spec.peak_bin_frequency, spec.bin_width, float(u.length_out(spec.amplitude)),
           expected]
    report = [
        f"omega = {spec.angular_frequency:.9g} (bin {spec.bin_width:.4g}), 2<E_p>/hbar = {expected:.9g}",
        f"amplitude = {float(u.length_out(spec.amplitude)):.9g}",
    ]
    return Output(header, [row], report)


def cmd_emrate(cfg: RunConfig) -> Output:
    if cfg.em is None:
        raise ValidationError("emrate needs an [em] section")
    f = cfg.initial_field()
    rate = an.em_T_rate(f, cfg.em, cfg.params)
    fd = fd_T_rate(f, cfg.params, cfg.em.uniform_A) if cfg.em.uniform_A is not None else float("nan")
    header = ["total", "free_part", "vector_potential_term", "gamma_term", "phi_term", "finite_difference"]
    row = [rate.total, rate.free_part, rate.vector_potential_term, rate.gamma_term, rate.phi_term, fd]
    report = [f"d<T>/dt = {rate.total:.12g}" + ("" if np.isnan(fd) else f" (finite difference {fd:.12g})")]
    return Output(header, [row], report)


def cmd_check(cfg: RunConfig) -> Output:
    results = run_battery(cfg.seed, list(cfg.only) or None)
    header = ["criterion", "name", "status", "value", "tolerance"]
    rows = [[r.criterion, r.name, "PASS" if r.passed else "FAIL", r.value, r.tolerance] for r in results]
    failed = sum(not r.passed for r in results)
    report = [r.line() for r in results] + [f"{len(results) - failed}/{len(results)} checks passed"]
    return Output(header, rows, report, code=1 if failed else 0)


HANDLERS: dict[str, Callable[[RunConfig], Output]] = {
    "eigen": cmd_eigen, "evolve": cmd_evolve, "uncertainty": cmd_uncertainty, "velocities": cmd_velocities,
    "limits": cmd_limits, "shift": cmd_shift, "zbw": cmd_zbw, "emrate": cmd_emrate, "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="sectioned key = value config file")
    common.add_argument("--out", help="CSV output path (default: stdout, report to stderr)")
    o = common.add_argument_group("overrides (user units)")
    o.add_argument("--m0", help="rest energy m0 c^2")
    o.add_argument("--tau0")
    o.add_argument("--q")
    o.add_argument("--n", help="grid nodes, scalar or x,y,z")
    o.add_argument("--p-max", dest="p_max", help="grid half-width in momentum, scalar or x,y,z")
    o.add_argument("--p0", help="packet momentum along z")
    o.add_argument("--p-center", dest="p_center")
    o.add_argument("--sigma", help="momentum width, scalar or x,y,z")
    o.add_argument("--r-center", dest="r_center")
    o.add_argument("--branch")
    o.add_argument("--weight")
    o.add_argument("--spin-axis", dest="spin_axis")
    o.add_argument("--spin-sign", dest="spin_sign")
    o.add_argument("--t-start", dest="t_start")
    o.add_argument("--t-end", dest="t_end")
    o.add_argument("--samples")
    o.add_argument("--r", help="eigen: distance along z")
    o.add_argument("--epsilon", help="shift: energy parameter")
    o.add_argument("--regime")
    o.add_argument("--axis")
    o.add_argument("--A", dest="A", help="constant vector potential x,y,z")
    o.add_argument("--seed")
    o.add_argument("--only", help="check: comma-separated criterion numbers")

    parser = argparse.ArgumentParser(prog="diractime", description="Dirac time-operator toolkit")
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run_command(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if ns.command is None:
        parser.print_usage(stderr)
        return 2
    try:
        cfg = load_config(ns.config, ns)
        result = HANDLERS[ns.command](cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"runtime failure: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    buf = io.StringIO()
    write_csv(buf, result.header, result.rows)
    if ns.out:
        try:
            with open(ns.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            print(f"runtime failure: cannot write {ns.out!r}: {exc.strerror}", file=stderr)
            return 1
        report_stream = stdout
    else:
        stdout.write(buf.getvalue())
        report_stream = stderr
    for line in result.report:
        print(line, file=report_stream)
    return result.code


def main() -> None:
    sys.exit(run_command())


__all__ = ["RunConfig", "Units", "build_run_config", "load_config", "parse_config_text", "run_command", "main"]
