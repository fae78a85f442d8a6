"""Command-line front end: presets, INI configs, CSV/manifest/SVG outputs.

Exit codes: 0 success, 2 configuration error, 3 the scenario is invalid
before the first sample (hermitization breakdown at t=0 or an undefined
window), 4 numerical failure during a run.

All CSV output is byte-deterministic: floats are written with repr (shortest
round-trip form) and manifests carry no timestamps.
"""

from __future__ import annotations

import configparser
import functools
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace

import click
import numpy as np

from . import __version__
from .dyson_map import (CriticalTimes, GaussState, HamiltonianProfile,
                        TimeProfile, critical_times, integrate_dyson,
                        k0_closed_form, recompose, z_value)
from .errors import (BranchCrossingError, BreakdownError, ConfigError,
                     DomainError, PseudohermError)
from .evolution import (SqueezeState, integrate_squeeze,
                        k0_closed_form_squeeze)
from .fock import entropy_closed
from .hermitian_map import counterpart
from .lie_core import AlgebraKind
from .numerics import IntegratorConfig


@dataclass
class Scenario:
    """One fully specified run: the generator family plus output choices.

    ``t_end`` is in gamma*t units (None selects the automatic window just
    inside the hermitization boundary); profile coefficients are ascending
    polynomial coefficients in t.
    """

    name: str = "run"
    kind: AlgebraKind = AlgebraKind.SU11
    flip_phi: bool = False
    phi0: float = 100.0
    lambda0: float = 0.01
    gauss_phase0: float = 0.0
    gamma: float = 0.5
    omega_r: tuple[float, ...] = (0.0,)
    alpha_abs: tuple[float, ...] = (0.0,)
    alpha_phase: tuple[float, ...] = (0.0,)
    beta_abs: tuple[float, ...] = (0.0,)
    beta_phase: tuple[float, ...] = (0.0,)
    l: int = 1
    n: int = 10
    n_list: tuple[int, ...] | None = None
    r0: float = 0.0
    t_end: float | None = None
    samples: int = 400
    columns: tuple[str, ...] = ("Phi", "Lambda", "z_abs")
    scan_n_max: int | None = None
    scan_r: float = math.pi / 4


def _gain_loss_preset(name: str, kind: AlgebraKind, columns,
                      **kw) -> Scenario:
    return Scenario(name=name, kind=kind, flip_phi=kind is AlgebraKind.SU11,
                    phi0=100.0, lambda0=0.01, gamma=0.5,
                    columns=tuple(columns), **kw)


PRESETS = {
    "fig1": _gain_loss_preset("fig1", AlgebraKind.SU11, ("z_abs",)),
    "fig2": _gain_loss_preset("fig2", AlgebraKind.SU11, ("Phi", "Lambda")),
    "fig3": _gain_loss_preset("fig3", AlgebraKind.SU11, ("r", "S_lin")),
    "fig4": Scenario(name="fig4", kind=AlgebraKind.SU2, scan_n_max=100,
                     columns=("S_lin",)),
    "fig5": _gain_loss_preset("fig5", AlgebraKind.SU2, ("z_abs",)),
    "fig6": _gain_loss_preset("fig6", AlgebraKind.SU2, ("Phi", "Lambda")),
    "fig7": _gain_loss_preset("fig7", AlgebraKind.SU2, ("r", "S_lin"),
                              n_list=(1, 10, 100)),
}


@dataclass
class RunResult:
    scenario: Scenario
    index_names: tuple[str, ...]
    index: dict
    columns: dict
    critical: CriticalTimes | None
    breakdown: object


class _StateBundle:
    def __init__(self, times, states):
        self.times = times
        self.states = states


def _build_profile(sc: Scenario) -> HamiltonianProfile:
    if sc.gamma <= 0:
        raise ConfigError("gamma must be > 0")
    return HamiltonianProfile(
        omega_R=TimeProfile.from_coeffs(sc.omega_r),
        omega_I=TimeProfile.linear(0.0, sc.gamma ** 2),
        alpha_abs=TimeProfile.from_coeffs(sc.alpha_abs),
        alpha_phase=TimeProfile.from_coeffs(sc.alpha_phase),
        beta_abs=TimeProfile.from_coeffs(sc.beta_abs),
        beta_phase=TimeProfile.from_coeffs(sc.beta_phase),
    )


def _auto_t_end(sc: Scenario, ct: CriticalTimes | None) -> float:
    """Window end in seconds: 99.9% of the first boundary time."""
    edge = None
    if ct is not None:
        edge = ct.t_minus if sc.kind is AlgebraKind.SU11 else ct.t_star
    if edge is None:
        raise ConfigError(
            "no automatic window for this scenario; set t_end explicitly")
    return 0.999 * edge


def _squeeze_states(sc, h, times, states, gauss_at, integ):
    if h.is_k0_only:
        return k0_closed_form_squeeze(_StateBundle(times, states), h, sc.kind,
                                      r0=sc.r0, l=sc.l)
    if sc.r0 <= 0:
        raise ConfigError(
            "squeeze output for coupled scenarios needs r0 > 0 in the config")
    sq0 = SqueezeState(sc.r0, sc.l * math.pi - states[0].phi, 0.0)
    traj = integrate_squeeze(h, gauss_at, sq0, times, sc.kind, integ)
    if traj.breakdown is not None:
        raise BreakdownError(traj.breakdown.reason, time=traj.breakdown.time)
    return traj.states


def run_scenario(sc: Scenario,
                 integ: IntegratorConfig | None = None) -> RunResult:
    """Produce all requested columns for one scenario."""
    kind = sc.kind
    if sc.scan_n_max is not None:
        ns = np.arange(1, sc.scan_n_max + 1)
        svals = np.array([entropy_closed(kind, sc.scan_r, int(m)) for m in ns])
        return RunResult(scenario=sc, index_names=("n",),
                         index={"n": ns}, columns={"S_lin": svals},
                         critical=None, breakdown=None)
    h = _build_profile(sc)
    g0 = GaussState(Phi=sc.phi0, phi=sc.gauss_phase0, Lambda=sc.lambda0,
                    flip=sc.flip_phi)
    ct = None
    try:
        ct = critical_times(sc.phi0, sc.lambda0, sc.gamma, kind)
    except DomainError:
        pass
    t_end = sc.t_end / sc.gamma if sc.t_end is not None else _auto_t_end(sc, ct)
    grid = np.linspace(0.0, t_end, sc.samples)
    breakdown = None
    if h.is_k0_only:
        times = grid
        states = [g0 if t == 0.0 else k0_closed_form(g0, h, float(t), kind)
                  for t in grid]
        def gauss_at(t):
            return k0_closed_form(g0, h, float(t), kind)
    else:
        traj = integrate_dyson(g0, h, grid, kind, integ)
        times, states, breakdown = traj.times, traj.states, traj.breakdown
        gauss_at = traj.state_at

    cols: dict[str, np.ndarray] = {}
    need_squeeze = any(c in ("r", "phase", "omega_tilde") or c.startswith("S_lin")
                       for c in sc.columns)
    sqs = (_squeeze_states(sc, h, times, states, gauss_at, integ)
           if need_squeeze else None)
    for name in sc.columns:
        if name == "Phi":
            cols[name] = np.array([st.Phi for st in states])
        elif name == "phi":
            cols[name] = np.array([st.phi for st in states])
        elif name == "Lambda":
            cols[name] = np.array([st.Lambda for st in states])
        elif name == "z_abs":
            cols[name] = np.array([abs(z_value(st, kind)) for st in states])
        elif name == "eps":
            cols[name] = np.array([recompose(st, kind).eps for st in states])
        elif name == "mu_abs":
            cols[name] = np.array([recompose(st, kind).mu_abs for st in states])
        elif name == "mu_phase":
            cols[name] = np.array([recompose(st, kind).mu_phase for st in states])
        elif name == "W":
            cols[name] = np.array([counterpart(h, st, float(t), kind).W
                                   for t, st in zip(times, states)])
        elif name == "U_abs":
            cols[name] = np.array([abs(counterpart(h, st, float(t), kind).U)
                                   for t, st in zip(times, states)])
        elif name == "U_phase":
            cols[name] = np.array([np.angle(counterpart(h, st, float(t), kind).U)
                                   for t, st in zip(times, states)])
        elif name == "r":
            cols[name] = np.array([sq.r for sq in sqs])
        elif name == "phase":
            cols[name] = np.array([sq.phase for sq in sqs])
        elif name == "omega_tilde":
            cols[name] = np.array([sq.omega_tilde for sq in sqs])
        elif name == "S_lin":
            if kind is AlgebraKind.SU11:
                cols[name] = np.array([entropy_closed(kind, sq.r) for sq in sqs])
            else:
                for m in (sc.n_list or (sc.n,)):
                    key = name if sc.n_list is None else f"S_lin_n{m}"
                    cols[key] = np.array(
                        [entropy_closed(kind, sq.r, m) for sq in sqs])
        else:
            raise ConfigError(f"unknown column {name!r}")
    gamma_t = sc.gamma * np.asarray(times)
    return RunResult(scenario=sc, index_names=("gamma_t", "t"),
                     index={"gamma_t": gamma_t, "t": np.asarray(times)},
                     columns=cols, critical=ct, breakdown=breakdown)


# ---------------------------------------------------------------------------
# serialization

def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def render_csv(result: RunResult) -> str:
    names = list(result.index_names) + list(result.columns.keys())
    series = [result.index[n] for n in result.index_names]
    series += [result.columns[n] for n in result.columns]
    rows = [",".join(names)]
    for i in range(len(series[0])):
        rows.append(",".join(_fmt(col[i]) for col in series))
    return "\n".join(rows) + "\n"


def _scenario_dict(sc: Scenario) -> dict:
    d = asdict(sc)
    d["kind"] = sc.kind.value
    for key, val in list(d.items()):
        if isinstance(val, tuple):
            d[key] = list(val)
    return d


def render_manifest(result: RunResult, integ: IntegratorConfig | None,
                    outputs: dict[str, str]) -> str:
    ct = result.critical
    data = {
        "version": __version__,
        "scenario": _scenario_dict(result.scenario),
        "integrator": None if integ is None else {
            "rtol": integ.rtol, "atol": integ.atol},
        "critical_times": None if ct is None else {
            "t_minus": ct.t_minus, "t_plus": ct.t_plus, "t_star": ct.t_star,
            "t_prime": ct.t_prime, "z_at_t_star": ct.z_at_t_star},
        "breakdown": None if result.breakdown is None else {
            "time": result.breakdown.time, "reason": result.breakdown.reason},
        "outputs": outputs,
    }
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _write_svg(path: str, result: RunResult) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    x_name = result.index_names[0]
    x = result.index[x_name]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for name, col in result.columns.items():
        ax.plot(x, col, label=name)
    ax.set_xlabel(x_name)
    ax.legend(loc="best")
    ax.set_title(result.scenario.name)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def write_outputs(result: RunResult, out_dir: str,
                  integ: IntegratorConfig | None, plots: bool) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    name = result.scenario.name
    csv_path = os.path.join(out_dir, f"{name}.csv")
    text = render_csv(result)
    with open(csv_path, "w", newline="") as fh:
        fh.write(text)
    written = [csv_path]
    outputs = {f"{name}.csv":
               hashlib.sha256(text.encode()).hexdigest()}
    if plots:
        svg_path = os.path.join(out_dir, f"{name}.svg")
        _write_svg(svg_path, result)
        with open(svg_path, "rb") as fh:
            outputs[f"{name}.svg"] = hashlib.sha256(fh.read()).hexdigest()
        written.append(svg_path)
    man_path = os.path.join(out_dir, f"{name}.manifest.json")
    with open(man_path, "w", newline="") as fh:
        fh.write(render_manifest(result, integ, outputs))
    written.append(man_path)
    return written


# ---------------------------------------------------------------------------
# config parsing

_SCENARIO_KEYS = {
    "kind", "flip_phi", "phi0", "lambda0", "gauss_phase0", "gamma",
    "omega_r", "alpha_abs", "alpha_phase", "beta_abs", "beta_phase",
    "l", "n", "n_list", "r0", "t_end", "samples", "columns",
}
_INTEGRATOR_KEYS = {"rtol", "atol", "max_step", "min_step"}
_OUTPUT_KEYS = {"basename", "plots"}


def _coeffs(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError as e:
        raise ConfigError(f"bad coefficient list {text!r}") from e


def parse_config(path: str) -> tuple[Scenario, IntegratorConfig | None, dict]:
    """Read an INI scenario file; unknown sections or keys are errors."""
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    for section in cp.sections():
        if section not in ("scenario", "integrator", "output"):
            raise ConfigError(f"unknown config section [{section}]")
    sc = Scenario(name=os.path.splitext(os.path.basename(path))[0])
    if cp.has_section("scenario"):
        for key in cp["scenario"]:
            if key not in _SCENARIO_KEYS:
                raise ConfigError(f"unknown key {key!r} in [scenario]")
        sec = cp["scenario"]
        try:
            if "kind" in sec:
                sc = replace(sc, kind=AlgebraKind.from_string(sec["kind"]))
            if "flip_phi" in sec:
                sc = replace(sc, flip_phi=sec.getboolean("flip_phi"))
            for key in ("phi0", "lambda0", "gauss_phase0", "gamma", "r0"):
                if key in sec:
                    sc = replace(sc, **{key: sec.getfloat(key)})
            for key in ("omega_r", "alpha_abs", "alpha_phase",
                        "beta_abs", "beta_phase"):
                if key in sec:
                    sc = replace(sc, **{key: _coeffs(sec[key])})
            for key in ("l", "n", "samples"):
                if key in sec:
                    sc = replace(sc, **{key: sec.getint(key)})
            if "n_list" in sec:
                sc = replace(sc, n_list=tuple(
                    int(p) for p in sec["n_list"].split(",")))
            if "t_end" in sec:
                raw = sec["t_end"].strip()
                sc = replace(sc, t_end=None if raw == "auto" else float(raw))
            if "columns" in sec:
                sc = replace(sc, columns=tuple(
                    p.strip() for p in sec["columns"].split(",")))
        except (ValueError, DomainError) as e:
            raise ConfigError(f"bad value in [scenario]: {e}") from e
    integ = None
    if cp.has_section("integrator"):
        for key in cp["integrator"]:
            if key not in _INTEGRATOR_KEYS:
                raise ConfigError(f"unknown key {key!r} in [integrator]")
        try:
            kw = {k: cp["integrator"].getfloat(k) for k in cp["integrator"]}
        except ValueError as e:
            raise ConfigError(f"bad value in [integrator]: {e}") from e
        integ = IntegratorConfig(**kw)
    out_opts = {}
    if cp.has_section("output"):
        for key in cp["output"]:
            if key not in _OUTPUT_KEYS:
                raise ConfigError(f"unknown key {key!r} in [output]")
        if "basename" in cp["output"]:
            sc = replace(sc, name=cp["output"]["basename"])
        if "plots" in cp["output"]:
            try:
                out_opts["plots"] = cp["output"].getboolean("plots")
            except ValueError as e:
                raise ConfigError(f"bad value in [output]: {e}") from e
    return sc, integ, out_opts


# ---------------------------------------------------------------------------
# commands

def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConfigError as e:
            click.echo(f"config error: {e}", err=True)
            sys.exit(2)
        except (DomainError, BreakdownError, BranchCrossingError) as e:
            click.echo(f"breakdown: {e}", err=True)
            sys.exit(3)
        except PseudohermError as e:
            click.echo(f"numerical failure: {e}", err=True)
            sys.exit(4)
    return wrapper


def _scenario_options(fn):
    fn = click.option("--preset", type=click.Choice(sorted(PRESETS)),
                      default=None, help="Named scenario preset.")(fn)
    fn = click.option("--config", "config_path",
                      type=click.Path(exists=False, dir_okay=False),
                      default=None, help="INI scenario file.")(fn)
    fn = click.option("--out", "out_dir", default=".", show_default=True,
                      help="Output directory.")(fn)
    fn = click.option("--samples", type=int, default=None,
                      help="Override the sample count.")(fn)
    fn = click.option("--t-end", "t_end", type=float, default=None,
                      help="Override the window end (gamma*t units).")(fn)
    fn = click.option("--plots", is_flag=True, default=False,
                      help="Also write an SVG plot per run.")(fn)
    return fn


def _load(preset, config_path, samples, t_end,
          columns=None) -> tuple[Scenario, IntegratorConfig | None, dict]:
    if preset is not None and config_path is not None:
        raise ConfigError("give either --preset or --config, not both")
    if preset is not None:
        sc, integ, opts = PRESETS[preset], None, {}
    elif config_path is not None:
        sc, integ, opts = parse_config(config_path)
    else:
        raise ConfigError("one of --preset or --config is required")
    if samples is not None:
        sc = replace(sc, samples=samples)
    if t_end is not None:
        sc = replace(sc, t_end=t_end)
    if columns is not None:
        sc = replace(sc, columns=columns)
    return sc, integ, opts


@click.group(help=__doc__)
@click.version_option(__version__, prog_name="pseudoherm")
def main():
    pass


@main.command(name="run", help="Run a preset or config scenario end to end.")
@_scenario_options
@_guarded
def run_cmd(preset, config_path, out_dir, samples, t_end, plots):
    sc, integ, opts = _load(preset, config_path, samples, t_end)
    result = run_scenario(sc, integ)
    for path in write_outputs(result, out_dir, integ, plots or opts.get("plots", False)):
        click.echo(path)


@main.command(name="dyson", help="Gauss-state trajectory and map parameters.")
@_scenario_options
@_guarded
def dyson_cmd(preset, config_path, out_dir, samples, t_end, plots):
    sc, integ, opts = _load(preset, config_path, samples, t_end,
                            columns=("Phi", "phi", "Lambda", "z_abs",
                                     "eps", "mu_abs"))
    sc = replace(sc, name=f"{sc.name}-dyson")
    result = run_scenario(sc, integ)
    for path in write_outputs(result, out_dir, integ, plots or opts.get("plots", False)):
        click.echo(path)


@main.command(name="counterpart",
              help="Hermitian-counterpart coefficients along the trajectory.")
@_scenario_options
@_guarded
def counterpart_cmd(preset, config_path, out_dir, samples, t_end, plots):
    sc, integ, opts = _load(preset, config_path, samples, t_end,
                            columns=("W", "U_abs", "U_phase"))
    sc = replace(sc, name=f"{sc.name}-counterpart")
    result = run_scenario(sc, integ)
    for path in write_outputs(result, out_dir, integ, plots or opts.get("plots", False)):
        click.echo(path)


@main.command(name="evolve", help="Squeeze-parameter evolution columns.")
@_scenario_options
@_guarded
def evolve_cmd(preset, config_path, out_dir, samples, t_end, plots):
    sc, integ, opts = _load(preset, config_path, samples, t_end,
                            columns=("r", "phase", "omega_tilde", "S_lin"))
    sc = replace(sc, name=f"{sc.name}-evolve")
    result = run_scenario(sc, integ)
    for path in write_outputs(result, out_dir, integ, plots or opts.get("plots", False)):
        click.echo(path)


@main.command(name="entropy",
              help="Closed-form linear entropy: one value, or a scenario run.")
@click.option("--kind", type=click.Choice(["su11", "su2"]), default=None)
@click.option("--r", "r_value", type=float, default=None,
              help="Squeeze magnitude for direct evaluation.")
@click.option("--n", "n_value", type=int, default=None,
              help="su(2) representation label.")
@_scenario_options
@_guarded
def entropy_cmd(kind, r_value, n_value, preset, config_path, out_dir,
                samples, t_end, plots):
    if r_value is not None:
        if kind is None:
            raise ConfigError("--r needs --kind")
        val = entropy_closed(AlgebraKind.from_string(kind), r_value, n_value)
        click.echo(repr(val))
        return
    sc, integ, opts = _load(preset, config_path, samples, t_end)
    if sc.scan_n_max is None:
        sc = replace(sc, columns=("r", "S_lin"), name=f"{sc.name}-entropy")
    result = run_scenario(sc, integ)
    for path in write_outputs(result, out_dir, integ, plots or opts.get("plots", False)):
        click.echo(path)


@main.command(name="times", help="Hermitization-window boundary times.")
@click.option("--kind", type=click.Choice(["su11", "su2"]), required=True)
@click.option("--phi0", type=float, default=100.0, show_default=True)
@click.option("--lambda0", type=float, default=0.01, show_default=True)
@click.option("--gamma", type=float, default=0.5, show_default=True)
@_guarded
def times_cmd(kind, phi0, lambda0, gamma):
    ct = critical_times(phi0, lambda0, gamma, AlgebraKind.from_string(kind))
    for label, value in (("gamma_t_minus", ct.t_minus),
                         ("gamma_t_plus", ct.t_plus),
                         ("gamma_t_star", ct.t_star),
                         ("gamma_t_prime", ct.t_prime),
                         ("z_at_t_star", ct.z_at_t_star)):
        if value is None:
            continue
        shown = value * gamma if label.startswith("gamma_t") else value
        click.echo(f"{label}={shown!r}")


@main.command(name="figures", help="Write every preset output in one go.")
@click.option("--out", "out_dir", default=".", show_default=True)
@click.option("--plots", is_flag=True, default=False)
@_guarded
def figures_cmd(out_dir, plots):
    names = sorted(PRESETS)
    workers = int(os.environ.get("PSEUDOHERM_THREADS", "0")) or min(4, len(names))
    results = {}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {name: pool.submit(run_scenario, PRESETS[name])
                   for name in names}
        for name in names:
            results[name] = futures[name].result()
    for name in names:
        for path in write_outputs(results[name], out_dir, None, plots):
            click.echo(path)


def _verify_checks():
    from .dyson_map import ExpParams, gauss_decompose
    checks = []

    def check(label, fn):
        checks.append((label, fn))

    def round_trip():
        g = gauss_decompose(ExpParams(0.5, 0.2, 0.3), AlgebraKind.SU11)
        p = recompose(g, AlgebraKind.SU11)
        return (abs(g.Phi - 0.75497120828989248) < 1e-12
                and abs(p.eps - 0.5) < 1e-12 and abs(p.mu_abs - 0.2) < 1e-12)
    check("gauss round trip", round_trip)

    def boundary_time():
        ct = critical_times(100.0, 0.01, 0.5, AlgebraKind.SU11)
        est = math.sqrt(math.log(100.0)) / 0.5
        return (abs(0.5 * ct.t_minus - 2.145965790940427) < 1e-9
                and abs(ct.t_minus - est) / est < 0.01)
    check("critical times", boundary_time)

    def closed_vs_ode():
        sc = replace(PRESETS["fig2"], samples=25, t_end=2.1)
        h = _build_profile(sc)
        g0 = GaussState(sc.phi0, 0.0, sc.lambda0, flip=True)
        grid = np.linspace(0.0, 2.1 / sc.gamma, sc.samples)
        traj = integrate_dyson(g0, h, grid, sc.kind,
                               IntegratorConfig(rtol=1e-11, atol=1e-14))
        if traj.breakdown is not None:
            return False
        worst = 0.0
        for t, st in zip(traj.times, traj.states):
            ref = k0_closed_form(g0, h, float(t), sc.kind)
            worst = max(worst,
                        abs(st.signed_phi - ref.signed_phi) / max(abs(ref.signed_phi), 1e-12),
                        abs(st.Lambda - ref.Lambda) / max(ref.Lambda, 1e-12))
        return worst < 1e-6
    check("constraint flow vs closed form", closed_vs_ode)

    def entropy_values():
        s1 = entropy_closed(AlgebraKind.SU2, math.pi / 4, 1)
        s10 = entropy_closed(AlgebraKind.SU2, math.pi / 4, 10)
        return abs(s1 - 0.5) < 1e-12 and abs(s10 - 0.823802947998046875) < 1e-12
    check("entropy closed form", entropy_values)

    def determinism():
        sc = replace(PRESETS["fig1"], samples=60)
        a = render_csv(run_scenario(sc))
        b = render_csv(run_scenario(sc))
        return a == b
    check("byte determinism", determinism)

    return checks


@main.command(name="verify", help="Fast built-in self checks.")
@_guarded
def verify_cmd():
    failures = 0
    for label, fn in _verify_checks():
        try:
            ok = fn()
        except PseudohermError:
            ok = False
        click.echo(f"{'ok  ' if ok else 'FAIL'} {label}")
        failures += 0 if ok else 1
    if failures:
        click.echo(f"{failures} check(s) failed", err=True)
        sys.exit(4)


if __name__ == "__main__":
    main()
