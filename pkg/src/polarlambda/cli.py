"""Command-line front end.

    polarlambda evolve --lambda 0.02 --mu 0.1 --omega-eg 2 --nbar 0 --tmax 500
    polarlambda sweep-levels --recipe fig6 --out out/
    polarlambda recipes

Every subcommand accepts ``--config FILE`` (``key = value`` lines) and
``--recipe NAME``; explicit flags override the file, which overrides the
recipe.  Outputs are CSV files whose ``#`` header lines echo the effective
configuration; such a file can itself be passed back as ``--config``.

Times on the command line and in ``series.csv`` are in units of
omega t / (2 pi).
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
import tempfile
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dynamics import coherent_initial_state, evolve
from .errors import (ConfigError, ConvergenceError, DegenerateDerivative, NormDriftError, StabilityError,
                     TruncationError)
from .model import (LConfigParams, ModelParams, TruncationScheme, build_hamiltonian, build_l_hamiltonian,
                    map_l_to_polar_lambda)
from .resonant import collapse_time, inversion_coherent, inversion_fock, rabi_frequency, resonance_detuning
from .spectrum import eigen_spectrum, entropy_sweep, ground_state_report, level_sweep

log = logging.getLogger("polarlambda")

SCENARIOS = ("evolve", "sweep-levels", "ground", "sweep-entropy", "equivalence", "analytic")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

# config key -> (RunConfig field, parser)
_FLOAT, _INT, _STR, _BOOL = float, int, str, "bool"
KEYS = {
    "lambda": ("lambda_over_omega", _FLOAT),
    "mu": ("mu_over_omega", _FLOAT),
    "omega0": ("omega0_over_omega", _FLOAT),
    "omega_eg": ("omega_eg_over_omega", _FLOAT),
    "delta": ("delta_over_omega", _FLOAT),
    "nbar": ("nbar", _FLOAT),
    "n": ("n_resonance", _INT),
    "level": ("level", _STR),
    "n_max": ("n_max", _INT),
    "dt": ("dt", _FLOAT),
    "tmax": ("t_final", _FLOAT),
    "samples": ("samples", _INT),
    "refine": ("refine", _BOOL),
    "grid": ("grid", _STR),
    "axis": ("axis", _STR),
    "k": ("k", _INT),
    "offset": ("offset", _BOOL),
    "seed": ("seed", _INT),
    "count": ("count", _INT),
    "coupling_max": ("coupling_max", _FLOAT),
    "out": ("out", _STR),
}

_MODEL = ("lambda", "mu", "omega0", "omega_eg", "delta")
RELEVANT = {
    "evolve": _MODEL + ("nbar", "n", "level", "n_max", "dt", "tmax", "samples", "refine"),
    "sweep-levels": _MODEL + ("n", "n_max", "axis", "grid", "k", "offset"),
    "ground": _MODEL + ("n_max", "offset"),
    "sweep-entropy": _MODEL + ("n_max", "axis", "grid"),
    "equivalence": ("n_max", "k", "seed", "count", "coupling_max"),
    "analytic": _MODEL + ("nbar", "n", "tmax", "samples"),
}


@dataclass
class RunConfig:
    scenario: str
    lambda_over_omega: float | None = None
    mu_over_omega: float | None = None
    omega0_over_omega: float | None = None
    omega_eg_over_omega: float | None = None
    delta_over_omega: float = 0.0
    nbar: float = 0.0
    n_resonance: int | None = None
    level: str = "e"
    n_max: int | None = None
    dt: float | None = None
    t_final: float | None = None
    samples: int = 1000
    refine: bool = True
    grid: str | None = None
    axis: str = "lambda"
    k: int = 13
    offset: bool = True
    seed: int = 0
    count: int = 20
    coupling_max: float = 0.5
    out: str = "."
    recipe: str | None = None
    notes: list = field(default_factory=list)

    def params(self) -> ModelParams:
        return ModelParams.from_ratios(lam=self.lambda_over_omega or 0.0, mu=self.mu_over_omega or 0.0,
                                       omega0=self.omega0_over_omega, delta=self.delta_over_omega)

    def grid_values(self) -> np.ndarray:
        return parse_grid(self.grid)

    def effective(self) -> dict:
        """Config keys used by this scenario, with their effective values."""
        out = {}
        for key in RELEVANT[self.scenario]:
            value = getattr(self, KEYS[key][0])
            if value is not None:
                out[key] = value
        return out


# Parameters frozen from the figure captions.  Resonant figures are run at
# omega_eg = n omega, i.e. omega0 = n - mu^2.
RECIPES = {
    "fig2": dict(scenario="evolve", caption="omega_eg=2, lambda=0.02, mu=0.1, delta=0, nbar=0",
                 values=dict(omega_eg=2, **{"lambda": 0.02}, mu=0.1, delta=0, nbar=0, n=2, tmax=400)),
    "fig3": dict(scenario="evolve", caption="omega_eg=3, lambda=0.02, mu=0.2, delta=0, nbar=0",
                 values=dict(omega_eg=3, **{"lambda": 0.02}, mu=0.2, delta=0, nbar=0, n=3, tmax=800)),
    "fig4a": dict(scenario="evolve", caption="omega_eg=2, lambda=0.02, mu=0.1, nbar=20",
                  values=dict(omega_eg=2, **{"lambda": 0.02}, mu=0.1, delta=0, nbar=20, n=2, tmax=250)),
    "fig4b": dict(scenario="evolve", caption="omega_eg=3, lambda=0.02, mu=0.2, nbar=30",
                  values=dict(omega_eg=3, **{"lambda": 0.02}, mu=0.2, delta=0, nbar=30, n=3, tmax=250)),
    "fig4c": dict(scenario="evolve", caption="omega_eg=4, lambda=0.02, mu=0.2, nbar=50",
                  values=dict(omega_eg=4, **{"lambda": 0.02}, mu=0.2, delta=0, nbar=50, n=4, tmax=300)),
    "fig5": dict(scenario="evolve", caption="setup of fig4b, Mandel Q column",
                 values=dict(omega_eg=3, **{"lambda": 0.02}, mu=0.2, delta=0, nbar=30, n=3, tmax=250)),
    "fig6": dict(scenario="sweep-levels",
                 caption="omega0=2, mu=0.3, delta=0.01, sweep lambda 0..0.1, k=13",
                 note="delta from this caption (0.01); the ground-state figures use 0.1",
                 values=dict(omega_eg=2, mu=0.3, delta=0.01, axis="lambda", grid="0:0.1:51", k=13, n=2)),
    "fig7": dict(scenario="sweep-levels",
                 caption="omega0=3, mu=0.3, delta=0.01, sweep lambda 0..0.1, k=12",
                 note="delta from this caption (0.01); the ground-state figures use 0.1",
                 values=dict(omega_eg=3, mu=0.3, delta=0.01, axis="lambda", grid="0:0.1:51", k=12, n=3)),
    "fig8": dict(scenario="sweep-levels", caption="omega0=10, mu=3, delta=0.1, sweep lambda 0..3, k=1",
                 values=dict(omega0=10, mu=3, delta=0.1, axis="lambda", grid="0:3:31", k=1)),
    "fig9": dict(scenario="ground", caption="omega0=10, mu=3, lambda=1, delta=0.1",
                 values=dict(omega0=10, mu=3, **{"lambda": 1}, delta=0.1)),
    "fig10": dict(scenario="ground", caption="omega0=10, mu=3, lambda=2, delta=0.1",
                  values=dict(omega0=10, mu=3, **{"lambda": 2}, delta=0.1)),
    "fig11": dict(scenario="sweep-entropy", caption="omega0=10, mu=3, delta=0.1, sweep lambda 0..6",
                  values=dict(omega0=10, mu=3, delta=0.1, axis="lambda", grid="0:6:25")),
    "fig12": dict(scenario="sweep-entropy", caption="omega0=10, lambda=2, delta=0.1, sweep mu 0..6",
                  values=dict(omega0=10, **{"lambda": 2}, delta=0.1, axis="mu", grid="0:6:25")),
}

RESONANT_NOTE = "run at exact resonance: omega0 = omega_eg - mu^2"


def list_recipes() -> str:
    lines = []
    for name, r in RECIPES.items():
        line = f"{name}: {r['caption']}  [{r['scenario']}]"
        if "omega_eg" in r["values"]:
            line += f"  ({RESONANT_NOTE})"
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_grid(text: str | None) -> np.ndarray:
    """``start:stop:num`` (inclusive) or a comma-separated list."""
    if text is None:
        raise ConfigError("missing sweep grid", key="grid")
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            grid = np.linspace(float(start), float(stop), int(num))
        else:
            grid = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise ConfigError(f"cannot parse grid {text!r}", key="grid") from None
    if grid.size == 0 or not np.all(np.isfinite(grid)) or np.any(np.diff(grid) <= 0):
        raise ConfigError("grid must be finite and ascending", key="grid")
    return grid


def _convert(key: str, raw, line=None):
    _, kind = KEYS[key]
    if not isinstance(raw, str):
        raw = str(raw)
    raw = raw.strip()
    try:
        if kind == _BOOL:
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        value = kind(raw)
    except ValueError:
        raise ConfigError(f"invalid value {raw!r}", key=key, line=line) from None
    if kind is _FLOAT and not math.isfinite(value):
        raise ConfigError("value must be finite", key=key, line=line)
    return value


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines.

    A CSV written by this tool is also accepted: only its ``# config:``
    lines are read.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    echoed = any(l.startswith("# config:") for l in lines)
    values = {}
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if echoed:
            if not text.startswith("# config:"):
                continue
            text = text[len("# config:"):].strip()
        if not text or text.startswith("#"):
            continue
        if "=" not in text:
            raise ConfigError(f"expected 'key = value', got {text!r}", line=lineno)
        key, value = (s.strip() for s in text.split("=", 1))
        if key == "scenario":
            values["scenario"] = (value, lineno)
            continue
        if key not in KEYS:
            raise ConfigError("unknown key", key=key, line=lineno)
        values[key] = (_convert(key, value, lineno), lineno)
    return values


def _required(scenario: str, cfg: RunConfig) -> list[str]:
    need = {
        "evolve": ["lambda", "mu", "omega0", "tmax"],
        "sweep-levels": ["mu", "omega0", "grid"],
        "ground": ["lambda", "mu", "omega0"],
        "sweep-entropy": ["omega0", "grid"],
        "analytic": ["lambda", "mu", "omega0", "n", "tmax"],
        "equivalence": [],
    }[scenario]
    if scenario in ("sweep-levels", "sweep-entropy"):
        need.append("mu" if cfg.axis in ("lambda", "lam") else "lambda")
    return need


def build_config(scenario: str, flag_values: dict, config_path: str | None = None,
                 recipe: str | None = None) -> RunConfig:
    """Merge recipe, file and flag values into a validated RunConfig."""
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}", key="scenario")
    merged: dict = {}
    if recipe is not None:
        if recipe not in RECIPES:
            raise ConfigError(f"unknown recipe {recipe!r}", key="recipe")
        merged.update(RECIPES[recipe]["values"])
    if config_path is not None:
        file_values = read_config_file(config_path)
        if "scenario" in file_values:
            file_scenario, lineno = file_values.pop("scenario")
            if file_scenario != scenario:
                raise ConfigError(f"file is for scenario {file_scenario!r}", key="scenario", line=lineno)
        merged.update({k: v for k, (v, _) in file_values.items()})
    for key, value in flag_values.items():
        if key not in KEYS:
            raise ConfigError("unknown key", key=key)
        if value is not None:
            merged[key] = _convert(key, value)

    cfg = RunConfig(scenario=scenario, recipe=recipe)
    for key, value in merged.items():
        name, _ = KEYS[key]
        setattr(cfg, name, value)
    if cfg.axis not in ("lambda", "lam", "mu"):
        raise ConfigError("axis must be 'lambda' or 'mu'", key="axis")
    if cfg.level not in ("g1", "g2", "e"):
        raise ConfigError("level must be g1, g2 or e", key="level")

    missing = []
    for key in _required(scenario, cfg):
        if key == "omega0":
            if cfg.omega0_over_omega is None and cfg.omega_eg_over_omega is None:
                missing.append("omega0")
        elif getattr(cfg, KEYS[key][0]) is None:
            missing.append(key)
    if missing:
        raise ConfigError(f"missing required parameter --{missing[0].replace('_', '-')}", key=missing[0])
    if cfg.omega_eg_over_omega is not None:
        omega0 = cfg.omega_eg_over_omega - (cfg.mu_over_omega or 0.0) ** 2
        if cfg.omega0_over_omega is not None and not math.isclose(cfg.omega0_over_omega, omega0):
            raise ConfigError("omega0 and omega_eg are both given and disagree", key="omega0")
        cfg.omega0_over_omega = omega0
    if cfg.omega0_over_omega is not None and cfg.omega0_over_omega < 0:
        raise ConfigError("omega0 must be >= 0", key="omega0")
    for key in ("n_max", "k", "count", "samples"):
        value = getattr(cfg, KEYS[key][0])
        if value is not None and value < 1:
            raise ConfigError("must be >= 1", key=key)
    if cfg.t_final is not None and cfg.t_final <= 0:
        raise ConfigError("must be positive", key="tmax")
    if cfg.nbar < 0:
        raise ConfigError("must be >= 0", key="nbar")
    if cfg.grid is not None:
        cfg.grid_values()
    return cfg


# ---------------------------------------------------------------- output


def _fmt(x) -> str:
    return repr(float(x))


def _header(cfg: RunConfig, extra: dict) -> list[str]:
    lines = [f"# polarlambda {__version__}", f"# config: scenario = {cfg.scenario}"]
    lines += [f"# config: {k} = {v}" for k, v in cfg.effective().items()]
    if cfg.recipe:
        lines.append(f"# recipe = {cfg.recipe}")
        if "omega_eg" in RECIPES[cfg.recipe]["values"]:
            lines.append(f"# note = {RESONANT_NOTE}")
        if "note" in RECIPES[cfg.recipe]:
            lines.append(f"# note = {RECIPES[cfg.recipe]['note']}")
    lines += [f"# {k} = {v}" for k, v in extra.items()]
    return lines


class _Outputs:
    """Collects files and moves them into place only when all succeeded."""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.pending: list[tuple[str, str]] = []

    def write(self, name: str, header: list[str], columns: list[str], rows):
        os.makedirs(self.out_dir, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{name}.", dir=self.out_dir)
        self.pending.append((tmp, os.path.join(self.out_dir, name)))
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            for line in header:
                fh.write(line + "\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(x) if not isinstance(x, str) else x for x in row) + "\n")

    def commit(self):
        for tmp, final in self.pending:
            os.replace(tmp, final)
        self.pending.clear()

    def discard(self):
        for tmp, _ in self.pending:
            if os.path.exists(tmp):
                os.remove(tmp)
        self.pending.clear()


# ---------------------------------------------------------------- scenarios


def _evolve_n_max(cfg: RunConfig) -> int:
    mu = abs(cfg.mu_over_omega or 0.0)
    n = cfg.n_resonance or 0
    nbar = cfg.nbar
    return int(math.ceil(nbar + 10 * math.sqrt(nbar) + 10 * mu * mu + 10 * mu + 5 * n + 10))


def run_evolve(cfg: RunConfig, out: _Outputs):
    params = cfg.params()
    n_max = cfg.n_max or _evolve_n_max(cfg)
    h = build_hamiltonian(params, TruncationScheme(n_max))
    psi0 = coherent_initial_state(cfg.nbar, cfg.level, n_max)
    t_final = 2 * math.pi * cfg.t_final / params.omega
    series, _ = evolve(h, psi0, t_final, cfg.dt, n_samples=cfg.samples, refine=cfg.refine)
    if not series.valid:
        warnings.warn("top Fock level populated above 1e-8; increase n_max", RuntimeWarning)
    extra = {"n_max": n_max, "dt": _fmt(series.dt), "steps": series.n_steps,
             "norm_drift": _fmt(series.norm_drift), "energy_drift": _fmt(series.energy_drift),
             "truncation_valid": str(series.valid).lower(), "time_unit": "omega*t/(2*pi)"}
    cols = ["t", "W", "Q"] + [f"P_{N}" for N in range(n_max + 1)]
    scaled_t = series.t * params.omega / (2 * math.pi)
    p = series.p_n / series.norm[:, None]
    rows = (np.concatenate(([scaled_t[i], series.w[i], series.q[i]], p[i])) for i in range(series.t.size))
    out.write("series.csv", _header(cfg, extra), cols, rows)


def run_sweep_levels(cfg: RunConfig, out: _Outputs):
    grid = cfg.grid_values()
    trunc = TruncationScheme(cfg.n_max) if cfg.n_max else None
    table = level_sweep(cfg.params(), cfg.axis, grid, cfg.k, trunc, offset=cfg.offset)
    extra = {"n_max": table.n_max, "energy_reference": "eps_g + omega/2" if cfg.offset else "absolute"}
    cols = ["coupling"] + [f"E_{i + 1}" for i in range(cfg.k)]
    rows = (np.concatenate(([g], e)) for g, e in zip(table.grid, table.energies))
    out.write("levels.csv", _header(cfg, extra), cols, rows)


def run_ground(cfg: RunConfig, out: _Outputs):
    rep = ground_state_report(cfg.params(), cfg.n_max, offset=cfg.offset)
    extra = {"n_max": rep.n_max, "certificate": _fmt(rep.certificate), "degeneracy": rep.degeneracy,
             "energy_reference": "eps_g + omega/2" if cfg.offset else "absolute"}
    head = _header(cfg, extra)
    cols = ["energy", "mean_photons", "Q", "S3"] + [f"P_{N}" for N in range(rep.p_n.size)]
    out.write("ground.csv", head, cols,
              [np.concatenate(([rep.energy, rep.mean_photons, rep.q, rep.entropy_s3], rep.p_n))])
    rho_rows = []
    for i, lvl in enumerate(("g1", "g2", "e")):
        row = [lvl]
        for j in range(3):
            row += [_fmt(rep.rho_r[i, j].real), _fmt(rep.rho_r[i, j].imag)]
        rho_rows.append(row)
    out.write("rho.csv", head, ["row", "re_g1", "im_g1", "re_g2", "im_g2", "re_e", "im_e"], rho_rows)


def run_sweep_entropy(cfg: RunConfig, out: _Outputs):
    grid = cfg.grid_values()
    table = entropy_sweep(cfg.params(), cfg.axis, grid, cfg.n_max)
    extra = {"n_max": ",".join(str(r.n_max) for r in table.reports)}
    rows = ([g, r.entropy_s3, r.energy, r.mean_photons, r.q] for g, r in zip(table.grid, table.reports))
    out.write("entropy.csv", _header(cfg, extra), ["coupling", "S3", "E0", "mean_photons", "Q"], rows)


def random_l_configs(count: int, coupling_max: float, seed: int) -> list[LConfigParams]:
    rng = np.random.default_rng(seed)
    configs = []
    for _ in range(count):
        eg1, eg2 = rng.uniform(0.0, 0.5, size=2)
        configs.append(LConfigParams(eps_g1=eg1, eps_g2=eg2, eps_e=rng.uniform(1.0, 3.0),
                                     g12=rng.uniform(-coupling_max, coupling_max),
                                     g2e=rng.uniform(-coupling_max, coupling_max)))
    return configs


def equivalence_check(configs, n_max: int = 60, k: int = 20):
    """Sorted low spectra of each L configuration and its polar-Lambda image."""
    trunc = TruncationScheme(n_max)
    pairs = []
    for lp in configs:
        e_l = eigen_spectrum(build_l_hamiltonian(lp, trunc), k).values
        e_p = eigen_spectrum(build_hamiltonian(map_l_to_polar_lambda(lp), trunc), k).values
        pairs.append((e_l, e_p))
    return pairs


def run_equivalence(cfg: RunConfig, out: _Outputs):
    configs = random_l_configs(cfg.count, cfg.coupling_max, cfg.seed)
    n_max = cfg.n_max or 60
    k = min(cfg.k, 3 * (n_max + 1))
    pairs = equivalence_check(configs, n_max, k)
    dev = max(float(np.max(np.abs(a - b))) for a, b in pairs)
    extra = {"n_max": n_max, "max_deviation": _fmt(dev)}
    rows = []
    for c, (a, b) in enumerate(pairs):
        for i in range(k):
            rows.append([c, i, a[i], b[i], abs(a[i] - b[i])])
    out.write("equivalence.csv", _header(cfg, extra), ["config", "index", "E_L", "E_polar", "deviation"],
              ([str(r[0]), str(r[1])] + r[2:] for r in rows))
    return dev


def run_analytic(cfg: RunConfig, out: _Outputs):
    params = cfg.params()
    n = cfg.n_resonance
    t = np.linspace(0.0, 2 * math.pi * cfg.t_final / params.omega, cfg.samples + 1)
    if cfg.nbar > 0:
        w = inversion_coherent(params, n, cfg.nbar, t)
    else:
        w = inversion_fock(params, n, t)
    extra = {"detuning": _fmt(resonance_detuning(params, n)),
             "rabi_frequency": _fmt(rabi_frequency(params, n, n)), "time_unit": "omega*t/(2*pi)"}
    if cfg.nbar > 0:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            extra["collapse_time"] = _fmt(collapse_time(params, n, cfg.nbar) * params.omega / (2 * math.pi))
    scaled = t * params.omega / (2 * math.pi)
    out.write("analytic.csv", _header(cfg, extra), ["t", "W"], zip(scaled, w))


RUNNERS = {
    "evolve": run_evolve,
    "sweep-levels": run_sweep_levels,
    "ground": run_ground,
    "sweep-entropy": run_sweep_entropy,
    "equivalence": run_equivalence,
    "analytic": run_analytic,
}


def run_scenario(cfg: RunConfig) -> int:
    out = _Outputs(cfg.out)
    try:
        RUNNERS[cfg.scenario](cfg, out)
    except (ConvergenceError, NormDriftError, StabilityError, TruncationError, DegenerateDerivative) as exc:
        out.discard()
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except BaseException:
        out.discard()
        raise
    out.commit()
    return EXIT_OK


# ---------------------------------------------------------------- argparse


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarlambda", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"polarlambda {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("recipes", help="list built-in figure recipes")
    for name in SCENARIOS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value file (or a previous output CSV)")
        p.add_argument("--recipe", help="start from a named figure recipe")
        for key, (_, kind) in KEYS.items():
            flag = "--" + key.replace("_", "-")
            if kind == _BOOL:
                p.add_argument(flag, dest=key, default=None, metavar="BOOL")
            else:
                p.add_argument(flag, dest=key, default=None, metavar=key.upper())
        p.add_argument("--no-refine", dest="refine", action="store_const", const="false")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)  # usage errors exit with status 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(message)s")
    if args.command == "recipes":
        sys.stdout.write(list_recipes())
        return EXIT_OK
    flags = {key: getattr(args, key) for key in KEYS}
    try:
        cfg = build_config(args.command, flags, args.config, args.recipe)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run_scenario(cfg)


if __name__ == "__main__":
    sys.exit(main())
