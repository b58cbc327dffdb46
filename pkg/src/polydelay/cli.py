"""Command-line front end.

Subcommands: `solve` integrates a configured experiment and writes the
sampled trajectory as CSV; `convergence` compares quadrature
discretisations of increasing node count against one equivalent-system
reference solve; `quad` prints a quadrature rule with its exactness
residuals; `stationary` prints the model equilibria.

Configuration is a flat set of key=value pairs, assembled from built-in
defaults, an optional named preset, an optional config file, and
command-line flags, in that order of precedence. Floats are written with
17 significant digits so the CSV round-trips bit-exactly.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .ddesolver import SolverError, SolverOptions, dense_eval, sample, solve
from .models import SirParameters, sir_distributed, sir_equilibrium
from .quadrature import build_quadrature_dde, gauss_jacobi
from .transform import build_equivalent, scale_distributed
from .weightfn import beta_polynomial, moment

# Step budget for CLI-driven solves; module level so harnesses can lower
# it to exercise failure handling.
MAX_STEPS = 1000000

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_NUMERICAL = 4

_MODELS = ("sir", "scalar-benchmark")
_VARIANTS = ("equivalent", "quadrature")


class ConfigError(Exception):
    """Invalid configuration input (file, flags, or their combination)."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Complete description of one experiment run."""

    model: str = "sir"
    variant: str = "equivalent"
    sigma: float = 0.1
    theta: float = 0.05
    a: float = 30.0
    b: float = 150.0
    p: int = 2
    q: int = 2
    m: int = 4
    rtol: float = 1e-6
    atol: float = 1e-8
    h_max: float = 1e-3
    t_end: float = 1000.0
    samples: int = 1000
    scale: bool = True

    def __post_init__(self):
        if self.model not in _MODELS:
            raise ConfigError("model must be one of %s" % (_MODELS,))
        if self.variant not in _VARIANTS:
            raise ConfigError("variant must be one of %s" % (_VARIANTS,))
        if self.variant == "quadrature" and self.m < 1:
            raise ConfigError("m must be at least 1 for the quadrature variant")
        if not self.t_end > 0.0:
            raise ConfigError("t_end must be positive")
        if self.samples < 2:
            raise ConfigError("samples must be at least 2")
        try:
            SolverOptions(rtol=self.rtol, atol=self.atol,
                          h_max=self.h_max if self.h_max is not None
                          else float("inf"))
        except ValueError as exc:
            raise ConfigError(str(exc))
        if self.model == "sir":
            if not self.b > self.a or not self.a >= 0.0:
                raise ConfigError("delay interval must satisfy b > a >= 0")
            if self.sigma <= 0.0 or self.theta <= 0.0:
                raise ConfigError("sigma and theta must be positive")


# The named presets are the two published experiment setups: beta(2,2)
# delay density, rates sigma = 0.1 and theta = 0.05, horizon 1000 sampled
# at 1000 points, solved in rescaled time with rtol 1e-6 and atol 1e-8.
# They differ in the delay interval and the reference maximum step size.
PRESETS = {
    "case-i": ExperimentConfig(
        model="sir", variant="equivalent", sigma=0.1, theta=0.05,
        a=30.0, b=150.0, p=2, q=2, m=4, rtol=1e-6, atol=1e-8,
        h_max=1e-3, t_end=1000.0, samples=1000, scale=True),
    "case-ii": ExperimentConfig(
        model="sir", variant="equivalent", sigma=0.1, theta=0.05,
        a=150.0, b=250.0, p=2, q=2, m=4, rtol=1e-6, atol=1e-8,
        h_max=5e-4, t_end=1000.0, samples=1000, scale=True),
}

_FIELD_TYPES = {
    "model": str, "variant": str, "sigma": float, "theta": float,
    "a": float, "b": float, "p": int, "q": int, "m": int,
    "rtol": float, "atol": float, "h_max": float, "t_end": float,
    "samples": int, "scale": bool,
}

_TRUE_WORDS = ("1", "true", "yes", "on")
_FALSE_WORDS = ("0", "false", "no", "off")


def _parse_value(kind, text):
    if kind is bool:
        low = text.lower()
        if low in _TRUE_WORDS:
            return True
        if low in _FALSE_WORDS:
            return False
        raise ValueError("not a boolean")
    if kind is int:
        return int(text)
    if kind is float:
        return float(text)
    return text


def parse_config_file(path):
    """Read key=value overrides; '#' starts a comment, blanks are skipped.

    Unknown keys and unparseable values raise ConfigError with the file
    name and line number."""
    overrides = {}
    try:
        fh = open(path)
    except OSError as exc:
        raise ConfigError("cannot read config file %s: %s" % (path, exc))
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(
                    "%s, line %d: expected key=value, got %r"
                    % (path, lineno, raw.strip()))
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _FIELD_TYPES:
                raise ConfigError(
                    "%s, line %d: unknown key %r" % (path, lineno, key))
            try:
                overrides[key] = _parse_value(_FIELD_TYPES[key], value)
            except ValueError:
                raise ConfigError(
                    "%s, line %d: invalid %s value %r"
                    % (path, lineno, _FIELD_TYPES[key].__name__, value))
    return overrides


def assemble_config(preset=None, config_path=None, **flag_overrides):
    """Merge defaults, preset, config file, and flags into a config."""
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(
                "unknown preset %r (available: %s)"
                % (preset, ", ".join(sorted(PRESETS))))
        config = PRESETS[preset]
    else:
        config = ExperimentConfig()
    if config_path is not None:
        config = replace(config, **parse_config_file(config_path))
    overrides = {k: v for k, v in flag_overrides.items() if v is not None}
    if overrides:
        config = replace(config, **overrides)
    return config


def _solver_options(config):
    h_max = config.h_max if config.h_max is not None else float("inf")
    return SolverOptions(rtol=config.rtol, atol=config.atol, h_max=h_max,
                         max_steps=MAX_STEPS)


def _scalar_benchmark_dde():
    # y'(t) = -y(t - 1) with unit constant history; the classical exactly
    # solvable single-delay test problem
    from .ddesolver import DiscreteDelayDde

    def rhs(t, y, Z):
        return -Z[:, 0]

    def hist(t):
        return np.array([1.0])

    return DiscreteDelayDde(dimension=1, delays=(1.0,), rhs=rhs,
                            history=hist)


def _sir_base(config):
    weight = beta_polynomial(config.a, config.b, config.p, config.q)
    params = SirParameters(sigma=config.sigma, theta=config.theta,
                           weight=weight, y0=(0.99, 0.01, 0.0))
    base = sir_distributed(params)
    tfac = 1.0
    t_end = config.t_end
    if config.scale:
        tfac = config.b
        base = scale_distributed(base)
        t_end = config.t_end / config.b
    return base, t_end, tfac


def run_solve(config):
    """Solve the configured experiment.

    Returns (header, rows, info): CSV header names, rows of floats with
    the time axis rescaled back to original time, and a dict with the
    step counters."""
    opts = _solver_options(config)
    if config.model == "scalar-benchmark":
        traj = solve(_scalar_benchmark_dde(), config.t_end, opts)
        header = ["t", "y"]
        rows = [[t] + [float(v) for v in y]
                for t, y in sample(traj, config.samples)]
        return header, rows, {"steps_taken": traj.steps_taken,
                              "steps_rejected": traj.steps_rejected}
    base, t_end, tfac = _sir_base(config)
    if config.variant == "equivalent":
        system = build_equivalent(base)
        dde = system.assembled
        aux_names = ["x%d" % i for i in range(system.degree + 1)]
    else:
        rule = gauss_jacobi(config.m, config.p, config.q,
                            base.weight.a, base.weight.b)
        dde = build_quadrature_dde(base, rule)
        aux_names = []
    traj = solve(dde, t_end, opts)
    header = ["t", "S", "I", "R"] + aux_names
    rows = [[t * tfac] + [float(v) for v in y]
            for t, y in sample(traj, config.samples)]
    return header, rows, {"steps_taken": traj.steps_taken,
                          "steps_rejected": traj.steps_rejected}


@dataclass
class ConvergenceReport:
    """Maximum quadrature-vs-equivalent differences per node count.

    diffs maps each model component name to the list of maximum absolute
    differences over the shared sample grid, ordered like m_values."""

    m_values: list
    diffs: dict
    grid_size: int
    reference_steps: int


def run_convergence(config, m_list):
    """Compare quadrature solves for each m against one reference solve.

    The reference is the equivalent system integrated with the config's
    tolerances and h_max; differences are taken componentwise on a
    samples-point equidistant grid. POLYDELAY_THREADS > 1 runs the
    per-m solves in a thread pool (results stay ordered by m)."""
    if config.model != "sir":
        raise ConfigError("the convergence study requires the sir model")
    if not m_list:
        raise ConfigError("need at least one node count")
    if list(m_list) != sorted(set(int(m) for m in m_list)):
        raise ConfigError("node counts must be ascending and distinct")
    if m_list[0] < 1:
        raise ConfigError("node counts must be at least 1")
    opts = _solver_options(config)
    base, t_end, _ = _sir_base(config)
    system = build_equivalent(base)
    ref = solve(system.assembled, t_end, opts)
    grid = np.linspace(0.0, t_end, config.samples)
    ref_vals = np.array([dense_eval(ref, t)[:3] for t in grid])

    def one_m(m):
        rule = gauss_jacobi(m, config.p, config.q,
                            base.weight.a, base.weight.b)
        traj = solve(build_quadrature_dde(base, rule), t_end, opts)
        vals = np.array([dense_eval(traj, t)[:3] for t in grid])
        return np.max(np.abs(vals - ref_vals), axis=0)

    threads = int(os.environ.get("POLYDELAY_THREADS", "1") or "1")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_m, m_list))
    else:
        results = [one_m(m) for m in m_list]
    diffs = {name: [float(r[k]) for r in results]
             for k, name in enumerate(("S", "I", "R"))}
    return ConvergenceReport(m_values=list(m_list), diffs=diffs,
                             grid_size=config.samples,
                             reference_steps=ref.steps_taken)


def run_quad_table(config, m):
    """Rule table for the configured density: nodes, weights, and the
    exactness residuals for i = 0..2m-1. Returns the printed lines."""
    weight = beta_polynomial(config.a, config.b, config.p, config.q)
    rule = gauss_jacobi(m, config.p, config.q, config.a, config.b)
    lines = ["# %d-node rule for the degree-%d density on [%s, %s]"
             % (m, weight.degree, _fmt(config.a), _fmt(config.b)),
             "node,weight"]
    for node, wgt in zip(rule.nodes, rule.weights):
        lines.append("%s,%s" % (_fmt(node), _fmt(wgt)))
    lines.append("degree,residual")
    for i in range(2 * m):
        exact = moment(weight, i)
        approx = float(np.dot(rule.weights, rule.nodes ** i))
        residual = abs(approx - exact) / max(1.0, abs(exact))
        lines.append("%d,%s" % (i, _fmt(residual)))
    return lines


def run_stationary(config):
    """Equilibria of the configured model as printable lines."""
    if config.model != "sir":
        raise ConfigError("stationary points are defined for the sir model")
    weight = beta_polynomial(config.a, config.b, config.p, config.q)
    params = SirParameters(sigma=config.sigma, theta=config.theta,
                           weight=weight, y0=(0.99, 0.01, 0.0))
    lines = []
    names = ("disease-free", "endemic")
    for name, point in zip(names, sir_equilibrium(params)):
        lines.append("%s: S=%s I=%s R=%s" % (
            name, _fmt(point.y_star[0]), _fmt(point.y_star[1]),
            _fmt(point.y_star[2])))
        lines.append("  aux: %s" % " ".join(_fmt(v) for v in point.x_star))
    return lines


def _fmt(value):
    # 17 significant digits round-trip to the identical float
    return format(float(value), ".17g")


def write_csv(header, rows, path=None):
    """Emit rows as CSV with 17-significant-digit floats.

    path None writes to standard output. Identical inputs produce
    byte-identical files."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    _emit_lines(lines, path)


def _emit_lines(lines, path=None):
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _add_common_flags(sub):
    # preset and variant are validated downstream so that a bad value
    # reaches the ConfigError -> exit code 2 path instead of an argparse
    # SystemExit
    sub.add_argument("--preset", metavar="NAME",
                     help="named parameter set to start from: %s"
                          % ", ".join(sorted(PRESETS)))
    sub.add_argument("--config", metavar="PATH",
                     help="key=value config file applied over the preset")
    sub.add_argument("--variant", metavar="KIND",
                     help="discretisation: %s" % " or ".join(_VARIANTS))
    sub.add_argument("--m", metavar="M",
                     help="quadrature node count; for `convergence` a "
                          "comma list or a single count meaning 1..M")
    sub.add_argument("--rtol", type=float, help="relative tolerance")
    sub.add_argument("--atol", type=float, help="absolute tolerance")
    sub.add_argument("--hmax", type=float, dest="h_max",
                     help="maximum step size (in integration time)")
    sub.add_argument("--t-end", type=float, dest="t_end",
                     help="horizon in original (unscaled) time")
    sub.add_argument("--samples", type=int, help="output grid size")
    sub.add_argument("--out", metavar="PATH",
                     help="CSV output path (default: standard output)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="polydelay",
        description="Distributed-delay DDE experiments: equivalent "
                    "two-delay systems and quadrature discretisations.")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, text in (
            ("solve", "integrate one experiment and emit the sampled CSV"),
            ("convergence", "quadrature-vs-equivalent difference study"),
            ("quad", "print a quadrature rule and exactness residuals"),
            ("stationary", "print model equilibria")):
        _add_common_flags(subs.add_parser(name, help=text))
    return parser


def _single_m(args):
    if args.m is None:
        return None
    try:
        return int(args.m)
    except ValueError:
        raise ConfigError("--m must be an integer, got %r" % args.m)


def _m_list(args):
    if args.m is None:
        return list(range(1, 9))
    text = str(args.m)
    try:
        if "," in text:
            values = [int(part) for part in text.split(",")]
        else:
            values = list(range(1, int(text) + 1))
    except ValueError:
        raise ConfigError(
            "--m must be an integer or comma list, got %r" % text)
    return values


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "convergence":
            m_flag = None
        else:
            m_flag = _single_m(args)
        config = assemble_config(
            preset=args.preset, config_path=args.config,
            variant=args.variant, m=m_flag, rtol=args.rtol, atol=args.atol,
            h_max=args.h_max, t_end=args.t_end, samples=args.samples)
        if args.command == "solve":
            header, rows, info = run_solve(config)
            write_csv(header, rows, args.out)
            print("steps taken: %d, rejected: %d"
                  % (info["steps_taken"], info["steps_rejected"]),
                  file=sys.stderr)
        elif args.command == "convergence":
            report = run_convergence(config, _m_list(args))
            header = ["m", "dS", "dI", "dR"]
            rows = [[m, report.diffs["S"][k], report.diffs["I"][k],
                     report.diffs["R"][k]]
                    for k, m in enumerate(report.m_values)]
            write_csv(header, rows, args.out)
            print("reference solve: %d steps, grid %d points"
                  % (report.reference_steps, report.grid_size),
                  file=sys.stderr)
        elif args.command == "quad":
            _emit_lines(run_quad_table(config, config.m), args.out)
        elif args.command == "stationary":
            _emit_lines(run_stationary(config), args.out)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, TypeError) as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print("solver failure: %s" % exc, file=sys.stderr)
        return EXIT_SOLVER
    except (RuntimeError, ArithmeticError, AssertionError) as exc:
        print("internal numerical error: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
