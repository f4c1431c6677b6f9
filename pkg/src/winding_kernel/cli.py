"""Command-line front end: parameter scans written as CSV or JSON.

Every scan flag takes a comma-separated list; rows are the Cartesian product
of the lists in the order the flags are documented, and are written in that
order whatever the thread count. Numbers are printed with 17 significant
digits, which round-trips a double exactly.

Exit codes: 0 success, 1 usage error, 2 a `verify` check failed, 3 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .aharonov_bohm import ABSetup, ab_amplitude
from .characters import IntegerCharacter, Permutation, SymmetricCharacter, assemble
from .circle import CirclePoint, Truncation, spectral_sum, winding_sum
from .errors import InputError, WindingKernelError
from .homotopy import PolylinePath, winding_number
from .kernels import PhysicalConstants, TimeParameter
from .many_body import Anyon, ParticleConfig, kernel_matrix, permanent, permutation_partial, statistics_propagator
from .spin import EulerAngles, IDENTITY, class_partials, propagator, wigner_D

__all__ = ["run", "main", "CONFIG_DEFAULTS"]

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2, 3
THREADS_ENV = "WINDING_KERNEL_THREADS"

CONFIG_DEFAULTS = {
    "hbar": 1.0,
    "mass": 1.0,
    "inertia": 1.0,
    "mode": "imaginary",
    "epsilon": 1e-3,
    "max_winding": 4,
    "max_mode": 16,
    "format": "csv",
    "output": None,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _words(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _point(text: str) -> tuple[float, float]:
    vals = _floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}")
    return vals[0], vals[1]


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file with run settings (flags take precedence)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--output", "-o", default=None, help="output file (default: standard output)")
    common.add_argument("--mode", choices=("imaginary", "real"), default=None)
    common.add_argument("--epsilon", type=float, default=None, help="real-time regulator")
    common.add_argument("--hbar", type=float, default=None)
    common.add_argument("--mass", type=float, default=None)
    common.add_argument("--inertia", type=float, default=None)
    common.add_argument("--max-winding", type=int, default=None, dest="max_winding")
    common.add_argument("--max-mode", type=int, default=None, dest="max_mode")
    p = _Parser(prog="winding-kernel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("circle", parents=[common], help="ring propagator: winding sum against spectral sum")
    c.add_argument("--dtheta", type=_floats, default=[0.0])
    c.add_argument("--tau", type=_floats, default=[1.0])
    c.add_argument("--delta", type=_floats, default=[0.0])
    c.add_argument("--rho", type=float, default=1.0)

    s = sub.add_parser("spin", parents=[common], help="rotor propagator and class partials, identity to (0, theta, 0)")
    s.add_argument("--space", type=_words, default=["SU2"])
    s.add_argument("--theta", type=_floats, default=[0.0])
    s.add_argument("--tau", type=_floats, default=[1.0])
    s.add_argument("--jmax", type=_floats, default=[12.5])

    a = sub.add_parser("ab", parents=[common], help="Aharonov-Bohm ring amplitude and intensity")
    a.add_argument("--phi-f", type=_floats, default=[math.pi], dest="phi_f")
    a.add_argument("--alpha", type=_floats, default=[0.0])
    a.add_argument("--delta", type=_floats, default=[0.0])
    a.add_argument("--tau", type=_floats, default=[1.0])
    a.add_argument("--rho", type=float, default=1.0)
    a.add_argument("--source-angle", type=float, default=0.0, dest="source_angle")

    m = sub.add_parser("particles", parents=[common], help="identical-particle propagators")
    m.add_argument("--n", type=_ints, default=[2])
    m.add_argument("--d", type=_ints, default=[3])
    m.add_argument("--kind", type=_words, default=["bose", "fermi"],
                   help="bose, fermi or anyon:THETA")
    m.add_argument("--tau", type=_floats, default=[1.0])
    m.add_argument("--seed", type=int, default=0, help="seed for random positions")
    m.add_argument("--from", dest="from_file", help="CSV of initial positions, one particle per row")
    m.add_argument("--to", dest="to_file", help="CSV of final positions")

    w = sub.add_parser("winding", parents=[common], help="winding number of a closed polyline")
    w.add_argument("--path", required=True, help="CSV file with rows x,y")
    w.add_argument("--puncture", type=_point, default=(0.0, 0.0))

    sub.add_parser("verify", parents=[common], help="run the built-in oracle checks")
    return p


def _load_config(path) -> dict:
    cfg = dict(CONFIG_DEFAULTS)
    if path is None:
        return cfg
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}")
    if not isinstance(data, dict):
        raise InputError("config must be a JSON object")
    unknown = sorted(set(data) - set(CONFIG_DEFAULTS))
    if unknown:
        raise InputError(f"unknown config keys: {', '.join(unknown)}")
    cfg.update(data)
    return cfg


def _settings(args) -> dict:
    cfg = _load_config(args.config)
    for key in CONFIG_DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if cfg["format"] not in ("csv", "json"):
        raise InputError(f"format must be csv or json, got {cfg['format']!r}")
    try:
        cfg["constants"] = PhysicalConstants(float(cfg["hbar"]), float(cfg["mass"]), float(cfg["inertia"]))
        cfg["trunc"] = Truncation(cfg["max_winding"], cfg["max_mode"])
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc))
    return cfg


def _time(cfg, value) -> TimeParameter:
    return TimeParameter(value, cfg["mode"], cfg["epsilon"])


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if n < 0:
        raise InputError(f"{THREADS_ENV} must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def _map(fn, items) -> list:
    """Apply `fn` to every item, in parallel, keeping input order."""
    items = list(items)
    n = min(_threads(), max(len(items), 1))
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def _render(columns, rows, fmt) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()
    lines = []
    for row in rows:
        fields = []
        for k, v in zip(columns, row):
            if isinstance(v, str):
                text = json.dumps(v)
            elif isinstance(v, float) and not math.isfinite(v):
                text = "null"
            else:
                text = _cell(v)
            fields.append(f"{json.dumps(k)}: {text}")
        lines.append("  {" + ", ".join(fields) + "}")
    return "[\n" + ",\n".join(lines) + "\n]\n" if lines else "[]\n"


def _emit(text: str, cfg) -> None:
    if cfg["output"]:
        with open(cfg["output"], "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------

def _circle(args, cfg):
    c, trunc = cfg["constants"], cfg["trunc"]

    def row(p):
        dtheta, tau, delta = p
        t = _time(cfg, tau)
        a, b = CirclePoint(0.0, args.rho), CirclePoint(dtheta, args.rho)
        kw = winding_sum(a, b, t, IntegerCharacter(delta), trunc, c)
        ks = spectral_sum(a, b, t, delta, trunc, c)
        return [dtheta, tau, delta, kw.real, kw.imag, ks.real, ks.imag, abs(kw - ks)]

    cols = ["dtheta", "tau", "delta", "re_winding", "im_winding", "re_spectral", "im_spectral", "abs_diff"]
    return cols, _map(row, itertools.product(args.dtheta, args.tau, args.delta))


def _spin(args, cfg):
    c = cfg["constants"]

    def row(p):
        space, theta, tau, jmax = p
        t = _time(cfg, tau)
        to = EulerAngles(0.0, theta, 0.0)
        k = propagator(space, IDENTITY, to, t, jmax, c)
        k_i, k_ii = class_partials(IDENTITY, to, t, jmax, c)
        return [space.upper(), theta, tau, jmax, k.real, k.imag, k_i.real, k_i.imag, k_ii.real, k_ii.imag]

    cols = ["space", "theta", "tau", "jmax", "re_K", "im_K", "re_KI", "im_KI", "re_KII", "im_KII"]
    return cols, _map(row, itertools.product(args.space, args.theta, args.tau, args.jmax))


def _ab(args, cfg):
    c, trunc = cfg["constants"], cfg["trunc"]

    def row(p):
        phi_f, alpha, delta, tau = p
        setup = ABSetup(args.rho, args.source_angle, alpha, delta)
        k = ab_amplitude(setup, phi_f, _time(cfg, tau), trunc, c)
        return [phi_f, alpha, delta, tau, k.real, k.imag, abs(k) ** 2]

    cols = ["phi_f", "alpha_flux", "delta", "tau", "re_K", "im_K", "intensity"]
    return cols, _map(row, itertools.product(args.phi_f, args.alpha, args.delta, args.tau))


def _kind(text: str):
    low = text.lower()
    if low in ("bose", "fermi"):
        return low
    if low.startswith("anyon:"):
        try:
            return Anyon(float(low.split(":", 1)[1]))
        except ValueError:
            pass
    raise InputError(f"kind must be bose, fermi or anyon:THETA, got {text!r}")


def _read_points(path) -> np.ndarray:
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and any(x.strip() for x in r)]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    if rows:
        try:
            [float(x) for x in rows[0]]
        except ValueError:
            rows = rows[1:]  # header
    try:
        pts = np.array([[float(x) for x in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}")
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise InputError(f"{path}: expected rows of equal length")
    return pts


def _random_positions(seed, n, d, rigid):
    rng = np.random.default_rng([seed, n, d])
    frm = rng.normal(size=(n, d))
    if rigid and n == 2 and d == 2:
        # rigid motion keeps the separation, as the ring model requires
        angle = rng.uniform(0, 2 * math.pi)
        rot = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
        to = (frm - frm.mean(axis=0)) @ rot.T + rng.normal(size=2)
    else:
        to = rng.normal(size=(n, d))
    return frm, to


def _particles(args, cfg):
    c, trunc = cfg["constants"], cfg["trunc"]
    kinds = [_kind(k) for k in args.kind]
    if (args.from_file is None) != (args.to_file is None):
        raise InputError("--from and --to must be given together")
    # one set of endpoints per (n, d) shared by all kinds; anyons need equal separations
    rigid = any(isinstance(k, Anyon) for k in kinds)
    given = None
    if args.from_file is not None:
        given = (_read_points(args.from_file), _read_points(args.to_file))

    def row(p):
        n, d, (label, kind), tau = p
        if given is not None:
            frm, to = given
            if frm.shape != (n, d) or to.shape != (n, d):
                raise InputError(f"position files have shape {frm.shape}/{to.shape}, row asks for ({n}, {d})")
        else:
            frm, to = _random_positions(args.seed, n, d, rigid)
        k = statistics_propagator(ParticleConfig(frm), ParticleConfig(to), kind, _time(cfg, tau), c, trunc)
        return [n, d, label, tau, k.real, k.imag]

    if given is not None:
        ns, ds = [given[0].shape[0]], [given[0].shape[1]]
    else:
        ns, ds = args.n, args.d
    labelled = list(zip((k.lower() for k in args.kind), kinds))
    cols = ["n", "d", "kind", "tau", "re_K", "im_K"]
    return cols, _map(row, itertools.product(ns, ds, labelled, args.tau))


def _winding(args, cfg):
    pts = _read_points(args.path)
    if pts.shape[1] != 2:
        raise InputError(f"{args.path}: expected rows x,y")
    return winding_number(PolylinePath.from_points(pts), args.puncture)


# -- verify -------------------------------------------------------------------

def _check_poisson(cfg):
    c, trunc = cfg["constants"], cfg["trunc"]
    worst = 0.0
    for dtheta, tau, delta in itertools.product(
            [0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi], [0.1, 0.5, 1, 2, 5], [0, math.pi / 2, math.pi]):
        a, b, t = CirclePoint(0.0), CirclePoint(dtheta), TimeParameter(tau)
        kw = winding_sum(a, b, t, IntegerCharacter(delta), trunc, c)
        ks = spectral_sum(a, b, t, delta, trunc, c)
        # scale by the spectral terms' magnitude: at dtheta = pi the value itself can be ~0
        scale = max(abs(kw), abs(ks), spectral_sum(a, a, t, 0.0, trunc, c).real, 1e-30)
        worst = max(worst, abs(kw - ks) / scale)
    return worst < 1e-10, f"max relative difference {worst:.3e} over 75 points"


def _check_statistics(cfg):
    c = cfg["constants"]
    rng = np.random.default_rng(7)
    worst = 0.0
    for n in range(1, 6):
        frm, to = ParticleConfig(rng.normal(size=(n, 3))), ParticleConfig(rng.normal(size=(n, 3)))
        t = TimeParameter(1.0)
        m = kernel_matrix(frm, to, t, c)
        partials = [(Permutation(s), permutation_partial(frm, to, Permutation(s), t, c))
                    for s in itertools.permutations(range(n))]
        fermi = assemble(SymmetricCharacter(n, "sign"), partials)
        bose = assemble(SymmetricCharacter(n, "trivial"), partials)
        det, per = complex(np.linalg.det(m)), permanent(m)
        worst = max(worst, abs(fermi - det) / max(abs(det), 1e-300), abs(bose - per) / max(abs(per), 1e-300))
    return worst < 1e-10, f"max relative difference {worst:.3e} for n = 1..5"


def _check_unitarity(cfg):
    rng = np.random.default_rng(11)
    worst = 0.0
    for tj in range(0, 13):
        j = tj / 2
        phi, theta, psi = rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi), rng.uniform(0, 4 * math.pi)
        ms = np.arange(-j, j + 1)
        d = np.array([[wigner_D(j, m, k, phi, theta, psi) for k in ms] for m in ms])
        worst = max(worst, float(np.max(np.abs(d @ d.conj().T - np.eye(len(ms))))))
    return worst < 1e-10, f"max |D D^H - 1| = {worst:.3e} for j <= 6"


def _check_flux(cfg):
    c, trunc = cfg["constants"], cfg["trunc"]
    worst = 0.0
    t = TimeParameter(1.0)
    for alpha in (0.0, 0.25, 0.5, 0.8):
        for phi in np.linspace(0.0, 2 * math.pi, 9):
            i0 = abs(ab_amplitude(ABSetup(flux_alpha=alpha), phi, t, trunc, c)) ** 2
            i1 = abs(ab_amplitude(ABSetup(flux_alpha=alpha + 1), phi, t, trunc, c)) ** 2
            worst = max(worst, abs(i1 - i0))
    return worst < 1e-12, f"max intensity change under alpha -> alpha + 1: {worst:.3e}"


CHECKS = [
    ("poisson_summation", _check_poisson),
    ("determinant_permanent", _check_statistics),
    ("d_matrix_unitarity", _check_unitarity),
    ("flux_periodicity", _check_flux),
]


def _verify(cfg) -> int:
    ok = True
    for name, check in CHECKS:
        passed, detail = check(cfg)
        ok &= passed
        print(f"{name}: {'pass' if passed else 'fail'} ({detail})")
    return EXIT_OK if ok else EXIT_VERIFY


TABLES = {"circle": _circle, "spin": _spin, "ab": _ab, "particles": _particles}


def run(argv=None) -> int:
    """Parse `argv`, run one subcommand, return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        cfg = _settings(args)
        if args.command == "verify":
            return _verify(cfg)
        if args.command == "winding":
            _emit(f"{_winding(args, cfg)}\n", cfg)
            return EXIT_OK
        cols, rows = TABLES[args.command](args, cfg)
        _emit(_render(cols, rows, cfg["format"]), cfg)
        return EXIT_OK
    except (WindingKernelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
