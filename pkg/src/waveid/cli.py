"""Batch command line front end.

Subcommands cover the full workflow: ``gen`` (random records), ``sim``
(model response), ``stats`` (summary / correlation / spectrum /
histogram tables), ``cwt`` (coefficient surface file), ``identify``
(kernel surface + report + figures), ``reconstruct``, ``error``
(restore-error report), and ``plot`` (heatmap + magnitude table).

Exit codes: 0 success, 1 usage or input error, 2 numerical failure.
Handlers compute everything before writing, so a failing run leaves no
output files behind.

Flags may also come from a ``--config`` file of flat ``key = value``
lines (keys are the long flag names); explicit flags take precedence and
unknown keys are rejected.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import render, signals, systems, wavelet
from .errors import FormatError, NumericalError, WaveidError
from .identify import (
    default_lag_count,
    identify_itf,
    read_itf,
    reconstruct,
    restore_error,
    row_dispersion,
    scale_average,
    write_itf,
)
from .signals import read_signal_csv, write_signal_csv
from .spectral import RegularizationPolicy
from .wavelet import ScaleGrid, parse_wavelet, read_surface

__all__ = ["main", "run"]


# ---------------------------------------------------------------------------
# Flag-value parsers (shared little grammars).


def _parse_dist(text: str):
    name, _, args = text.strip().partition(":")
    parts = args.split(",") if args else []
    if len(parts) != 2:
        raise FormatError(f"--dist {text!r}: expected gauss:<m>,<s> or uniform:<lo>,<hi>")
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise FormatError(f"--dist {text!r}: non-numeric parameter") from None
    if name == "gauss":
        return "gaussian", (a, b)
    if name == "uniform":
        return "uniform", (a, b)
    raise FormatError(f"--dist {text!r}: unknown distribution {name!r}")


def _parse_scales(text: str) -> ScaleGrid:
    parts = text.strip().split(":")
    if len(parts) != 4:
        raise FormatError(f"--scales {text!r}: expected <amin>:<amax>:<count>:<log|linear>")
    if parts[3] not in ("log", "linear"):
        raise FormatError(f"--scales {text!r}: spacing must be 'log' or 'linear'")
    try:
        a_min, a_max, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise FormatError(f"--scales {text!r}: malformed numeric field") from None
    return ScaleGrid(a_min, a_max, count, parts[3])


def _parse_reg(text: str) -> RegularizationPolicy:
    name, sep, level_text = text.strip().partition(":")
    if not sep:
        raise FormatError(f"--reg {text!r}: expected <water|tikhonov>:<level>")
    kinds = {"water": "water_level", "tikhonov": "tikhonov"}
    if name not in kinds:
        raise FormatError(f"--reg {text!r}: unknown kind {name!r}")
    try:
        level = float(level_text)
    except ValueError:
        raise FormatError(f"--reg {text!r}: non-numeric level") from None
    return RegularizationPolicy(kinds[name], level)


# ---------------------------------------------------------------------------
# Config file merging.

_CONVERT = {"n": int, "seed": int, "lags": int, "dt": float}


def _load_config(path) -> dict:
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise FormatError(f"cannot read config file: {exc}") from None
    out = {}
    for i, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"{path}:{i}: expected key = value")
        out[key.strip()] = value.strip()
    return out


def _merge_config(args, allowed: set, required: set) -> None:
    """Fill unset flags from the config file, then check required ones."""
    if getattr(args, "config", None) is not None:
        for key, text in _load_config(args.config).items():
            if key not in allowed:
                raise FormatError(f"unknown config key {key!r} for this subcommand")
            if getattr(args, key) is None:
                try:
                    value = _CONVERT.get(key, str)(text)
                except ValueError:
                    raise FormatError(f"config key {key!r}: malformed value {text!r}") from None
                setattr(args, key, value)
    missing = [k for k in sorted(required) if getattr(args, k) is None]
    if missing:
        flags = ", ".join("-o" if k == "out" else f"--{k}" for k in missing)
        raise FormatError(f"missing required flag(s): {flags}")


def _strip_suffix(path: str, *suffixes: str) -> str:
    for sfx in suffixes:
        if path.endswith(sfx) and len(path) > len(sfx):
            return path[: -len(sfx)]
    return path


def _read_any_surface(path):
    """Read either surface flavour; dispatch on the header tag."""
    try:
        with open(path) as fh:
            tag = fh.readline().split(" ", 1)[0]
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    if tag == "wcs-v1":
        return read_surface(path)
    if tag == "itf-v1":
        return read_itf(path)
    raise FormatError(f"{path}: not a surface file (unknown tag {tag!r})")


# ---------------------------------------------------------------------------
# Subcommand handlers.  Each returns lines for stdout.


def _cmd_gen(args):
    _merge_config(args, {"dist", "n", "dt", "seed", "out"}, {"dist", "n", "out"})
    distribution, params = _parse_dist(args.dist)
    spec = signals.StochasticSpec(
        distribution, params, args.n,
        1.0 if args.dt is None else args.dt,
        0 if args.seed is None else args.seed,
    )
    write_signal_csv(signals.generate_stochastic(spec), args.out)
    return []


def _cmd_sim(args):
    _merge_config(args, {"model", "out"}, {"model", "out"})
    x = read_signal_csv(args.input)
    model = systems.parse_model(args.model)
    write_signal_csv(systems.simulate(model, x), args.out)
    return []


def _cmd_stats(args):
    _merge_config(args, {"lags", "out"}, {"out"})
    x = read_signal_csv(args.input)
    max_lag = default_lag_count(len(x)) if args.lags is None else args.lags
    stats = signals.summary_stats(x)
    acf = signals.autocorrelation(x, max_lag)
    freqs, power = signals.periodogram(x)
    n_bins = int(min(64, max(8, round(len(x) ** 0.5))))
    counts, edges = np.histogram(x.samples, bins=n_bins)
    ccf = None
    if args.second is not None:
        y = read_signal_csv(args.second)
        ccf = signals.cross_correlation(x, y, max_lag)

    base = args.out
    summary_lines = [
        f"n={len(x)}",
        f"dt={x.dt:.17g}",
        f"mean={stats.mean:.17g}",
        f"variance={stats.variance:.17g}",
        f"min={stats.minimum:.17g}",
        f"max={stats.maximum:.17g}",
        f"rms={stats.rms:.17g}",
    ]
    with open(base + ".summary.txt", "w") as fh:
        fh.write("\n".join(summary_lines) + "\n")

    def write_pairs(path, header, col_a, col_b):
        with open(path, "w") as fh:
            fh.write(header + "\n")
            for a, b in zip(col_a, col_b):
                fh.write(f"{a:.17g},{b:.17g}\n")

    write_pairs(base + ".acf.csv", "lag,value", acf.lags * x.dt, acf.values)
    write_pairs(base + ".periodogram.csv", "frequency,power", freqs, power)
    with open(base + ".hist.csv", "w") as fh:
        fh.write("bin_left,bin_right,count\n")
        for lo, hi, c in zip(edges[:-1], edges[1:], counts):
            fh.write(f"{lo:.17g},{hi:.17g},{c}\n")
    if ccf is not None:
        write_pairs(base + ".ccf.csv", "lag,value", ccf.lags * x.dt, ccf.values)
    return summary_lines


def _cmd_cwt(args):
    _merge_config(args, {"wavelet", "scales", "out"}, {"scales", "out"})
    x = read_signal_csv(args.input)
    mother = parse_wavelet(args.wavelet if args.wavelet is not None else "morlet:6")
    surface = wavelet.cwt(x, mother, _parse_scales(args.scales))
    wavelet.write_surface(surface, args.out)
    return []


def _cmd_identify(args):
    _merge_config(args, {"wavelet", "scales", "reg", "lags", "out"}, {"scales", "out"})
    x = read_signal_csv(args.x)
    y = read_signal_csv(args.y)
    mother = parse_wavelet(args.wavelet if args.wavelet is not None else "morlet:6")
    reg = _parse_reg(args.reg if args.reg is not None else "water:1e-3")
    itf = identify_itf(x, y, mother, _parse_scales(args.scales), reg, n_lags=args.lags)

    y_hat = reconstruct(x, itf)
    report = restore_error(y, y_hat)
    avg = scale_average(itf)
    rel = "nan" if report.epsilon_rel is None else f"{report.epsilon_rel:.17g}"
    lines = [
        f"channels={itf.scales.size}",
        f"dead_channels={int(itf.dead.sum())}",
        f"lags={itf.n_lags}",
        f"wavelet={itf.wavelet.label()}",
        f"regularization={itf.reg.kind}:{itf.reg.level:g}",
        f"dispersion={row_dispersion(itf):.17g}",
        f"epsilon_rel={rel}",
        f"epsilon_rms={report.epsilon_rms:.17g}",
    ]

    base = _strip_suffix(args.out, ".itf")
    write_itf(itf, args.out)
    with open(base + ".report.txt", "w") as fh:
        fh.write("\n".join(lines) + "\n")
    render.save_surface_png(
        base + ".surface.png", itf.values, itf.scales, itf.dt,
        title="identified kernel surface", value_label="|h|",
    )
    render.save_lines_png(
        base + ".kernel.png",
        {"scale-averaged kernel": avg},
        itf.dt, title="energy-weighted average kernel",
        xlabel="lag [s]", ylabel="h",
    )
    render.save_lines_png(
        base + ".restore.png",
        {"recorded output": y.samples, "reconstruction": y_hat.samples},
        y.dt, t0=y.t0, title="output vs reconstruction",
    )
    return lines


def _cmd_reconstruct(args):
    _merge_config(args, {"out"}, {"out"})
    x = read_signal_csv(args.input)
    itf = read_itf(args.surface)
    write_signal_csv(reconstruct(x, itf, mode=args.mode), args.out)
    return []


def _cmd_error(args):
    _merge_config(args, {"out"}, set())
    y = read_signal_csv(args.reference)
    y_hat = read_signal_csv(args.candidate)
    report = restore_error(y, y_hat)
    rel = "nan" if report.epsilon_rel is None else f"{report.epsilon_rel:.17g}"
    lines = [f"epsilon_rel={rel}", f"epsilon_rms={report.epsilon_rms:.17g}"]
    if args.out is not None:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return lines


def _cmd_plot(args):
    _merge_config(args, {"out"}, {"out"})
    surface = _read_any_surface(args.surface)
    base = _strip_suffix(args.out, ".ppm")
    render.write_ppm(base + ".ppm", surface.values)
    render.write_magnitude_csv(
        base + ".magnitude.csv", surface.values, surface.scales, surface.dt,
        t0=getattr(surface, "t0", 0.0),
    )
    return []


# ---------------------------------------------------------------------------
# Parser assembly.


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); route through our codes
        raise FormatError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="waveid", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", metavar="<command>")

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--config", help="key = value file supplying unset flags")
        return p

    p = add("gen", _cmd_gen, "generate a reproducible random record")
    p.add_argument("--dist", help="gauss:<m>,<s> or uniform:<lo>,<hi>")
    p.add_argument("--n", type=int, help="record length in samples")
    p.add_argument("--dt", type=float, help="sample interval in seconds (default 1)")
    p.add_argument("--seed", type=int, help="generator seed (default 0)")
    p.add_argument("-o", "--out", help="output signal CSV")

    p = add("sim", _cmd_sim, "simulate a model's response to a record")
    p.add_argument("input", help="input signal CSV")
    p.add_argument("--model", help="model spec, e.g. so:wn=50,zeta=0.2,gain=1 "
                                   "or hammerstein:sat=0.8|fo:T=0.05,gain=2")
    p.add_argument("-o", "--out", help="output signal CSV")

    p = add("stats", _cmd_stats, "summary, correlation, spectrum, histogram tables")
    p.add_argument("input", help="signal CSV")
    p.add_argument("second", nargs="?", help="optional second CSV for cross-correlation")
    p.add_argument("--lags", type=int, help="correlation lag count (default n/4, max 512)")
    p.add_argument("-o", "--out", help="output base path (suffixes are appended)")

    p = add("cwt", _cmd_cwt, "continuous wavelet transform to a surface file")
    p.add_argument("input", help="signal CSV")
    p.add_argument("--wavelet", help="morlet:<w0> | mhat | dog:<n> | paul:<m> | "
                                     "gauss:<n> | shannon (default morlet:6)")
    p.add_argument("--scales", help="<amin>:<amax>:<count>:<log|linear> (seconds)")
    p.add_argument("-o", "--out", help="output surface file (.wcs)")

    p = add("identify", _cmd_identify, "identify the kernel surface from input/output records")
    p.add_argument("x", help="input signal CSV")
    p.add_argument("y", help="output signal CSV")
    p.add_argument("--wavelet", help="analysis wavelet (default morlet:6)")
    p.add_argument("--scales", help="<amin>:<amax>:<count>:<log|linear> (seconds)")
    p.add_argument("--reg", help="<water|tikhonov>:<level> (default water:1e-3)")
    p.add_argument("--lags", type=int, help="kernel length in samples (default n/4, max 512)")
    p.add_argument("-o", "--out", help="output kernel surface; report and figures "
                                       "are written alongside")

    p = add("reconstruct", _cmd_reconstruct, "predict the output of a record from a kernel surface")
    p.add_argument("input", help="input signal CSV")
    p.add_argument("surface", help="kernel surface file")
    p.add_argument("--mode", choices=("wavelet_domain", "time_domain"),
                   default="wavelet_domain", help="reconstruction mode")
    p.add_argument("-o", "--out", help="output signal CSV")

    p = add("error", _cmd_error, "restore-error report between two records")
    p.add_argument("reference", help="recorded output CSV")
    p.add_argument("candidate", help="reconstructed output CSV")
    p.add_argument("-o", "--out", help="optionally also write the report to a file")

    p = add("plot", _cmd_plot, "render a surface file to a heatmap and magnitude table")
    p.add_argument("surface", help="surface file (.wcs or kernel surface)")
    p.add_argument("-o", "--out",
                   help="output path; writes <base>.ppm and <base>.magnitude.csv")

    return parser


def run(argv) -> int:
    """Parse and execute one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except FormatError as exc:
        print(f"waveid: error: {exc}", file=sys.stderr)
        return 1
    if getattr(args, "handler", None) is None:
        parser.print_help(sys.stderr)
        return 1
    try:
        lines = args.handler(args)
    except NumericalError as exc:
        print(f"waveid: numerical error: {exc}", file=sys.stderr)
        return 2
    except (WaveidError, OSError) as exc:
        print(f"waveid: error: {exc}", file=sys.stderr)
        return 1
    for line in lines:
        print(line)
    return 0


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help
        code = exc.code
        return code if isinstance(code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
