"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input-format error,
3 degenerate key or non-finite simulation.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys

from . import __version__
from .chua import ChuaParams, ChuaState
from .cipher import encrypt_image
from .analysis import analyze
from .errors import DegenerateKey, FormatError, NonFiniteState
from .keyfile import parse_key_file, write_key_file
from .keystream import KeyConfig, generate_keystream, log_error_for_key, normalize
from .lyapunov import KantzConfig, fit_slope, kantz_stretching_curve
from .pgm import read_pgm_file, write_pgm_file

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_KEY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_key(path) -> KeyConfig:
    with open(path, encoding="ascii") as f:
        return parse_key_file(f.read())


def cmd_keygen(args):
    defaults = KeyConfig()
    p = defaults.params
    pick = lambda v, d: d if v is None else v  # noqa: E731
    try:
        params = ChuaParams(*(pick(getattr(args, n), getattr(p, n))
                              for n in ("c1", "c2", "l", "r", "ga", "gb", "bp")))
        initial = ChuaState(*(pick(v, d) for v, d in
                              zip((args.v_c1_0, args.v_c2_0, args.i_l_0), defaults.initial)))
        key = KeyConfig(params, initial, pick(args.h, defaults.h),
                        pick(args.transient, defaults.transient))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with open(args.out, "w", encoding="ascii", newline="\n") as f:
        f.write(write_key_file(key))


def cmd_crypt(args):
    key = _read_key(args.key)
    img = read_pgm_file(args.inp)
    write_pgm_file(args.out, encrypt_image(img, key))


def cmd_keystream(args):
    if args.len < 1:
        raise UsageError("--len must be at least 1")
    key = _read_key(args.key)
    if args.log_error:
        s = log_error_for_key(key, args.len)
        with open(args.log_error, "w", newline="\n") as f:
            f.write("log10_error\n")
            f.writelines(f"{v!r}\n" for v in s)
        ks = normalize(s)
    else:
        ks = generate_keystream(key, args.len)
    with open(args.out, "wb") as f:
        f.write(ks)


def cmd_analyze(args):
    report = analyze(read_pgm_file(args.inp))
    with open(args.out, "w", newline="\n") as f:
        f.write(report.to_csv())


def read_series_csv(path) -> list[float]:
    """One value per row (last column is used); a non-numeric first row is a header."""
    values = []
    with open(path, newline="") as f:
        for i, row in enumerate(csv.reader(f)):
            if not row or not row[-1].strip():
                continue
            try:
                values.append(float(row[-1]))
            except ValueError:
                if i == 0:
                    continue
                raise FormatError(f"{path}: row {i + 1} is not a number: {row[-1]!r}") from None
    return values


def cmd_lyapunov(args):
    raw = read_series_csv(args.inp)
    series = [v for v in raw if math.isfinite(v)]
    if len(series) != len(raw):
        print(f"note: dropped {len(raw) - len(series)} non-finite samples", file=sys.stderr)
    lo, hi = args.fit if args.fit else (None, None)
    try:
        cfg = KantzConfig.for_series(
            series, epsilon=args.epsilon, max_delta_n=args.max_dn,
            fit_lo=lo, fit_hi=hi, theiler_window=args.theiler,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    curve = kantz_stretching_curve(series, cfg)
    lam = fit_slope(curve, cfg.fit_lo, cfg.fit_hi)
    with open(args.out, "w", newline="\n") as f:
        f.write("delta_n,S\n")
        for dn, s in curve.pairs():
            f.write(f"{dn},{s!r}\n")
        f.write(f"lambda,{lam!r}\n")
    print(f"lambda = {lam:.6f} nats/sample ({curve.n_skipped} reference points skipped)",
          file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chuacrypt", description="Chua-circuit lower-bound-error image cipher.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    kg = sub.add_parser("keygen", help="write a key file (defaults: the published parameters)")
    kg.add_argument("--out", required=True)
    for name in ("c1", "c2", "l", "r", "ga", "gb", "bp"):
        kg.add_argument(f"--{name}", type=float)
    kg.add_argument("--v-c1-0", dest="v_c1_0", type=float)
    kg.add_argument("--v-c2-0", dest="v_c2_0", type=float)
    kg.add_argument("--i-l-0", dest="i_l_0", type=float)
    kg.add_argument("--h", type=float)
    kg.add_argument("--transient", type=int)
    kg.set_defaults(func=cmd_keygen)

    for name in ("encrypt", "decrypt"):
        c = sub.add_parser(name, help=f"{name} an 8-bit PGM image")
        c.add_argument("--key", required=True)
        c.add_argument("--in", dest="inp", required=True)
        c.add_argument("--out", required=True)
        c.set_defaults(func=cmd_crypt)

    ks = sub.add_parser("keystream", help="emit raw keystream bytes")
    ks.add_argument("--key", required=True)
    ks.add_argument("--len", type=int, required=True)
    ks.add_argument("--out", required=True)
    ks.add_argument("--log-error", help="also write the log10 lower-bound-error sequence as CSV")
    ks.set_defaults(func=cmd_keystream)

    an = sub.add_parser("analyze", help="entropy, correlations, chi-square, histogram")
    an.add_argument("--in", dest="inp", required=True)
    an.add_argument("--out", required=True)
    an.set_defaults(func=cmd_analyze)

    ly = sub.add_parser("lyapunov", help="Kantz stretching curve and fitted exponent")
    ly.add_argument("--in", dest="inp", required=True)
    ly.add_argument("--out", required=True)
    ly.add_argument("--epsilon", type=float)
    ly.add_argument("--max-dn", dest="max_dn", type=int)
    ly.add_argument("--fit", nargs=2, type=int, metavar=("LO", "HI"))
    ly.add_argument("--theiler", type=int)
    ly.set_defaults(func=cmd_lyapunov)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateKey, NonFiniteState) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KEY
    except (FormatError, ValueError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
