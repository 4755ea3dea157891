"""Command-line front end.

Exit codes: 0 success, 1 I/O, parse or usage error, 2 verdict
``gamma_fe_only``, 3 verdict ``not_automorphic``, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from .barnes import (
    DEFAULT_ACCURACY,
    AccuracyRequest,
    NumericsError,
    hurwitz_zeta,
    hurwitz_zeta_ds,
    log_multiple_gamma,
    multiple_sine,
    precision_from_env,
)
from .laurent import (
    DEGENERATE,
    MotiveParseError,
    derivative_at_one,
    detect_automorphy,
    parse_motive,
    symmetrize,
    vanishing_order_at_one,
)
from .spaces import Family, exponent_parity, make_space, sine_exponents
from .verification import SUITES, run_suite
from .zeta_engine import (
    GAMMA_FE_ONLY,
    NOT_AUTOMORPHIC,
    SpectrumError,
    certify_simple_fe,
    load_length_spectrum,
    truncated_zeta,
    truncated_zeta_motive,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_GAMMA_FE_ONLY = 2
EXIT_NOT_AUTOMORPHIC = 3
EXIT_SUITE_FAILED = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    tol: Optional[float]
    accuracy: AccuracyRequest
    seed: int
    fmt: str
    out: Optional[str]
    force: bool

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        if args.tol is not None and not args.tol > 0:
            raise UsageError("--tol must be positive")
        return cls(args.tol, _parse_precision(args.precision), args.seed, args.format, args.out, args.force)


def _parse_precision(text: Optional[str]) -> AccuracyRequest:
    if text is None:
        return precision_from_env()
    text = text.strip().lower()
    if text == "standard":
        return DEFAULT_ACCURACY
    if text.startswith("high:"):
        text = text[5:]
    try:
        return AccuracyRequest.high(int(text))
    except ValueError as exc:
        raise UsageError(f"bad --precision {text!r}: {exc}") from None


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="tolerance override")
    parser.add_argument("--precision", default=None, help="standard | high:DIGITS | DIGITS")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", default=None, help="write the report to PATH")
    parser.add_argument("--force", action="store_true")


def _space_from(family: str, numbers: Sequence[int]):
    fam = Family.parse(family)
    if fam is Family.F4:
        if len(numbers) not in (1, 2):
            raise UsageError("f4 expects VOL")
        return make_space(fam, None, numbers[-1])
    if len(numbers) != 2:
        raise UsageError(f"{family} expects N VOL")
    return make_space(fam, numbers[0], numbers[1])


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    body = json.dumps(payload, indent=2) + "\n" if cfg.fmt == "json" else text.rstrip("\n") + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _automorphy_text(auto) -> str:
    if auto is None:
        return "not automorphic"
    if auto is DEGENERATE:
        return "degenerate (zero polynomial)"
    return f"C={auto.C:+d}, D={auto.D}"


# -- commands ----------------------------------------------------------------

def cmd_motive(args, cfg: RunConfig) -> int:
    f = parse_motive(args.poly)
    auto = detect_automorphy(f)
    order = vanishing_order_at_one(f)
    top = 2 if order == math.inf else order + 2
    derivs = [derivative_at_one(f, m) for m in range(top)]
    auto_text = _automorphy_text(auto)
    if auto is None:
        auto_json = "none"
    elif auto is DEGENERATE:
        auto_json = "degenerate"
    else:
        auto_json = auto.to_json()
    payload = {
        "motive": f.to_json(),
        "text": str(f),
        "automorphy": auto_json,
        "order": "infinite" if order == math.inf else order,
        "derivatives_at_one": derivs,
    }
    lines = [
        f"f(x)        = {f}",
        f"automorphy  : {auto_text}",
        f"order at 1  : {payload['order']}",
        "f^(m)(1)    : " + ", ".join(f"m={m}: {d}" for m, d in enumerate(derivs)),
    ]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_certify(args, cfg: RunConfig) -> int:
    space = _space_from(args.family, args.numbers)
    if (args.motive is None) == (args.symmetrize is None):
        raise UsageError("give exactly one of --motive or --symmetrize")
    if args.motive is not None:
        f = parse_motive(args.motive)
    else:
        order = args.sym_order if args.sym_order is not None else space.dim
        f = symmetrize(parse_motive(args.symmetrize), order)
    cert = certify_simple_fe(space, f)
    payload = cert.to_json()
    lines = [
        f"space       : {space.label}, vol={space.vol}, dim={space.dim}, 2rho={space.rho2}",
        f"motive      : {f}",
        f"automorphy  : {_automorphy_text(cert.automorphy)}",
        f"order at 1  : {payload['order']}",
        f"quotient    : {cert.quotient if cert.quotient is not None else '-'}",
        f"S_M(f)      = {cert.normal_form}",
    ]
    if cert.reflection:
        lines.append(f"reflection  : Z(s) = Z({cert.reflection[1]} - s)^({cert.reflection[0]:+d})")
    if cert.samples:
        lines.append(f"numeric     : max |S_M(f)(s_i) - 1| = {cert.max_residual:.3e}")
    lines.append(f"verdict     : {cert.verdict}")
    _emit(cfg, payload, "\n".join(lines))
    if cert.verdict == GAMMA_FE_ONLY:
        return EXIT_GAMMA_FE_ONLY
    if cert.verdict == NOT_AUTOMORPHIC:
        return EXIT_NOT_AUTOMORPHIC
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    options = {}
    if args.rmax is not None:
        if args.suite != "ladder":
            raise UsageError("--rmax applies to the ladder suite only")
        options["rmax"] = args.rmax
    report = run_suite(args.suite, cfg.tol, cfg.accuracy, cfg.seed, **options)
    _emit(cfg, report.to_json(), report.to_text())
    return EXIT_OK if report.passed else EXIT_SUITE_FAILED


def cmd_space(args, cfg: RunConfig) -> int:
    space = _space_from(args.family, args.numbers)
    table = sine_exponents(space)
    payload = {
        "family": space.family.value,
        "n": space.n,
        "vol": space.vol,
        "dim": space.dim,
        "level": space.level,
        "rho2": space.rho2,
        "exponents": list(table.exponents),
        "outer": table.outer,
        "parity": exponent_parity(space),
    }
    text = "\n".join(f"{k:<10}: {v}" for k, v in payload.items())
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_sf_eval(args, cfg: RunConfig) -> int:
    try:
        a = complex(args.a.replace(" ", ""))
        w = complex(args.w.replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse complex arguments {args.a!r}, {args.w!r}") from None
    acc = cfg.accuracy
    if args.function in ("log-gamma", "sine"):
        if a.imag or a.real != int(a.real):
            raise UsageError("level r must be a positive integer")
        r = int(a.real)
        result = log_multiple_gamma(r, w, acc) if args.function == "log-gamma" else multiple_sine(r, w, acc)
    elif args.function == "hurwitz":
        result = hurwitz_zeta(a, w, acc)
    else:
        result = hurwitz_zeta_ds(a, w, acc)
    payload = result.to_json()
    _emit(cfg, payload, json.dumps(payload))
    return EXIT_OK


def cmd_zeta(args, cfg: RunConfig) -> int:
    spec = load_length_spectrum(args.spectrum)
    try:
        s = complex(args.s.replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse s={args.s!r}") from None
    f = parse_motive(args.motive) if args.motive else None
    rho2 = 1
    worst = s.real - (f.max_deg if f else 0)
    if worst <= rho2 and not cfg.force:
        sys.stderr.write(
            f"refusing: Re(s - k) = {worst} is outside the convergence region Re > {rho2}; use --force\n"
        )
        return EXIT_IO
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if f is None:
            result = truncated_zeta(spec, s, args.weights, args.length_cut, rho2)
        else:
            result = truncated_zeta_motive(spec, f, s, args.weights, args.length_cut, rho2)
    v = result.complex
    payload = {
        "spectrum": spec.source,
        "entries": len(spec),
        "s_re": s.real,
        "s_im": s.imag,
        "weights": args.weights,
        "length_cut": None if math.isinf(args.length_cut) else args.length_cut,
        "motive": f.to_json() if f else None,
        "value_re": v.real,
        "value_im": v.imag,
        "convergence_delta": result.error_estimate,
        "divergent": "divergent" in result.flags,
    }
    text = f"Z = {v.real:.15g} {'+' if v.imag >= 0 else '-'} {abs(v.imag):.15g}i  (delta {result.error_estimate:.3e})"
    if payload["divergent"]:
        text += "\nwarning: evaluated outside the convergence region"
    _emit(cfg, payload, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="motive-selberg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("motive", help="automorphy and vanishing order of a Laurent polynomial")
    p.add_argument("poly")
    _common(p)
    p.set_defaults(handler=cmd_motive)

    p = sub.add_parser("certify", help="certify the simple functional equation for (space, motive)")
    p.add_argument("family", help="so | su | sp | f4")
    p.add_argument("numbers", type=int, nargs="+", metavar="N VOL", help="N VOL (VOL only for f4)")
    p.add_argument("--motive", default=None)
    p.add_argument("--symmetrize", default=None, metavar="H")
    p.add_argument("--sym-order", type=int, default=None, help="r in symmetrize(h, r); default dim")
    _common(p)
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite", help=" | ".join(SUITES))
    p.add_argument("--rmax", type=int, default=None)
    _common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("space", help="catalog inspection")
    space_sub = p.add_subparsers(dest="space_command", parser_class=_Parser)
    space_sub.required = True
    q = space_sub.add_parser("info")
    q.add_argument("family")
    q.add_argument("numbers", type=int, nargs="+", metavar="N VOL")
    _common(q)
    q.set_defaults(handler=cmd_space)

    p = sub.add_parser("sf", help="special-function passthrough")
    sf_sub = p.add_subparsers(dest="sf_command", parser_class=_Parser)
    sf_sub.required = True
    q = sf_sub.add_parser("eval")
    q.add_argument("function", choices=("hurwitz", "hurwitz-ds", "log-gamma", "sine"))
    q.add_argument("a", help="s for hurwitz*, level r for log-gamma/sine")
    q.add_argument("w")
    _common(q)
    q.set_defaults(handler=cmd_sf_eval)

    p = sub.add_parser("zeta", help="truncated Euler product from a length spectrum")
    p.add_argument("spectrum")
    p.add_argument("s")
    p.add_argument("--weights", "-N", type=int, default=10)
    p.add_argument("--length-cut", "-L", type=float, default=math.inf)
    p.add_argument("--motive", default=None)
    _common(p)
    p.set_defaults(handler=cmd_zeta)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig.from_args(args)
        return args.handler(args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_IO
    except MotiveParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_IO
    except (SpectrumError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO
    except (NumericsError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
