"""Command-line interface: ``infowidth {width,property,measure,figure,mc-validate}``.

Exit codes: 0 success, 1 failed statistical validation, 2 usage or
unsupported input, 3 infeasible computation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

from . import __version__
from .classes import (
    ExpDecay,
    FunctionClass,
    Identity,
    LabeledSample,
    Ld,
    Vd,
    VdC,
    VdSample,
    property_report,
)
from .errors import InfeasibleSamplingError, InfoWidthError, PreconditionWarning
from .figures import DEFAULT_PRECISION, FIGURE_IDS, build_figure, format_cell
from .measures import (
    WHOLE_SPACE,
    InfoReport,
    PropertyCollection,
    conditional_entropy,
    description_complexity,
    information,
    read_targets,
)
from .width import AUTO, BACKENDS, EXACT, info_width, min_description_bits

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

PROPS = ("ld", "vd", "vdc", "vdsm", "identity", "expdecay")


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_clean(v) for v in value]
    return value


def _report_json(report: InfoReport, extra: dict | None = None) -> str:
    data = report.to_dict()
    if extra:
        data.update(extra)
    return json.dumps(_clean(data), indent=2) + "\n"


# --- width -------------------------------------------------------------------------------


def cmd_width(args) -> int:
    if (args.l is None) == (args.members is None):
        raise UsageError("give exactly one of --l or --members")
    res = info_width(args.ny, args.l, members=args.members, backend=args.backend)
    kappa = res.l / res.width_bits if res.width_bits > 0 else math.nan
    p = args.precision
    rows = [
        ["l", "r", "Istar", "kappastar", "backend"],
        [format_cell(res.l, p), str(res.threshold), format_cell(res.width_bits, p), format_cell(kappa, p), res.backend],
    ]
    _emit("".join(",".join(r) + "\r\n" for r in rows), args.out)
    return EXIT_OK


# --- property ------------------------------------------------------------------------------


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--prop {args.prop} needs --{name}")
    return value


def _build_spec(args):
    prop = args.prop
    if prop == "ld":
        return Ld(_need(args, "d"))
    if prop == "vd":
        return Vd(_need(args, "d"))
    if prop == "vdc":
        return VdC(_need(args, "d"))
    if prop == "vdsm":
        d = _need(args, "d")
        if args.sample:
            sample = LabeledSample.from_dict(_load_json(args.sample))
        else:
            m = _need(args, "m")
            if m != int(m) or m < 0:
                raise UsageError("--m must be a nonnegative integer when no --sample file is given")
            sample = LabeledSample([(i, 0) for i in range(1, int(m) + 1)])
        return VdSample(d, sample)
    if prop == "identity":
        if args.class_file:
            cls = FunctionClass.from_dict(_load_json(args.class_file))
        else:
            g = _need(args, "gsize")
            if g < 1 or g > 1 << args.n:
                raise UsageError(f"--gsize must lie in [1, 2**{args.n}]")
            cls = FunctionClass(args.n, range(g))
        return Identity(cls)
    if prop == "expdecay":
        return ExpDecay(_need(args, "alpha"), args.c)
    raise UsageError(f"unknown property {prop!r}")


def cmd_property(args) -> int:
    spec = _build_spec(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PreconditionWarning)
        report = property_report(
            args.n,
            spec,
            args.method,
            trials=args.trials,
            seed=args.seed,
            threads=args.threads,
            check=not args.no_check,
        )
    extra = {}
    flags = sorted({str(w.message) for w in caught if issubclass(w.category, PreconditionWarning)})
    if flags:
        extra["warnings"] = flags
    if args.method == "mc":
        extra["trials"] = args.trials
        extra["seed"] = args.seed
    _emit(_report_json(report, extra), args.out)
    return EXIT_OK


# --- measure ---------------------------------------------------------------------------------


def cmd_measure(args) -> int:
    x = PropertyCollection.from_dict(_load_json(args.input))
    target = WHOLE_SPACE
    if args.target:
        target = read_targets(_load_json(args.target))
    info = information(x, target)
    ell = description_complexity(x)
    kappa = ell / info if info > 0 else None
    eta = None
    if target is WHOLE_SPACE and info > 0:
        eta = info / info_width(x.space.size, members=x.size).width_bits
    report = InfoReport(
        information_bits=info,
        conditional_entropy_bits=conditional_entropy(x),
        description_bits=ell,
        cost=kappa,
        efficiency=eta,
        method="exact",
    )
    extra = {"target": "whole" if target is WHOLE_SPACE else list(target.members)}
    _emit(_report_json(report, extra), args.out)
    return EXIT_OK


# --- figure ------------------------------------------------------------------------------------


def cmd_figure(args) -> int:
    fig = build_figure(args.id, backend=args.backend)
    csv_text = fig.to_csv(args.precision)
    if args.out_csv:
        Path(args.out_csv).write_text(csv_text)
    if args.out_svg:
        Path(args.out_svg).write_text(fig.to_svg())
    if not args.out_csv and not args.out_svg:
        sys.stdout.write(csv_text)
    return EXIT_OK


# --- mc-validate ---------------------------------------------------------------------------------


def cmd_mc_validate(args) -> int:
    from .random_classes import validation_suite

    results = validation_suite(trials=args.trials, seed=args.seed, threads=args.threads)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


# --- parser --------------------------------------------------------------------------------------


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _pos_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infowidth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("width", help="information width I*(l) of a target space")
    p.add_argument("--ny", type=_pos_int, required=True, help="target space size")
    p.add_argument("--l", type=float, help="description length in bits")
    p.add_argument("--members", type=_pos_int, help="member count |Z_x| (sets l exactly)")
    p.add_argument("--backend", choices=BACKENDS, default=AUTO)
    p.add_argument("--precision", type=_nonneg_int, default=DEFAULT_PRECISION)
    p.add_argument("--out")
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("property", help="information report for a class property")
    p.add_argument("--n", type=_pos_int, required=True, help="domain size")
    p.add_argument("--prop", choices=PROPS, required=True)
    p.add_argument("--d", type=float, help="dimension parameter (floored for predicates)")
    p.add_argument("--m", type=float, help="sample size for vdsm")
    p.add_argument("--sample", help="sample JSON file for vdsm")
    p.add_argument("--alpha", type=float)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--gsize", type=_pos_int, help="identity class size (members 0..gsize-1)")
    p.add_argument("--class", dest="class_file", help="class JSON file for identity")
    p.add_argument("--method", choices=("exact", "mc", "asym"), default="exact")
    p.add_argument("--trials", type=_pos_int, default=100_000)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--threads", type=_pos_int)
    p.add_argument("--no-check", action="store_true", help="evaluate estimates outside their premises")
    p.add_argument("--out")
    p.set_defaults(func=cmd_property)

    p = sub.add_parser("measure", help="measures of an explicit property from JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--target")
    p.add_argument("--out")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("figure", help="regenerate a figure as CSV and SVG")
    p.add_argument("--id", required=True, choices=FIGURE_IDS)
    p.add_argument("--out-csv")
    p.add_argument("--out-svg")
    p.add_argument("--precision", type=_nonneg_int, default=DEFAULT_PRECISION)
    p.add_argument("--backend", choices=(EXACT, "logdomain"), default=EXACT, help="width backend for 1a/1b")
    p.add_argument("--threads", type=_pos_int)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("mc-validate", help="statistical checks of the samplers")
    p.add_argument("--trials", type=_pos_int, default=100_000)
    p.add_argument("--seed", type=_nonneg_int, default=1)
    p.add_argument("--threads", type=_pos_int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mc_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args)
    except InfeasibleSamplingError as exc:
        print(f"infowidth: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InfoWidthError, UsageError, ValueError) as exc:
        print(f"infowidth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
