"""Command-line front end: ``compute``, ``table`` and ``verify``.

Exit status: 0 on success, 1 when an identity check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from . import families as fam
from . import identities as ids
from .algebra import AlgebraError, format_rational, parse_rational

# Parameters each family actually depends on, in output order.
FAMILY_PARAMS = {
    "stirling2": (),
    "bernoulli_number": (),
    "bernoulli_order_r": ("r",),
    "poly_bernoulli": ("k",),
    "hermite": ("nu",),
    "frobenius_euler": ("r", "lambda"),
    "hb_mixed": ("nu", "k"),
}
SCALAR_FAMILIES = {"bernoulli_number"}


@dataclass(frozen=True)
class OutputRecord:
    family: str
    n: int
    params: tuple[tuple[str, str], ...]
    payload: tuple[str, ...] | str

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "params": dict(self.params),
            "value": self.payload if isinstance(self.payload, str) else list(self.payload),
        }

    @classmethod
    def from_json(cls, obj: dict) -> OutputRecord:
        value = obj["value"]
        payload = value if isinstance(value, str) else tuple(value)
        for item in (payload,) if isinstance(payload, str) else payload:
            parse_rational(item)
        return cls(obj["family"], int(obj["n"]), tuple(obj["params"].items()), payload)


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _family_arg(text: str) -> str:
    name = fam.FAMILY_ALIASES.get(text, text)
    if name not in FAMILY_PARAMS:
        raise argparse.ArgumentTypeError(
            f"unknown family {text!r}; choose from {', '.join(sorted(FAMILY_PARAMS))} or 'hb'"
        )
    return name


def _param_values(args) -> dict[str, object]:
    return {"nu": args.nu, "k": args.k, "r": args.r, "lambda": args.lam}


def _check_family_params(parser, family: str, args) -> None:
    used = FAMILY_PARAMS[family]
    if "nu" in used and args.nu == 0:
        parser.error("--nu must be nonzero")
    if "lambda" in used and args.lam == 1:
        parser.error("--lambda must differ from 1")
    if "r" in used and args.r < 0:
        parser.error("--r must be >= 0")


def member(family: str, n: int, values: dict[str, object]):
    """Polynomial, scalar or Stirling row for one family member."""
    if family == "stirling2":
        return [fam.stirling2(n, m) for m in range(n + 1)]
    if family == "bernoulli_number":
        return fam.bernoulli_number(n)
    if family == "bernoulli_order_r":
        return fam.bernoulli_poly(n, values["r"])
    if family == "poly_bernoulli":
        return fam.poly_bernoulli(n, values["k"])
    if family == "hermite":
        return fam.hermite(n, values["nu"])
    if family == "frobenius_euler":
        return fam.frobenius_euler(n, values["r"], values["lambda"])
    if family == "hb_mixed":
        return fam.hb(n, values["nu"], values["k"])
    raise KeyError(family)


def make_record(family: str, n: int, values: dict[str, object], at: Fraction | None = None) -> OutputRecord:
    params = tuple((name, format_rational(values[name])) for name in FAMILY_PARAMS[family])
    value = member(family, n, values)
    if family == "stirling2":
        payload: tuple[str, ...] | str = tuple(str(v) for v in value)
    elif family in SCALAR_FAMILIES:
        payload = format_rational(value)
    elif at is not None:
        payload = format_rational(value(at))
    else:
        payload = tuple(value.to_strings())
    return OutputRecord(family, n, params, payload)


# --- table serialization ---------------------------------------------------

def records_to_json(records: Sequence[OutputRecord]) -> str:
    return json.dumps([r.to_json() for r in records]) + "\n"


def records_from_json(text: str) -> list[OutputRecord]:
    return [OutputRecord.from_json(obj) for obj in json.loads(text)]


def records_to_csv(records: Sequence[OutputRecord]) -> str:
    if not records:
        return ""
    family = records[0].family
    names = [name for name, _ in records[0].params]
    scalar = isinstance(records[0].payload, str)
    width = max(1 if scalar else len(r.payload) for r in records)
    value_cols = ["value"] if scalar else [f"c{i}" for i in range(width)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "n", *names, *value_cols])
    for r in records:
        cells = [r.payload] if scalar else list(r.payload) + [""] * (width - len(r.payload))
        writer.writerow([family, r.n, *(v for _, v in r.params), *cells])
    return buf.getvalue()


def records_from_csv(text: str) -> list[OutputRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return []
    header = rows[0]
    value_start = next(i for i, h in enumerate(header) if h == "value" or h == "c0")
    names = header[2:value_start]
    scalar = header[value_start] == "value"
    out = []
    for row in rows[1:]:
        values = row[value_start:]
        for v in values:
            if v:
                parse_rational(v)
        payload = values[0] if scalar else tuple(v for v in values if v != "")
        out.append(OutputRecord(row[0], int(row[1]), tuple(zip(names, row[2:value_start])), payload))
    return out


# --- commands --------------------------------------------------------------

def cmd_compute(args, parser) -> int:
    family = args.family
    if args.n < 0:
        parser.error("--n must be >= 0")
    _check_family_params(parser, family, args)
    if args.at is not None and (family == "stirling2" or family in SCALAR_FAMILIES):
        parser.error(f"--at does not apply to {family}")
    rec = make_record(family, args.n, _param_values(args), args.at)
    payload = rec.payload if isinstance(rec.payload, str) else list(rec.payload)
    print(json.dumps(payload))
    return 0


def cmd_table(args, parser) -> int:
    family = args.family
    if args.n_max < 0:
        parser.error("--n-max must be >= 0")
    _check_family_params(parser, family, args)
    values = _param_values(args)
    records = [make_record(family, n, values) for n in range(args.n_max + 1)]
    text = records_to_json(records) if args.format == "json" else records_to_csv(records)
    sys.stdout.write(text)
    return 0


def _grid_for(args, parser) -> ids.Grid:
    grid = ids.PROFILES[args.profile]
    if args.n is not None:
        if args.n < 0:
            parser.error("--n must be >= 0")
        grid = replace(grid, n_values=(args.n,))
    elif args.n_max is not None:
        if args.n_max < 0:
            parser.error("--n-max must be >= 0")
        grid = replace(grid, n_values=tuple(range(args.n_max + 1)))
    if args.nu is not None:
        if args.nu == 0:
            parser.error("--nu must be nonzero")
        grid = replace(grid, nus=(args.nu,))
    if args.k is not None:
        grid = replace(grid, ks=(args.k,))
    if args.r is not None:
        if args.r < 0:
            parser.error("--r must be >= 0")
        grid = replace(grid, rs=(args.r,))
    if args.lam is not None:
        if args.lam == 1:
            parser.error("--lambda must differ from 1")
        grid = replace(grid, lams=(args.lam,))
    return grid


def cmd_verify(args, parser) -> int:
    names = args.ids or ["all"]
    if "all" in names:
        selected = list(ids.IDENTITY_TAGS)
        explicit = False
    else:
        unknown = [n for n in names if n not in ids.IDENTITIES]
        if unknown:
            parser.error(f"unknown identities: {', '.join(unknown)}")
        selected = names
        explicit = True
    grid = _grid_for(args, parser)
    if explicit:
        for tag in selected:
            floor = ids.IDENTITIES[tag].floor
            if max(grid.n_values) < floor:
                parser.error(f"{tag} is stated for n >= {floor}")
    reports = ids.verify_grid(selected, grid, informational=args.informational)
    failed = 0
    for rep in reports:
        print(json.dumps(rep.to_json()))
        if not rep.equal and not rep.informational:
            failed += 1
            print(f"FAIL {rep.describe()}", file=sys.stderr)
    print(f"{len(reports)} reports, {failed} failed", file=sys.stderr)
    return 1 if failed else 0


def _add_param_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    if defaults:
        d = lambda v: v
        note = lambda v: f" (default {v})"
    else:
        d = lambda v: None
        note = lambda v: " (default: every profile value)"
    p.add_argument("--nu", type=_rational_arg, default=d(Fraction(1)), help="Hermite parameter, nonzero" + note(1))
    p.add_argument("--k", type=int, default=d(1), help="poly-Bernoulli index" + note(1))
    p.add_argument("--r", type=int, default=d(1), help="Bernoulli / Frobenius-Euler order" + note(1))
    p.add_argument("--lambda", dest="lam", type=_rational_arg, default=d(Fraction(2)),
                   help="Frobenius-Euler parameter, not 1" + note(2))


# Lets "--nu -1/2" parse as a value rather than an unknown flag.
_NEGATIVE_LITERAL = re.compile(r"^-\d+(/\d+)?$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="umbral", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print one family member")
    p.add_argument("family", type=_family_arg)
    p.add_argument("--n", type=int, required=True)
    _add_param_flags(p, defaults=True)
    p.add_argument("--at", type=_rational_arg, default=None, help="evaluate at this rational")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", help="print members 0..n-max")
    p.add_argument("family", type=_family_arg)
    p.add_argument("--n-max", type=int, required=True)
    _add_param_flags(p, defaults=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check identities over a parameter grid")
    p.add_argument("ids", nargs="*", help="identity tags, or 'all' (default)")
    p.add_argument("--profile", choices=tuple(ids.PROFILES), default="quick")
    p.add_argument("--n", type=int, default=None, help="check this n only")
    p.add_argument("--n-max", type=int, default=None, help="check n = 0..n-max")
    _add_param_flags(p, defaults=False)
    p.add_argument("--informational", action="store_true",
                   help="also report points below an identity's stated floor (never failures)")
    p.set_defaults(func=cmd_verify)
    for p in (parser, *sub.choices.values()):
        p._negative_number_matcher = _NEGATIVE_LITERAL
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except AlgebraError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
