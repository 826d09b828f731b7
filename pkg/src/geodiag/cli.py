"""Command-line front end and the JSON wire format.

Product spaces are written as ``"RH3(1) x CH3(2) x HH3(1)"``: one factor
per ``FHn(c)`` token with ``F`` in {R, C, H, O} and ``c`` a positive
rational ``p`` or ``p/q``.  Curvatures stay exact end to end: the JSON
records render them as ``"p/q"`` strings, never floats.

Commands: ``classify``, ``count``, ``tableaux``, ``angles``, ``realize``,
``verify``.  Output is deterministic for fixed flags and seed; ``--json``
switches to JSON lines (one record per line).  The classify record format
is frozen in ``schema/classified.json`` (tag v1).  Exit codes: 0 success,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from .catalog import Field, RankOneSpace, TotGeodInclusion
from .kahler import angles_in_product, approximate_angle, realize_angle
from .lieverify import verify_classification_entry
from .tableaux import (
    AdaptedTableau,
    Box,
    ClassifiedSubmanifold,
    ProductSpace,
    classify,
    count_classes,
    enumerate_tableaux,
)

SEED_ENV_VAR = "GEODIAG_SEED"


class ProductSpecError(ValueError):
    """Problem with a product-space specification string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SpecSyntaxError(ProductSpecError):
    """The input does not match the surface grammar."""


class SpecSemanticError(ProductSpecError):
    """Grammatically fine, but names no valid space."""


_FACTOR_RE = re.compile(r"([RCHO])H(\d+)\((\d+)(?:/(\d+))?\)")
_SEPARATOR_RE = re.compile(r"\s*x\s*")


def parse_product(text: str) -> ProductSpace:
    """Parse a product specification into a normalized ProductSpace.

    Syntax errors carry the offending position; semantic errors (zero
    curvature, octonionic dimension other than 2, real dimension 1) are
    reported separately from syntax errors.
    """
    factors: list[RankOneSpace] = []
    pos = 0
    stripped = text.rstrip()
    while True:
        m = _FACTOR_RE.match(text, pos)
        if m is None:
            raise SpecSyntaxError(
                "expected a factor like 'RH3(1)' or 'CH2(1/4)'", pos
            )
        letter, n_str, num_str, den_str = m.groups()
        n = int(n_str)
        num = int(num_str)
        den = int(den_str) if den_str is not None else 1
        if den == 0:
            raise SpecSemanticError("curvature denominator must not be zero", pos)
        if num == 0:
            raise SpecSemanticError("curvature must be positive", pos)
        field = Field(letter)
        if field is Field.O and n > 2:
            raise SpecSemanticError("octonionic dimension must be 2", pos)
        if field is Field.R and n < 2:
            raise SpecSemanticError("real hyperbolic dimension must be at least 2", pos)
        if n < 1:
            raise SpecSemanticError("dimension must be positive", pos)
        factors.append(RankOneSpace(field, n, Fraction(num, den)))
        pos = m.end()
        if pos >= len(stripped):
            break
        sep = _SEPARATOR_RE.match(text, pos)
        if sep is None or sep.end() == pos:
            raise SpecSyntaxError("expected ' x ' between factors", pos)
        pos = sep.end()
    if text[pos:].strip():
        raise SpecSyntaxError("trailing input after product", pos)
    return ProductSpace(tuple(factors))


def _curv_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_product(M: ProductSpace) -> str:
    """Canonical surface form; parse(render(M)) == M."""
    return " x ".join(f"{f.field.value}H{f.n}({_curv_str(f.curvature)})" for f in M.factors)


# ---------------------------------------------------------------------------
# JSON records (schema/classified.json, tag v1)
# ---------------------------------------------------------------------------


def _space_record(s: RankOneSpace) -> list:
    return [s.field.value, s.n, _curv_str(s.curvature)]


def tableau_record(tableau: AdaptedTableau) -> list:
    return [
        [
            {
                "factor": box.factor,
                "sub": {
                    "field": box.inclusion.sub.field.value,
                    "n": box.inclusion.sub.n,
                    "curv": _curv_str(box.inclusion.sub.curvature),
                },
            }
            for box in row
        ]
        for row in tableau.rows
    ]


def classified_record(entry: ClassifiedSubmanifold) -> dict:
    return {
        "factors": [_space_record(f) for f in entry.semisimple_factors],
        "flat_dim": entry.flat_dim,
        "complement": list(entry.complement_factors),
        "tableau": tableau_record(entry.tableau),
    }


def classified_from_record(record: dict, M: ProductSpace) -> ClassifiedSubmanifold:
    """Rebuild a classification entry from its JSON record (lossless)."""
    rows = []
    for row in record["tableau"]:
        boxes = []
        for box in row:
            sub = RankOneSpace(
                Field(box["sub"]["field"]),
                box["sub"]["n"],
                Fraction(box["sub"]["curv"]),
                M.compact_dual,
            )
            boxes.append(Box(box["factor"], TotGeodInclusion(sub, M.factor(box["factor"]))))
        rows.append(boxes)
    semisimple = tuple(
        RankOneSpace(Field(f), n, Fraction(c), M.compact_dual)
        for f, n, c in record["factors"]
    )
    return ClassifiedSubmanifold(
        semisimple,
        record["flat_dim"],
        AdaptedTableau.from_rows(rows),
        tuple(record["complement"]),
    )


def _dump(record: object) -> str:
    return json.dumps(record, separators=(",", ":"), sort_keys=False)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_classify(args, out) -> int:
    M = parse_product(args.product)
    entries = list(classify(M))
    if args.json:
        for e in entries:
            print(_dump(classified_record(e)), file=out)
    else:
        width = max((len(e.isometry_type()) for e in entries), default=0)
        for e in entries:
            print(f"{e.isometry_type():<{width}}  flat={e.flat_dim}  {e.tableau}", file=out)
    return 0


def _cmd_count(args, out) -> int:
    print(count_classes(parse_product(args.product)), file=out)
    return 0


def _cmd_tableaux(args, out) -> int:
    M = parse_product(args.product)
    try:
        subset = {int(tok) for tok in args.subset.split(",") if tok.strip()}
    except ValueError:
        raise SpecSemanticError("subset must be a comma-separated list of indices", 0)
    for t in enumerate_tableaux(M, subset):
        if args.json:
            print(_dump({"rows": tableau_record(t)}), file=out)
        else:
            print(str(t), file=out)
    return 0


def _cmd_angles(args, out) -> int:
    k = args.k
    angles = angles_in_product(k)
    if args.table:
        print("k,s,cosine", file=out)
        for s in range(k + 1):
            print(f"{k},{s},{_curv_str(Fraction(abs(2 * s - k), k))}", file=out)
    elif args.json:
        record = {
            "k": k,
            "cosines": [_curv_str(a.cosine) for a in angles],
            "radians": [a.radians for a in angles],
        }
        print(_dump(record), file=out)
    else:
        for a in angles:
            print(f"cos = {_curv_str(a.cosine):>8}   angle = {a.radians:.12f}", file=out)
    return 0


def _realization_record(r) -> dict:
    return {
        "k": r.k,
        "s": r.s,
        "n": r.n,
        "m": r.m,
        "ambient": str(r.ambient),
        "cosine": _curv_str(r.cosine),
    }


def _cmd_realize(args, out) -> int:
    try:
        q = Fraction(args.q)
    except (ValueError, ZeroDivisionError):
        raise SpecSemanticError(f"not a rational: {args.q!r}", 0)
    if not 0 <= q <= 1:
        raise SpecSemanticError("cosine must lie in [0, 1]", 0)
    r = realize_angle(q, args.m)
    print(_dump(_realization_record(r)), file=out)
    return 0


def _cmd_approximate(args, out) -> int:
    r = approximate_angle(args.target, args.epsilon, args.m)
    print(_dump(_realization_record(r)), file=out)
    return 0


def _cmd_verify(args, out) -> int:
    M = parse_product(args.product)
    rng = np.random.default_rng(args.seed)
    any_fail = False
    any_unsupported = False
    n_pass = 0
    for e in classify(M):
        report = verify_classification_entry(
            e, M, lie_tol=args.tol, curvature_tol=10 * args.tol, rng=rng
        )
        any_fail = any_fail or report.failed
        any_unsupported = any_unsupported or not report.fully_supported
        n_pass += report.status == "pass"
        if args.json:
            print(_dump(report.to_dict()), file=out)
        else:
            print(f"{report.status:<11}  {e.isometry_type()}", file=out)
            for r in report.rows:
                if r.status == "unsupported":
                    print(f"             row {r.row_index}: unsupported ({r.reason})", file=out)
                else:
                    print(
                        f"             row {r.row_index}: residual {r.lie_residual:.2e}"
                        f"  curvature {r.curvature_measured:.12g}"
                        f" (expected {r.curvature_expected:.12g})",
                        file=out,
                    )
    if not args.json:
        print(f"# verified: {n_pass} pass", file=out)
    if any_fail:
        return 1
    if args.strict and any_unsupported:
        return 1
    return 0


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV_VAR, "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geodiag",
        description="Totally geodesic submanifolds of products of rank-one symmetric spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="list all totally geodesic submanifold classes")
    p.add_argument("-m", "--product", required=True, help="product space, e.g. 'RH3(1) x CH3(2)'")
    p.add_argument("--json", action="store_true", help="emit JSON lines")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("count", help="count the classification entries")
    p.add_argument("-m", "--product", required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("tableaux", help="list adapted tableaux over a factor subset")
    p.add_argument("-m", "--product", required=True)
    p.add_argument("--subset", required=True, help="comma-separated 1-based factor indices")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_tableaux)

    p = sub.add_parser("angles", help="Kahler angles of k-diagonal projective subspaces")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--table", action="store_true", help="emit a (k, s, cosine) CSV")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_angles)

    p = sub.add_parser("realize", help="realize a rational cosine as a Kahler angle")
    p.add_argument("--q", required=True, help="rational cosine in [0, 1], e.g. 1/5")
    p.add_argument("--m", type=int, default=1, help="dimension of the diagonal projective space")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("approximate", help="approximate an angle by a realizable one")
    p.add_argument("--target", type=float, required=True, help="target angle in radians")
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=_cmd_approximate)

    p = sub.add_parser("verify", help="numerically verify the classification in compact duals")
    p.add_argument("-m", "--product", required=True)
    p.add_argument("--seed", type=int, default=None, help=f"rng seed (default ${SEED_ENV_VAR} or 0)")
    p.add_argument("--tol", type=float, default=1e-9, help="Lie triple residual tolerance")
    p.add_argument("--strict", action="store_true", help="treat unsupported factors as failure")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv: Sequence[str], out=None) -> int:
    """Parse and dispatch one command line; returns the exit code."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        args.seed = _default_seed()
    try:
        return args.func(args, out)
    except ProductSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
