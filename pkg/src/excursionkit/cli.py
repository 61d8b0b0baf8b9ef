"""Command line front end: every operation, machine-readable output.

Results go to stdout as JSON (``--format csv`` for the tabular
subcommands); domain errors exit with status 1 and a structured JSON
object on stderr; usage errors exit with status 2.  Probabilities computed
in rational mode serialise as "num/den" strings so exactness survives the
wire.  Identical invocations produce byte-identical output; the sampling
subcommand is deterministic in (seed, n, workers), with ``EXK_SEED`` as
the seed fallback.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import acceptance
from .core import Excursion, LevelNumbers, from_jumps, individuals, level_numbers
from .enumeration import count_excursions, enumerate_excursions
from .errors import ExcursionKitError
from .montecarlo import (
    DEFAULT_THETA_MAX,
    Event,
    always,
    estimate,
    height_at_least,
    is_positive_event,
    unique_max_height,
)
from .probability import (
    JumpLaw,
    boundary,
    class_prob,
    conditional_excursion_prob,
    doob_law,
    excursion_prob,
    height_tail,
    height_unique,
)
from .transforms import ShiftOp, compose, negate, reverse, shift, shift_sequence
from .trees import tree_of
from .vervaat import vervaat


def _encode(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def _parse_jumps(text: str) -> Excursion:
    return from_jumps(int(tok) for tok in text.replace(" ", "").split(","))


def _parse_levels(text: str) -> LevelNumbers:
    return LevelNumbers(tuple(int(tok) for tok in text.replace(" ", "").split(",")))


def _parse_law(spec: str) -> JumpLaw:
    if spec.startswith("homog:"):
        return JumpLaw.homogeneous(spec.split(":", 1)[1])
    if spec.lstrip().startswith("{"):
        return JumpLaw.from_dict(json.loads(spec))
    with open(spec, encoding="utf-8") as fh:
        return JumpLaw.from_dict(json.load(fh))


def _parse_event(text: str) -> Event:
    text = text.strip()
    if text in ("true", "all", "always"):
        return always()
    if text == "positive":
        return is_positive_event()
    if text.startswith("H>="):
        return height_at_least(int(text[3:]))
    if text.startswith("uniqueH="):
        return unique_max_height(int(text[8:]))
    raise ValueError(
        f"unknown event {text!r}; use true, positive, H>=s or uniqueH=s"
    )


def _auto_exact(law: JumpLaw, text: str):
    data = boundary(law)
    if text in ("true", "all", "always"):
        return 1.0
    if text == "positive":
        return float(law.p(0) * data.beta(1) / data.beta0)
    if text.startswith("H>="):
        return float(height_tail(law, int(text[3:])) / data.beta(1))
    if text.startswith("uniqueH="):
        return float(height_unique(law, int(text[8:])) / data.beta(1))
    return None


def _emit(obj, fmt: str, csv_rows=None) -> None:
    if fmt == "csv":
        if csv_rows is None:
            raise ValueError("csv output is only available for tabular results")
        sys.stdout.write("\n".join(",".join(str(c) for c in row) for row in csv_rows))
        sys.stdout.write("\n")
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True))
        sys.stdout.write("\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exk",
        description="Excursions of state-dependent random walks: "
        "structure, exact laws, conditioned sampling.",
    )
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a jump sequence and describe it")
    p.add_argument("--jumps", required=True)

    p = sub.add_parser("individuals", help="list the matched rise/return pairs")
    p.add_argument("--jumps", required=True)

    p = sub.add_parser("levels", help="per-level individual counts")
    p.add_argument("--jumps", required=True)

    p = sub.add_parser("tree", help="nested-array tree of a positive excursion")
    p.add_argument("--jumps", required=True)

    p = sub.add_parser("count", help="number of excursions with given level counts")
    p.add_argument("--levels", required=True)

    p = sub.add_parser("enumerate", help="all excursions with given level counts")
    p.add_argument("--levels", required=True)

    p = sub.add_parser("transform", help="apply reverse/negate/vervaat or a shift")
    p.add_argument("--jumps", required=True)
    p.add_argument("--op", choices=("reverse", "negate", "vervaat"))
    p.add_argument("--shift", help="a,b,c,h[,kind]")

    p = sub.add_parser("shift-seq", help="excursion shifts from one path to another")
    p.add_argument("--jumps", required=True)
    p.add_argument("--target", required=True)

    p = sub.add_parser("prob", help="exact excursion/class probability under a law")
    p.add_argument("--law", required=True)
    p.add_argument("--jumps")
    p.add_argument("--levels")
    p.add_argument("--conditional", action="store_true",
                   help="condition on finiteness instead of the sign class")

    p = sub.add_parser("height", help="height distribution values")
    p.add_argument("--law", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--kind", choices=("tail", "unique"), default="tail")

    p = sub.add_parser("doob", help="the return-conditioned transition law")
    p.add_argument("--law", required=True)

    p = sub.add_parser("sample", help="Monte Carlo estimate under the conditioned law")
    p.add_argument("--law", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--event", default="true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--theta-max", type=int, default=DEFAULT_THETA_MAX)
    p.add_argument("--exact", default="auto", help="'auto', 'none' or a number")

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--only", help="comma-separated criterion numbers")

    return parser


def _run(args) -> int:
    fmt = args.format

    if args.command == "validate":
        x = _parse_jumps(args.jumps)
        _emit(
            {
                "valid": True,
                "values": x.value_string(),
                "theta": x.theta,
                "height": x.height,
                "sign": "positive" if x.is_positive else "negative",
            },
            fmt,
        )

    elif args.command == "individuals":
        x = _parse_jumps(args.jumps)
        rows = [
            {"rank": i.rank, "birth": i.birth, "level": i.level, "death": i.death}
            for i in individuals(x)
        ]
        _emit(rows, fmt, [("rank", "birth", "level", "death")] +
              [(i.rank, i.birth, i.level, i.death) for i in individuals(x)])

    elif args.command == "levels":
        n = level_numbers(_parse_jumps(args.jumps))
        _emit({"counts": list(n.counts), "total": n.total, "height": n.height}, fmt)

    elif args.command == "tree":
        _emit(tree_of(_parse_jumps(args.jumps)).to_json_obj(), fmt)

    elif args.command == "count":
        n = _parse_levels(args.levels)
        count = str(count_excursions(n))
        _emit({"count": count}, fmt,
              [("levels", "count"), ("|".join(map(str, n.counts)), count)])

    elif args.command == "enumerate":
        n = _parse_levels(args.levels)
        xs = list(enumerate_excursions(n))
        _emit(
            [{"jumps": list(x.jumps), "values": x.value_string()} for x in xs],
            fmt,
            [("jumps", "values")] +
            [(" ".join(str(j) for j in x.jumps), x.value_string()) for x in xs],
        )

    elif args.command == "transform":
        x = _parse_jumps(args.jumps)
        if (args.op is None) == (args.shift is None):
            raise ValueError("give exactly one of --op and --shift")
        if args.op:
            image = {"reverse": reverse, "negate": negate, "vervaat": vervaat}[args.op](x)
            _emit({"jumps": list(image.jumps), "values": image.value_string()}, fmt)
        else:
            parts = args.shift.split(",")
            kind = parts[4] if len(parts) > 4 else "bridge"
            op = ShiftOp(int(parts[0]), int(parts[1]), int(parts[2]), int(parts[3]), kind)
            image, phi = shift(x, op)
            _emit(
                {
                    "jumps": list(image.jumps),
                    "values": image.value_string(),
                    "permutation": list(phi),
                },
                fmt,
            )

    elif args.command == "shift-seq":
        x = _parse_jumps(args.jumps)
        target = _parse_jumps(args.target)
        ops = shift_sequence(x, target)
        replay, _ = compose(ops).apply(x)
        assert replay == target
        _emit({"ops": [op.to_dict() for op in ops], "length": len(ops)}, fmt)

    elif args.command == "prob":
        law = _parse_law(args.law)
        if (args.jumps is None) == (args.levels is None):
            raise ValueError("give exactly one of --jumps and --levels")
        if args.jumps:
            x = _parse_jumps(args.jumps)
            value = (
                conditional_excursion_prob(law, x)
                if args.conditional
                else excursion_prob(law, x)
            )
        else:
            if args.conditional:
                raise ValueError("--conditional applies to a single excursion")
            value = class_prob(law, _parse_levels(args.levels))
        _emit({"value": _encode(value)}, fmt)

    elif args.command == "height":
        law = _parse_law(args.law)
        fn = height_tail if args.kind == "tail" else height_unique
        _emit({"value": _encode(fn(law, args.s))}, fmt)

    elif args.command == "doob":
        _emit(doob_law(_parse_law(args.law)).to_dict(), fmt)

    elif args.command == "sample":
        law = _parse_law(args.law)
        seed = args.seed
        if seed is None:
            seed = int(os.environ.get("EXK_SEED", "0"))
        event = _parse_event(args.event)
        if args.exact == "auto":
            exact = _auto_exact(law, args.event)
        elif args.exact in ("none", ""):
            exact = None
        else:
            exact = float(args.exact)
        report = estimate(
            law, event, args.n,
            seed=seed, workers=args.workers, theta_max=args.theta_max, exact=exact,
        )
        _emit(report.to_dict(), fmt)

    elif args.command == "verify":
        numbers = None
        if args.only:
            numbers = [int(tok) for tok in args.only.split(",")]
        ok = acceptance.run(numbers)
        return 0 if ok else 1

    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except ExcursionKitError as exc:
        payload = {
            "error": {
                "type": type(exc).__name__,
                "reason": getattr(exc, "reason", None) or getattr(exc, "condition", None),
                "message": str(exc),
            }
        }
        sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(
            json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}},
                       sort_keys=True) + "\n"
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
