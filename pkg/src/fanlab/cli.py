"""Command-line front door: generate families, run solvers, emit reports.

One subcommand per construction: gen, eval, hset, separate, mincap,
adversary, bound, space, growth, verify.  All randomness flows from a single
seed, JSON output is byte-deterministic (sorted keys, no timestamps), and
human diagnostics such as timings go to stderr.

Exit codes: 0 success or separated, 2 bad ordinal literal, 3 guard exceeded,
4 closure failure, 5 validation failure, 10 blocked or adversary pair found,
1 anything else.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path

from . import verification
from .cdw import HFamily, sum_threshold_family
from .errors import (
    ClosureError,
    DomainError,
    GuardExceeded,
    OrdinalParseError,
    ValidationError,
)
from .families import (
    FuncFamily,
    close_avoiding,
    close_below,
    verify_witness,
    weak_bound_avoiding,
    weak_bound_below,
)
from .ordinals import (
    LadderSystem,
    Ordinal,
    first_limits,
    index_to_json,
    parse_index,
    parse_ordinal,
    random_limit,
    random_ordinal,
)
from .separation import (
    adversary_two_sets,
    exists_separation_capped,
    min_cap,
    min_sum_labeling,
    solve_separation,
)
from .spaces import build_space, export_space
from .verification import growth_rows

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_CLOSURE = 4
EXIT_VALIDATION = 5
EXIT_BLOCKED = 10


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc


def _setting(args, config: dict, key: str, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key, default)


def _load_family(args, config) -> FuncFamily:
    path = _setting(args, config, "family")
    if path is None:
        raise ValidationError("a family file is required (--family)")
    return FuncFamily.from_json(_load_json(path))


def _load_hset(args, config) -> HFamily:
    path = _setting(args, config, "hset")
    if path is None:
        raise ValidationError("an hset file is required (--hset)")
    return HFamily.from_json(_load_json(path))


def _wants_ordinals(indices) -> bool:
    return bool(indices) and not isinstance(indices[0], int)


def _coerce_indices(values, ordinal: bool) -> list:
    if not ordinal:
        return list(values)
    return [Ordinal.from_int(v) if isinstance(v, int) else v for v in values]


def _parse_index_spec(spec, bound, seed: int, ordinal: bool = False) -> list:
    """'first:N', 'random:N', or a comma-separated list of index literals."""
    if isinstance(spec, list):
        return _coerce_indices([parse_index(str(s)) for s in spec], ordinal)
    if spec.startswith("first:"):
        if bound is None:
            raise ValidationError("'first:N' needs an ordinal bound")
        return first_limits(bound, int(spec.split(":", 1)[1]))
    if spec.startswith("random:"):
        if bound is None:
            raise ValidationError("'random:N' needs an ordinal bound")
        rng = random.Random(seed)
        count = int(spec.split(":", 1)[1])
        points = set()
        while len(points) < count:
            points.add(random_ordinal(rng, bound))
        return sorted(points)
    return _coerce_indices(
        [parse_index(part) for part in spec.split(",") if part.strip()], ordinal
    )


def _family_uses_ordinals(family: FuncFamily) -> bool:
    return family.kind in ("walk", "ladder") or family.bound is not None or _wants_ordinals(
        family.indices
    )


def _subset(args, config, h: HFamily, seed: int) -> list:
    spec = _setting(args, config, "subset")
    if spec is None:
        return list(h.indices)
    values = _parse_index_spec(spec, None, seed, ordinal=_wants_ordinals(h.indices))
    for v in values:
        h.position(v)
    return values


def _labeling_json(f: dict) -> list:
    return [[index_to_json(a), v] for a, v in sorted(f.items())]


def _pair_json(pair) -> list | None:
    return None if pair is None else [index_to_json(pair[0]), index_to_json(pair[1])]


# -- subcommands -------------------------------------------------------------


def cmd_gen(args, config) -> int:
    kind = _setting(args, config, "kind", "walk")
    bound_text = _setting(args, config, "bound")
    if kind in ("walk", "ladder"):
        if bound_text is None:
            raise ValidationError("walk and ladder families need --bound")
        bound = parse_ordinal(bound_text)
        ladder_kind = _setting(args, config, "ladders", "canonical")
        if ladder_kind == "seeded":
            ladders = LadderSystem.seeded(int(_setting(args, config, "seed", 0)))
        elif ladder_kind == "canonical":
            ladders = LadderSystem.canonical()
        else:
            raise ValidationError(f"unknown ladder kind {ladder_kind!r}")
        family = FuncFamily(kind, bound, ladders=ladders)
    elif kind == "explicit":
        table_path = _setting(args, config, "table")
        if table_path is None:
            raise ValidationError("explicit families need --table")
        family = FuncFamily.from_json(_load_json(table_path))
    else:
        raise ValidationError(f"unknown family kind {kind!r}")
    _emit(family.to_json(), _setting(args, config, "out"))
    return EXIT_OK


def cmd_eval(args, config) -> int:
    family = _load_family(args, config)
    ordinal = _family_uses_ordinals(family)
    if args.alpha is not None and args.beta is not None:
        alpha, beta = _coerce_indices(
            [parse_index(args.alpha), parse_index(args.beta)], ordinal
        )
        doc = {
            "alpha": index_to_json(alpha),
            "beta": index_to_json(beta),
            "value": family.value(alpha, beta),
        }
    else:
        seed = int(_setting(args, config, "seed", 0))
        spec = _setting(args, config, "indices")
        if spec is None:
            raise ValidationError("eval needs --alpha/--beta or --indices")
        values = _parse_index_spec(spec, family.bound, seed, ordinal=ordinal)
        doc = {
            "indices": [index_to_json(v) for v in values],
            "values": [
                [i, j, family.value(a, b)]
                for i, a in enumerate(values)
                for j, b in enumerate(values)
                if a < b
            ],
        }
    _emit(doc, _setting(args, config, "out"))
    return EXIT_OK


def cmd_hset(args, config) -> int:
    table_path = _setting(args, config, "table")
    if table_path is not None:
        h = HFamily.from_json(_load_json(table_path))
    else:
        family = _load_family(args, config)
        spec = _setting(args, config, "indices")
        if spec is None:
            raise ValidationError("hset needs --indices with --family")
        seed = int(_setting(args, config, "seed", 0))
        indices = _parse_index_spec(
            spec, family.bound, seed, ordinal=_family_uses_ordinals(family)
        )
        h = sum_threshold_family(family, indices)
    _emit(h.to_json(), _setting(args, config, "out"))
    return EXIT_OK


def cmd_separate(args, config) -> int:
    h = _load_hset(args, config)
    seed = int(_setting(args, config, "seed", 0))
    A = _subset(args, config, h, seed)
    cap = int(_setting(args, config, "cap", 0))
    engine = _setting(args, config, "engine", "solver")
    start = time.perf_counter()
    if engine == "oracle":
        result = exists_separation_capped(h, A, cap)
    elif engine == "solver":
        result = solve_separation(h, A, cap)
    else:
        raise ValidationError(f"unknown engine {engine!r}")
    print(f"separate: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    doc = {
        "status": result.status,
        "cap": cap,
        "A": [index_to_json(a) for a in sorted(A)],
        "witness": None if result.witness is None else _labeling_json(result.witness),
    }
    _emit(doc, _setting(args, config, "out"))
    return EXIT_OK if result.separated else EXIT_BLOCKED


def cmd_mincap(args, config) -> int:
    h = _load_hset(args, config)
    seed = int(_setting(args, config, "seed", 0))
    A = _subset(args, config, h, seed)
    start = time.perf_counter()
    cap = min_cap(h, A)
    witness = solve_separation(h, A, cap).witness
    ms = min_sum_labeling(h, A)
    print(f"mincap: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    doc = {
        "A": [index_to_json(a) for a in sorted(A)],
        "min_cap": cap,
        "witness": _labeling_json(witness),
        "min_sum": ms.total,
        "min_sum_exact": ms.exact,
        "min_sum_witness": _labeling_json(ms.labeling),
    }
    _emit(doc, _setting(args, config, "out"))
    return EXIT_OK


def cmd_adversary(args, config) -> int:
    h = _load_hset(args, config)
    seed = int(_setting(args, config, "seed", 0))
    ordinal = _wants_ordinals(h.indices)
    first = _parse_index_spec(_setting(args, config, "first"), None, seed, ordinal=ordinal)
    second = _parse_index_spec(_setting(args, config, "second"), None, seed, ordinal=ordinal)
    if set(first) & set(second):
        raise ValidationError("the two sets must be disjoint")
    labels_path = _setting(args, config, "labels")
    if labels_path is not None:
        raw = _load_json(labels_path)
        f = {
            key: int(v)
            for a, v in raw["labels"]
            for key in _coerce_indices([parse_index(str(a))], ordinal)
        }
    else:
        const = int(_setting(args, config, "const", 0))
        f = {a: const for a in list(first) + list(second)}
    pair = adversary_two_sets(h, first, second, f)
    doc = {
        "pair": _pair_json(pair),
        "values": None if pair is None else [f[pair[0]], f[pair[1]]],
    }
    _emit(doc, _setting(args, config, "out"))
    return EXIT_OK if pair is None else EXIT_BLOCKED


def cmd_bound(args, config) -> int:
    family = _load_family(args, config)
    if family.kind == "walk":
        raise ValidationError("bounds are built for ladder or explicit families")
    seed = int(_setting(args, config, "seed", 0))
    rng = random.Random(seed)
    count = int(_setting(args, config, "points", 8))
    depth = int(_setting(args, config, "prefix_depth", 3))
    gamma_text = _setting(args, config, "gamma")
    avoid_spec = _setting(args, config, "avoid")
    if (gamma_text is None) == (avoid_spec is None):
        raise ValidationError("exactly one of --gamma and --avoid is required")
    start = time.perf_counter()
    if gamma_text is not None:
        gamma = parse_ordinal(gamma_text)
        points = {random_ordinal(rng, gamma) for _ in range(count)}
        sample = close_below(family, gamma, points, prefix_depth=depth)
        bound = weak_bound_below(family, gamma, sample)
        mode = {"mode": "below", "gamma": str(gamma)}
    else:
        if family.bound is None or not family.bound.is_limit:
            raise ValidationError("--avoid needs a family with a limit ordinal bound")
        avoid = set(_parse_index_spec(avoid_spec, family.bound, seed, ordinal=True))
        if avoid == set():
            avoid = {random_limit(rng, family.bound) for _ in range(3)}
        points = {random_ordinal(rng, family.bound) for _ in range(count)}
        club_spec = _setting(args, config, "club")
        if club_spec is not None:
            club = tuple(sorted(_parse_index_spec(club_spec, family.bound, seed, ordinal=True)))
        else:
            ladders = family.ladders or LadderSystem.canonical()
            top = ladders.first_index_at_least(family.bound, max(points | avoid) + 1)
            club = tuple(ladders.value(family.bound, n) + 1 for n in range(top + 2))
        sample = close_avoiding(family, avoid, club, points, prefix_depth=depth)
        bound = weak_bound_avoiding(family, avoid, club, sample)
        mode = {
            "mode": "avoiding",
            "avoid": [str(b) for b in sorted(avoid)],
            "club": [str(c) for c in club],
        }
    violations = verify_witness(bound, family)
    print(f"bound: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    doc = bound.to_json()
    doc.update(mode)
    doc["violations"] = [_pair_json(p) for p in violations]
    probe = _setting(args, config, "probe")
    if probe is not None:
        extra = set(bound.certified_on)
        extra.update(
            random_ordinal(rng, parse_ordinal(mode.get("gamma", str(family.bound))))
            for _ in range(int(probe))
        )
        doc["empirical_violations"] = [
            _pair_json(p) for p in verify_witness(bound, family, extra)
        ]
    _emit(doc, _setting(args, config, "out"))
    return EXIT_OK if not violations else EXIT_ERROR


def cmd_space(args, config) -> int:
    h = _load_hset(args, config)
    seed = int(_setting(args, config, "seed", 0))
    A = _subset(args, config, h, seed)
    space = build_space(h, A)
    fmt = _setting(args, config, "format", "json")
    depth_k = int(_setting(args, config, "depth_k", 0))
    _emit_text(export_space(space, fmt, k=depth_k), _setting(args, config, "out"))
    return EXIT_OK


def _parse_schedule(spec: str, bound, seed: int) -> list[list]:
    """'first:LO..HI' or 'random:LO..HI': a nested chain of index sets."""
    try:
        mode, span = spec.split(":", 1)
        lo, hi = (int(part) for part in span.split("..", 1))
    except ValueError as exc:
        raise ValidationError(f"bad schedule {spec!r}: {exc}") from exc
    if mode == "first":
        if bound is None:
            raise ValidationError("'first' schedules need an ordinal bound")
        pool = first_limits(bound, hi)
    elif mode == "random":
        if bound is None:
            raise ValidationError("'random' schedules need an ordinal bound")
        rng = random.Random(seed)
        points = set()
        while len(points) < hi:
            points.add(random_ordinal(rng, bound))
        pool = sorted(points)
    else:
        raise ValidationError(f"unknown schedule mode {mode!r}")
    return [pool[:n] for n in range(lo, min(hi, len(pool)) + 1)]


def cmd_growth(args, config) -> int:
    family = _load_family(args, config)
    seed = int(_setting(args, config, "seed", 0))
    schedule = _setting(args, config, "schedule", "first:2..6")
    chain = _parse_schedule(schedule, family.bound, seed)
    if not chain:
        raise ValidationError("the schedule produced no index sets")
    h = sum_threshold_family(family, chain[-1])
    start = time.perf_counter()
    rows = growth_rows(h, chain)
    print(f"growth: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    fmt = _setting(args, config, "format", "csv")
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["N", "min_cap", "min_sum", "witness_max"])
        for row in rows:
            writer.writerow([row["N"], row["min_cap"], row["min_sum"], row["witness_max"]])
        _emit_text(buffer.getvalue(), _setting(args, config, "out"))
    elif fmt == "json":
        _emit({"rows": rows}, _setting(args, config, "out"))
    else:
        raise ValidationError(f"unknown growth format {fmt!r}")
    return EXIT_OK


def cmd_verify(args, config) -> int:
    seed = int(_setting(args, config, "seed", 0))
    fast = bool(_setting(args, config, "fast", False))
    reports = verification.run_all(seed, fast=fast)
    for report in reports:
        print(report.line(), file=sys.stderr)
    doc = {
        "seed": seed,
        "passed": all(r.passed for r in reports),
        "checks": [
            {
                "name": r.name,
                "passed": r.passed,
                "cases": r.cases,
                "failures": [str(f) for f in r.failures],
            }
            for r in reports
        ],
    }
    _emit(doc, _setting(args, config, "out"))
    return EXIT_OK if doc["passed"] else EXIT_ERROR


# -- argument parsing ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanlab",
        description="walks, ladders, downward-closed pair families, separations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, *flags):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON file with default settings")
        p.add_argument("--seed", type=int, help="master 64-bit seed")
        p.add_argument("--out", help="output path (stdout when omitted)")
        for flag, kwargs in flags:
            p.add_argument(flag, **kwargs)
        return p

    add(
        "gen",
        "write a function-family descriptor",
        ("--kind", {"choices": ["walk", "ladder", "explicit"]}),
        ("--bound", {"help": "ordinal literal, e.g. w^(2)"}),
        ("--ladders", {"choices": ["canonical", "seeded"]}),
        ("--table", {"help": "explicit family JSON to validate and re-emit"}),
    )
    add(
        "eval",
        "evaluate a family at a pair or over an index set",
        ("--family", {"help": "family JSON path"}),
        ("--alpha", {}),
        ("--beta", {}),
        ("--indices", {"help": "first:N | random:N | comma list"}),
    )
    add(
        "hset",
        "materialize or validate a downward-closed family",
        ("--family", {}),
        ("--indices", {}),
        ("--table", {"help": "explicit hset JSON to validate and re-emit"}),
    )
    add(
        "separate",
        "decide separability at a cap",
        ("--hset", {}),
        ("--subset", {}),
        ("--cap", {"type": int}),
        ("--engine", {"choices": ["solver", "oracle"]}),
    )
    add("mincap", "least cap admitting a separation", ("--hset", {}), ("--subset", {}))
    add(
        "adversary",
        "find a violating pair across two disjoint sets",
        ("--hset", {}),
        ("--first", {}),
        ("--second", {}),
        ("--const", {"type": int}),
        ("--labels", {"help": "JSON file {\"labels\": [[index, value], ...]}"}),
    )
    add(
        "bound",
        "build a weak bound with certified witnesses",
        ("--family", {}),
        ("--gamma", {"help": "bound everything below this limit ordinal"}),
        ("--avoid", {"help": "bound the family members in this set via a club"}),
        ("--club", {"help": "explicit club for --avoid (default: derived from ladders)"}),
        ("--points", {"type": int}),
        ("--prefix-depth", {"type": int, "dest": "prefix_depth"}),
        ("--probe", {"type": int, "help": "extra sample size for empirical re-check"}),
    )
    add(
        "space",
        "build and export the induced space",
        ("--hset", {}),
        ("--subset", {}),
        ("--format", {"choices": ["json", "dot"]}),
        ("--depth-k", {"type": int, "dest": "depth_k"}),
    )
    add(
        "growth",
        "min_cap and min_sum along a nested index chain",
        ("--family", {}),
        ("--schedule", {"help": "first:LO..HI | random:LO..HI"}),
        ("--format", {"choices": ["csv", "json"]}),
    )
    add(
        "verify",
        "run the full property suite",
        ("--fast", {"action": "store_true", "default": None}),
    )
    return parser


_COMMANDS = {
    "gen": cmd_gen,
    "eval": cmd_eval,
    "hset": cmd_hset,
    "separate": cmd_separate,
    "mincap": cmd_mincap,
    "adversary": cmd_adversary,
    "bound": cmd_bound,
    "space": cmd_space,
    "growth": cmd_growth,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    config = {}
    if args.config:
        try:
            config = _load_json(args.config)
        except ValidationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
    try:
        return _COMMANDS[args.command](args, config)
    except OrdinalParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ClosureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLOSURE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
