"""Batch command-line interface.

Every subcommand loads a monoid spec document, runs one check or pipeline,
prints a deterministic JSON report to stdout and exits 0 on pass /
holds_at_horizon, 1 on fail (with witnesses in the report), 2 on usage or
input errors.  Reports are byte-identical across runs with the same inputs;
wall-clock timing is only included when --timing is passed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .actions import check_action_laws, check_isometric_embedding_action, translation_action
from .cayley import GammaOracle, Vertex, check_inclusion_qi, parse_point, word_distance, shortest_word
from .errors import MonoidGeoError
from .monoids import (
    FreeProductMonoid,
    MonoidOracle,
    check_cancellative,
    check_finite_geometric_type,
    check_left_unitary,
    ends_in_group_identity_submonoid,
    format_word,
    from_spec_dict,
)
from .spaces import WordMetricSpace, check_axioms, check_quasi_metric
from .svarcmilnor import (
    FreeProductInput,
    SmInput,
    SubmonoidInput,
    run_free_product,
    run_pipeline,
    run_submonoid_theorem,
)


def parse_monoid_spec(path: str) -> tuple[MonoidOracle, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return from_spec_dict(doc), doc


def _rat(text: str) -> Fraction:
    return Fraction(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monoidgeo", description=__doc__)
    parser.add_argument("--monoid", required=True, help="path to a monoid spec JSON document")
    parser.add_argument("--horizon", type=int, default=8, help="search horizon (default 8)")
    parser.add_argument("--json", dest="json_path", default=None, help="also write the report to this path")
    parser.add_argument("--seed", type=int, default=None, help="echoed into the report (no check is randomized)")
    parser.add_argument("--timing", action="store_true", help="include wall-clock duration (breaks byte-determinism)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="word distance between two elements")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("ball", help="a ball of the continuous Cayley graph as a cell set")
    p.add_argument("center")
    p.add_argument("radius", type=_rat)
    p.add_argument("kind", choices=["out", "in", "strong"])

    p = sub.add_parser("check", help="run a named checker")
    p.add_argument("what", choices=["axioms", "qi", "quasimetric", "cancellative", "fgt", "unitary", "action"])
    p.add_argument("--lambda", dest="lam", type=_rat, default=Fraction(1))
    p.add_argument("--epsilon", type=_rat, default=Fraction(0))
    p.add_argument("--mu", type=_rat, default=Fraction(0))
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--threshold", type=int, default=8)
    p.add_argument("--depth", type=int, default=None, help="sample ball depth (default min(horizon, 4))")

    p = sub.add_parser("svarc-milnor", help="generating-set extraction with verified constants")
    p.add_argument("--radius", "-R", type=_rat, required=True)

    sub.add_parser("submonoid", help="left-unitary submonoid pipeline (free product spec required)")
    sub.add_parser("free-product", help="free-basis corollary pipeline (free product spec required)")
    return parser


def _sample_for_axioms(oracle: MonoidOracle, gamma: GammaOracle, depth: int):
    from .cayley import EdgePoint

    vertices = oracle.elements_up_to(depth)
    points = [Vertex(m) for m in vertices]
    for m in oracle.elements_up_to(max(depth - 1, 0)):
        for s in oracle.generators:
            points.append(EdgePoint(m, s, Fraction(1, 2)))
    return vertices, points


def _run(args) -> tuple[int, dict]:
    oracle, spec_doc = parse_monoid_spec(args.monoid)
    horizon = args.horizon
    if horizon < 1:
        raise MonoidGeoError("horizon must be >= 1")
    gamma = GammaOracle(oracle, horizon)
    result: dict = {}
    exit_code = 0

    if args.command == "dist":
        x = oracle.parse_word(args.x)
        y = oracle.parse_word(args.y)
        d = word_distance(oracle, x, y, horizon)
        result = {"x": format_word(x), "y": format_word(y), "distance": d.to_json()}
        if d.is_known and not d.value.is_infinite:
            result["witness"] = format_word(shortest_word(oracle, x, y, horizon))

    elif args.command == "ball":
        center = oracle.parse_word(args.center)
        cells = gamma.ball_cellset(center, args.radius, args.kind)
        result = {
            "center": format_word(center),
            "radius": [args.radius.numerator, args.radius.denominator],
            "kind": args.kind,
            "ball": cells.to_json(oracle),
        }

    elif args.command == "check":
        depth = args.depth if args.depth is not None else min(horizon, 4)
        if args.what == "axioms":
            vertices, points = _sample_for_axioms(oracle, gamma, depth)
            word_report = check_axioms(WordMetricSpace(oracle, horizon), vertices)
            gamma_report = check_axioms(gamma, points)
            result = {"word_metric": word_report.to_json(), "gamma": gamma_report.to_json()}
            exit_code = 0 if word_report.passed and gamma_report.passed else 1
        elif args.what == "qi":
            report = check_inclusion_qi(gamma, horizon, sample_depth=depth)
            result = report.to_json()
            exit_code = 0 if report.passed else 1
        elif args.what == "quasimetric":
            sample = oracle.elements_up_to(depth)
            report = check_quasi_metric(WordMetricSpace(oracle, horizon), sample, args.lam, args.mu)
            result = report.to_json()
            exit_code = 0 if report.passed else 1
        elif args.what == "cancellative":
            verdict = check_cancellative(oracle, args.side, min(horizon, depth + 2))
            result = verdict.to_json()
            exit_code = 0 if verdict.holds else 1
        elif args.what == "fgt":
            verdict = check_finite_geometric_type(oracle, min(horizon, 6), args.threshold)
            result = verdict.to_json()
            exit_code = 0 if verdict.holds else 1
        elif args.what == "unitary":
            if not isinstance(oracle, FreeProductMonoid):
                raise MonoidGeoError("check unitary needs a free_product monoid spec")
            verdict = check_left_unitary(oracle, ends_in_group_identity_submonoid(oracle), depth)
            result = verdict.to_json()
            exit_code = 0 if verdict.holds else 1
        elif args.what == "action":
            action = translation_action(gamma)
            ms = oracle.elements_up_to(min(depth, 3))
            points = [Vertex(m) for m in ms]
            laws = check_action_laws(action, ms, points)
            iso = check_isometric_embedding_action(action, ms, points, horizon)
            result = {"action_laws": laws.to_json(), "isometric_embedding": iso.to_json()}
            exit_code = 0 if laws.passed and iso.passed else 1

    elif args.command == "svarc-milnor":
        action = translation_action(gamma)
        out = run_pipeline(
            SmInput(action=action, basepoint=oracle.identity, radius=args.radius, horizon=horizon)
        )
        report = out["report"]
        ok = (
            report.claim1.passed
            and report.claim2.passed
            and out["generation"].passed
            and out["qi"].passed
        )
        result = {
            "extraction": report.to_json(oracle),
            "generation": out["generation"].to_json(),
            "qi": out["qi"].to_json(),
        }
        exit_code = 0 if ok else 1

    elif args.command == "submonoid":
        if not isinstance(oracle, FreeProductMonoid):
            raise MonoidGeoError("submonoid pipeline needs a free_product monoid spec")
        units = [
            (x,) if x != oracle.group_identity else oracle.identity
            for x in oracle.group.element_names
        ]
        report = run_submonoid_theorem(
            SubmonoidInput(
                parent=oracle,
                submonoid=ends_in_group_identity_submonoid(oracle),
                right_units=units,
                horizon=horizon,
            )
        )
        result = report.to_json()
        exit_code = 0 if report.passed else 1

    elif args.command == "free-product":
        if not isinstance(oracle, FreeProductMonoid):
            raise MonoidGeoError("free-product pipeline needs a free_product monoid spec")
        report = run_free_product(
            FreeProductInput(free_rank=len(oracle.free_letters), group=oracle.group, horizon=horizon)
        )
        result = report.to_json()
        exit_code = 0 if report.passed else 1

    doc = {
        "tool": "monoidgeo",
        "version": __version__,
        "command": args.command,
        "input": {
            "monoid": spec_doc,
            "horizon": horizon,
            "flags": {
                k: ([v.numerator, v.denominator] if isinstance(v, Fraction) else v)
                for k, v in sorted(vars(args).items())
                if k not in ("command", "monoid", "horizon", "json_path", "timing") and v is not None
            },
        },
        "result": result,
        "exit_code": exit_code,
    }
    if args.seed is not None:
        doc["input"]["seed"] = args.seed
    return exit_code, doc


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        exit_code, doc = _run(args)
    except MonoidGeoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        doc["duration_seconds"] = time.monotonic() - started
    text = json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
    sys.stdout.write(text)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
