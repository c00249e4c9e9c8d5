"""Command-line front end.

Exit codes: 0 success, 1 any domain/scenario/usage error (diagnostic on
stderr, nothing on stdout), 2 a property suite found violations.  Identical
arguments, files, and seed always produce byte-identical machine output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .kernel import NULL_ACTION, Signature, StateSet, format_state_set, models
from .update import update, update_seq
from .revision import RankingAssignment, dalal_assignment, revise
from .evolution import consistent, evolve, preimage, repairs
from .dsl import (
    DomainDoc,
    ParseError,
    RankingDoc,
    parse_domain,
    parse_formula,
    parse_ranking,
    parse_scenario,
    parse_state_set,
    ranking_assignment,
    serialize_result,
    states_data,
)
from .postulates import lehmann_counterexample, run_suite

_MAX_SHOWN_VIOLATIONS = 25


class _CliError(ValueError):
    """User-facing error; message already formatted."""


class _ArgumentParser(argparse.ArgumentParser):
    # The documented error code for bad input is 1, not argparse's 2.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(
        prog="bevo",
        description=(
            "Belief update, revision, and evolution over finite "
            "propositional transition systems."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp: argparse.ArgumentParser) -> None:
        sp.add_argument(
            "--format",
            choices=("text", "machine"),
            default="text",
            help="output as readable text or a stable JSON document",
        )

    sp = sub.add_parser("evolve", help="run a scenario through belief evolution")
    sp.add_argument("--domain", required=True, help="domain file (.bevd)")
    sp.add_argument("--scenario", required=True, help="scenario file (.bevs)")
    sp.add_argument(
        "--ranking",
        default="dalal",
        help="'dalal' (default) or a ranking file (.bevr)",
    )
    add_format(sp)

    sp = sub.add_parser("update", help="progress a belief state through actions")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--belief", required=True, help="state-set literal or formula")
    sp.add_argument("--actions", nargs="*", default=[], metavar="ACT")
    add_format(sp)

    sp = sub.add_parser("revise", help="revise a belief state by one observation")
    sp.add_argument("--domain", help="domain file supplying the fluents")
    sp.add_argument("--belief", required=True)
    sp.add_argument("--obs", required=True)
    sp.add_argument("--ranking", default="dalal")
    add_format(sp)

    sp = sub.add_parser("preimage", help="states from which the actions reach the observation")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--obs", required=True)
    sp.add_argument("--actions", nargs="*", default=[], metavar="ACT")
    add_format(sp)

    sp = sub.add_parser("repair", help="list the minimal repairs of a scenario")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--scenario", required=True)
    add_format(sp)

    sp = sub.add_parser("check", help="run a property suite over a small scope")
    sp.add_argument(
        "--suite",
        required=True,
        choices=("interaction", "agm", "dp", "lehmann", "i1i2"),
    )
    sp.add_argument("--fluents", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--samples", type=int, default=None)
    add_format(sp)

    sp = sub.add_parser(
        "counterexample", help="reproduce a pinned counterexample instance"
    )
    sp.add_argument("which", choices=("lehmann",))
    add_format(sp)

    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _CliError(f"{path}: {e.strerror or e}")


def _load_domain(path: str) -> DomainDoc:
    try:
        return parse_domain(_read(path))
    except ParseError as e:
        raise _CliError(f"{path}: {e}")


def _load_ranking(path: str) -> RankingDoc:
    try:
        return parse_ranking(_read(path))
    except ParseError as e:
        raise _CliError(f"{path}: {e}")


def _resolve_ranking(
    selector: str, dom: DomainDoc | None
) -> tuple[RankingAssignment, Signature | None]:
    """Turn a --ranking value into an assignment plus a signature source."""
    if selector == "dalal":
        if dom is None:
            raise _CliError(
                "a Hamming ranking needs --domain to supply the fluents"
            )
        return dalal_assignment(dom.signature), None
    doc = _load_ranking(selector)
    if dom is not None and doc.signature.fluents != dom.signature.fluents:
        raise _CliError(
            f"ranking {selector}: fluents {list(doc.signature.fluents)} do not "
            f"match the domain's {list(dom.signature.fluents)}"
        )
    return ranking_assignment(doc), doc.signature


def _parse_value_set(value: str, sig: Signature, what: str) -> StateSet:
    """A state-set literal if it starts with '{', otherwise a formula."""
    try:
        if value.lstrip().startswith("{"):
            return parse_state_set(value, sig)
        return models(parse_formula(value, sig), sig)
    except ParseError as e:
        raise _CliError(f"{what}: {e}")


def _set_doc(sig: Signature, states: StateSet) -> str:
    doc = {
        "signature": {
            "fluents": list(sig.fluents),
            "actions": [a for a in sig.actions if a != NULL_ACTION],
        },
        "result": states_data(sig, states),
    }
    return json.dumps(doc, indent=2) + "\n"


def _render_set(sig: Signature, states: StateSet, fmt: str) -> str:
    if fmt == "machine":
        return _set_doc(sig, states)
    return format_state_set(sig, states) + "\n"


def _cmd_evolve(args: argparse.Namespace) -> tuple[str, int]:
    dom = _load_domain(args.domain)
    try:
        sc = parse_scenario(_read(args.scenario), dom)
    except ParseError as e:
        raise _CliError(f"{args.scenario}: {e}")
    assign, _ = _resolve_ranking(args.ranking, dom)
    res = evolve(sc.initial, sc.view, dom.ts, assign, sc.reliability_fn())
    if sc.mode == "skeptical":
        start: set[int] = set()
        for t in res.trajectories:
            start |= t[0]
        merged = [frozenset(start)]
        for a in sc.view.actions:
            merged.append(update(merged[-1], a, dom.ts))
        return serialize_result(tuple(merged), dom.signature, args.format, sc.name), 0
    return serialize_result(res, dom.signature, args.format, sc.name), 0


def _cmd_update(args: argparse.Namespace) -> tuple[str, int]:
    dom = _load_domain(args.domain)
    belief = _parse_value_set(args.belief, dom.signature, "--belief")
    for a in args.actions:
        if a not in dom.signature.actions:
            raise _CliError(f"unknown action {a!r}")
    out = update_seq(belief, tuple(args.actions), dom.ts)
    return _render_set(dom.signature, out, args.format), 0


def _cmd_revise(args: argparse.Namespace) -> tuple[str, int]:
    dom = _load_domain(args.domain) if args.domain else None
    assign, rank_sig = _resolve_ranking(args.ranking, dom)
    sig = dom.signature if dom is not None else rank_sig
    assert sig is not None
    belief = _parse_value_set(args.belief, sig, "--belief")
    obs = _parse_value_set(args.obs, sig, "--obs")
    out = revise(belief, obs, assign)
    return _render_set(sig, out, args.format), 0


def _cmd_preimage(args: argparse.Namespace) -> tuple[str, int]:
    dom = _load_domain(args.domain)
    obs = _parse_value_set(args.obs, dom.signature, "--obs")
    for a in args.actions:
        if a not in dom.signature.actions:
            raise _CliError(f"unknown action {a!r}")
    out = preimage(obs, tuple(args.actions), dom.ts)
    return _render_set(dom.signature, out, args.format), 0


def _cmd_repair(args: argparse.Namespace) -> tuple[str, int]:
    dom = _load_domain(args.domain)
    try:
        sc = parse_scenario(_read(args.scenario), dom)
    except ParseError as e:
        raise _CliError(f"{args.scenario}: {e}")
    reps = repairs(sc.view, dom.ts, sc.reliability_fn())
    ok = consistent(sc.view, dom.ts)
    if args.format == "machine":
        doc = {
            "scenario": sc.name,
            "signature": {
                "fluents": list(dom.signature.fluents),
                "actions": [a for a in dom.signature.actions if a != NULL_ACTION],
            },
            "consistent": ok,
            "repairs": [
                [states_data(dom.signature, o) for o in obs] for obs in reps
            ],
            "trajectories": None,
        }
        return json.dumps(doc, indent=2) + "\n", 0
    lines = [f"consistent: {'yes' if ok else 'no'}"]
    for i, obs in enumerate(reps, start=1):
        lines.append(
            f"repair {i}: "
            + " ; ".join(format_state_set(dom.signature, o) for o in obs)
        )
    return "\n".join(lines) + "\n", 0


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("BEVO_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise _CliError(f"BEVO_SEED is not an integer: {env!r}")


def _cmd_check(args: argparse.Namespace) -> tuple[str, int]:
    seed = _resolve_seed(args.seed)
    try:
        report = run_suite(args.suite, args.fluents, args.samples, seed)
    except ValueError as e:
        raise _CliError(str(e))
    if args.format == "machine":
        out = json.dumps(report.to_data(), indent=2) + "\n"
    else:
        lines = [report.summary()]
        lines.extend(report.notes)
        shown = report.violations[:_MAX_SHOWN_VIOLATIONS]
        lines.extend(v.describe() for v in shown)
        hidden = len(report.violations) - len(shown)
        if hidden > 0:
            lines.append(f"... and {hidden} more violations")
        out = "\n".join(lines) + "\n"
    return out, (0 if report.passed else 2)


def _cmd_counterexample(args: argparse.Namespace) -> tuple[str, int]:
    report = lehmann_counterexample()
    if set(report.failed) != {"L4", "L5", "L6"}:
        raise _CliError(
            f"counterexample reproduction drifted: failed={report.failed}"
        )
    if args.format == "machine":
        return json.dumps(report.to_data(), indent=2) + "\n", 0
    return report.render_text() + "\n", 0


_COMMANDS = {
    "evolve": _cmd_evolve,
    "update": _cmd_update,
    "revise": _cmd_revise,
    "preimage": _cmd_preimage,
    "repair": _cmd_repair,
    "check": _cmd_check,
    "counterexample": _cmd_counterexample,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        out, code = _COMMANDS[args.command](args)
    except (_CliError, ValueError, OSError) as e:
        print(f"bevo: error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
