"""Line-oriented text formats for domains, scenarios, rankings, and results.

Three file kinds share one lexical style: one directive per line, ``#``
comments, state literals listing the true fluents (``{Red,Acid}``; ``{}`` is
the all-false state), and state-set literals wrapping those in another pair
of braces.  Parsing never raises anything but ParseError on malformed input,
and every ParseError carries a 1-based line and column.

Serialization is canonical: parsing a serialized document yields a
structurally equal document, and equal documents serialize to equal bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .kernel import (
    NULL_ACTION,
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Signature,
    StateSet,
    TransitionSystem,
    complete_transitions,
    format_state,
    format_state_set,
    make_signature,
    models,
    true_fluents,
    universe,
)
from .revision import FaithfulRanking, RankingAssignment, check_faithful
from .evolution import (
    BeliefTrajectory,
    EvolutionResult,
    ReliabilityFunction,
    WorldView,
    constant,
    fixed_weights,
    recency,
)


class ParseError(ValueError):
    """Syntax or validation failure, located by 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_WORD_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_WORD_CHARS = _WORD_START | set("0123456789")


class _Cursor:
    """Position tracker over one source line."""

    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.pos + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.take(literal):
            raise self.error(f"expected {literal!r}")

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or self.text[self.pos] not in _WORD_START:
            raise self.error("expected a name")
        while self.pos < len(self.text) and self.text[self.pos] in _WORD_CHARS:
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def expect_end(self) -> None:
        if not self.at_end():
            raise self.error("unexpected trailing text")

    # State literals: {A,B} with only declared fluents, {} for all-false.
    def state_literal(self, sig: Signature) -> int:
        self.expect("{")
        state = 0
        if not self.take("}"):
            while True:
                name = self.word()
                try:
                    pos = sig.fluents.index(name)
                except ValueError:
                    self.pos -= len(name)
                    raise self.error(f"unknown fluent {name!r}")
                bit = 1 << pos
                if state & bit:
                    self.pos -= len(name)
                    raise self.error(f"fluent {name!r} listed twice")
                state |= bit
                if self.take("}"):
                    break
                self.expect(",")
        return state

    # State-set literals: { {..}, {..} }; the empty set is written { }.
    def state_set_literal(self, sig: Signature) -> StateSet:
        self.expect("{")
        states: set[int] = set()
        if not self.take("}"):
            while True:
                states.add(self.state_literal(sig))
                if self.take("}"):
                    break
                self.expect(",")
        return frozenset(states)


# ---------------------------------------------------------------------------
# Formulas.  Precedence ! > & > | > -> > <->, arrows right-associative.


def _parse_formula(cur: _Cursor, sig: Signature) -> Formula:
    left = _parse_implies(cur, sig)
    if cur.take("<->"):
        return Iff(left, _parse_formula(cur, sig))
    return left


def _parse_implies(cur: _Cursor, sig: Signature) -> Formula:
    left = _parse_or(cur, sig)
    if cur.take("->"):
        return Implies(left, _parse_implies(cur, sig))
    return left


def _parse_or(cur: _Cursor, sig: Signature) -> Formula:
    left = _parse_and(cur, sig)
    while True:
        cur.skip_ws()
        # Guard: '|' is or, but never consume the '|' of an operator that
        # does not exist; single '|' only.
        if cur.text.startswith("|", cur.pos):
            cur.pos += 1
            left = Or(left, _parse_and(cur, sig))
        else:
            return left


def _parse_and(cur: _Cursor, sig: Signature) -> Formula:
    left = _parse_unary(cur, sig)
    while cur.take("&"):
        left = And(left, _parse_unary(cur, sig))
    return left


def _parse_unary(cur: _Cursor, sig: Signature) -> Formula:
    if cur.take("!"):
        return Not(_parse_unary(cur, sig))
    if cur.take("("):
        inner = _parse_formula(cur, sig)
        cur.expect(")")
        return inner
    name = cur.word()
    if name not in sig.fluents:
        cur.pos -= len(name)
        raise cur.error(f"unknown fluent {name!r}")
    return Atom(name)


def parse_formula(text: str, sig: Signature, line: int = 1) -> Formula:
    """Parse one formula; fluent names must come from the signature."""
    cur = _Cursor(text, line)
    out = _parse_formula(cur, sig)
    cur.expect_end()
    return out


def parse_state_set(text: str, sig: Signature) -> StateSet:
    """Parse one standalone state-set literal such as ``{ {}, {Acid} }``."""
    cur = _Cursor(text, 1)
    out = cur.state_set_literal(sig)
    cur.expect_end()
    return out


def serialize_formula(f: Formula) -> str:
    """Minimal-paren rendering using the grammar's precedence."""

    def go(g: Formula, level: int) -> str:
        if isinstance(g, Atom):
            return g.name
        if isinstance(g, Not):
            return "!" + go(g.arg, 4)
        if isinstance(g, And):
            # the parser left-associates, so a right-nested And needs parens
            s = f"{go(g.left, 3)} & {go(g.right, 4)}"
            need = level > 3
        elif isinstance(g, Or):
            s = f"{go(g.left, 2)} | {go(g.right, 3)}"
            need = level > 2
        elif isinstance(g, Implies):
            s = f"{go(g.left, 2)} -> {go(g.right, 1)}"
            need = level > 1
        elif isinstance(g, Iff):
            s = f"{go(g.left, 1)} <-> {go(g.right, 0)}"
            need = level > 0
        else:
            raise TypeError(f"not a formula: {g!r}")
        return f"({s})" if need else s

    return go(f, 0)


# ---------------------------------------------------------------------------
# Shared line machinery.


def _lines(text: str) -> Iterator[_Cursor]:
    """Non-blank lines with comments stripped, as positioned cursors."""
    for i, raw in enumerate(text.splitlines(), start=1):
        hash_at = raw.find("#")
        if hash_at != -1:
            raw = raw[:hash_at]
        if raw.strip():
            yield _Cursor(raw, i)


def _directive(cur: _Cursor) -> str:
    return cur.word()


def _check_word_name(cur: _Cursor, name: str, kind: str) -> str:
    if name[0] not in _WORD_START or any(c not in _WORD_CHARS for c in name):
        raise cur.error(f"{kind} name must be a plain identifier: {name!r}")
    return name


# ---------------------------------------------------------------------------
# Domain files (.bevd).


@dataclass(frozen=True)
class DomainDoc:
    """A named signature plus its completed transition system."""

    name: str
    signature: Signature
    ts: TransitionSystem
    declared_deterministic: bool = False
    strict: bool = False


def parse_domain(text: str) -> DomainDoc:
    """Parse a domain file.

    Directives: ``domain NAME`` (first), ``fluents N...``, ``actions N...``,
    ``transition ACT: {F,...} -> {F,...}``, and the pragmas
    ``deterministic`` (reject two transitions from one source) and
    ``strict`` (demand an explicit transition for every state and action).
    Unlisted state/action pairs otherwise default to self-loops.
    """
    name = None
    fluents: tuple[str, ...] | None = None
    actions: tuple[str, ...] = ()
    raw_transitions: list[tuple[_Cursor, int, str, int]] = []
    flags = {"deterministic": False, "strict": False}
    sig: Signature | None = None
    seen_sources: set[tuple[str, int]] = set()

    for cur in _lines(text):
        key = _directive(cur)
        if key == "domain":
            if name is not None:
                raise cur.error("duplicate 'domain' directive")
            name = _check_word_name(cur, cur.word(), "domain")
            cur.expect_end()
        elif name is None:
            raise cur.error("the first directive must be 'domain NAME'")
        elif key == "fluents":
            if fluents is not None:
                raise cur.error("duplicate 'fluents' directive")
            if raw_transitions:
                raise cur.error("'fluents' must come before any transition")
            got = []
            while not cur.at_end():
                got.append(_check_word_name(cur, cur.word(), "fluent"))
            if not got:
                raise cur.error("at least one fluent is required")
            fluents = tuple(got)
        elif key == "actions":
            if actions:
                raise cur.error("duplicate 'actions' directive")
            if raw_transitions:
                raise cur.error("'actions' must come before any transition")
            got = []
            while not cur.at_end():
                got.append(_check_word_name(cur, cur.word(), "action"))
            actions = tuple(got)
        elif key == "transition":
            if fluents is None:
                raise cur.error("'fluents' must come before any transition")
            if sig is None:
                try:
                    sig = make_signature(fluents, actions)
                except ValueError as e:
                    raise cur.error(str(e))
            act = cur.word()
            if act == NULL_ACTION:
                raise cur.error(
                    f"the {NULL_ACTION!r} action is implicit and cannot have "
                    "explicit transitions"
                )
            if act not in sig.actions:
                cur.pos -= len(act)
                raise cur.error(f"unknown action {act!r}")
            cur.expect(":")
            src = cur.state_literal(sig)
            cur.expect("->")
            dst = cur.state_literal(sig)
            cur.expect_end()
            if flags["deterministic"] and (act, src) in seen_sources:
                raise cur.error(
                    f"duplicate transition source under 'deterministic': "
                    f"{act} from {format_state(sig, src)}"
                )
            seen_sources.add((act, src))
            raw_transitions.append((cur, src, act, dst))
        elif key in flags:
            cur.expect_end()
            if flags[key]:
                raise cur.error(f"duplicate {key!r} pragma")
            flags[key] = True
        else:
            raise cur.error(f"unknown directive {key!r}")

    if name is None:
        raise ParseError("empty domain file", 1, 1)
    if fluents is None:
        raise ParseError("missing 'fluents' directive", 1, 1)
    if sig is None:
        sig = make_signature(fluents, actions)
    if flags["deterministic"]:
        # Covers the pragma-after-transitions order; the in-loop check
        # covers transitions after the pragma.
        seen: set[tuple[str, int]] = set()
        for line_cur, src, act, _ in raw_transitions:
            if (act, src) in seen:
                raise line_cur.error(
                    f"duplicate transition source under 'deterministic': "
                    f"{act} from {format_state(sig, src)}"
                )
            seen.add((act, src))
    if flags["strict"]:
        covered = {(act, src) for _, src, act, _ in raw_transitions}
        for act in sig.actions:
            if act == NULL_ACTION:
                continue
            for s in range(sig.num_states):
                if (act, s) not in covered:
                    raise ParseError(
                        f"'strict' demands a transition for {act} from "
                        f"{format_state(sig, s)}",
                        1,
                        1,
                    )
    ts = complete_transitions(sig, [(s, a, d) for _, s, a, d in raw_transitions])
    return DomainDoc(name, sig, ts, flags["deterministic"], flags["strict"])


def serialize_domain(doc: DomainDoc) -> str:
    """Canonical text for a domain document."""
    sig = doc.signature
    lines = [f"domain {doc.name}", "fluents " + " ".join(sig.fluents)]
    user_actions = [a for a in sig.actions if a != NULL_ACTION]
    if user_actions:
        lines.append("actions " + " ".join(user_actions))
    for s, a, d in sorted(
        (t for t in doc.ts.relation if t[1] != NULL_ACTION),
        key=lambda t: (t[1], t[0], t[2]),
    ):
        if s == d and not doc.strict:
            continue
        lines.append(
            f"transition {a}: {format_state(sig, s)} -> {format_state(sig, d)}"
        )
    if doc.declared_deterministic:
        lines.append("deterministic")
    if doc.strict:
        lines.append("strict")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Scenario files (.bevs).


@dataclass(frozen=True)
class ScenarioDoc:
    """An initial belief state and a normalized world view.

    ``weights`` is only set for explicit reliability weights, expanded to
    one level per normalized step (padded steps get level 0, which never
    matters because their observation is trivially true).
    """

    name: str
    initial: StateSet
    view: WorldView
    reliability: str = "recency"
    weights: tuple[int, ...] | None = None
    mode: str = "credulous"

    def reliability_fn(self) -> ReliabilityFunction:
        if self.reliability == "recency":
            return recency
        if self.reliability == "constant":
            return constant
        return fixed_weights(self.weights or ())


def parse_scenario(text: str, dom: DomainDoc) -> ScenarioDoc:
    """Parse a scenario file against an already-parsed domain.

    Steps are normalized into an equal-length world view: an ``obs`` with
    no pending ``act`` gets a noop action, an ``act`` followed by another
    ``act`` (or end of file) gets the trivially true observation.
    """
    sig = dom.signature
    full = universe(sig)
    name = None
    initial: StateSet | None = None
    initial_line = 1
    # Steps as (action or None, observation or None) in file order.
    pending_act: str | None = None
    steps: list[tuple[str, StateSet, bool]] = []  # (action, obs, obs_is_user)
    reliability: str | None = None
    user_weights: tuple[int, ...] | None = None
    mode: str | None = None

    for cur in _lines(text):
        key = _directive(cur)
        if key == "scenario":
            if name is not None:
                raise cur.error("duplicate 'scenario' directive")
            name = _check_word_name(cur, cur.word(), "scenario")
            cur.expect_end()
        elif name is None:
            raise cur.error("the first directive must be 'scenario NAME'")
        elif key == "initial":
            if initial is not None:
                raise cur.error("duplicate 'initial' directive")
            initial_line = cur.line
            kind = cur.word()
            if kind == "states":
                initial = cur.state_set_literal(sig)
            elif kind == "formula":
                initial = models(_parse_formula(cur, sig), sig)
            else:
                raise cur.error("expected 'states' or 'formula'")
            cur.expect_end()
            if not initial:
                raise ParseError(
                    "the initial belief state may not be empty",
                    initial_line,
                    1,
                )
        elif key == "act":
            act = cur.word()
            if act not in sig.actions:
                cur.pos -= len(act)
                raise cur.error(f"unknown action {act!r}")
            cur.expect_end()
            if pending_act is not None:
                steps.append((pending_act, full, False))
            pending_act = act
        elif key == "obs":
            kind = cur.word()
            if kind == "states":
                obs = cur.state_set_literal(sig)
            elif kind == "formula":
                obs = models(_parse_formula(cur, sig), sig)
            else:
                raise cur.error("expected 'states' or 'formula'")
            cur.expect_end()
            steps.append((pending_act or NULL_ACTION, obs, True))
            pending_act = None
        elif key == "reliability":
            if reliability is not None:
                raise cur.error("duplicate 'reliability' directive")
            kind = cur.word()
            if kind in ("recency", "constant"):
                reliability = kind
                cur.expect_end()
            elif kind == "weights":
                reliability = "weights"
                got = []
                while not cur.at_end():
                    got.append(cur.integer())
                if not got:
                    raise cur.error("expected at least one weight")
                user_weights = tuple(got)
            else:
                raise cur.error("expected 'recency', 'constant', or 'weights'")
        elif key == "mode":
            if mode is not None:
                raise cur.error("duplicate 'mode' directive")
            kind = cur.word()
            if kind not in ("credulous", "skeptical"):
                raise cur.error("expected 'credulous' or 'skeptical'")
            mode = kind
            cur.expect_end()
        else:
            raise cur.error(f"unknown directive {key!r}")

    if name is None:
        raise ParseError("empty scenario file", 1, 1)
    if initial is None:
        raise ParseError("missing 'initial' directive", 1, 1)
    if pending_act is not None:
        steps.append((pending_act, full, False))
    if not steps:
        raise ParseError("a scenario needs at least one 'act' or 'obs' step", 1, 1)

    view = WorldView(
        tuple(a for a, _, _ in steps), tuple(o for _, o, _ in steps)
    )
    weights: tuple[int, ...] | None = None
    if reliability == "weights":
        assert user_weights is not None
        n_user = sum(1 for _, _, is_user in steps if is_user)
        if len(user_weights) != n_user:
            raise ParseError(
                f"{len(user_weights)} weights for {n_user} observation steps",
                1,
                1,
            )
        expanded = []
        it = iter(user_weights)
        for _, _, is_user in steps:
            expanded.append(next(it) if is_user else 0)
        weights = tuple(expanded)
    return ScenarioDoc(
        name,
        initial,
        view,
        reliability or "recency",
        weights,
        mode or "credulous",
    )


def serialize_scenario(doc: ScenarioDoc, sig: Signature) -> str:
    """Canonical text: every step fully explicit as an act/obs pair."""
    lines = [
        f"scenario {doc.name}",
        f"initial states {format_state_set(sig, doc.initial)}",
    ]
    for a, o in zip(doc.view.actions, doc.view.observations):
        lines.append(f"act {a}")
        lines.append(f"obs states {format_state_set(sig, o)}")
    if doc.reliability == "weights":
        lines.append(
            "reliability weights " + " ".join(str(w) for w in doc.weights or ())
        )
    else:
        lines.append(f"reliability {doc.reliability}")
    lines.append(f"mode {doc.mode}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Ranking files (.bevr).


@dataclass(frozen=True)
class RankingDoc:
    """A named faithful ranking over an explicit fluent list."""

    name: str
    signature: Signature
    ranking: FaithfulRanking


def parse_ranking(text: str) -> RankingDoc:
    """Parse a ranking file: fluents, a base belief state, one rank per state.

    The ranking must be faithful to its base: base states share the unique
    smallest rank.
    """
    name = None
    sig: Signature | None = None
    base: StateSet | None = None
    base_line = 1
    ranks: dict[int, int] = {}

    for cur in _lines(text):
        key = _directive(cur)
        if key == "ranking":
            if name is not None:
                raise cur.error("duplicate 'ranking' directive")
            name = _check_word_name(cur, cur.word(), "ranking")
            cur.expect_end()
        elif name is None:
            raise cur.error("the first directive must be 'ranking NAME'")
        elif key == "fluents":
            if sig is not None:
                raise cur.error("duplicate 'fluents' directive")
            got = []
            while not cur.at_end():
                got.append(_check_word_name(cur, cur.word(), "fluent"))
            if not got:
                raise cur.error("at least one fluent is required")
            try:
                sig = make_signature(got, ())
            except ValueError as e:
                raise cur.error(str(e))
        elif key == "base":
            if sig is None:
                raise cur.error("'fluents' must come before 'base'")
            if base is not None:
                raise cur.error("duplicate 'base' directive")
            base_line = cur.line
            base = cur.state_set_literal(sig)
            cur.expect_end()
            if not base:
                raise ParseError("the base belief state may not be empty", base_line, 1)
        elif key == "rank":
            if sig is None:
                raise cur.error("'fluents' must come before 'rank'")
            state = cur.state_literal(sig)
            cur.expect(":")
            value = cur.integer()
            cur.expect_end()
            if value < 0:
                raise cur.error("ranks must be non-negative")
            if state in ranks:
                raise cur.error(
                    f"duplicate rank for state {format_state(sig, state)}"
                )
            ranks[state] = value
        else:
            raise cur.error(f"unknown directive {key!r}")

    if name is None:
        raise ParseError("empty ranking file", 1, 1)
    if sig is None:
        raise ParseError("missing 'fluents' directive", 1, 1)
    if base is None:
        raise ParseError("missing 'base' directive", 1, 1)
    for s in range(sig.num_states):
        if s not in ranks:
            raise ParseError(
                f"no rank given for state {format_state(sig, s)}", 1, 1
            )
    ranking = FaithfulRanking(base, tuple(ranks[s] for s in range(sig.num_states)))
    if not check_faithful(ranking):
        raise ParseError(
            "ranking is not faithful: base states must share the unique "
            "smallest rank",
            base_line,
            1,
        )
    return RankingDoc(name, sig, ranking)


def serialize_ranking(doc: RankingDoc) -> str:
    sig = doc.signature
    lines = [
        f"ranking {doc.name}",
        "fluents " + " ".join(sig.fluents),
        f"base {format_state_set(sig, doc.ranking.base)}",
    ]
    for s in range(sig.num_states):
        lines.append(f"rank {format_state(sig, s)}: {doc.ranking.ranks[s]}")
    return "\n".join(lines) + "\n"


def ranking_assignment(doc: RankingDoc) -> RankingAssignment:
    """Use a single loaded ranking as an assignment.

    Only the document's own base belief state can be revised; any other
    request is an error because the file carries no ranking for it.
    """

    def assign(kappa: StateSet) -> FaithfulRanking:
        if frozenset(kappa) != doc.ranking.base:
            raise ValueError(
                f"ranking {doc.name!r} is only faithful to its own base "
                "belief state"
            )
        return doc.ranking

    return assign


# ---------------------------------------------------------------------------
# Result serialization.


ResultLike = Union[EvolutionResult, BeliefTrajectory]


def states_data(sig: Signature, states: StateSet) -> list[list[str]]:
    """Machine encoding of a state set: sorted states as true-fluent lists."""
    return [list(true_fluents(sig, s)) for s in sorted(states)]


def _states_from_data(sig: Signature, data: Sequence[Sequence[str]]) -> StateSet:
    out = set()
    for names in data:
        state = 0
        for n in names:
            state |= 1 << sig.fluents.index(n)
        out.add(state)
    return frozenset(out)


def result_to_data(
    res: ResultLike, sig: Signature, scenario: str = ""
) -> dict:
    """Self-describing machine document for an evolution outcome."""
    doc: dict = {
        "scenario": scenario,
        "signature": {
            "fluents": list(sig.fluents),
            "actions": [a for a in sig.actions if a != NULL_ACTION],
        },
    }
    if isinstance(res, EvolutionResult):
        doc["consistent"] = res.was_consistent
        doc["repairs"] = [
            [states_data(sig, o) for o in obs] for obs in res.repaired_views
        ]
        doc["trajectories"] = [
            [states_data(sig, k) for k in t] for t in res.trajectories
        ]
    else:
        doc["consistent"] = None
        doc["repairs"] = None
        doc["trajectories"] = [[states_data(sig, k) for k in res]]
    return doc


def serialize_result(
    res: ResultLike, sig: Signature, fmt: str = "text", scenario: str = ""
) -> str:
    """Render an evolution outcome.

    Text mode prints ``kI = { ... }`` lines per trajectory, prefixed by a
    ``repair N:`` line when the view had to be repaired; machine mode is a
    stable JSON document.
    """
    if fmt == "machine":
        return json.dumps(result_to_data(res, sig, scenario), indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(res, EvolutionResult):
        blocks = []
        for i, (obs, traj) in enumerate(
            zip(res.repaired_views, res.trajectories), start=1
        ):
            lines = []
            if not res.was_consistent:
                lines.append(
                    f"repair {i}: "
                    + " ; ".join(format_state_set(sig, o) for o in obs)
                )
            lines.extend(
                f"k{j} = {format_state_set(sig, k)}" for j, k in enumerate(traj)
            )
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"
    lines = [f"k{j} = {format_state_set(sig, k)}" for j, k in enumerate(res)]
    return "\n".join(lines) + "\n"


def result_from_json(text: str) -> tuple[Signature, ResultLike]:
    """Inverse of the machine format, for round-tripping results."""
    doc = json.loads(text)
    sig = make_signature(
        doc["signature"]["fluents"], doc["signature"]["actions"]
    )
    trajectories = tuple(
        tuple(_states_from_data(sig, k) for k in t) for t in doc["trajectories"]
    )
    if doc["consistent"] is None:
        return sig, trajectories[0]
    repairs = tuple(
        tuple(_states_from_data(sig, o) for o in obs) for obs in doc["repairs"]
    )
    return sig, EvolutionResult(doc["consistent"], repairs, trajectories)
