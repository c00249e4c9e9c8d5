"""Signatures, states, formulas, and transition systems.

A signature fixes a finite list of fluent names and a finite list of action
names.  A state is a truth assignment to the fluents, identified with its
canonical index: bit k of the index gives the value of the k-th declared
fluent.  All set-valued operations in this package work directly on these
integer indices; helpers below convert between indices, fluent sets, and
display strings.

Transition systems are total by construction: every (state, action) pair has
at least one successor.  The reserved action "noop" always behaves as the
identity and cannot be redefined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

NULL_ACTION = "noop"

# Index-based state sets stay practical up to this many fluents.
MAX_FLUENTS = 16

StateSet = frozenset[int]


@dataclass(frozen=True)
class Signature:
    """An ordered fluent vocabulary plus an action vocabulary.

    The declaration order of ``fluents`` is significant: it fixes the
    canonical state indexing.  ``actions`` always contains ``NULL_ACTION``.
    """

    fluents: tuple[str, ...]
    actions: tuple[str, ...]

    @property
    def num_states(self) -> int:
        return 1 << len(self.fluents)


def _check_name(name: str, kind: str) -> None:
    if not isinstance(name, str) or not name:
        raise ValueError(f"{kind} name must be a non-empty string: {name!r}")
    if any(c.isspace() for c in name):
        raise ValueError(f"{kind} name may not contain whitespace: {name!r}")


def make_signature(fluents: Iterable[str], actions: Iterable[str] = ()) -> Signature:
    """Build a signature, appending the reserved noop action if absent."""
    flu = tuple(fluents)
    act = tuple(actions)
    if len(flu) > MAX_FLUENTS:
        raise ValueError(f"too many fluents ({len(flu)}); the cap is {MAX_FLUENTS}")
    for name in flu:
        _check_name(name, "fluent")
    for name in act:
        _check_name(name, "action")
    if len(set(flu)) != len(flu):
        raise ValueError("duplicate fluent names")
    if len(set(act)) != len(act):
        raise ValueError("duplicate action names")
    if NULL_ACTION not in act:
        act = act + (NULL_ACTION,)
    return Signature(flu, act)


def universe(sig: Signature) -> StateSet:
    """The set of all states over the signature."""
    return frozenset(range(sig.num_states))


def state_index(sig: Signature, true_fluents: Iterable[str]) -> int:
    """Canonical index of the state in which exactly the given fluents hold."""
    s = 0
    for name in true_fluents:
        try:
            s |= 1 << sig.fluents.index(name)
        except ValueError:
            raise ValueError(f"unknown fluent {name!r}") from None
    return s


def true_fluents(sig: Signature, state: int) -> tuple[str, ...]:
    """The fluents true in a state, in declaration order."""
    if not 0 <= state < sig.num_states:
        raise ValueError(f"state index {state} out of range")
    return tuple(f for k, f in enumerate(sig.fluents) if state >> k & 1)


def format_state(sig: Signature, state: int) -> str:
    return "{" + ",".join(true_fluents(sig, state)) + "}"


def format_state_set(sig: Signature, states: Iterable[int]) -> str:
    """Render a state set with members in canonical index order."""
    inner = ", ".join(format_state(sig, s) for s in sorted(states))
    return "{ " + inner + " }" if inner else "{ }"


# ---------------------------------------------------------------------------
# Propositional formulas over the fluents.


class Formula:
    """Base class for formula AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


def models(phi: Formula, sig: Signature) -> StateSet:
    """All states of the signature that satisfy the formula."""
    full = universe(sig)
    if isinstance(phi, Atom):
        if phi.name not in sig.fluents:
            raise ValueError(f"unknown fluent {phi.name!r} in formula")
        k = sig.fluents.index(phi.name)
        return frozenset(s for s in full if s >> k & 1)
    if isinstance(phi, Not):
        return full - models(phi.arg, sig)
    if isinstance(phi, And):
        return models(phi.left, sig) & models(phi.right, sig)
    if isinstance(phi, Or):
        return models(phi.left, sig) | models(phi.right, sig)
    if isinstance(phi, Implies):
        return (full - models(phi.left, sig)) | models(phi.right, sig)
    if isinstance(phi, Iff):
        left, right = models(phi.left, sig), models(phi.right, sig)
        return full - (left ^ right)
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# Transition systems.


@dataclass(frozen=True)
class TransitionSystem:
    """A total labelled transition relation over the states of a signature.

    ``relation`` holds (source, action, target) triples and must cover every
    (state, action) pair; rows for the noop action must be exactly the
    identity.  Use :func:`complete_transitions` to build one from a partial
    description.  Per-action successor tables are precomputed so that update
    and pre-image loops stay cheap.
    """

    signature: Signature
    relation: frozenset[tuple[int, str, int]]
    _succ_sets: dict[str, tuple[StateSet, ...]] = field(
        init=False, repr=False, compare=False
    )
    _succ_fun: dict[str, tuple[int, ...]] | None = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        sig = self.signature
        n = sig.num_states
        raw: dict[str, list[set[int]]] = {a: [set() for _ in range(n)] for a in sig.actions}
        for src, act, dst in self.relation:
            if act not in raw:
                raise ValueError(f"unknown action {act!r} in transition")
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"transition ({src}, {act!r}, {dst}) out of range")
            if act == NULL_ACTION and src != dst:
                raise ValueError(
                    f"the {NULL_ACTION} action must be the identity, got ({src}, {dst})"
                )
            raw[act][src].add(dst)
        for a, rows in raw.items():
            for src, row in enumerate(rows):
                if not row:
                    raise ValueError(
                        f"no successor for state {src} under action {a!r}; "
                        "use complete_transitions to fill in self-loops"
                    )
        succ_sets = {a: tuple(frozenset(row) for row in rows) for a, rows in raw.items()}
        deterministic = all(
            len(row) == 1 for rows in succ_sets.values() for row in rows
        )
        succ_fun = None
        if deterministic:
            succ_fun = {
                a: tuple(next(iter(row)) for row in rows)
                for a, rows in succ_sets.items()
            }
        object.__setattr__(self, "_succ_sets", succ_sets)
        object.__setattr__(self, "_succ_fun", succ_fun)

    @property
    def deterministic(self) -> bool:
        return self._succ_fun is not None

    def successors(self, state: int, action: str) -> StateSet:
        """All states reachable from ``state`` by one step of ``action``."""
        try:
            rows = self._succ_sets[action]
        except KeyError:
            raise ValueError(f"unknown action {action!r}") from None
        if not 0 <= state < self.signature.num_states:
            raise ValueError(f"state index {state} out of range")
        return rows[state]

    def successor_map(self, action: str) -> tuple[int, ...]:
        """The one-step successor function of an action; deterministic only."""
        if self._succ_fun is None:
            raise ValueError("transition system is not deterministic")
        try:
            return self._succ_fun[action]
        except KeyError:
            raise ValueError(f"unknown action {action!r}") from None


def complete_transitions(
    sig: Signature, triples: Iterable[tuple[int, str, int]]
) -> TransitionSystem:
    """Build a total transition system from a partial set of triples.

    Every (state, action) pair not mentioned in ``triples`` gets a self-loop,
    and identity rows for the noop action are always added.  Explicit noop
    triples are rejected unless they are identity loops.
    """
    n = sig.num_states
    listed = set()
    covered: set[tuple[int, str]] = set()
    for src, act, dst in triples:
        if act == NULL_ACTION and src != dst:
            raise ValueError(
                f"explicit non-identity {NULL_ACTION} transition ({src} -> {dst})"
            )
        if act not in sig.actions:
            raise ValueError(f"unknown action {act!r} in transition")
        if not (0 <= src < n and 0 <= dst < n):
            raise ValueError(f"transition ({src}, {act!r}, {dst}) out of range")
        listed.add((src, act, dst))
        covered.add((src, act))
    for act in sig.actions:
        for src in range(n):
            if act == NULL_ACTION:
                listed.add((src, act, src))
            elif (src, act) not in covered:
                listed.add((src, act, src))
    return TransitionSystem(sig, frozenset(listed))


def is_deterministic(ts: TransitionSystem) -> bool:
    """True when every (state, action) pair has exactly one successor."""
    return ts.deterministic
