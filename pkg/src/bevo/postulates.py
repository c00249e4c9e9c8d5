"""Small-scope checkers for the rationality properties of the operators.

Each suite quantifies a property family over an exhaustive small scope (two
fluents, one non-noop action) or a seeded random sample, and returns a
report listing every violation together with the instance that produced it.
The suites are deterministic: the same scope, assignment, and seed always
yield the same report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Optional

from .kernel import (
    NULL_ACTION,
    Signature,
    StateSet,
    TransitionSystem,
    complete_transitions,
    format_state_set,
    make_signature,
    true_fluents,
    universe,
)
from .update import update, update_seq
from .revision import (
    FaithfulRanking,
    RankingAssignment,
    dalal_assignment,
    revise,
)
from .evolution import evolve, iterated_revise, padded_view, preimage

_FLUENT_POOL = ("p", "q", "r", "s", "u")
_SUITE_ACTION = "a"

CombinedOperator = Callable[[StateSet, str, StateSet], StateSet]
TrajectoryOperator = Callable[[StateSet, tuple[str, ...], StateSet], StateSet]


# ---------------------------------------------------------------------------
# Instances and reports.


@dataclass(frozen=True)
class Instance:
    """One concrete input to a postulate check, self-contained for replay."""

    signature: Signature
    ts: Optional[TransitionSystem]
    kappa: StateSet
    actions: tuple[str, ...] = ()
    observations: tuple[StateSet, ...] = ()

    def describe(self) -> str:
        sig = self.signature
        parts = [
            "fluents " + " ".join(sig.fluents),
            "kappa " + format_state_set(sig, self.kappa),
        ]
        if self.ts is not None:
            moves = sorted(
                (s, a, d)
                for s, a, d in self.ts.relation
                if a != NULL_ACTION and s != d
            )
            parts.append(
                "transitions "
                + "; ".join(
                    f"{a}: {format_state_set(sig, [s])[2:-2]} -> "
                    f"{format_state_set(sig, [d])[2:-2]}"
                    for s, a, d in moves
                )
            )
        if self.actions:
            parts.append("do " + ",".join(self.actions))
        for i, obs in enumerate(self.observations, start=1):
            parts.append(f"obs{i} " + format_state_set(sig, obs))
        return " | ".join(parts)

    def to_data(self) -> dict:
        sig = self.signature
        data: dict = {
            "fluents": list(sig.fluents),
            "kappa": _states_data(sig, self.kappa),
        }
        if self.ts is not None:
            data["transitions"] = [
                [list(true_fluents(sig, s)), a, list(true_fluents(sig, d))]
                for s, a, d in sorted(self.ts.relation)
                if a != NULL_ACTION
            ]
        if self.actions:
            data["actions"] = list(self.actions)
        data["observations"] = [
            _states_data(sig, obs) for obs in self.observations
        ]
        return data


def _states_data(sig: Signature, states: StateSet) -> list[list[str]]:
    return [list(true_fluents(sig, s)) for s in sorted(states)]


@dataclass(frozen=True)
class Violation:
    postulate: str
    instance: Instance
    lhs: StateSet
    rhs: StateSet

    def describe(self) -> str:
        sig = self.instance.signature
        return (
            f"{self.postulate}: {format_state_set(sig, self.lhs)} vs "
            f"{format_state_set(sig, self.rhs)} on [{self.instance.describe()}]"
        )

    def to_data(self) -> dict:
        sig = self.instance.signature
        return {
            "postulate": self.postulate,
            "instance": self.instance.to_data(),
            "lhs": _states_data(sig, self.lhs),
            "rhs": _states_data(sig, self.rhs),
        }


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    scope: str
    instances: int
    violations: tuple[Violation, ...]
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return (
            f"suite={self.suite} scope=[{self.scope}] "
            f"instances={self.instances} violations={len(self.violations)}"
        )

    def render_text(self) -> str:
        lines = [self.summary()]
        lines.extend(self.notes)
        lines.extend(v.describe() for v in self.violations)
        return "\n".join(lines)

    def to_data(self) -> dict:
        return {
            "suite": self.suite,
            "scope": self.scope,
            "instances": self.instances,
            "passed": self.passed,
            "violations": [v.to_data() for v in self.violations],
            "notes": list(self.notes),
        }


def _merge(suite: str, scope: str, reports: list[SuiteReport]) -> SuiteReport:
    return SuiteReport(
        suite,
        scope,
        sum(r.instances for r in reports),
        tuple(v for r in reports for v in r.violations),
        tuple(n for r in reports for n in r.notes),
    )


# ---------------------------------------------------------------------------
# Scope enumeration.


@dataclass(frozen=True)
class ScopeBounds:
    """Bounds for instance enumeration.

    ``samples=None`` asks for exhaustive enumeration, which is only feasible
    up to two fluents; otherwise a seeded pseudorandom stream of ``samples``
    instances is produced.
    """

    fluents: int = 2
    trajectory_len: int = 1
    samples: Optional[int] = None
    seed: int = 0


def suite_signature(n_fluents: int, with_action: bool = True) -> Signature:
    if n_fluents > len(_FLUENT_POOL):
        raise ValueError(f"suite scopes cap out at {len(_FLUENT_POOL)} fluents")
    names = _FLUENT_POOL[:n_fluents]
    return make_signature(names, (_SUITE_ACTION,) if with_action else ())


def state_sets(sig: Signature, include_empty: bool = True) -> tuple[StateSet, ...]:
    """Every subset of the state space, ordered by characteristic bitmask."""
    n = sig.num_states
    first = 0 if include_empty else 1
    return tuple(
        frozenset(s for s in range(n) if mask >> s & 1)
        for mask in range(first, 1 << n)
    )


def single_action_systems(sig: Signature) -> Iterator[TransitionSystem]:
    """All deterministic systems over one non-noop action, in a fixed order."""
    actions = [a for a in sig.actions if a != NULL_ACTION]
    if len(actions) != 1:
        raise ValueError("expected a signature with exactly one non-noop action")
    (act,) = actions
    n = sig.num_states
    for succ in product(range(n), repeat=n):
        yield complete_transitions(sig, [(s, act, succ[s]) for s in range(n)])


def _random_system(rng: random.Random, sig: Signature) -> TransitionSystem:
    n = sig.num_states
    triples = [
        (s, a, rng.randrange(n))
        for a in sig.actions
        if a != NULL_ACTION
        for s in range(n)
    ]
    return complete_transitions(sig, triples)


def _random_state_set(
    rng: random.Random, sig: Signature, nonempty: bool = False
) -> StateSet:
    lo = 1 if nonempty else 0
    mask = rng.randrange(lo, 1 << sig.num_states)
    return frozenset(s for s in range(sig.num_states) if mask >> s & 1)


def enumerate_instances(bounds: ScopeBounds) -> Iterator[Instance]:
    """Instances (system, belief state, action trajectory, observation).

    Exhaustive mode covers every deterministic single-action system, every
    non-empty belief state, every trajectory over both actions up to the
    length bound, and every observation.
    """
    sig = suite_signature(bounds.fluents)
    if bounds.samples is None:
        if bounds.fluents > 2:
            raise ValueError(
                "exhaustive enumeration is capped at 2 fluents; set samples"
            )
        kappas = state_sets(sig, include_empty=False)
        alphas = state_sets(sig)
        trajectories = [
            trj
            for ln in range(1, bounds.trajectory_len + 1)
            for trj in product(sig.actions, repeat=ln)
        ]
        for ts in single_action_systems(sig):
            for kappa in kappas:
                for acts in trajectories:
                    for alpha in alphas:
                        yield Instance(sig, ts, kappa, acts, (alpha,))
    else:
        rng = random.Random(bounds.seed)
        for _ in range(bounds.samples):
            ts = _random_system(rng, sig)
            kappa = _random_state_set(rng, sig, nonempty=True)
            acts = tuple(
                rng.choice(sig.actions)
                for _ in range(rng.randint(1, bounds.trajectory_len))
            )
            alpha = _random_state_set(rng, sig)
            yield Instance(sig, ts, kappa, acts, (alpha,))


# ---------------------------------------------------------------------------
# Interaction of update and revision.


def evolution_final_state(
    kappa: StateSet,
    actions: tuple[str, ...],
    alpha: StateSet,
    ts: TransitionSystem,
    assign: RankingAssignment,
) -> StateSet:
    """Final state of evolving with nothing observed until the end."""
    view = padded_view(actions, alpha, ts.signature)
    result = evolve(kappa, view, ts, assign)
    return result.trajectories[0][-1]


def check_interaction(
    inst: Instance,
    assign: RankingAssignment | None = None,
    operator: TrajectoryOperator | None = None,
) -> SuiteReport:
    """Evaluate the five action/observation interaction properties.

    The induced change is the final state of evolution over the padded view
    unless ``operator`` supplies a different way to compute it.  The note
    records whether the padded view was consistent or needed repair.
    """
    ts = inst.ts
    if ts is None:
        raise ValueError("interaction instances need a transition system")
    sig = inst.signature
    if assign is None:
        assign = dalal_assignment(sig)
    alpha = inst.observations[-1]
    reach = update_seq(universe(sig), inst.actions, ts)
    base = update_seq(inst.kappa, inst.actions, ts)
    if operator is None:
        final = evolution_final_state(inst.kappa, inst.actions, alpha, ts, assign)
    else:
        final = operator(inst.kappa, inst.actions, alpha)
    vios = []
    if reach & alpha:
        note = "consistent"
        if not final <= alpha:
            vios.append(Violation("P1", inst, final, alpha))
    else:
        note = "repaired"
        if final != base:
            vios.append(Violation("P2", inst, final, base))
    met = base & alpha
    if not met <= final:
        vios.append(Violation("P3", inst, met, final))
    if met and not final <= met:
        vios.append(Violation("P4", inst, final, met))
    if not final <= reach:
        vios.append(Violation("P5", inst, final, reach))
    return SuiteReport("interaction", "instance", 1, tuple(vios), (note,))


def run_interaction_suite(
    fluents: int = 2,
    trajectory_len: int = 2,
    assign: RankingAssignment | None = None,
    samples: Optional[int] = None,
    seed: int = 0,
) -> SuiteReport:
    """Check the interaction properties over a whole scope.

    Violations are reported for consistent instances; instances whose padded
    view needed repair are evaluated too, but their outcome is informational
    and summarised in the notes.
    """
    sig = suite_signature(fluents)
    if assign is None:
        assign = dalal_assignment(sig)
    bounds = ScopeBounds(fluents, trajectory_len, samples, seed)
    consistent_n = repaired_n = repaired_bad = 0
    vios: list[Violation] = []
    for inst in enumerate_instances(bounds):
        rep = check_interaction(inst, assign)
        if rep.notes[0] == "consistent":
            consistent_n += 1
            vios.extend(rep.violations)
        else:
            repaired_n += 1
            repaired_bad += len(rep.violations)
    scope = (
        f"exhaustive fluents={fluents} trajectories<={trajectory_len}"
        if samples is None
        else f"sampled fluents={fluents} samples={samples} seed={seed}"
    )
    notes = (
        f"{repaired_n} instances needed repair; informational failures "
        f"after repair: {repaired_bad}",
    )
    return SuiteReport("interaction", scope, consistent_n, tuple(vios), notes)


def naive_update_then_revise(
    ts: TransitionSystem, assign: RankingAssignment
) -> TrajectoryOperator:
    """Left-to-right composition: update through the actions, then revise.

    Unlike evolution, this never reconsiders the initial belief state, and
    with a suitable ranking the revision step can land on states that no
    run of the actions could reach.
    """

    def op(kappa: StateSet, actions: tuple[str, ...], alpha: StateSet) -> StateSet:
        return revise(update_seq(kappa, actions, ts), alpha, assign)

    return op


def _prefer_state_assignment(sig: Signature, preferred: int) -> RankingAssignment:
    """Faithful for every base: members rank 0, ``preferred`` 1, the rest 2."""

    def assign(kappa: StateSet) -> FaithfulRanking:
        ranks = tuple(
            0 if s in kappa else (1 if s == preferred else 2)
            for s in range(sig.num_states)
        )
        return FaithfulRanking(kappa, ranks)

    return assign


def naive_interaction_p5_example() -> tuple[Instance, RankingAssignment, SuiteReport]:
    """A consistent two-fluent instance where update-then-revise escapes.

    Searches for a system whose action cannot reach some state, and a
    faithful ranking preferring that unreachable state; plain revision then
    leaves the set of reachable outcomes, while evolution does not.
    """
    sig = suite_signature(2)
    full = universe(sig)
    kappas = state_sets(sig, include_empty=False)
    for ts in single_action_systems(sig):
        reach = frozenset(ts.successor_map(_SUITE_ACTION))
        if reach == full:
            continue
        unreachable = min(full - reach)
        assign = _prefer_state_assignment(sig, unreachable)
        for kappa in kappas:
            base = update(kappa, _SUITE_ACTION, ts)
            for witness in sorted(reach - base):
                alpha = frozenset((unreachable, witness))
                inst = Instance(sig, ts, kappa, (_SUITE_ACTION,), (alpha,))
                report = check_interaction(
                    inst, assign, naive_update_then_revise(ts, assign)
                )
                if any(v.postulate == "P5" for v in report.violations):
                    return inst, assign, report
    raise RuntimeError("no naive interaction counterexample found")


# ---------------------------------------------------------------------------
# Characterization of one-step combined change.


def check_I1_I2(
    op: CombinedOperator, assign: RankingAssignment, ts: TransitionSystem
) -> SuiteReport:
    """Compare a one-step operator against the two defining identities.

    For every (belief state, action, observation): when the observation is
    reachable the operator must equal revise-by-preimage then update, and
    otherwise it must equal plain update.
    """
    sig = ts.signature
    vios: list[Violation] = []
    count = 0
    kappas = state_sets(sig, include_empty=False)
    alphas = state_sets(sig)
    for action in sig.actions:
        reach = frozenset(ts.successor_map(action))
        for kappa in kappas:
            for alpha in alphas:
                count += 1
                got = op(kappa, action, alpha)
                if reach & alpha:
                    pid = "I1"
                    pre = preimage(alpha, (action,), ts)
                    want = update(revise(kappa, pre, assign), action, ts)
                else:
                    pid = "I2"
                    want = update(kappa, action, ts)
                if got != want:
                    inst = Instance(sig, ts, kappa, (action,), (alpha,))
                    vios.append(Violation(pid, inst, got, want))
    return SuiteReport("i1i2", "one system", count, tuple(vios))


def run_i1i2_suite(
    fluents: int = 2,
    assign: RankingAssignment | None = None,
    samples: Optional[int] = None,
    seed: int = 0,
) -> SuiteReport:
    """Check that one-step combined change matches evolution's identities.

    The operator under test is ``combined_change`` built from the same
    ranking assignment, over every exhaustive system (or a seeded sample).
    """
    from .revision import combined_change

    sig = suite_signature(fluents)
    if assign is None:
        assign = dalal_assignment(sig)
    if samples is None:
        if fluents > 2:
            raise ValueError("exhaustive system enumeration is capped at 2 fluents")
        systems: Iterator[TransitionSystem] = single_action_systems(sig)
        scope = f"exhaustive fluents={fluents} systems=all"
    else:
        rng = random.Random(seed)
        systems = (_random_system(rng, sig) for _ in range(samples))
        scope = f"sampled fluents={fluents} samples={samples} seed={seed}"
    reports = []
    for ts in systems:
        def op(kappa: StateSet, action: str, alpha: StateSet, _ts=ts) -> StateSet:
            return combined_change(kappa, action, alpha, _ts, assign)

        reports.append(check_I1_I2(op, assign, ts))
    return _merge("i1i2", scope, reports)


# ---------------------------------------------------------------------------
# Set-level revision laws.


def check_agm(assign: RankingAssignment, sig: Signature) -> SuiteReport:
    """Verify the five set-level revision laws for every pair over ``sig``.

    Laws: (i) the result stays inside the observation; (ii) a compatible
    observation just intersects; (iii) only the empty observation gives an
    empty result; (iv) and (v) relate revision by an intersection to
    intersecting the revision, quantifying over a second observation.
    """
    n = sig.num_states
    size = 1 << n
    full_mask = size - 1
    sets = state_sets(sig)
    comp = [full_mask ^ m for m in range(size)]
    vios: list[Violation] = []
    pairs = 0

    def record(pid: str, kmask: int, amask: int, bmask: Optional[int], lhs: int, rhs: int) -> None:
        obs = (sets[amask],) if bmask is None else (sets[amask], sets[bmask])
        inst = Instance(sig, None, sets[kmask], (), obs)
        vios.append(Violation(pid, inst, sets[lhs], sets[rhs]))

    for kmask in range(1, size):
        kappa = sets[kmask]
        row = [0] * size
        for amask in range(size):
            row[amask] = sum(1 << s for s in revise(kappa, sets[amask], assign))
        for amask in range(size):
            pairs += 1
            ra = row[amask]
            if ra & comp[amask]:
                record("AGM-i", kmask, amask, None, ra, amask)
            met = kmask & amask
            if met and ra != met:
                record("AGM-ii", kmask, amask, None, ra, met)
            if (ra == 0) != (amask == 0):
                record("AGM-iii", kmask, amask, None, ra, amask)
            for bmask in range(1, size):
                x = ra & bmask
                y = row[amask & bmask]
                if x & comp[y]:
                    record("AGM-iv", kmask, amask, bmask, x, y)
                if x and y & comp[x]:
                    record("AGM-v", kmask, amask, bmask, y, x)
    scope = f"exhaustive fluents={len(sig.fluents)} pairs"
    return SuiteReport("agm", scope, pairs, tuple(vios))


def run_agm_suite(
    fluents: int = 3, assign: RankingAssignment | None = None
) -> SuiteReport:
    if fluents > 3:
        raise ValueError("the exhaustive revision-law sweep is capped at 3 fluents")
    sig = suite_signature(fluents, with_action=False)
    if assign is None:
        assign = dalal_assignment(sig)
    return check_agm(assign, sig)


# ---------------------------------------------------------------------------
# Iterated revision.


def check_dp(
    assign: RankingAssignment,
    sig: Signature,
    samples: Optional[int] = None,
    seed: int = 0,
) -> SuiteReport:
    """Verify the four iterated-revision postulates plus recalcitrance.

    The two-step revision is the one induced by observation-only evolution
    under recency: conflicting evidence keeps the more recent observation.
    Quantifies over non-empty belief states and non-empty observations.
    """
    nonempty = state_sets(sig, include_empty=False)
    if samples is None:
        triples: Iterator[tuple[StateSet, StateSet, StateSet]] = product(
            nonempty, nonempty, nonempty
        )
        scope = f"exhaustive fluents={len(sig.fluents)} triples"
    else:
        rng = random.Random(seed)
        triples = (
            tuple(_random_state_set(rng, sig, nonempty=True) for _ in range(3))
            for _ in range(samples)
        )
        scope = f"sampled fluents={len(sig.fluents)} samples={samples} seed={seed}"
    one_shot: dict[tuple[StateSet, StateSet], StateSet] = {}

    def rev(kappa: StateSet, alpha: StateSet) -> StateSet:
        key = (kappa, alpha)
        if key not in one_shot:
            one_shot[key] = revise(kappa, alpha, assign)
        return one_shot[key]

    vios: list[Violation] = []
    count = 0
    for kappa, beta, alpha in triples:
        count += 1
        two_step = iterated_revise(kappa, (beta, alpha), sig, assign)
        direct = rev(kappa, alpha)
        inst = Instance(sig, None, kappa, (), (beta, alpha))
        if alpha <= beta and two_step != direct:
            vios.append(Violation("DP1", inst, two_step, direct))
        if not alpha & beta and two_step != direct:
            vios.append(Violation("DP2", inst, two_step, direct))
        if direct <= beta and not two_step <= beta:
            vios.append(Violation("DP3", inst, two_step, beta))
        if direct & beta and not two_step & beta:
            vios.append(Violation("DP4", inst, two_step, beta))
        if alpha & beta and not two_step <= beta:
            vios.append(Violation("REC", inst, two_step, beta))
    return SuiteReport("dp", scope, count, tuple(vios))


def run_dp_suite(
    fluents: int = 2,
    assign: RankingAssignment | None = None,
    samples: Optional[int] = None,
    seed: int = 0,
) -> SuiteReport:
    sig = suite_signature(fluents, with_action=False)
    if assign is None:
        assign = dalal_assignment(sig)
    if samples is None and fluents > 2:
        samples = 20000
    return check_dp(assign, sig, samples, seed)


def naive_two_shot_dp_example(sig: Signature | None = None) -> Violation:
    """First instance where two plain revisions break an iterated postulate.

    The second revision reranks around the intermediate belief state and
    forgets the original one, which the iterated postulates do not allow.
    """
    if sig is None:
        sig = suite_signature(2, with_action=False)
    assign = dalal_assignment(sig)
    nonempty = state_sets(sig, include_empty=False)
    for kappa, beta, alpha in product(nonempty, nonempty, nonempty):
        two_step = revise(revise(kappa, beta, assign), alpha, assign)
        direct = revise(kappa, alpha, assign)
        inst = Instance(sig, None, kappa, (), (beta, alpha))
        if alpha <= beta and two_step != direct:
            return Violation("DP1", inst, two_step, direct)
        if not alpha & beta and two_step != direct:
            return Violation("DP2", inst, two_step, direct)
        if direct <= beta and not two_step <= beta:
            return Violation("DP3", inst, two_step, beta)
        if direct & beta and not two_step & beta:
            return Violation("DP4", inst, two_step, beta)
        if alpha & beta and not two_step <= beta:
            return Violation("REC", inst, two_step, beta)
    raise RuntimeError("no naive two-shot counterexample found")


# ---------------------------------------------------------------------------
# Observation-sequence postulates.


def check_lehmann(
    assign: RankingAssignment,
    sig: Signature,
    max_len: int = 3,
    samples: Optional[int] = None,
    seed: int = 0,
) -> SuiteReport:
    """Verify the observation-sequence postulates that evolution satisfies.

    ``kappa . O`` below means the final state of observation-only evolution
    under recency.  Checked: the last observation always holds (L2); a
    cautious cut rule (L3); appending an already-believed observation
    changes nothing (L4*); a stronger observation then a weaker one equals
    the weaker alone (L5*); compatible refinements commute with
    intersection (L6*); and observing the complement first never blocks the
    observation itself (L7).  Sequence components are non-empty, except for
    complements arising inside L7.
    """
    if samples is not None:
        return _check_lehmann_sampled(assign, sig, max_len, samples, seed)
    if max_len > 3:
        raise ValueError("the exhaustive sequence sweep is capped at length 3")
    full = universe(sig)
    nonempty = state_sets(sig, include_empty=False)
    every = state_sets(sig)
    kappas = nonempty
    memo: dict[tuple[StateSet, tuple[StateSet, ...]], StateSet] = {}

    def fin(kappa: StateSet, seq: tuple[StateSet, ...]) -> StateSet:
        key = (kappa, seq)
        if key not in memo:
            memo[key] = iterated_revise(kappa, seq, sig, assign)
        return memo[key]

    def seqs(lengths: range) -> list[tuple[StateSet, ...]]:
        return [
            seq
            for ln in lengths
            for seq in product(nonempty, repeat=ln)
        ]

    vios: list[Violation] = []
    count = 0

    def record(pid: str, kappa: StateSet, obs: tuple[StateSet, ...], lhs: StateSet, rhs: StateSet) -> None:
        vios.append(Violation(pid, Instance(sig, None, kappa, (), obs), lhs, rhs))

    # L2: the final observation always holds afterwards.
    for kappa in kappas:
        for prefix in seqs(range(0, max_len)):
            for alpha in nonempty:
                count += 1
                got = fin(kappa, prefix + (alpha,))
                if not got <= alpha:
                    record("L2", kappa, prefix + (alpha,), got, alpha)

    # L3: if observing alpha keeps the agent inside beta, and the agent
    # already believed alpha, it was already inside beta.
    for kappa in kappas:
        for prefix in seqs(range(1, max_len)):
            f_o = fin(kappa, prefix)
            for alpha in nonempty:
                f_oa = fin(kappa, prefix + (alpha,))
                if not f_o <= alpha:
                    count += len(every)
                    continue
                for beta in every:
                    count += 1
                    if f_oa <= beta and not f_o <= beta:
                        record("L3", kappa, prefix + (alpha, beta), f_o, beta)

    # L4*: appending an observation that is already believed is a no-op.
    for kappa in kappas:
        for prefix in seqs(range(1, max_len)):
            f_o = fin(kappa, prefix)
            for alpha in nonempty:
                count += 1
                if f_o <= alpha:
                    f_oa = fin(kappa, prefix + (alpha,))
                    if f_o != f_oa:
                        record("L4*", kappa, prefix + (alpha,), f_o, f_oa)

    # L5*: a stronger observation right before a weaker one is superfluous.
    for kappa in kappas:
        for prefix in seqs(range(0, max_len - 1)):
            for alpha in nonempty:
                for beta in nonempty:
                    if not beta <= alpha:
                        continue
                    count += 1
                    lhs = fin(kappa, prefix + (alpha, beta))
                    rhs = fin(kappa, prefix + (beta,))
                    if lhs != rhs:
                        record("L5*", kappa, prefix + (alpha, beta), lhs, rhs)

    # L6*: refining inside a live observation equals refining by the
    # intersection.
    for kappa in kappas:
        for prefix in seqs(range(0, max_len - 1)):
            for alpha in nonempty:
                f_oa = fin(kappa, prefix + (alpha,))
                for beta in nonempty:
                    count += 1
                    if not f_oa & beta:
                        continue
                    lhs = fin(kappa, prefix + (alpha, beta))
                    rhs = fin(kappa, prefix + (alpha, alpha & beta))
                    if lhs != rhs:
                        record("L6*", kappa, prefix + (alpha, beta), lhs, rhs)

    # L7: the complement observed in between is simply overridden.
    for kappa in kappas:
        for prefix in seqs(range(0, max_len - 1)):
            for alpha in nonempty:
                count += 1
                lhs = fin(kappa, prefix + (alpha,))
                rhs = fin(kappa, prefix + (full - alpha, alpha))
                if not lhs <= rhs:
                    record("L7", kappa, prefix + (alpha,), lhs, rhs)

    scope = f"exhaustive fluents={len(sig.fluents)} len<={max_len}"
    return SuiteReport("lehmann", scope, count, tuple(vios))


def _check_lehmann_sampled(
    assign: RankingAssignment, sig: Signature, max_len: int, samples: int, seed: int
) -> SuiteReport:
    full = universe(sig)
    rng = random.Random(seed)
    vios: list[Violation] = []
    count = 0

    def rand_seq(max_prefix: int) -> tuple[StateSet, ...]:
        return tuple(
            _random_state_set(rng, sig, nonempty=True)
            for _ in range(rng.randint(0, max_prefix))
        )

    def fin(kappa: StateSet, seq: tuple[StateSet, ...]) -> StateSet:
        return iterated_revise(kappa, seq, sig, assign)

    for _ in range(samples):
        kappa = _random_state_set(rng, sig, nonempty=True)
        alpha = _random_state_set(rng, sig, nonempty=True)
        beta = _random_state_set(rng, sig, nonempty=True)
        which = rng.randrange(6)
        if which == 0:
            prefix = rand_seq(max_len - 1)
            got = fin(kappa, prefix + (alpha,))
            if not got <= alpha:
                vios.append(Violation("L2", Instance(sig, None, kappa, (), prefix + (alpha,)), got, alpha))
        elif which == 1:
            prefix = rand_seq(max_len - 2) or (beta,)
            f_o = fin(kappa, prefix)
            f_oa = fin(kappa, prefix + (alpha,))
            if f_o <= alpha and f_oa <= beta and not f_o <= beta:
                vios.append(Violation("L3", Instance(sig, None, kappa, (), prefix + (alpha, beta)), f_o, beta))
        elif which == 2:
            prefix = rand_seq(max_len - 2) or (beta,)
            f_o = fin(kappa, prefix)
            if f_o <= alpha:
                f_oa = fin(kappa, prefix + (alpha,))
                if f_o != f_oa:
                    vios.append(Violation("L4*", Instance(sig, None, kappa, (), prefix + (alpha,)), f_o, f_oa))
        elif which == 3:
            prefix = rand_seq(max_len - 2)
            small = alpha & beta or alpha
            big = alpha | beta
            lhs = fin(kappa, prefix + (big, small))
            rhs = fin(kappa, prefix + (small,))
            if lhs != rhs:
                vios.append(Violation("L5*", Instance(sig, None, kappa, (), prefix + (big, small)), lhs, rhs))
        elif which == 4:
            prefix = rand_seq(max_len - 2)
            f_oa = fin(kappa, prefix + (alpha,))
            if f_oa & beta:
                lhs = fin(kappa, prefix + (alpha, beta))
                rhs = fin(kappa, prefix + (alpha, alpha & beta))
                if lhs != rhs:
                    vios.append(Violation("L6*", Instance(sig, None, kappa, (), prefix + (alpha, beta)), lhs, rhs))
        else:
            prefix = rand_seq(max_len - 2)
            lhs = fin(kappa, prefix + (alpha,))
            rhs = fin(kappa, prefix + (full - alpha, alpha))
            if not lhs <= rhs:
                vios.append(Violation("L7", Instance(sig, None, kappa, (), prefix + (alpha,)), lhs, rhs))
        count += 1
    scope = f"sampled fluents={len(sig.fluents)} samples={samples} seed={seed}"
    return SuiteReport("lehmann", scope, count, tuple(vios))


def run_lehmann_suite(
    fluents: int = 2,
    assign: RankingAssignment | None = None,
    max_len: int = 3,
    samples: Optional[int] = None,
    seed: int = 0,
) -> SuiteReport:
    sig = suite_signature(fluents, with_action=False)
    if assign is None:
        assign = dalal_assignment(sig)
    if samples is None and fluents > 2:
        samples = 20000
    return check_lehmann(assign, sig, max_len, samples, seed)


# ---------------------------------------------------------------------------
# The fixed sequence counterexample.


@dataclass(frozen=True)
class CounterexampleReport:
    """Evaluation of the three-state sequence example.

    ``values`` maps a label for each evaluated observation sequence to the
    resulting belief state.  ``failed`` lists the unstarred sequence
    postulates the example refutes; ``held`` lists the postulates that
    still pass on the same instance.
    """

    signature: Signature
    values: dict[str, StateSet]
    failed: tuple[str, ...]
    held: tuple[str, ...]

    def render_text(self) -> str:
        lines = []
        for label, val in self.values.items():
            lines.append(f"after {label}: {format_state_set(self.signature, val)}")
        lines.append("failed: " + " ".join(self.failed))
        lines.append("held: " + " ".join(self.held))
        return "\n".join(lines)

    def to_data(self) -> dict:
        return {
            "values": {
                label: _states_data(self.signature, val)
                for label, val in self.values.items()
            },
            "failed": list(self.failed),
            "held": list(self.held),
        }


def lehmann_counterexample() -> CounterexampleReport:
    """Build the fixed instance on which discarding-then-reusing fails.

    Over states s1, s2, s3 (the all-false state, p alone, q alone; the
    fourth state ranks strictly worse under the Hamming assignment), the
    sequences O = <{s3}>, alpha = {s2,s3}, beta = {s3}, O' = <{s1,s2}> and
    gamma = {s1,s3} separate the unstarred postulates from the starred
    ones: an observation that was superfluous when made can still matter
    once later observations arrive.
    """
    sig = suite_signature(2, with_action=False)
    assign = dalal_assignment(sig)
    s1, s2, s3 = 0, 1, 2
    kappa = frozenset((s1,))
    o = frozenset((s3,))
    alpha = frozenset((s2, s3))
    beta = frozenset((s3,))
    o_prime = frozenset((s1, s2))
    gamma = frozenset((s1, s3))

    # The Hamming assignment must realize the single revisions the example
    # is built from; anything else would invalidate the whole report.
    prelude = {
        (kappa, o): o,
        (kappa, o_prime): kappa,
        (kappa, frozenset((s2,))): frozenset((s2,)),
        (kappa, frozenset((s1,))): kappa,
    }
    for (k, a), want in prelude.items():
        got = revise(k, a, assign)
        if got != want:
            raise RuntimeError(f"ranking fails to realize {a} -> {want}, got {got}")

    def fin(seq: tuple[StateSet, ...]) -> StateSet:
        return iterated_revise(kappa, seq, sig, assign)

    values = {
        "O": fin((o,)),
        "O,O'": fin((o, o_prime)),
        "O,a,O'": fin((o, alpha, o_prime)),
        "O,a": fin((o, alpha)),
        "O,a,g,O'": fin((o, alpha, gamma, o_prime)),
        "O,a,a&g,O'": fin((o, alpha, gamma & alpha, o_prime)),
    }

    failed = []
    held = []
    # L4: kappa after O believes alpha, yet inserting alpha changes the
    # outcome once O' arrives.
    if values["O"] <= alpha and values["O,O'"] != values["O,a,O'"]:
        failed.append("L4")
    else:
        held.append("L4")
    # L5: beta is stronger than alpha, yet alpha-then-beta differs from
    # beta alone once O' arrives.
    if beta <= alpha and fin((o, alpha, beta, o_prime)) != fin((o, beta, o_prime)):
        failed.append("L5")
    else:
        held.append("L5")
    # L6: gamma is live after O,alpha, yet refining by gamma differs from
    # refining by the intersection once O' arrives.
    if values["O,a"] & gamma and values["O,a,g,O'"] != values["O,a,a&g,O'"]:
        failed.append("L6")
    else:
        held.append("L6")

    if values["O,a"] <= alpha:
        held.append("L2")
    else:
        failed.append("L2")
    # L3 instantiated with the example's own beta.
    if not (values["O,a"] <= beta and values["O"] <= alpha) or values["O"] <= beta:
        held.append("L3")
    else:
        failed.append("L3")
    if not values["O"] <= alpha or values["O"] == values["O,a"]:
        held.append("L4*")
    else:
        failed.append("L4*")
    if fin((o, alpha, beta)) == fin((o, beta)):
        held.append("L5*")
    else:
        failed.append("L5*")
    if not values["O,a"] & gamma or fin((o, alpha, gamma)) == fin((o, alpha, alpha & gamma)):
        held.append("L6*")
    else:
        failed.append("L6*")
    full = universe(sig)
    if values["O,a"] <= fin((o, full - alpha, alpha)):
        held.append("L7")
    else:
        failed.append("L7")

    return CounterexampleReport(sig, values, tuple(failed), tuple(held))


# ---------------------------------------------------------------------------
# Suite dispatch for the command line.


def run_suite(
    name: str,
    fluents: Optional[int] = None,
    samples: Optional[int] = None,
    seed: int = 0,
) -> SuiteReport:
    """Run one named suite with its default scope unless overridden."""
    if name == "interaction":
        return run_interaction_suite(fluents or 2, samples=samples, seed=seed)
    if name == "agm":
        return run_agm_suite(fluents or 3)
    if name == "dp":
        return run_dp_suite(fluents or 2, samples=samples, seed=seed)
    if name == "lehmann":
        return run_lehmann_suite(fluents or 2, samples=samples, seed=seed)
    if name == "i1i2":
        return run_i1i2_suite(fluents or 2, samples=samples, seed=seed)
    raise ValueError(f"unknown suite {name!r}")
