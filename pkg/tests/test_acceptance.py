"""End-to-end acceptance checks.

Each test prints a single pass line so the whole gate reads as a checklist
under ``pytest -v -s``.  Scopes are small enough to run exhaustively where
stated; sampled portions are seeded and therefore reproducible.
"""

import random
import time
from itertools import product

from bevo import (
    And,
    Atom,
    NULL_ACTION,
    Not,
    ParseError,
    WorldView,
    combined_change,
    complete_transitions,
    dalal_assignment,
    evolve,
    final_state_shortcut,
    minimal_repair_candidates,
    models,
    padded_view,
    parse_domain,
    parse_scenario,
    preimage,
    recency,
    repairs,
    revise,
    serialize_domain,
    serialize_scenario,
    universe,
    update,
    update_seq,
)
from bevo.evolution import consistent
from bevo.postulates import (
    evolution_final_state,
    lehmann_counterexample,
    naive_two_shot_dp_example,
    run_agm_suite,
    run_dp_suite,
    run_interaction_suite,
    run_lehmann_suite,
    single_action_systems,
    state_sets,
    suite_signature,
)

from conftest import DATA, state_of


def _done(number: int, slug: str, started: float) -> None:
    print(f"acceptance {number:02d} {slug}: PASS ({time.perf_counter() - started:.1f}s)")


def test_01_litmus_progression_and_shortcut(litmus):
    started = time.perf_counter()
    sig = litmus.signature
    kappa = frozenset((state_of(sig), state_of(sig, "Acid")))
    after = update(kappa, "dip", litmus.ts)
    assert after == frozenset(
        (state_of(sig, "Blue"), state_of(sig, "Red", "Acid"))
    )
    red = models(Atom("Red"), sig)
    final = final_state_shortcut(kappa, ("dip",), red, litmus.ts)
    assert final == frozenset((state_of(sig, "Red", "Acid"),))
    assert time.perf_counter() - started < 1.0
    _done(1, "litmus-progression-and-shortcut", started)


def test_02_extended_litmus_evolution_and_preimage(litmus_extended):
    started = time.perf_counter()
    sig = litmus_extended.signature
    ts = litmus_extended.ts
    kappa = frozenset(
        (state_of(sig, "Litmus"), state_of(sig, "Litmus", "Acid"))
    )
    obs = models(And(Not(Atom("Red")), Not(Atom("Blue"))), sig)
    res = evolve(kappa, WorldView(("dip",), (obs,)), ts)
    plain = frozenset((state_of(sig), state_of(sig, "Acid")))
    assert res.was_consistent
    assert res.trajectories == ((plain, plain),)
    assert preimage(obs, ("dip",), ts) == plain
    assert time.perf_counter() - started < 1.0
    _done(2, "extended-litmus-evolution-and-preimage", started)


def test_03_interaction_properties_exhaustive():
    started = time.perf_counter()
    report = run_interaction_suite(fluents=2, trajectory_len=2)
    assert report.passed, report.render_text()
    assert report.instances == 315_840
    assert report.notes[0] == (
        "52800 instances needed repair; informational failures after repair: 0"
    )
    assert time.perf_counter() - started < 60.0
    _done(3, "interaction-properties-exhaustive", started)


def test_04_revision_laws_three_fluents():
    started = time.perf_counter()
    report = run_agm_suite(3)
    assert report.passed, report.render_text()
    assert report.instances == 65_280
    assert time.perf_counter() - started < 30.0
    _done(4, "revision-laws-three-fluents", started)


def test_05_one_step_operator_matches_evolution():
    started = time.perf_counter()
    sig = suite_signature(2)
    assign = dalal_assignment(sig)
    kappas = state_sets(sig, include_empty=False)
    alphas = state_sets(sig)
    compared = 0
    for ts in single_action_systems(sig):
        for action in sig.actions:
            for kappa in kappas:
                for alpha in alphas:
                    got = combined_change(kappa, action, alpha, ts, assign)
                    want = evolution_final_state(
                        kappa, (action,), alpha, ts, assign
                    )
                    assert got == want, (action, kappa, alpha)
                    compared += 1
    assert compared == 122_880
    assert time.perf_counter() - started < 60.0
    _done(5, "one-step-operator-matches-evolution", started)


def test_06_trivial_observation_and_null_action_reductions():
    started = time.perf_counter()
    sig = suite_signature(2)
    assign = dalal_assignment(sig)
    full = universe(sig)
    kappas = state_sets(sig, include_empty=False)
    # an action step with nothing observed reduces to plain update
    for ts in single_action_systems(sig):
        for action in sig.actions:
            for kappa in kappas:
                res = evolve(kappa, WorldView((action,), (full,)), ts, assign)
                assert res.trajectories == ((kappa, update(kappa, action, ts)),)
    # a do-nothing step with an observation reduces to plain revision
    identity = complete_transitions(sig, ())
    for kappa in kappas:
        for alpha in kappas:
            res = evolve(
                kappa, WorldView((NULL_ACTION,), (alpha,)), identity, assign
            )
            revised = revise(kappa, alpha, assign)
            assert res.trajectories == ((revised, revised),)
    _done(6, "trivial-observation-and-null-action-reductions", started)


def _retained(observations, weakened, full):
    return frozenset(
        i
        for i, o in enumerate(observations)
        if o != full and weakened[i] == o
    )


def _primacy(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def _audit_repairs(view, ts, full) -> bool:
    """For one inconsistent view: unique repairs, recency keeps the latest."""
    candidates = minimal_repair_candidates(view, ts)
    kept = [_retained(view.observations, c, full) for c in candidates]
    for fn in (recency, _primacy):
        reps = repairs(view, ts, fn)
        assert len(reps) == 1, (view, fn.__name__, reps)
        assert reps[0] in candidates
    chosen = repairs(view, ts, recency)[0]
    retainable = frozenset().union(*kept) if kept else frozenset()
    if retainable:
        latest = max(retainable)
        assert latest in _retained(view.observations, chosen, full), view
    return True


def test_07_unique_repairs_under_injective_reliability():
    started = time.perf_counter()
    sig = suite_signature(2)
    full = universe(sig)
    alphas = state_sets(sig)
    systems = list(single_action_systems(sig))
    audited = 0
    for ts in systems:
        for ln in (1, 2):
            for acts in product(sig.actions, repeat=ln):
                for obs in product(alphas, repeat=ln):
                    view = WorldView(acts, obs)
                    if consistent(view, ts):
                        continue
                    _audit_repairs(view, ts, full)
                    audited += 1
    # length three: every system, a seeded slice of the view space
    rng = random.Random(20250823)
    for ts in systems:
        for _ in range(400):
            acts = tuple(rng.choice(sig.actions) for _ in range(3))
            obs = tuple(alphas[rng.randrange(len(alphas))] for _ in range(3))
            view = WorldView(acts, obs)
            if consistent(view, ts):
                continue
            _audit_repairs(view, ts, full)
            audited += 1
    assert audited > 50_000
    _done(7, "unique-repairs-under-injective-reliability", started)


def test_08_iterated_revision_postulates_and_naive_contrast():
    started = time.perf_counter()
    report = run_dp_suite(fluents=2)
    assert report.passed, report.render_text()
    assert report.instances == 3_375
    vio = naive_two_shot_dp_example()
    assert vio.postulate == "DP2"
    assert vio.instance.kappa == frozenset((0,))
    assert vio.instance.observations == (frozenset((1,)), frozenset((0, 3)))
    assert vio.lhs == frozenset((0, 3))
    assert vio.rhs == frozenset((0,))
    _done(8, "iterated-revision-postulates-and-naive-contrast", started)


def test_09_observation_sequence_postulates_and_counterexample():
    started = time.perf_counter()
    report = run_lehmann_suite(fluents=2)
    assert report.passed, report.render_text()
    assert report.instances == 1_045_425
    rep = lehmann_counterexample()
    assert rep.values == {
        "O": frozenset((2,)),
        "O,O'": frozenset((0,)),
        "O,a,O'": frozenset((1,)),
        "O,a": frozenset((2,)),
        "O,a,g,O'": frozenset((0,)),
        "O,a,a&g,O'": frozenset((1,)),
    }
    assert rep.failed == ("L4", "L5", "L6")
    assert rep.held == ("L2", "L3", "L4*", "L5*", "L6*", "L7")
    _done(9, "observation-sequence-postulates-and-counterexample", started)


def test_10_shortcut_matches_evolution_on_seeded_instances():
    started = time.perf_counter()
    sig = suite_signature(3)
    rng = random.Random(0)
    n = sig.num_states
    for _ in range(1000):
        triples = [(s, "a", rng.randrange(n)) for s in range(n)]
        ts = complete_transitions(sig, triples)
        kmask = rng.randrange(1, 1 << n)
        kappa = frozenset(s for s in range(n) if kmask >> s & 1)
        acts = tuple(
            rng.choice(sig.actions) for _ in range(rng.randint(1, 3))
        )
        progressed = sorted(update_seq(kappa, acts, ts))
        amask = rng.randrange(1, 1 << len(progressed))
        alpha = frozenset(
            s for i, s in enumerate(progressed) if amask >> i & 1
        )
        res = evolve(kappa, padded_view(acts, alpha, sig), ts)
        assert res.was_consistent
        (trajectory,) = res.trajectories
        got = final_state_shortcut(kappa, acts, alpha, ts)
        assert got == trajectory[-1], (triples, kappa, acts, alpha)
    _done(10, "shortcut-matches-evolution-on-seeded-instances", started)


_VOCAB = (
    "domain", "fluents", "actions", "transition", "deterministic", "strict",
    "scenario", "initial", "act", "obs", "reliability", "mode", "states",
    "formula", "recency", "constant", "weights", "credulous", "skeptical",
    "{", "}", "{}", "->", ":", ",", "p", "q", "Red", "Blue", "Acid", "dip",
    "noop", "0", "1", "-1", "&", "|", "!", "(", ")", "<->", "#x",
)


def _mutate(rng: random.Random, text: str) -> str:
    out = text
    for _ in range(rng.randint(1, 4)):
        if not out:
            break
        op = rng.randrange(5)
        i = rng.randrange(len(out))
        j = min(len(out), i + rng.randint(1, 12))
        if op == 0:
            out = out[:i] + out[j:]
        elif op == 1:
            out = out[:j] + out[i:j] + out[j:]
        elif op == 2:
            out = out[:i] + rng.choice(_VOCAB) + out[j:]
        elif op == 3:
            out = out[:i]
        else:
            out = out[:i] + chr(rng.randrange(32, 127)) + out[i + 1 :]
    return out


def _soup(rng: random.Random) -> str:
    return "\n".join(
        " ".join(rng.choice(_VOCAB) for _ in range(rng.randint(0, 8)))
        for _ in range(rng.randint(0, 10))
    )


def test_11_parser_round_trips_and_fuzz(litmus):
    started = time.perf_counter()
    domains = {
        name: (DATA / name).read_text()
        for name in ("litmus.bevd", "litmus-extended.bevd")
    }
    for text in domains.values():
        doc = parse_domain(text)
        canonical = serialize_domain(doc)
        assert parse_domain(canonical) == doc
        assert serialize_domain(parse_domain(canonical)) == canonical
    scenario_pairs = [
        ("litmus.bevd", "litmus.bevs"),
        ("litmus-extended.bevd", "litmus-extended.bevs"),
        ("litmus.bevd", "litmus-conflict.bevs"),
    ]
    scenario_texts = []
    for dname, sname in scenario_pairs:
        dom = parse_domain(domains[dname])
        text = (DATA / sname).read_text()
        doc = parse_scenario(text, dom)
        canonical = serialize_scenario(doc, dom.signature)
        assert parse_scenario(canonical, dom) == doc
        assert serialize_scenario(doc, dom.signature) == canonical
        scenario_texts.append(text)

    rng = random.Random(1234)
    seeds_d = list(domains.values())
    for case in range(5000):
        text = _mutate(rng, rng.choice(seeds_d)) if case % 2 else _soup(rng)
        try:
            parse_domain(text)
        except ParseError as e:
            assert isinstance(e.line, int) and e.line >= 1
            assert isinstance(e.col, int) and e.col >= 1
    for case in range(5000):
        text = _mutate(rng, rng.choice(scenario_texts)) if case % 2 else _soup(rng)
        try:
            parse_scenario(text, litmus)
        except ParseError as e:
            assert isinstance(e.line, int) and e.line >= 1
            assert isinstance(e.col, int) and e.col >= 1
    _done(11, "parser-round-trips-and-fuzz", started)
