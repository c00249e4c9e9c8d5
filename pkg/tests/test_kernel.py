import pytest
import hypothesis.strategies as st
from hypothesis import given

from bevo import (
    NULL_ACTION,
    And,
    Atom,
    Iff,
    Implies,
    Not,
    Or,
    TransitionSystem,
    complete_transitions,
    format_state,
    format_state_set,
    is_deterministic,
    make_signature,
    models,
    state_index,
    true_fluents,
    universe,
)

from conftest import state_of


def test_signature_injects_noop():
    sig = make_signature(("p",), ("a", "b"))
    assert NULL_ACTION in sig.actions
    assert sig.actions.index("a") < sig.actions.index("b")


def test_signature_noop_not_duplicated():
    sig = make_signature(("p",), ("a", NULL_ACTION))
    assert sig.actions.count(NULL_ACTION) == 1


def test_signature_num_states():
    assert make_signature(("p", "q", "r")).num_states == 8
    assert make_signature(()).num_states == 1


def test_signature_rejects_bad_names():
    with pytest.raises(ValueError):
        make_signature(("p", "p"))
    with pytest.raises(ValueError):
        make_signature(("has space",))
    with pytest.raises(ValueError):
        make_signature(("",))
    with pytest.raises(ValueError):
        make_signature([f"f{i}" for i in range(17)])


def test_state_index_round_trip():
    sig = make_signature(("Red", "Blue", "Acid"))
    s = state_index(sig, ("Red", "Acid"))
    assert s == 0b101
    assert true_fluents(sig, s) == ("Red", "Acid")


def test_state_index_rejects_unknown():
    sig = make_signature(("p",))
    with pytest.raises(ValueError):
        state_index(sig, ("q",))


def test_format_state():
    sig = make_signature(("Red", "Blue", "Acid"))
    assert format_state(sig, 0) == "{}"
    assert format_state(sig, 0b101) == "{Red,Acid}"


def test_format_state_set():
    sig = make_signature(("Red", "Blue", "Acid"))
    assert format_state_set(sig, frozenset()) == "{ }"
    assert format_state_set(sig, frozenset((4, 0))) == "{ {}, {Acid} }"


def test_universe():
    sig = make_signature(("p", "q"))
    assert universe(sig) == frozenset(range(4))
    assert universe(make_signature(())) == frozenset((0,))


# Independent oracle: evaluate a formula state by state from a name->bool
# assignment, with no set algebra involved.
def _holds(f, assignment):
    if isinstance(f, Atom):
        return assignment[f.name]
    if isinstance(f, Not):
        return not _holds(f.arg, assignment)
    if isinstance(f, And):
        return _holds(f.left, assignment) and _holds(f.right, assignment)
    if isinstance(f, Or):
        return _holds(f.left, assignment) or _holds(f.right, assignment)
    if isinstance(f, Implies):
        return (not _holds(f.left, assignment)) or _holds(f.right, assignment)
    if isinstance(f, Iff):
        return _holds(f.left, assignment) == _holds(f.right, assignment)
    raise TypeError(f)


_SIG3 = make_signature(("p", "q", "r"))

_formulas = st.recursive(
    st.sampled_from([Atom("p"), Atom("q"), Atom("r")]),
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda t: And(*t)),
        st.tuples(sub, sub).map(lambda t: Or(*t)),
        st.tuples(sub, sub).map(lambda t: Implies(*t)),
        st.tuples(sub, sub).map(lambda t: Iff(*t)),
    ),
    max_leaves=12,
)


@given(_formulas)
def test_models_matches_truth_table(f):
    expected = frozenset(
        s
        for s in range(8)
        if _holds(f, {n: bool(s >> i & 1) for i, n in enumerate(_SIG3.fluents)})
    )
    assert models(f, _SIG3) == expected


def test_models_unknown_fluent():
    with pytest.raises(ValueError):
        models(Atom("zzz"), _SIG3)


def test_complete_transitions_adds_self_loops(tiny_sig):
    ts = complete_transitions(tiny_sig, [(0, "a", 3)])
    assert ts.successors(0, "a") == frozenset((3,))
    for s in (1, 2, 3):
        assert ts.successors(s, "a") == frozenset((s,))
    for s in range(4):
        assert ts.successors(s, NULL_ACTION) == frozenset((s,))


def test_complete_transitions_rejects_noop_rows(tiny_sig):
    with pytest.raises(ValueError):
        complete_transitions(tiny_sig, [(0, NULL_ACTION, 1)])
    # identity noop rows are tolerated
    ts = complete_transitions(tiny_sig, [(0, NULL_ACTION, 0)])
    assert ts.successors(0, NULL_ACTION) == frozenset((0,))


def test_complete_transitions_rejects_out_of_range(tiny_sig):
    with pytest.raises(ValueError):
        complete_transitions(tiny_sig, [(0, "a", 4)])
    with pytest.raises(ValueError):
        complete_transitions(tiny_sig, [(7, "a", 0)])
    with pytest.raises(ValueError):
        complete_transitions(tiny_sig, [(0, "b", 0)])


def test_transition_system_requires_totality(tiny_sig):
    rel = frozenset({(s, NULL_ACTION, s) for s in range(4)} | {(0, "a", 1)})
    with pytest.raises(ValueError):
        TransitionSystem(tiny_sig, rel)


def test_deterministic_flag(tiny_sig):
    det = complete_transitions(tiny_sig, [(0, "a", 1)])
    assert det.deterministic and is_deterministic(det)
    nondet = complete_transitions(tiny_sig, [(0, "a", 1), (0, "a", 2)])
    assert not nondet.deterministic
    assert nondet.successors(0, "a") == frozenset((1, 2))


def test_successor_map_only_when_deterministic(tiny_sig):
    det = complete_transitions(tiny_sig, [(0, "a", 1)])
    assert det.successor_map("a") == (1, 1, 2, 3)
    nondet = complete_transitions(tiny_sig, [(0, "a", 1), (0, "a", 2)])
    with pytest.raises(ValueError):
        nondet.successor_map("a")


def test_successors_unknown_action(tiny_sig):
    ts = complete_transitions(tiny_sig, ())
    with pytest.raises(ValueError):
        ts.successors(0, "zzz")


def test_litmus_fixture_shape(litmus):
    sig = litmus.signature
    assert sig.fluents == ("Red", "Blue", "Acid")
    assert litmus.ts.deterministic
    assert litmus.ts.successors(state_of(sig), "dip") == frozenset(
        (state_of(sig, "Blue"),)
    )
    assert litmus.ts.successors(state_of(sig, "Acid"), "dip") == frozenset(
        (state_of(sig, "Red", "Acid"),)
    )
