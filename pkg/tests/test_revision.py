import pytest
import hypothesis.strategies as st
from hypothesis import given

from bevo import (
    FaithfulRanking,
    check_faithful,
    combined_change,
    complete_transitions,
    dalal_assignment,
    dalal_ranking,
    make_signature,
    min_states,
    revise,
    shift_ranking,
    update,
)

from conftest import state_of

_SIG = make_signature(("p", "q"))
_nonempty = st.sets(st.integers(0, 3), min_size=1).map(frozenset)
_any_set = st.sets(st.integers(0, 3)).map(frozenset)


def test_dalal_ranking_golden():
    """Hamming distances from the all-false state."""
    r = dalal_ranking(frozenset((0,)), _SIG)
    assert r.ranks == (0, 1, 1, 2)
    assert r.base == frozenset((0,))


def test_dalal_ranking_two_member_base():
    r = dalal_ranking(frozenset((0, 3)), _SIG)
    assert r.ranks == (0, 1, 1, 0)


def test_dalal_ranking_empty_base():
    with pytest.raises(ValueError):
        dalal_ranking(frozenset(), _SIG)


@given(_nonempty)
def test_dalal_is_faithful(kappa):
    assert check_faithful(dalal_ranking(kappa, _SIG))


def test_check_faithful_rejects_flat():
    flat = FaithfulRanking(frozenset((0,)), (0, 0, 1, 1))
    assert not check_faithful(flat)
    shifted_base = FaithfulRanking(frozenset((0,)), (1, 0, 2, 2))
    assert not check_faithful(shifted_base)


def test_rank_of_bounds():
    r = dalal_ranking(frozenset((0,)), _SIG)
    assert r.rank_of(3) == 2
    with pytest.raises(IndexError):
        r.rank_of(4)


def test_revise_consistent_is_intersection():
    kappa = frozenset((0, 1))
    alpha = frozenset((1, 2))
    assert revise(kappa, alpha, dalal_assignment(_SIG)) == frozenset((1,))


def test_revise_inconsistent_picks_closest():
    kappa = frozenset((0,))
    alpha = frozenset((1, 3))
    # distance 1 to {p}, distance 2 to {p,q}
    assert revise(kappa, alpha, dalal_assignment(_SIG)) == frozenset((1,))


def test_revise_litmus_golden(litmus):
    """After dipping, observing red leaves only the acid outcome."""
    sig = litmus.signature
    after = frozenset((state_of(sig, "Blue"), state_of(sig, "Red", "Acid")))
    red = frozenset(s for s in range(8) if s & state_of(sig, "Red"))
    out = revise(after, red, dalal_assignment(sig))
    assert out == frozenset((state_of(sig, "Red", "Acid"),))


def test_revise_empty_observation():
    assert revise(frozenset((0,)), frozenset(), dalal_assignment(_SIG)) == frozenset()


def test_revise_empty_belief_state():
    with pytest.raises(ValueError):
        revise(frozenset(), frozenset((0,)), dalal_assignment(_SIG))


@given(_nonempty, _any_set)
def test_revise_stays_inside_observation(kappa, alpha):
    out = revise(kappa, alpha, dalal_assignment(_SIG))
    assert out <= alpha
    assert bool(out) == bool(alpha)


@given(_nonempty, _any_set)
def test_revise_compatible_intersects(kappa, alpha):
    if kappa & alpha:
        assert revise(kappa, alpha, dalal_assignment(_SIG)) == kappa & alpha


def test_min_states_skips_unranked():
    sig1 = make_signature(("p",), ("a",))
    ts = complete_transitions(sig1, [(0, "a", 1)])
    shifted = shift_ranking(dalal_ranking(frozenset((0,)), sig1), "a", ts)
    # state 0 is unreachable through 'a', so it has no shifted rank
    assert shifted.rank_of(0) is None
    assert min_states(frozenset((0, 1)), shifted) == frozenset((1,))


def test_shift_ranking_golden():
    sig1 = make_signature(("p",), ("a",))
    ts = complete_transitions(sig1, [(0, "a", 1)])
    shifted = shift_ranking(dalal_ranking(frozenset((0,)), sig1), "a", ts)
    # both states map to {p}; the better predecessor wins
    assert shifted.domain == frozenset((1,))
    assert shifted.rank_of(1) == 0


def test_shift_ranking_requires_deterministic(tiny_sig):
    nondet = complete_transitions(tiny_sig, [(0, "a", 1), (0, "a", 2)])
    with pytest.raises(ValueError):
        shift_ranking(dalal_ranking(frozenset((0,)), _SIG), "a", nondet)


def test_combined_change_compatible_observation(tiny_sig):
    ts = complete_transitions(tiny_sig, [(0, "a", 1), (2, "a", 3)])
    kappa = frozenset((0,))
    alpha = frozenset((1, 3))
    out = combined_change(kappa, "a", alpha, ts)
    # {p} is reachable from the believed state, {p,q} only from {q}
    assert out == frozenset((1,))


def test_combined_change_unreachable_observation(tiny_sig):
    ts = complete_transitions(tiny_sig, [(0, "a", 1)])
    kappa = frozenset((0, 2))
    nothing_reaches = frozenset()
    assert combined_change(kappa, "a", nothing_reaches, ts) == frozenset((1, 2))


def test_combined_change_disjoint_from_range(tiny_sig):
    # range of 'a' is {1,2,3}; observing {0} falls back to plain update
    ts = complete_transitions(tiny_sig, [(0, "a", 1)])
    kappa = frozenset((2,))
    assert combined_change(kappa, "a", frozenset((0,)), ts) == frozenset((2,))
