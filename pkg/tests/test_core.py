import pytest

from divsim.core import (
    Action,
    Predicate,
    augmented_view,
    initial_augmented,
    make_state,
    plan_cost,
    replay,
    successor_augmented,
    trace_view,
)
from divsim.errors import CostBoundExceeded, InapplicableAction, UnknownAction


def test_predicates_are_interned():
    assert Predicate("at-1-1") is Predicate("at-1-1")
    assert Predicate("at-1-1") is not Predicate("at-1-2")


def test_predicate_order_is_first_use_order():
    a = Predicate("order-check-a")
    b = Predicate("order-check-b")
    assert a < b
    assert sorted([b, a]) == [a, b]


def test_make_state_equality_is_set_equality():
    assert make_state(["p", "q"]) == make_state(["q", "p"])
    assert make_state([]) == frozenset()


@pytest.mark.parametrize("cost", [0, -1, 1.5, True])
def test_action_rejects_bad_costs(cost):
    with pytest.raises(ValueError):
        Action("a", cost)


def test_replay_builds_full_trace(toggle_problem):
    trace = replay(toggle_problem, ("set-a", "set-b"))
    assert len(trace.states) == 3
    assert trace.plan == ("set-a", "set-b")
    assert trace.states[-1].goal_flag
    assert trace.states[-1].cost_so_far == 2


def test_replay_rejects_inapplicable_action(toggle_problem):
    with pytest.raises(InapplicableAction) as err:
        replay(toggle_problem, ("unset-a",))
    assert err.value.index == 0


def test_replay_rejects_unknown_action(toggle_problem):
    with pytest.raises(UnknownAction):
        replay(toggle_problem, ("warp",))


def test_latch_survives_goal_undo(toggle_problem):
    trace = replay(toggle_problem, ("set-a", "unset-a", "set-b", "set-a"))
    ga = Predicate("ga")
    assert [ga in aug.raw for aug in trace.states] == [False, True, False, False, True]
    assert [ga in aug.latched for aug in trace.states] == [False, True, True, True, True]
    assert trace.states[-1].goal_flag


def test_initial_augmented_latches_initially_true_goals(toggle_problem):
    aug = initial_augmented(toggle_problem)
    assert aug.cost_so_far == 0
    assert not aug.goal_flag
    assert aug.latched == frozenset()


def test_successor_accumulates_cost(toggle_problem):
    aug = initial_augmented(toggle_problem)
    aug = successor_augmented(toggle_problem, aug, Action("set-a", 3))
    assert aug.cost_so_far == 3


def test_plan_cost_sums_declared_costs(toggle_problem):
    assert plan_cost(toggle_problem, ("set-a", "unset-a", "set-b")) == 3


def test_view_exposes_cost_goal_and_latch_atoms(toggle_problem):
    trace = replay(toggle_problem, ("set-a", "unset-a", "set-b", "set-a"))
    view = trace_view(trace, cost_bound=10)
    assert view[0] == frozenset({"cost-0"})
    assert view[1] == frozenset({"ga", "cost-1", "first-ga"})
    # the raw state lost ga but the latch atom stays from here on
    assert view[2] == frozenset({"cost-2", "first-ga"})
    assert "first-ga" in view[3] and "first-ga" in view[4]
    assert "goal-state" in view[4]
    assert "goal-state" not in view[3]


def test_view_enforces_cost_bound(toggle_problem):
    trace = replay(toggle_problem, ("set-a", "set-b"))
    with pytest.raises(CostBoundExceeded):
        augmented_view(trace.states, cost_bound=1)
    assert len(augmented_view(trace.states, cost_bound=2)) == 3
