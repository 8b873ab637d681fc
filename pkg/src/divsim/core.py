"""Simulator-facing planning model: predicates, states, actions, plans, traces.

A state is a plain frozenset of interned predicates. Everything the planner
derives from a trajectory (cost so far, goal flag, latched goal predicates)
lives in an augmentation layer on traces and search nodes, never inside the
simulator's raw state, so novelty pruning only ever sees raw predicates.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CostBoundExceeded, InapplicableAction, UnknownAction

GOAL_ATOM = "goal-state"
COST_ATOM_PREFIX = "cost-"
LATCH_ATOM_PREFIX = "first-"


class Predicate:
    """Interned boolean state variable.

    ``Predicate(name)`` always returns the same object for the same name, so
    equality and hashing are identity-based and cheap. ``index`` records the
    interning sequence (declaration order on first use), which gives a stable
    total order within a run.
    """

    __slots__ = ("name", "index")

    _interned: dict[str, "Predicate"] = {}

    def __new__(cls, name: str) -> "Predicate":
        got = cls._interned.get(name)
        if got is None:
            got = super().__new__(cls)
            got.name = name
            got.index = len(cls._interned)
            cls._interned[name] = got
        return got

    def __lt__(self, other: "Predicate") -> bool:
        return self.index < other.index

    def __repr__(self) -> str:
        return self.name


State = frozenset  # frozenset[Predicate]; two states are equal iff their truth sets are
Plan = tuple  # tuple[str, ...] of action ids, applied left to right


def make_state(names: Iterable[str]) -> State:
    return frozenset(Predicate(n) for n in names)


@dataclass(frozen=True)
class Action:
    """Named action with a positive integer cost."""

    name: str
    cost: int = 1

    def __post_init__(self):
        if not isinstance(self.cost, int) or isinstance(self.cost, bool) or self.cost < 1:
            raise ValueError(f"action cost must be a positive integer, got {self.cost!r}")


@dataclass(frozen=True)
class AugmentedState:
    """One trace position: the raw state plus derived bookkeeping.

    ``latched`` holds every goal predicate that has been true at this position
    or any earlier one; it never shrinks along a trace even when the simulator
    undoes a goal predicate.
    """

    raw: State
    cost_so_far: int
    goal_flag: bool
    latched: frozenset


@dataclass(frozen=True)
class Trace:
    """States visited by a plan; states[0] is the initial state."""

    states: tuple
    plan: Plan


class SimulatorProblem(ABC):
    """Capability contract a domain must provide to the planner.

    ``actions`` is the full declared universe in declaration order, and
    ``applicable`` must preserve that order, which is what makes breadth-first
    tie-breaking reproducible. ``simulate`` must be deterministic and total on
    applicable actions.
    """

    @property
    @abstractmethod
    def initial(self) -> State: ...

    @property
    @abstractmethod
    def actions(self) -> tuple: ...

    @abstractmethod
    def applicable(self, state: State) -> tuple: ...

    @abstractmethod
    def simulate(self, state: State, action: Action) -> State: ...

    @abstractmethod
    def is_goal(self, state: State) -> bool: ...

    @property
    @abstractmethod
    def goal_predicates(self) -> tuple: ...

    @cached_property
    def goal_set(self) -> frozenset:
        return frozenset(self.goal_predicates)

    @cached_property
    def _actions_by_name(self) -> dict:
        return {a.name: a for a in self.actions}

    def action_named(self, name: str) -> Action:
        try:
            return self._actions_by_name[name]
        except KeyError:
            raise UnknownAction(name) from None


def initial_augmented(problem: SimulatorProblem) -> AugmentedState:
    raw = problem.initial
    return AugmentedState(raw, 0, problem.is_goal(raw), problem.goal_set & raw)


def successor_augmented(
    problem: SimulatorProblem, aug: AugmentedState, action: Action
) -> AugmentedState:
    raw = problem.simulate(aug.raw, action)
    return AugmentedState(
        raw,
        aug.cost_so_far + action.cost,
        problem.is_goal(raw),
        aug.latched | (problem.goal_set & raw),
    )


def replay(problem: SimulatorProblem, plan: Plan) -> Trace:
    """Apply a plan from the initial state, checking applicability at each step."""
    aug = initial_augmented(problem)
    states = [aug]
    for index, name in enumerate(plan):
        action = problem.action_named(name)
        if action not in problem.applicable(aug.raw):
            raise InapplicableAction(f"action {name!r} not applicable", index=index)
        aug = successor_augmented(problem, aug, action)
        states.append(aug)
    return Trace(tuple(states), tuple(plan))


def plan_cost(problem: SimulatorProblem, plan: Plan) -> int:
    return sum(problem.action_named(name).cost for name in plan)


def augmented_view(states: Sequence[AugmentedState], cost_bound: int) -> tuple:
    """Atom sets the temporal-logic layer evaluates over.

    Each position exposes the raw predicate names plus exactly one ``cost-X``
    atom, ``goal-state`` when the position is a goal, and one ``first-g`` atom
    per latched goal predicate.
    """
    views = []
    for aug in states:
        if aug.cost_so_far > cost_bound:
            raise CostBoundExceeded(aug.cost_so_far, cost_bound)
        atoms = {p.name for p in aug.raw}
        atoms.add(f"{COST_ATOM_PREFIX}{aug.cost_so_far}")
        if aug.goal_flag:
            atoms.add(GOAL_ATOM)
        atoms.update(f"{LATCH_ATOM_PREFIX}{p.name}" for p in aug.latched)
        views.append(frozenset(atoms))
    return tuple(views)


def trace_view(trace: Trace, cost_bound: int) -> tuple:
    return augmented_view(trace.states, cost_bound)
