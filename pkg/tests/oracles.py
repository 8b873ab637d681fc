"""Reference implementations the tests compare the package against.

Everything here is deliberately written from the definitions rather than by
calling into the package's own logic: the temporal evaluator expands the
quantifiers literally and derives Release through its Until dual, the width
search is a separate BFS, and the behaviour enumerator is a depth-first walk
with no deduplication. Slow is fine; these only run on tiny inputs.
"""

from __future__ import annotations

import itertools
from collections import deque

from divsim.behaviour import Behaviour
from divsim.core import initial_augmented, successor_augmented
from divsim.ltl import (
    FALSE,
    TRUE,
    Always,
    And,
    Atom,
    Eventually,
    FalseF,
    Next,
    Not,
    Or,
    Release,
    TrueF,
    Until,
)

ATOM_POOL = ("p", "q", "r")


def eval_reference(f, view, i=0):
    """Finite-trace satisfaction, spelled out as explicit quantifiers."""
    n = len(view)
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, Atom):
        return f.name in view[i]
    if isinstance(f, Not):
        return not eval_reference(f.child, view, i)
    if isinstance(f, And):
        return all(eval_reference(c, view, i) for c in f.children)
    if isinstance(f, Or):
        return any(eval_reference(c, view, i) for c in f.children)
    if isinstance(f, Next):
        return i + 1 < n and eval_reference(f.child, view, i + 1)
    if isinstance(f, Eventually):
        return any(eval_reference(f.child, view, j) for j in range(i, n))
    if isinstance(f, Always):
        return all(eval_reference(f.child, view, j) for j in range(i, n))
    if isinstance(f, Until):
        return any(
            eval_reference(f.right, view, j)
            and all(eval_reference(f.left, view, m) for m in range(i, j))
            for j in range(i, n)
        )
    if isinstance(f, Release):
        return not eval_reference(Until(Not(f.left), Not(f.right)), view, i)
    raise TypeError(f"not a formula: {f!r}")


def random_formula(rng, depth):
    """Uniform-ish random formula of syntactic depth at most ``depth``."""
    leaves = [TRUE, FALSE] + [Atom(a) for a in ATOM_POOL]
    if depth == 0:
        return rng.choice(leaves)
    pick = rng.randrange(10)
    if pick <= 1:
        return rng.choice(leaves)
    sub = lambda: random_formula(rng, depth - 1)
    if pick == 2:
        return Not(sub())
    if pick == 3:
        return And((sub(), sub()))
    if pick == 4:
        return Or((sub(), sub()))
    if pick == 5:
        return Next(sub())
    if pick == 6:
        return Eventually(sub())
    if pick == 7:
        return Always(sub())
    if pick == 8:
        return Until(sub(), sub())
    return Release(sub(), sub())


def random_view(rng, max_len=6):
    length = rng.randint(1, max_len)
    return tuple(
        frozenset(a for a in ATOM_POOL if rng.random() < 0.5) for _ in range(length)
    )


def _tuples(raw, width):
    out = set(raw)
    for size in range(2, width + 1):
        out.update(frozenset(c) for c in itertools.combinations(raw, size))
    return frozenset(out)


def plain_iw(problem, max_width=2, cost_bound=1000):
    """First goal plan found by width-iterated BFS with path-local novelty.

    Mirrors the published pruning discipline (novelty, then visited key of
    raw plus latched truths, then cost) without any behaviour forbidding, so
    it is the baseline an unconstrained generator must reproduce exactly.
    """
    for width in range(1, max_width + 1):
        root = initial_augmented(problem)
        if root.goal_flag:
            return ()
        visited = {root.raw | root.latched}
        queue = deque([(root, (), _tuples(root.raw, width))])
        while queue:
            aug, plan, path_tuples = queue.popleft()
            for action in problem.applicable(aug.raw):
                child = successor_augmented(problem, aug, action)
                tuples = _tuples(child.raw, width)
                if tuples <= path_tuples:
                    continue
                key = child.raw | child.latched
                if key in visited:
                    continue
                if child.cost_so_far > cost_bound:
                    continue
                visited.add(key)
                extended = plan + (action.name,)
                if child.goal_flag:
                    return extended
                queue.append((child, extended, path_tuples | tuples))
    return None


def dfs_behaviours(problem, space, max_len, cost_bound):
    """Every behaviour of every goal plan up to ``max_len``, by brute recursion.

    No visited set, no pruning beyond the cost bound: each action sequence is
    walked in full, so this cross-checks enumerators that do deduplicate.
    """
    goals = space.order_feature.goals if space.order_feature else ()

    def behaviour_of(states):
        cost = states[-1].cost_so_far if space.cost_feature else None
        order = None
        if space.order_feature:
            first = {}
            for g in goals:
                for i, aug in enumerate(states):
                    if g in aug.latched:
                        first.setdefault(i, set()).add(g)
                        break
            order = tuple(frozenset(first[i]) for i in sorted(first))
        return Behaviour(cost=cost, goal_order=order)

    found = {}

    def walk(states, plan):
        tip = states[-1]
        if tip.goal_flag:
            found.setdefault(behaviour_of(states), plan)
        if len(plan) == max_len:
            return
        for action in problem.applicable(tip.raw):
            child = successor_augmented(problem, tip, action)
            if child.cost_so_far > cost_bound:
                continue
            walk(states + [child], plan + (action.name,))

    walk([initial_augmented(problem)], ())
    return found
