import pytest

from divsim.core import Predicate, replay
from divsim.domains import GridProblem, load_problem
from divsim.domains.grid import parse_grid
from divsim.errors import InapplicableAction, LevelInvalid

from conftest import fixture_path


SMALL = "#####\n#S.T#\n#####\n"


class TestParsing:
    def test_positions_and_walls(self):
        world = parse_grid(SMALL)
        assert world.start == (1, 1)
        assert world.targets == ((1, 3),)
        assert (0, 0) in world.walls and (1, 2) not in world.walls

    def test_blank_edge_lines_stripped(self):
        assert parse_grid("\n\n" + SMALL + "\n") == parse_grid(SMALL)

    def test_space_counts_as_wall(self):
        world = parse_grid("#####\n#S T#\n#####\n")
        assert (1, 2) in world.walls

    def test_short_rows_pad_with_walls(self):
        world = parse_grid("#####\n#S.T#\n##\n#####\n")
        assert (2, 3) in world.walls

    @pytest.mark.parametrize(
        "text,reason",
        [
            ("#####\n#..T#\n#####\n", "no start"),
            ("#####\n#SST#\n#####\n", "more than one start"),
            ("#####\n#S..#\n#####\n", "no target"),
            ("#####\n#S?T#\n#####\n", "unknown grid character"),
            ("", "empty"),
        ],
    )
    def test_invalid_levels(self, text, reason):
        with pytest.raises(LevelInvalid, match=reason):
            parse_grid(text)


class TestProblem:
    def test_action_universe_order(self):
        problem = GridProblem.from_text(SMALL)
        assert tuple(a.name for a in problem.actions) == ("up", "down", "left", "right")
        assert all(a.cost == 1 for a in problem.actions)

    def test_applicable_respects_walls(self):
        problem = GridProblem.from_text(SMALL)
        names = tuple(a.name for a in problem.applicable(problem.initial))
        assert names == ("right",)

    def test_simulate_moves_the_agent(self):
        problem = GridProblem.from_text(SMALL)
        state = problem.simulate(problem.initial, problem.action_named("right"))
        assert Predicate("at-1-2") in state
        assert Predicate("at-1-1") not in state

    def test_blocked_move_raises(self):
        problem = GridProblem.from_text(SMALL)
        with pytest.raises(InapplicableAction):
            problem.simulate(problem.initial, problem.action_named("up"))

    def test_target_visit_is_recorded_in_state(self):
        problem = GridProblem.from_text(SMALL)
        trace = replay(problem, ("right", "right", "left"))
        visited = Predicate("visited-1-3")
        assert visited not in trace.states[1].raw
        assert visited in trace.states[2].raw
        # the marker is part of the raw state, so it survives leaving the cell
        assert visited in trace.states[3].raw

    def test_goal_needs_every_target(self):
        problem = load_problem(fixture_path("two_targets_line.grid"))
        trace = replay(problem, ("up", "left"))
        assert not trace.states[-1].goal_flag
        trace = replay(problem, ("up", "left", "down", "right", "right", "right", "up"))
        assert trace.states[-1].goal_flag

    def test_goal_predicates_follow_target_order(self):
        problem = load_problem(fixture_path("two_targets_line.grid"))
        assert tuple(p.name for p in problem.goal_predicates) == (
            "visited-1-1",
            "visited-1-4",
        )
