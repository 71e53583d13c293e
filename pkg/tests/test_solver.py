import pytest

from gridpursuit.errors import ResourceLimitError
from gridpursuit.grid import cube, grid, torus
from gridpursuit.engine import run_match
from gridpursuit.solver import cop_number, extract_policies, solve_game


def test_single_vertex_one_cop_wins():
    assert solve_game(grid(1, 1), 1).cops_win is True


def test_four_cycle_needs_two_cops():
    assert solve_game(cube(2), 1).cops_win is False
    assert solve_game(cube(2), 2).cops_win is True


def test_three_by_three_needs_two_cops():
    assert solve_game(grid(3, 3), 1).cops_win is False
    res = solve_game(grid(3, 3), 2)
    assert res.cops_win is True
    assert res.witness_placement is not None


def test_zero_cops_never_win():
    assert solve_game(grid(2, 2), 0).cops_win is False


def test_cop_number_small_values():
    assert cop_number(grid(2, 2)).cop_number == 2
    assert cop_number(grid(5, 1)).cop_number == 1  # one cop sweeps a path
    assert cop_number(grid(1, 1)).cop_number == 1


def test_cop_number_rectangle_in_paper_range():
    value = cop_number(grid(3, 4)).cop_number
    assert value in (2, 3)


def test_cop_number_dimension_symmetry():
    assert cop_number(grid(3, 4)).cop_number == cop_number(grid(4, 3)).cop_number


def test_cop_number_monotone_under_subgrid_chain():
    values = [cop_number(grid(a, b)).cop_number for a, b in ((3, 3), (3, 4), (4, 4))]
    assert values[0] <= values[1] <= values[2]


def test_win_is_monotone_in_k():
    g = torus(3, 3)
    wins = [solve_game(g, k).cops_win for k in range(1, 5)]
    for worse, better in zip(wins, wins[1:]):
        assert not (worse and not better)


def test_resource_cap_raises():
    with pytest.raises(ResourceLimitError):
        solve_game(grid(10, 10), 6, cap=10_000)


def test_optimal_policies_capture_on_solved_win():
    res = solve_game(grid(3, 3), 2)
    cop_policy, robber_policy = extract_policies(res)
    trace = run_match(grid(3, 3), cop_policy, robber_policy, 2, max_rounds=200)
    assert trace.outcome == "capture"


def test_optimal_robber_escapes_single_cop_forever():
    res = solve_game(grid(3, 3), 1)
    assert res.cops_win is False
    cop_policy, robber_policy = extract_policies(res)
    from gridpursuit.cops import GreedyCops

    trace = run_match(grid(3, 3), GreedyCops(), robber_policy, 1, max_rounds=100)
    assert trace.outcome == "timeout"


def test_optimal_policies_emit_only_legal_moves():
    res = solve_game(cube(3), 2)
    cop_policy, robber_policy = extract_policies(res)
    trace = run_match(cube(3), cop_policy, robber_policy, 2, max_rounds=64)
    assert trace.fault_side is None


def test_solver_agrees_with_proven_strategy():
    # wherever the solver certifies k cops win, the constructive pursuit
    # with that many cops must also win its matches
    from gridpursuit.cops import DiagonalPairsCops
    from gridpursuit.robbers import MaxComponentRobber, RandomRobber

    res = solve_game(grid(3, 3), 2)
    assert res.cops_win
    for seed in range(3):
        trace = run_match(grid(3, 3), DiagonalPairsCops(), RandomRobber(), 2, seed=seed)
        assert trace.outcome == "capture"
    trace = run_match(grid(3, 3), DiagonalPairsCops(), MaxComponentRobber(), 2)
    assert trace.outcome == "capture"


def test_five_by_five_needs_exactly_four_cops():
    # the odd-side square-grid value at the first interesting size; the
    # k=4 table is about a million states
    assert solve_game(grid(5, 5), 3).cops_win is False
    res = solve_game(grid(5, 5), 4)
    assert res.cops_win is True
    assert res.states_explored > 1_000_000


def test_statistics_populated():
    res = solve_game(cube(2), 1)
    assert res.states_explored == 2 * 4 * 4  # configs x vertices x sides
    assert res.transitions > 0
    assert res.elapsed >= 0
