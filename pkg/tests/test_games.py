import pytest

from app.atom_structures import CaAtomStructure, Flavor, StructureError
from app.config import Budgets, BudgetExceeded
from app.constructions import bin_ra, flexible_ra, rainbow_ra
from app.games import (EXISTS, FORALL, CaArena, EfArena, GameOutcome, GameSpec, RaArena,
                       check_pebble_monotonicity, check_round_monotonicity, replay_strategy, solve_ca_game,
                       solve_ef, solve_game, solve_ra_game)
from app.pebble_structures import linear, m_p_i


# ============================================================================
# Parámetros
# ============================================================================
@pytest.mark.parametrize("kwargs", [
    {"rule_set": "Go", "rounds": 1},
    {"rule_set": "EF", "rounds": -1, "pebbles": 2},
    {"rule_set": "EF", "rounds": 1},
    {"rule_set": "EF", "rounds": 1, "pebbles": 0},
    {"rule_set": "CaAtomic", "rounds": 1},
])
def test_invalid_game_specs(kwargs):
    with pytest.raises(ValueError):
        GameSpec(**kwargs)


def test_invalid_arenas(ta4):
    with pytest.raises(ValueError):
        EfArena(linear(2), linear(2), 2, mode="back")
    with pytest.raises(StructureError):
        CaArena(ta4, 1)
    with pytest.raises(StructureError):
        RaArena(flexible_ra(2), 1)


def test_deletion_and_demand_share_a_round(ta4):
    arena = CaArena(ta4, 2)
    state = arena.replies(None, ("atomo", 0))[0]
    assert state.nodes == 2
    assert {move[0] for move in arena.forall_moves(state)} == {0, 1}
    assert {move[0] for move in CaArena(ta4, 2, reuse=False).forall_moves(state)} == {None}


# ============================================================================
# Juego EF
# ============================================================================
def test_two_points_against_one():
    assert solve_ef(linear(2), linear(1), 2, 1).winner == EXISTS
    outcome = solve_ef(linear(2), linear(1), 2, 2)
    assert outcome.winner == FORALL
    assert outcome.trace[0]["forall"]["lado"] == "A"


def test_isomorphic_orders():
    outcome = solve_ef(linear(3), linear(3), 2, 3, mode="backAndForth")
    assert outcome.winner == EXISTS
    assert len(outcome.trace) == 3


def test_two_pebbles_need_three_rounds():
    outcomes = {r: solve_ef(linear(4), linear(3), 2, r) for r in (1, 2, 3)}
    assert outcomes[2].winner == EXISTS
    assert outcomes[3].winner == FORALL
    assert check_round_monotonicity(outcomes).passed


@pytest.mark.parametrize("pebbles", [2, 3])
def test_universal_node_does_not_help_exists(pebbles):
    # el nodo de K_1 está relacionado en ambos sentidos con todo: sólo responde a sí mismo
    A, B = m_p_i(1, 4), m_p_i(1, 3)
    outcomes = {r: solve_ef(A, B, pebbles, r) for r in range(7)}
    assert {r: o.winner for r, o in outcomes.items()} == {r: EXISTS if r <= 2 else FORALL for r in range(7)}
    assert check_round_monotonicity(outcomes).passed


def test_pebble_monotonicity():
    outcomes = {p: solve_ef(linear(2), linear(1), p, 2) for p in (1, 2, 3)}
    assert outcomes[1].winner == EXISTS
    assert outcomes[3].winner == FORALL
    assert check_pebble_monotonicity(outcomes).passed


def test_monotonicity_violations_are_reported():
    fake = {1: GameOutcome(FORALL, 1, 0), 2: GameOutcome(EXISTS, 2, 0)}
    assert check_round_monotonicity(fake).failed_checks() == ["monotonia.rondas"]
    assert check_pebble_monotonicity(fake).failed_checks() == ["monotonia.guijarros"]


@pytest.mark.parametrize("rounds", [2, 3])
def test_winning_strategies_replay(rounds):
    outcome = solve_ef(linear(4), linear(3), 2, rounds)
    report = replay_strategy(outcome)
    assert report.passed, report.to_json()
    assert report.stats["positions"] > 0


def test_outcome_serialization():
    data = solve_ef(linear(2), linear(1), 2, 2).to_dict()
    assert data["winner"] == "Forall"
    assert data["rounds"] == 2
    assert data["statesExplored"] > 0
    assert data["strategy"]
    assert "strategy" not in solve_ef(linear(2), linear(1), 2, 2).to_dict(include_strategy=False)


def test_state_budget():
    with pytest.raises(BudgetExceeded):
        solve_ef(linear(3), linear(3), 2, 3, budgets=Budgets(max_states=1))


# ============================================================================
# Juegos de redes
# ============================================================================
def test_atomic_game_on_small_structure(ta4):
    outcome = solve_ca_game(ta4, 2, 1)
    assert outcome.winner == EXISTS
    assert replay_strategy(outcome).passed


def test_unrealizable_atom_loses_immediately():
    S = CaAtomStructure(2, ("e",), {(0, 1): 0}, ((1,), (1,)), Flavor.PTA)
    outcome = solve_ca_game(S, 2, 1)
    assert outcome.winner == FORALL
    assert outcome.trace[0]["exists"] is None


def test_triangle_game_on_flexible_structure():
    outcome = solve_ra_game(flexible_ra(2), 3, 2)
    assert outcome.winner == EXISTS
    assert replay_strategy(outcome).passed


def test_triangle_game_on_bin_structure():
    outcome = solve_ra_game(bin_ra(3, 4, 1), 3, 2)
    assert outcome.winner == EXISTS
    assert replay_strategy(outcome).passed


@pytest.mark.slow
def test_rainbow_structure_loses_with_five_nodes():
    assert solve_ra_game(rainbow_ra(3, 2), 5, 6).winner == FORALL


def test_solve_game_dispatch(ta4):
    assert solve_game(GameSpec("EF", 2, pebbles=2), linear(2), linear(1)).winner == FORALL
    assert solve_game(GameSpec("CaAtomic", 1, node_cap=2), ta4).winner == EXISTS
    assert solve_game(GameSpec("RaTriangle", 1, node_cap=3), flexible_ra(2)).winner == EXISTS
