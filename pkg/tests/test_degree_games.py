"""Degree-weight engine, its Maker/Breaker strategies, and the flooding Breaker."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diameter_games import (
    DegreeWeightState,
    FloodingBreaker,
    MinDegStrategy,
    Player,
    RandomStrategy,
    StrategyInapplicable,
    apply_claim,
    flood_degree_bound,
    flood_target,
    maker_graph,
    min_degree_exceeds,
    mindeg_breaker_select,
    mindeg_params,
    mindeg_potential,
    new_game,
    run_match,
)
from diameter_games.graph_metrics import degree_profile


class TestParams:
    """Sizing formulas, frozen against values computed once by hand."""

    def test_frozen_n100(self):
        p = mindeg_params(100, 1, 1)
        assert p.k == pytest.approx(45.522813881554384, rel=1e-12)
        assert p.lambda1 == pytest.approx(0.21459660262893476, rel=1e-12)
        assert p.lambda2 == pytest.approx(0.21459660262893474, rel=1e-12)
        assert p.d_max == pytest.approx(4.477186118445616, rel=1e-12)
        assert p.bias_precondition_ok
        assert p.non_vacuous
        assert p.t0_ok

    def test_frozen_n200_biased(self):
        p = mindeg_params(200, 2, 3)
        assert p.lambda2 == pytest.approx(0.148581029612, rel=1e-9)
        assert p.lambda1 == pytest.approx(0.090598122819, rel=1e-9)
        assert p.d_max == pytest.approx(-24.816940, rel=1e-6)
        # Negative degree floor: the guarantee is vacuous at this size.
        assert not p.non_vacuous

    def test_equal_bias_lambdas_coincide(self):
        # With a == b == 1 both rates solve the same equation.
        p = mindeg_params(50, 1, 1)
        assert p.lambda1 == pytest.approx(p.lambda2, rel=1e-9)

    def test_start_potential_below_one_when_sized(self):
        p = mindeg_params(100, 1, 1)
        assert math.exp(p.t0_log) < 1.0

    def test_centering_constants(self):
        p = mindeg_params(100, 1, 1)
        assert p.c_self == pytest.approx(p.d_max)
        assert p.c_opp == pytest.approx(p.b * 100 / (p.a + p.b) + p.k)


class TestWeightState:
    def test_sync_matches_fresh_rebuild(self, rng):
        """Incremental observes equal a from-scratch rebuild on random play."""
        params = mindeg_params(12, 1, 1)
        state = new_game(12, 1, 1)
        tracker = DegreeWeightState(params, Player.MAKER)
        for _ in range(20):
            pool = sorted(state.unclaimed)
            if not pool:
                break
            apply_claim(state, state.to_move, [rng.choice(pool)])
        tracker.sync(state)
        fresh = DegreeWeightState(params, Player.MAKER)
        fresh.sync(state)
        np.testing.assert_allclose(tracker.log_w, fresh.log_w, rtol=1e-9)
        assert tracker.potential() == pytest.approx(fresh.potential(), rel=1e-9)

    def test_rewound_log_rejected(self):
        params = mindeg_params(6, 1, 1)
        state = new_game(6, 1, 1)
        tracker = DegreeWeightState(params, Player.MAKER)
        apply_claim(state, Player.MAKER, [(0, 1)])
        tracker.sync(state)
        from diameter_games import InvalidParameters

        with pytest.raises(InvalidParameters):
            tracker.sync(new_game(6, 1, 1))

    def test_select_prefers_low_self_degree(self):
        # After Maker saturates vertex 0, its weight drops; the next pick
        # should avoid 0 entirely.
        params = mindeg_params(6, 1, 1)
        state = new_game(6, 1, 1)
        for w in (1, 2, 3):
            apply_claim(state, Player.MAKER, [(0, w)])
            state.to_move = Player.MAKER  # keep feeding Maker turns
        tracker = DegreeWeightState(params, Player.MAKER)
        tracker.sync(state)
        (u, v) = tracker.select_turn(1)[0]
        assert 0 not in (u, v)

    def test_select_prefers_opponent_pressured_vertices(self):
        params = mindeg_params(6, 1, 1)
        state = new_game(6, 1, 1)
        state.to_move = Player.BREAKER
        apply_claim(state, Player.BREAKER, [(4, 5)])
        tracker = DegreeWeightState(params, Player.MAKER)
        tracker.sync(state)
        (u, v) = tracker.select_turn(1)[0]
        # Vertices 4 and 5 carry opponent degree, hence the largest weights;
        # the edge between them is gone, so exactly one endpoint shows up.
        assert len({u, v} & {4, 5}) == 1

    def test_lex_tie_break_on_fresh_board(self):
        tracker = DegreeWeightState(mindeg_params(8, 1, 1))
        assert tracker.select_turn(1) == [(0, 1)]
        assert tracker.select_turn(3) == [(0, 1), (2, 3), (4, 5)]

    def test_exclude_masks_earlier_picks(self):
        tracker = DegreeWeightState(mindeg_params(8, 1, 1))
        assert tracker.select_turn(1, exclude=((0, 1),))[0] != (0, 1)

    def test_select_does_not_mutate_state(self):
        tracker = DegreeWeightState(mindeg_params(8, 1, 1))
        before = tracker.log_w.copy()
        tracker.select_turn(4)
        np.testing.assert_array_equal(tracker.log_w, before)

    def test_select_truncates_at_board_end(self):
        tracker = DegreeWeightState(mindeg_params(3, 1, 1))
        assert len(tracker.select_turn(10)) == 3


class TestPotentialDecay:
    @pytest.mark.parametrize("role", [Player.MAKER, Player.BREAKER])
    def test_greedy_round_never_raises_potential(self, role):
        """The weight player's full turn compensates any opponent round."""
        n = 20
        params = mindeg_params(n, 1, 1)
        rng = random.Random(99)
        state = new_game(n, 1, 1, first=role)
        tracker = DegreeWeightState(params, role)
        last = None
        while state.unclaimed:
            side = state.to_move
            if side is role:
                tracker.sync(state)
                apply_claim(state, side, tracker.select_turn(
                    state.required_claim_count(side)))
            else:
                pool = sorted(state.unclaimed)
                apply_claim(state, side, rng.sample(
                    pool, state.required_claim_count(side)))
                value = mindeg_potential(state, params, role)
                if last is not None:
                    assert value <= last * (1 + 1e-9)
                last = value


def test_flood_degree_bound_values():
    assert flood_degree_bound(6, 1, 1) == 2
    assert flood_degree_bound(8, 2, 2) == 2
    assert flood_degree_bound(100, 1, 1) == 49
    assert flood_degree_bound(7, 3, 1) == 3


class TestFloodTarget:
    def test_lowest_untouched_vertex(self):
        state = new_game(6, 1, 1)
        apply_claim(state, Player.MAKER, [(0, 2)])
        assert flood_target(state) == 1

    def test_snapshot_uses_first_breaker_turn(self):
        # Maker later touches vertex 1, but the target was fixed earlier.
        state = new_game(6, 1, 1)
        apply_claim(state, Player.MAKER, [(0, 2)])
        apply_claim(state, Player.BREAKER, [(3, 4)])
        apply_claim(state, Player.MAKER, [(1, 2)])
        assert flood_target(state) == 1

    def test_all_touched_raises(self):
        state = new_game(2, 1, 1)
        apply_claim(state, Player.MAKER, [(0, 1)])
        with pytest.raises(StrategyInapplicable):
            flood_target(state)


class TestFloodingBreaker:
    def test_fast_path_matches_reference(self, rng):
        """Cursor strategy and the pure rule agree along random forward play."""
        for trial in range(8):
            trial_rng = random.Random(trial)
            state = new_game(9, 2, 2)
            breaker = FloodingBreaker()
            while state.unclaimed:
                side = state.to_move
                if side is Player.BREAKER:
                    expected = mindeg_breaker_select(state)
                    got = breaker.select(state)
                    assert got == expected, f"trial {trial}, log {len(state.move_log)}"
                    apply_claim(state, side, got)
                else:
                    pool = sorted(state.unclaimed)
                    apply_claim(state, side, trial_rng.sample(
                        pool, state.required_claim_count(side)))

    def test_cursor_resets_on_rewind(self):
        state = new_game(7, 1, 1)
        breaker = FloodingBreaker()
        apply_claim(state, Player.MAKER, [(2, 3)])
        first = breaker.select(state)
        apply_claim(state, Player.BREAKER, first)
        apply_claim(state, Player.MAKER, [(4, 5)])
        breaker.select(state)
        # A strictly shorter log means the position was rewound; cursors
        # must reset and reproduce the original pick.
        state2 = new_game(7, 1, 1)
        apply_claim(state2, Player.MAKER, [(2, 3)])
        again = breaker.select(state2)
        assert first == again

    def test_holds_degree_bound_against_random_maker(self):
        n, a, b = 10, 1, 1
        bound = flood_degree_bound(n, a, b)
        for seed in range(10):
            state = new_game(n, a, b)
            tr = run_match(
                state,
                RandomStrategy(random.Random(seed)),
                FloodingBreaker(),
                min_degree_exceeds(bound),
                seed=seed,
                early_stop=False,
            )
            target = flood_target(state)
            deg = degree_profile(maker_graph(state)).degrees[target]
            assert deg <= bound
            assert tr.winner is Player.BREAKER


class TestMinDegStrategy:
    def test_flags_on_bad_sizing(self):
        # Tiny n with huge bias violates the sizing precondition.
        s = MinDegStrategy(10, 8, 1)
        assert "mindeg-bias-precondition-failed" in s.flags

    def test_no_flags_when_sized(self):
        s = MinDegStrategy(100, 1, 1)
        assert s.flags == []

    def test_wins_mindeg_against_random(self):
        """Maker keeps every degree above the guarantee floor at n=100."""
        n = 100
        params = mindeg_params(n, 1, 1)
        floor = int(params.d_max)
        assert params.non_vacuous
        for seed in (0, 1):
            state = new_game(n, 1, 1)
            tr = run_match(
                state,
                MinDegStrategy(n, 1, 1),
                RandomStrategy(random.Random(seed)),
                min_degree_exceeds(floor),
                seed=seed,
                early_stop=False,
            )
            assert tr.winner is Player.MAKER, f"seed {seed}"


@settings(max_examples=25, deadline=None)
@given(
    n=st.integers(min_value=5, max_value=30),
    a=st.integers(min_value=1, max_value=3),
    b=st.integers(min_value=1, max_value=3),
)
def test_params_scale_sanely(n, a, b):
    p = mindeg_params(n, a, b)
    assert p.lambda2 > 0
    assert p.lambda1 > 0
    assert 0 < p.k
    assert p.d_max < a * n / (a + b)
