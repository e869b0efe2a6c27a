import time

import pytest

from benchmark_data import T60_ITEMS
from exactpack import (
    Instance,
    MODE_BOUNDED,
    Multiset,
    Packing,
    PatternSetMismatch,
    SearchConfig,
    TimeoutExceeded,
    enumerate_patterns,
    solve,
    solve_all,
    verify,
)
from exactpack import search as search_mod


def test_unique_solution(tiny_pairs):
    ps = enumerate_patterns(tiny_pairs)
    packing = solve(tiny_pairs, ps)
    assert packing == Packing.from_bins([(1, 6), (2, 5), (3, 4)])
    assert verify(tiny_pairs, packing).valid


def test_single_pattern_cannot_fill_two_distinct_bins(all_twos):
    ps = enumerate_patterns(all_twos, MODE_BOUNDED)
    assert solve(all_twos, ps) is None
    assert solve_all(all_twos, ps) == []


def test_solve_all_counts(tiny_pairs):
    ps = enumerate_patterns(tiny_pairs)
    assert len(solve_all(tiny_pairs, ps)) == 1
    inst = Instance(items=Multiset([1, 2, 3, 4]), bins=2, per_bin=2, capacity=5)
    packings = solve_all(inst, enumerate_patterns(inst))
    assert packings == [Packing.from_bins([(1, 4), (2, 3)])]


def test_t60_solves_and_verifies(t60):
    ps = enumerate_patterns(t60)
    packing = solve(t60, ps, SearchConfig(timeout=60.0))
    assert packing is not None
    assert verify(t60, packing).valid


def test_deterministic_solutions_are_byte_identical(t60):
    ps = enumerate_patterns(t60)
    a = solve(t60, ps)
    b = solve(t60, ps)
    assert a == b
    assert repr(a.patterns) == repr(b.patterns)


def test_deterministic_returns_lex_least_by_indices():
    # four distinct packings: each pairs a sum-18 half with its complement
    inst = Instance(items=Multiset([1, 2, 3, 4, 5, 6, 7, 8]), bins=2, per_bin=4,
                    capacity=18)
    ps = enumerate_patterns(inst)
    index_of = {p: i for i, p in enumerate(ps.patterns)}
    everything = solve_all(inst, ps)
    first = solve(inst, ps)
    key = lambda packing: tuple(sorted(index_of[p] for p in packing.patterns))
    assert key(first) == min(key(p) for p in everything)
    # solve_all is ordered by chosen-index sequence
    keys = [key(p) for p in everything]
    assert keys == sorted(keys)


def test_nondeterministic_mode_is_sound(t60):
    ps = enumerate_patterns(t60)
    packing = solve(t60, ps, SearchConfig(deterministic=False))
    assert verify(t60, packing).valid


def test_verdicts_agree_across_modes():
    feasible = Instance(items=Multiset([1, 2, 3, 4, 5, 6]), bins=3, per_bin=2,
                        capacity=7)
    infeasible = Instance(items=Multiset([1, 1, 2, 2]), bins=2, per_bin=2,
                          capacity=3)
    for inst in (feasible, infeasible):
        ps = enumerate_patterns(inst, MODE_BOUNDED)
        det = solve(inst, ps)
        rnd = solve(inst, ps, SearchConfig(deterministic=False))
        assert (det is None) == (rnd is None)


def test_solution_limit():
    inst = Instance(items=Multiset([1, 2, 3, 4, 5, 6, 7, 8]), bins=2, per_bin=4,
                    capacity=18)
    ps = enumerate_patterns(inst)
    total = solve_all(inst, ps)
    assert len(total) == 4
    limited = solve_all(inst, ps, SearchConfig(solution_limit=1))
    assert limited == total[:1]
    first_only = solve_all(inst, ps, SearchConfig(first_solution_only=True,
                                                  solution_limit=10**9))
    assert first_only == total[:1]


def test_solution_limit_must_be_positive():
    with pytest.raises(ValueError):
        SearchConfig(solution_limit=0)


def test_timeout_trips(t60):
    ps = enumerate_patterns(t60)
    with pytest.raises(TimeoutExceeded):
        solve(t60, ps, SearchConfig(timeout=0.0))


def test_pattern_set_mismatch(t60, tiny_pairs):
    foreign = enumerate_patterns(tiny_pairs)
    with pytest.raises(PatternSetMismatch):
        solve(t60, foreign)


def test_permutation_invariance():
    items = [4, 1, 3, 2, 6, 5]
    forward = Instance(items=Multiset(items), bins=3, per_bin=2, capacity=7)
    backward = Instance(items=Multiset(list(reversed(items))), bins=3, per_bin=2,
                        capacity=7)
    a = solve(forward, enumerate_patterns(forward))
    b = solve(backward, enumerate_patterns(backward))
    assert a == b


def test_scaling_invariance_of_verdict():
    base = Instance(items=Multiset([1, 1, 2, 2]), bins=2, per_bin=2, capacity=3)
    assert solve(base, enumerate_patterns(base, MODE_BOUNDED)) is None
    for t in (2, 9):
        scaled = Instance(items=Multiset([t, t, 2 * t, 2 * t]), bins=2, per_bin=2,
                          capacity=3 * t)
        assert solve(scaled, enumerate_patterns(scaled, MODE_BOUNDED)) is None


def test_conservation_debug_mode(tiny_pairs):
    ps = enumerate_patterns(tiny_pairs)
    search_mod.DEBUG_CONSERVATION = True
    try:
        assert solve(tiny_pairs, ps) is not None
        assert solve_all(tiny_pairs, ps)
    finally:
        search_mod.DEBUG_CONSERVATION = False


def test_t60_within_time_budget(t60):
    ps = enumerate_patterns(t60)
    start = time.perf_counter()
    packing = solve(t60, ps)
    elapsed = time.perf_counter() - start
    assert packing is not None
    assert elapsed < 60.0
