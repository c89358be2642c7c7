import warnings

import pytest

from dgpoly import (
    CspInstance,
    Digraph,
    MAJORITY,
    MAYBE,
    NO,
    TernaryOp,
    YES,
    find_homomorphism_bruteforce,
    find_polymorphism_bruteforce,
    is_maltsev,
    propagate_pair_consistency,
    random_instance,
    solve_csp_consistency,
)

from .conftest import C3, N4, NULL, P2
from .helpers import seeded_digraph

PATH3 = Digraph(3, {(0, 1), (1, 2)})


def maltsev_targets(count, max_n=4):
    out = []
    seed = 0
    while len(out) < count:
        g = seeded_digraph(1 + seed % max_n, 900 + seed, p=0.4)
        if g.edges and is_maltsev(g):
            out.append(g)
        seed += 1
    return out


def test_instance_validation():
    with pytest.raises(ValueError):
        CspInstance(P2, {5: 0})
    with pytest.raises(ValueError):
        CspInstance(P2, {0: -1})


def test_instance_json_round_trip():
    inst = CspInstance(PATH3, {0: 0, 2: 2})
    data = inst.to_json_dict()
    assert data["pins"] == {"0": 0, "2": 2}
    assert CspInstance.from_json_dict(data) == inst


def test_pinned_path_satisfiable(c3):
    assert solve_csp_consistency(CspInstance(PATH3, {0: 0, 2: 2}), c3) == YES


def test_contradictory_pins(c3):
    assert solve_csp_consistency(CspInstance(PATH3, {0: 0, 2: 0}), c3) == NO


def test_loop_pattern_into_loopless_target(c3):
    assert solve_csp_consistency(CspInstance(Digraph(1, {(0, 0)}), {}), c3) == NO


def test_empty_pattern_is_yes(c3):
    assert solve_csp_consistency(CspInstance(NULL, {}), c3) == YES


def test_pin_out_of_target_range(c3):
    with pytest.raises(ValueError):
        solve_csp_consistency(CspInstance(P2, {0: 3}), c3)


def test_uncertified_target_downgrades_to_maybe():
    with pytest.warns(UserWarning):
        verdict = solve_csp_consistency(CspInstance(P2, {}), N4)
    assert verdict == MAYBE


def test_no_needs_no_certificate():
    # Emptied domains refute regardless of the target's polymorphisms.
    inst = CspInstance(Digraph(1, {(0, 0)}), {})
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert solve_csp_consistency(inst, N4) == NO


def test_supplied_majority_table_upgrades():
    maj = find_polymorphism_bruteforce(N4, MAJORITY)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert solve_csp_consistency(CspInstance(P2, {}), N4, majority=maj) == YES


def test_bogus_majority_table_rejected():
    fake = TernaryOp(4, tuple(0 for _ in range(64)))
    with pytest.raises(ValueError):
        solve_csp_consistency(CspInstance(P2, {}), N4, majority=fake)


def test_propagation_reaches_fixpoint():
    # The snapshot must already be closed under composition through any
    # third variable, with domains the exact projections of the relations.
    for seed in range(30):
        g = seeded_digraph(3, seed, p=0.5)
        inst = random_instance(g, vars=4, edge_prob=0.4, pin_count=1, seed=seed)
        state = propagate_pair_consistency(inst, g)
        if state.is_empty():
            continue
        nv = inst.h.n
        rel = state.pair_relations
        for i in range(nv):
            for j in range(nv):
                if i == j:
                    continue
                assert state.domains[i] == {a for a, _ in rel[(i, j)]}
                for k in range(nv):
                    if k in (i, j):
                        continue
                    for a, b in rel[(i, j)]:
                        assert any(
                            (a, c) in rel[(i, k)] and (c, b) in rel[(k, j)]
                            for c in state.domains[k]
                        )


def test_propagation_deterministic():
    inst = random_instance(C3, vars=5, edge_prob=0.5, pin_count=1, seed=3)
    assert propagate_pair_consistency(inst, C3) == propagate_pair_consistency(inst, C3)


def test_monotonicity_adding_pins():
    # A refuted instance stays refuted under any extra pin.
    for seed in range(120):
        g = seeded_digraph(3, 300 + seed, p=0.4)
        if g.n == 0:
            continue
        inst = random_instance(g, vars=4, edge_prob=0.5, pin_count=1, seed=seed)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if solve_csp_consistency(inst, g) != NO:
                continue
            for var in range(inst.h.n):
                if var in inst.pins:
                    continue
                extended = CspInstance(inst.h, {**inst.pins, var: 0})
                assert solve_csp_consistency(extended, g) == NO


def test_completeness_on_maltsev_targets():
    targets = maltsev_targets(10)
    for seed in range(300):
        g = targets[seed % len(targets)]
        inst = random_instance(g, vars=2 + seed % 5, edge_prob=0.4, pin_count=1, seed=seed)
        verdict = solve_csp_consistency(inst, g)
        hom = find_homomorphism_bruteforce(inst.h, g, inst.pins)
        assert verdict == (YES if hom is not None else NO)


def test_no_is_sound_on_arbitrary_targets():
    for seed in range(300):
        g = seeded_digraph(1 + seed % 4, 4000 + seed, p=0.5)
        inst = random_instance(g, vars=2 + seed % 4, edge_prob=0.5, pin_count=0, seed=seed)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            verdict = solve_csp_consistency(inst, g)
        if verdict == NO:
            assert find_homomorphism_bruteforce(inst.h, g, inst.pins) is None


def test_random_instance_deterministic():
    a = random_instance(C3, vars=5, edge_prob=0.5, pin_count=2, seed=11)
    b = random_instance(C3, vars=5, edge_prob=0.5, pin_count=2, seed=11)
    assert a == b
    c = random_instance(C3, vars=5, edge_prob=0.5, pin_count=2, seed=12)
    assert a != c


def test_random_instance_degenerate():
    inst = random_instance(C3, vars=4, edge_prob=0.0, pin_count=0, seed=0)
    assert inst.h == Digraph(4, set())
    assert inst.pins == {}
    assert solve_csp_consistency(inst, C3) == YES


def test_random_instance_validation():
    with pytest.raises(ValueError):
        random_instance(C3, vars=-1, edge_prob=0.5, pin_count=0, seed=0)
    with pytest.raises(ValueError):
        random_instance(C3, vars=3, edge_prob=1.5, pin_count=0, seed=0)
    with pytest.raises(ValueError):
        random_instance(C3, vars=3, edge_prob=0.5, pin_count=4, seed=0)
    with pytest.raises(ValueError):
        random_instance(NULL, vars=3, edge_prob=0.5, pin_count=1, seed=0)
