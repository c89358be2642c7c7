import pytest

from dgpoly import (
    Digraph,
    MAJORITY,
    MALTSEV,
    TernaryOp,
    find_homomorphism_bruteforce,
    find_polymorphism_bruteforce,
    verify_identities,
    verify_polymorphism,
)

from .conftest import C3, F, L1, N4, NULL, P2
from .helpers import seeded_digraph

PATH3 = Digraph(3, {(0, 1), (1, 2)})
# Exhaustive table search is practical up to n = 4; stay under that here.
C2_C2 = Digraph(4, {(0, 1), (1, 0), (2, 3), (3, 2)})


def test_c3_maltsev_found_and_valid():
    f = find_polymorphism_bruteforce(C3, MALTSEV)
    assert f is not None
    assert verify_identities(f, MALTSEV)
    assert verify_polymorphism(C3, f)


def test_n4_has_majority_but_no_maltsev():
    assert find_polymorphism_bruteforce(N4, MALTSEV) is None
    maj = find_polymorphism_bruteforce(N4, MAJORITY)
    assert maj is not None
    assert verify_polymorphism(N4, maj)


def test_loop_majority_is_unique_table():
    assert find_polymorphism_bruteforce(L1, MAJORITY) == TernaryOp(1, (0,))


def test_null_graph_trivial_table():
    assert find_polymorphism_bruteforce(NULL, MALTSEV) == TernaryOp(0, ())


def test_oracle_rejects_unknown_kind():
    with pytest.raises(ValueError):
        find_polymorphism_bruteforce(C3, "minority")


def test_oracle_is_deterministic():
    a = find_polymorphism_bruteforce(C2_C2, MALTSEV)
    b = find_polymorphism_bruteforce(C2_C2, MALTSEV)
    assert a == b


@pytest.mark.parametrize("g", [C3, F, P2, L1, C2_C2])
@pytest.mark.parametrize("kind", [MAJORITY, MALTSEV])
def test_returned_tables_self_check(g, kind):
    f = find_polymorphism_bruteforce(g, kind)
    assert f is not None
    assert verify_identities(f, kind)
    assert verify_polymorphism(g, f)


def test_hom_edge_into_triangle():
    h = find_homomorphism_bruteforce(P2, C3, {})
    assert h == {0: 0, 1: 1}


def test_hom_pinned_path():
    h = find_homomorphism_bruteforce(PATH3, C3, {0: 0, 2: 2})
    assert h == {0: 0, 1: 1, 2: 2}


def test_hom_contradictory_pins():
    assert find_homomorphism_bruteforce(PATH3, C3, {0: 0, 2: 0}) is None


def test_hom_loop_needs_loop():
    loop = Digraph(1, {(0, 0)})
    assert find_homomorphism_bruteforce(loop, C3, {}) is None
    assert find_homomorphism_bruteforce(loop, L1, {}) == {0: 0}


def test_hom_empty_pattern():
    assert find_homomorphism_bruteforce(NULL, C3, {}) == {}


def test_hom_rejects_bad_pins():
    with pytest.raises(ValueError):
        find_homomorphism_bruteforce(P2, C3, {0: 3})
    with pytest.raises(ValueError):
        find_homomorphism_bruteforce(P2, C3, {5: 0})


def test_hom_respects_pins_on_seeded_graphs():
    hits = 0
    for seed in range(60):
        h_pat = seeded_digraph(3, seed, p=0.3)
        g = seeded_digraph(4, 1000 + seed, p=0.6)
        hom = find_homomorphism_bruteforce(h_pat, g, {0: 0} if g.n else {})
        if hom is None:
            continue
        hits += 1
        assert hom[0] == 0
        for u, v in h_pat.edges:
            assert g.has_edge(hom[u], hom[v])
    assert hits > 0
