from itertools import permutations

import pytest

from dgpoly import (
    CensusRow,
    Digraph,
    LABELED,
    MAJORITY,
    MALTSEV,
    MAX_N,
    UP_TO_ISO,
    count_maltsev,
    decide_maltsev,
    enumerate_digraphs,
    find_polymorphism_bruteforce,
    is_rectangular,
    rows_to_csv,
    smallest_rectangular_non_maltsev,
)

from .conftest import REFUSED_DEEP

# (total, rectangular, maltsev, majority) per size, pinned by earlier runs
# and cross-checked below against oracle-only recounts at small sizes.
LABELED_ROWS = {
    0: (1, 1, 1, 1),
    1: (2, 2, 2, 2),
    2: (16, 12, 12, 16),
    3: (512, 128, 116, 452),
    4: (65536, 2100, 1620, 1620),
}
ISO_ROWS = {
    0: (1, 1, 1, 1),
    1: (2, 2, 2, 2),
    2: (10, 8, 8, 10),
    3: (104, 31, 29, 92),
    4: (3044, 141, 118, 118),
}


def encode(g):
    return sum(1 << (u * g.n + v) for u, v in g.edges)


def relabel(g, perm):
    return Digraph(g.n, {(perm[u], perm[v]) for u, v in g.edges})


def test_labeled_enumeration_is_exhaustive():
    graphs = list(enumerate_digraphs(2, LABELED))
    assert len(graphs) == 16
    assert len({encode(g) for g in graphs}) == 16


def test_iso_enumeration_counts():
    assert len(list(enumerate_digraphs(2, UP_TO_ISO))) == 10
    assert len(list(enumerate_digraphs(3, UP_TO_ISO))) == 104


def test_iso_representatives_are_canonical_and_cover():
    reps = list(enumerate_digraphs(3, UP_TO_ISO))
    covered = 0
    for g in reps:
        orbit = {encode(relabel(g, perm)) for perm in permutations(range(3))}
        assert encode(g) == min(orbit)
        covered += len(orbit)
    assert covered == 512


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_labeled_rows(n):
    row = count_maltsev(n, LABELED)
    assert (row.total, row.rectangular, row.maltsev, row.majority) == LABELED_ROWS[n]


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_iso_rows(n):
    row = count_maltsev(n, UP_TO_ISO)
    assert (row.total, row.rectangular, row.maltsev, row.majority) == ISO_ROWS[n]


def test_n4_rows():
    row = count_maltsev(4, LABELED)
    assert (row.total, row.rectangular, row.maltsev, row.majority) == LABELED_ROWS[4]
    iso = count_maltsev(4, UP_TO_ISO)
    assert (iso.total, iso.rectangular, iso.maltsev, iso.majority) == ISO_ROWS[4]


def test_labeled_n2_against_oracle_recount():
    # Independent route: classify all 16 graphs by brute force alone.
    rect = maltsev = majority = 0
    for g in enumerate_digraphs(2, LABELED):
        rect += is_rectangular(g)
        maltsev += find_polymorphism_bruteforce(g, MALTSEV) is not None
        majority += find_polymorphism_bruteforce(g, MAJORITY) is not None
    assert (16, rect, maltsev, majority) == LABELED_ROWS[2]


def test_workers_do_not_change_counts():
    assert count_maltsev(3, LABELED, workers=3) == count_maltsev(3, LABELED)
    assert count_maltsev(3, UP_TO_ISO, workers=2) == count_maltsev(3, UP_TO_ISO)


def test_size_and_mode_guards():
    with pytest.raises(ValueError):
        count_maltsev(MAX_N + 1, LABELED)
    with pytest.raises(ValueError):
        count_maltsev(-1, LABELED)
    with pytest.raises(ValueError):
        count_maltsev(2, "canonical")
    with pytest.raises(ValueError):
        count_maltsev(2, LABELED, workers=0)


def test_csv_shape():
    rows = [count_maltsev(n, LABELED) for n in range(3)]
    text = rows_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "n,mode,total,rectangular,maltsev,majority"
    assert lines[1] == "0,labeled,1,1,1,1"
    assert lines[3] == "2,labeled,16,12,12,16"


def test_row_json_dict():
    row = count_maltsev(2, LABELED)
    assert row.to_json_dict() == {
        "n": 2,
        "mode": "labeled",
        "total": 16,
        "rectangular": 12,
        "maltsev": 12,
        "majority": 16,
    }


def test_monotone_inequalities():
    for n in range(4):
        for mode in (LABELED, UP_TO_ISO):
            row = count_maltsev(n, mode)
            assert row.maltsev <= row.rectangular <= row.total
            assert row.maltsev <= row.majority <= row.total


def test_smallest_rectangular_non_maltsev():
    g, cert = smallest_rectangular_non_maltsev()
    assert g == REFUSED_DEEP
    assert is_rectangular(g)
    assert not cert.accepted
    assert cert.level == 1
    assert find_polymorphism_bruteforce(g, MALTSEV) is None
    assert not decide_maltsev(g).accepted
