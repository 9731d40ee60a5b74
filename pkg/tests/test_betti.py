"""The Mayer-Vietoris pipeline: pages, degeneration, Betti readout."""

from math import comb
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvbetti import (
    ConsistencyError,
    MVPage,
    ValidationError,
    compute_betti,
    count_flats,
    degeneration_check,
    essentialize,
    first_page,
    graded_from_second_page,
    kunneth_shift,
    last_cohomology_dim,
    localized_flat_cohomology,
    parse_arrangement,
    punctured_space_cohomology,
    second_page,
)
from mvbetti.generate import (
    random_affine_arrangement,
    random_projective_arrangement,
)

from helpers import BRAID_A3, PARALLEL_A2, boolean_arrangement_text


def _first_page_of(text):
    arr = parse_arrangement(text)
    return first_page(count_flats(essentialize(arr).essential))


def test_punctured_space():
    assert punctured_space_cohomology(1) == {-1: 1, 0: 1}
    assert punctured_space_cohomology(2) == {-2: 1, 1: 1}
    for m in range(1, 8):
        assert punctured_space_cohomology(m)[-m] == 1
    with pytest.raises(ValidationError):
        punctured_space_cohomology(0)


def test_localized_flat():
    assert localized_flat_cohomology(2, 1) == {-2: 1, -1: 1}
    assert localized_flat_cohomology(2, None) == {-2: 1}
    assert localized_flat_cohomology(3, 0) == {-3: 1, 2: 1}
    with pytest.raises(ValidationError):
        localized_flat_cohomology(2, 2)


def test_first_page_boolean():
    page = _first_page_of(boolean_arrangement_text(2))
    assert page.dims == {(-1, -2): 1, (0, -2): 2, (0, -1): 2, (-1, 1): 1}


def test_first_page_braid():
    page = _first_page_of(BRAID_A3)
    assert page.row(-2) == {-2: 1, -1: 3, 0: 3}
    assert page.dims[(0, -1)] == 3
    assert page.dims[(-1, 1)] == 3
    assert page.dims[(-2, 1)] == 1


def test_first_page_rejects_empty():
    arr = parse_arrangement("affine 2\n1 0 0\n")
    table = count_flats(arr)
    page = first_page(table)
    assert page.r == 1
    from mvbetti.flats import FlatCounts

    with pytest.raises(ValidationError):
        first_page(FlatCounts({}, {}, 2, 0))


def test_last_cohomology_examples():
    assert last_cohomology_dim([1, 4, 6, 4]) == 1
    assert last_cohomology_dim([3]) == 3
    assert last_cohomology_dim([1, 3]) == 2


def test_last_cohomology_binomial_rows():
    for r in range(1, 21):
        row = [comb(r, size) for size in range(r, 0, -1)]
        assert last_cohomology_dim(row) == 1


def test_last_cohomology_negative_raises():
    with pytest.raises(ConsistencyError):
        last_cohomology_dim([1, 0])


def test_second_page_examples():
    assert second_page(_first_page_of(boolean_arrangement_text(2))).dims == {
        (0, -2): 1,
        (0, -1): 2,
        (-1, 1): 1,
    }
    assert second_page(_first_page_of(BRAID_A3)).dims == {
        (0, -2): 1,
        (0, -1): 3,
        (-1, 1): 2,
    }
    # the parallel pair stays at ambient dimension 2 here: its q=1 row is empty
    arr = parse_arrangement(PARALLEL_A2)
    assert second_page(first_page(count_flats(arr))).dims == {(0, -2): 1, (0, -1): 2}


def test_degeneration_examples():
    for text in (boolean_arrangement_text(2), BRAID_A3):
        assert degeneration_check(second_page(_first_page_of(text)))
    synthetic = MVPage({(0, 0): 1, (2, -1): 1}, 2, 2, 2)
    assert not degeneration_check(synthetic)


def test_graded_readout():
    graded = graded_from_second_page(second_page(_first_page_of(boolean_arrangement_text(2))))
    assert graded == {-2: 1, -1: 2, 0: 1}
    graded = graded_from_second_page(second_page(_first_page_of(BRAID_A3)))
    assert graded == {-2: 1, -1: 3, 0: 2}
    # r=1 in ambient dimension 1: multiplicative group of the line
    graded = graded_from_second_page(second_page(_first_page_of("affine 1\n1 5\n")))
    assert graded == {-1: 1, 0: 1}


def test_graded_rejects_misplaced_entry():
    with pytest.raises(ConsistencyError):
        graded_from_second_page(MVPage({(0, -2): 1, (0, 1): 1}, 2, 2, 3))


def test_kunneth_shift():
    assert kunneth_shift({-2: 1, 0: 3}, 0) == {-2: 1, 0: 3}
    assert kunneth_shift({-2: 1, -1: 3, 0: 2}, 1) == {-3: 1, -2: 3, -1: 2}
    m = 4
    assert kunneth_shift(punctured_space_cohomology(m), m - 1) == {-2 * m + 1: 1, 0: 1}


def test_compute_betti_named_examples():
    braid = compute_betti(parse_arrangement(BRAID_A3))
    assert braid.betti == (1, 3, 2, 0)
    assert braid.essential_rank == 2
    assert braid.shift == 1
    assert braid.agreement

    parallel = compute_betti(parse_arrangement(PARALLEL_A2))
    assert parallel.betti == (1, 2, 0)
    assert parallel.poincare == (1, 2)

    for n in range(1, 5):
        rep = compute_betti(parse_arrangement(boolean_arrangement_text(n)))
        assert rep.betti == tuple(comb(n, k) for k in range(n + 1))
        assert rep.agreement


def test_compute_betti_generic_lines():
    # five explicit generic lines in the plane
    text = "affine 2\n1 0 0\n0 1 0\n1 1 1\n1 -1 2\n2 1 5\n"
    rep = compute_betti(parse_arrangement(text))
    assert rep.general_position
    assert rep.betti == (1, 5, 10)


def test_compute_betti_braid_family():
    # the complement of {x_i = x_j} in affine m-space has Poincare polynomial
    # (1+t)(1+2t)...(1+(m-1)t), a classical closed form
    from itertools import combinations

    for m in (3, 4, 5):
        lines = [f"affine {m}"]
        for i, j in combinations(range(m), 2):
            coeffs = ["0"] * m
            coeffs[i], coeffs[j] = "1", "-1"
            lines.append(" ".join(coeffs) + " 0")
        rep = compute_betti(parse_arrangement("\n".join(lines)))
        poly = [1]
        for k in range(1, m):
            poly = [a + k * b for a, b in zip(poly + [0], [0] + poly)]
        assert rep.poincare == tuple(poly)
        assert rep.agreement
        assert rep.shift == 1


def test_compute_betti_central_generic():
    # four planes through the origin in general direction: (1+t)(1+3t+3t^2)
    rep = compute_betti(parse_arrangement("affine 3\n1 0 0 0\n0 1 0 0\n0 0 1 0\n1 1 1 0\n"))
    assert rep.betti == (1, 4, 6, 3)
    assert rep.agreement


def test_compute_betti_empty_arrangement():
    rep = compute_betti(parse_arrangement("affine 3\n"))
    assert rep.betti == (1, 0, 0, 0)
    assert rep.e1 is None and rep.e2 is None
    assert rep.agreement


def test_compute_betti_single_projective_hyperplane():
    rep = compute_betti(parse_arrangement("projective 2\n1 2 3\n"))
    assert rep.betti == (1, 0, 0)


def test_compute_betti_infinity_on_affine_rejected():
    with pytest.raises(ValidationError):
        compute_betti(parse_arrangement(PARALLEL_A2), infinity_index=0)


def test_parity_support():
    for text in (boolean_arrangement_text(3), BRAID_A3, PARALLEL_A2):
        rep = compute_betti(parse_arrangement(text))
        n = rep.essential_rank
        for (p, q) in rep.e2.dims:
            assert q == -n or (q - n) % 2 == 1


@given(st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_pipeline_equals_oracles(seed):
    rng = Random(seed)
    arr = random_affine_arrangement(rng, rng.randint(1, 4), rng.randint(1, 6))
    rep = compute_betti(arr)
    assert rep.agreement
    assert rep.betti[0] == 1
    assert all(rep.betti[k] == 0 for k in range(rep.essential_rank + 1, rep.n + 1))
    assert degeneration_check(rep.e2)


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_deconing_invariance(seed):
    rng = Random(seed)
    arr = random_projective_arrangement(rng, rng.randint(1, 3), rng.randint(1, 5))
    reports = [compute_betti(arr, infinity_index=k) for k in range(arr.r)]
    assert len({rep.betti for rep in reports}) == 1
    assert all(rep.agreement for rep in reports)
