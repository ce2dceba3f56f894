import numpy as np
import pytest

from quadtangles import quadratic
from quadtangles.annular import admissible_labels, half_rotation
from quadtangles.quadratic import (
    CIRC,
    CORRECTED,
    PRINTED,
    STAR,
    QuadraticRef,
    StructureConstants,
    even_consistency,
    master_inner,
    oracle_inner,
    project_annular,
    random_labels,
    random_structure_constants,
    single_label_circ,
    single_label_star,
)
from quadtangles.scalars import NumericContext, RootOfUnity

CTX = NumericContext(1.3)


def _draw(n, count=3, seed=0):
    rng = np.random.default_rng(seed)
    return random_structure_constants(random_labels(n, count, rng), rng)


@pytest.mark.parametrize("n", range(2, 7))
def test_random_constants_are_valid(n):
    sc = _draw(n)
    assert sc.violations() == []


def test_validation_catches_broken_tables():
    sc = _draw(3, 2)
    sc.a[0][0][1] = sc.a[0][0][1] + 1
    assert sc.violations()
    with pytest.raises(ValueError):
        sc.validate()


def test_json_round_trip():
    sc = _draw(4, 2)
    back = StructureConstants.from_json(sc.to_json())
    assert back.labels == sc.labels
    assert np.allclose(np.array(back.a), np.array(sc.a)) and np.allclose(np.array(back.b), np.array(sc.b))


def test_range_checks():
    with pytest.raises(ValueError):
        QuadraticRef("cross", 0, 0)
    with pytest.raises(ValueError):
        QuadraticRef(CIRC, 0, 0, 2).check_range(3)
    with pytest.raises(ValueError):
        QuadraticRef(STAR, 0, 0, 2).check_range(4)
    QuadraticRef(CIRC, 0, 0, 2).check_range(4)


def test_star_projection_is_half_rotated_swapped_circ():
    sc = _draw(4, 2, seed=3)
    swapped = StructureConstants(sc.labels, sc.b, sc.a)
    for s in range(2):
        for t in range(2):
            star = project_annular(QuadraticRef(STAR, s, t), sc, CTX)
            circ = project_annular(QuadraticRef(CIRC, s, t), swapped, CTX)
            factor = complex(sc.labels[s].sigma * sc.labels[t].sigma)
            for r in star:
                want = half_rotation(circ[r], 1).scale(factor)
                assert np.allclose(star[r].coeffs, want.coeffs)


@pytest.mark.parametrize("n", range(2, 7))
def test_circ_closed_form_matches_oracle(n):
    sc = _draw(n, seed=n)
    rng = np.random.default_rng(100 + n)
    for j in range(n // 2 + 1):
        s, t, p, q = (int(v) for v in rng.integers(3, size=4))
        x, y = QuadraticRef(CIRC, s, t), QuadraticRef(CIRC, p, q, j)
        assert abs(complex(master_inner(x, y, sc, CTX)) - complex(oracle_inner(x, y, sc, CTX))) < 1e-9


@pytest.mark.parametrize("n", range(2, 7))
def test_corrected_star_matches_oracle(n):
    sc = _draw(n, seed=n)
    rng = np.random.default_rng(200 + n)
    for j in range((n + 1) // 2):
        s, t, p, q = (int(v) for v in rng.integers(3, size=4))
        x, y = QuadraticRef(CIRC, s, t), QuadraticRef(STAR, p, q, j)
        got = complex(master_inner(x, y, sc, CTX, CORRECTED))
        assert abs(got - complex(oracle_inner(x, y, sc, CTX))) < 1e-9


def test_printed_star_differs_from_oracle():
    sc = _draw(3, seed=1)
    worst = 0.0
    for s in range(3):
        for t in range(3):
            x, y = QuadraticRef(CIRC, 0, 1), QuadraticRef(STAR, s, t)
            worst = max(worst, abs(complex(master_inner(x, y, sc, CTX, PRINTED)) - complex(oracle_inner(x, y, sc, CTX))))
    assert worst > 1e-3


def test_forms_agree_on_a_single_label():
    # with one label every sigma factor that the two star forms disagree on cancels
    for n in range(2, 7):
        for lab in admissible_labels(n):
            sc = StructureConstants([lab], [[[0.7]]], [[[-0.4]]])
            x, y = QuadraticRef(CIRC, 0, 0), QuadraticRef(STAR, 0, 0)
            printed = complex(master_inner(x, y, sc, CTX, PRINTED))
            assert abs(printed - complex(master_inner(x, y, sc, CTX, CORRECTED))) < 1e-12
            assert abs(printed - complex(oracle_inner(x, y, sc, CTX))) < 1e-9


@pytest.mark.parametrize("n", range(1, 7))
def test_single_label_displays(n):
    for lab in admissible_labels(n):
        alpha, beta = 0.3, -1.1
        sc = StructureConstants([lab], [[[alpha]]], [[[beta]]])
        circ = complex(oracle_inner(QuadraticRef(CIRC, 0, 0), QuadraticRef(CIRC, 0, 0), sc, CTX))
        star = complex(oracle_inner(QuadraticRef(CIRC, 0, 0), QuadraticRef(STAR, 0, 0), sc, CTX))
        assert abs(circ - complex(single_label_circ(n, lab.omega, lab.sigma, alpha, beta, CTX))) < 1e-9
        assert abs(star - complex(single_label_star(n, lab.omega, lab.sigma, alpha, beta, CTX))) < 1e-9


@pytest.mark.parametrize("n", [2, 4, 6])
def test_even_consistency_exponent(n):
    k_minus_fails = False
    for seed in range(4):
        sc = _draw(n, seed=seed)
        for quad in ((0, 1, 2, 1), (1, 2, 0, 0), (2, 2, 1, 0)):
            by_key = {(r.exponent, r.form): r for r in even_consistency(sc, *quad, CTX)}
            assert by_key["k+1", "oracle"].holds
            assert by_key["k+1", CORRECTED].holds
            k_minus_fails |= not by_key["k-1", "oracle"].holds
    # for n = 2 every omega is +-1, so the two exponents coincide
    assert k_minus_fails == (n > 2)


def test_even_consistency_needs_even_n():
    with pytest.raises(ValueError):
        even_consistency(_draw(3), 0, 0, 0, 0, CTX)


def test_master_rejects_bad_first_argument():
    sc = _draw(2)
    with pytest.raises(ValueError):
        master_inner(QuadraticRef(STAR, 0, 0), QuadraticRef(CIRC, 0, 0), sc, CTX)
    with pytest.raises(ValueError):
        master_inner(QuadraticRef(CIRC, 0, 0), QuadraticRef(CIRC, 0, 0), sc, CTX, form="other")


def test_tl_inner_only_sees_diagonal_pairs():
    sc = _draw(3)
    assert quadratic.tl_inner(QuadraticRef(CIRC, 0, 1), QuadraticRef(CIRC, 0, 0), sc, CTX) == 0
    assert abs(complex(quadratic.tl_inner(QuadraticRef(CIRC, 0, 0), QuadraticRef(CIRC, 1, 1), sc, CTX))) > 0


def test_labels_share_weight():
    with pytest.raises(ValueError):
        StructureConstants(
            [admissible_labels(2)[0], admissible_labels(3)[0]],
            [[[0, 0], [0, 0]], [[0, 0], [0, 0]]], [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
        )
    assert RootOfUnity(1, 2) in {lab.omega for lab in admissible_labels(2)}
