from fractions import Fraction

import numpy as np
import pytest

from quadtangles import annular, linalg
from quadtangles.annular import DUAL, PRIMAL, AnnularVector, LowestWeightLabel, admissible_labels
from quadtangles.scalars import DegenerateParameterError, ExactContext, NumericContext, RootOfUnity


def _ctx(n):
    return ExactContext(Fraction(2), annular.label_modulus(n))


def test_admissible_labels_cover_all_square_roots():
    for n in range(1, 7):
        labels = admissible_labels(n)
        assert len(labels) == 2 * n
        assert {(lab.omega, lab.sigma) for lab in labels} == {
            (RootOfUnity(a, n), s) for a in range(n) for s in RootOfUnity(a, n).sqrts()
        }


def test_label_validation():
    with pytest.raises(ValueError):
        LowestWeightLabel(3, RootOfUnity(1, 3), RootOfUnity(1, 3))
    with pytest.raises(ValueError):
        LowestWeightLabel(2, RootOfUnity(1, 3), RootOfUnity(1, 6))
    lab = LowestWeightLabel.from_sigma(4, RootOfUnity(3, 8), "S")
    assert LowestWeightLabel.from_json(lab.to_json()) == lab


@pytest.mark.parametrize("n", range(1, 5))
def test_duality_exact(n):
    ctx = _ctx(n)
    for lab in admissible_labels(n):
        assert linalg.equal(annular.duality_matrix(lab, ctx), linalg.identity(lab.size, ctx), ctx)


@pytest.mark.parametrize("n", range(1, 5))
def test_dual_basis_is_inverse_gram(n):
    ctx = _ctx(n)
    for lab in admissible_labels(n):
        assert linalg.equal(annular.dual_coeffs(lab, ctx), linalg.transpose(annular.dual_gram(lab, ctx)), ctx)


@pytest.mark.parametrize("n", range(1, 5))
def test_closed_form_variants(n):
    ctx = _ctx(n)
    for lab in admissible_labels(n):
        dual = annular.dual_coeffs(lab, ctx)
        assert annular.versions_ii_row0(lab, ctx) == dual[0]
        assert annular.versions_iii_row(lab, ctx) == dual[n + 1]
        assert annular.single_sum_row(lab, ctx, printed=False) == dual[n + 1]


def test_printed_single_sum_prefactor_disagrees():
    n = 2
    ctx = _ctx(n)
    lab = admissible_labels(n)[0]
    assert annular.single_sum_row(lab, ctx, printed=True) != annular.dual_coeffs(lab, ctx)[n + 1]


def test_gram_orientation():
    lab = LowestWeightLabel.from_sigma(2, RootOfUnity(1, 4))
    ctx = _ctx(2)
    g = annular.gram(lab, ctx)
    assert g[0][1] == ctx.root(lab.sigma)
    assert g[1][0] == ctx.root(lab.sigma.inverse())
    assert g[0][0] == ctx.delta


@pytest.mark.parametrize("n", range(1, 7))
def test_gram_spectrum_positive(n):
    for lab in admissible_labels(n):
        analytic = sorted(annular.gram_eigenvalues(lab, 1.2))
        numeric = annular.numeric_gram_eigenvalues(lab, 1.2)
        assert np.allclose(analytic, numeric, atol=1e-12)
        assert min(numeric) > 0


def test_numeric_duality():
    ctx = NumericContext(1.1)
    for lab in admissible_labels(5):
        assert linalg.max_abs_diff(annular.duality_matrix(lab, ctx), linalg.identity(lab.size, ctx)) < 1e-10


def test_half_rotation_and_gram_form():
    ctx = _ctx(2)
    lab = admissible_labels(2)[1]
    v = AnnularVector.zero(lab, ctx, PRIMAL)
    v.add_at(0, ctx.one)
    w = annular.half_rotation(v)
    assert w.coeffs[1] == ctx.one
    assert annular.half_rotation(v, lab.size).coeffs == v.coeffs
    # unit vectors: <cup_0, cup_1> is the (0, 1) Gram entry
    assert annular.gram_form(v, w, ctx) == annular.gram(lab, ctx)[0][1]
    with pytest.raises(ValueError):
        annular.gram_form(AnnularVector.zero(lab, ctx, DUAL), v, ctx)


def test_degenerate_w():
    # at q = 1 every W vanishes for omega = 1; a numeric q on the unit circle can also hit it
    lab = admissible_labels(1)[0]
    ctx = NumericContext(complex(np.exp(1j * np.pi / 2)))
    with pytest.raises(DegenerateParameterError):
        annular.dual_row0(lab, ctx)
