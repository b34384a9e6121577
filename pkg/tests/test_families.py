"""Test code for the parametrized family builders."""

import numpy as np
import pytest

from src.holderspectra.certification import matrix_holder_constant
from src.holderspectra.exceptions import (
    DimensionMismatchException,
    InvalidAlphaException,
    InvalidFamilySpecException,
    OutOfDomainException,
)
from src.holderspectra.families.base import SmoothCurve, pullback, validate_alpha
from src.holderspectra.families.crossing_lines import (
    build_crossing_lines,
    build_seeded_crossing_lines,
    default_offsets,
)
from src.holderspectra.families.matrix_path import (
    DiagonalPathFamily,
    build_matrix_path,
)
from src.holderspectra.families.random_holder import build_random_holder
from src.holderspectra.families.rough_coupling import build_rough_coupling
from src.holderspectra.families.schrodinger import (
    build_schrodinger_1d,
    truncation_convergence,
)
from src.holderspectra.hermitian import eig_ordered


def _zero_potential(_u, x):
    return np.zeros_like(x)


def test_validate_alpha():
    """Test the exponent range (0, 1]."""
    assert validate_alpha(1) == 1.0
    for alpha in (0.0, -0.5, 1.5):
        with pytest.raises(InvalidAlphaException):
            validate_alpha(alpha)


def test_rough_coupling_eigenvalues(rough_half):
    """Test eigenvalues are +/- |t|^alpha."""
    assert eig_ordered(rough_half.eval(0.25)).values == pytest.approx([-0.5, 0.5])
    assert eig_ordered(rough_half.eval(0.0)).values == pytest.approx([0.0, 0.0])


def test_rough_coupling_summary(rough_half):
    """Test the resolved metadata."""
    assert rough_half.summary() == {
        "kind": "rough_coupling",
        "N": 2,
        "d": 1,
        "alpha": 0.5,
        "domain": [[-1.0, 1.0]],
    }


def test_rough_coupling_scale():
    """Test the coupling scale multiplies the eigenvalues."""
    family = build_rough_coupling(alpha=1.0, scale=3.0)
    assert eig_ordered(family.eval(-0.5)).values == pytest.approx([-1.5, 1.5])


def test_eval_checks_domain_and_dimension(rough_half):
    """Test evaluation outside the domain or with the wrong shape."""
    with pytest.raises(OutOfDomainException):
        rough_half.eval(1.5)
    with pytest.raises(DimensionMismatchException):
        rough_half.eval([0.1, 0.2])


def test_crossing_lines_pair():
    """Test diag(t, -t) at t = 0.5."""
    family = build_crossing_lines(slopes=[1.0, -1.0], offsets=[0.0, 0.0])
    assert eig_ordered(family.eval(0.5)).values == pytest.approx([-0.5, 0.5])
    assert family.crossings() == [(0.0, 0, 1)]


def test_crossing_lines_match_sorted_lines(three_lines):
    """Test the mixed family reproduces the sorted affine lines."""
    for t in np.linspace(-1.0, 1.0, 17):
        values = eig_ordered(three_lines.eval(t)).values
        expected = np.sort(three_lines.line_values(t))
        assert np.abs(values - expected).max() <= 1e-10


def test_crossing_lines_three_crossings(three_lines):
    """Test the default offsets put three distinct crossings inside (-1, 1)."""
    crossings = three_lines.crossings()
    assert [t for t, _, _ in crossings] == pytest.approx([-0.25, 0.0, 0.25])
    assert [(i, j) for _, i, j in crossings] == [(0, 1), (0, 2), (1, 2)]


def test_default_offsets():
    """Test offsets are the squared equally spaced nodes."""
    assert default_offsets(3) == pytest.approx([0.25, 0.0, 0.25])


def test_crossing_lines_validation():
    """Test malformed slopes and offsets."""
    with pytest.raises(InvalidFamilySpecException):
        build_crossing_lines(slopes=[1.0])
    with pytest.raises(DimensionMismatchException):
        build_crossing_lines(slopes=[1.0, -1.0], offsets=[0.0])


def test_crossing_lines_seeded_mixer_is_reproducible():
    """Test the same mixer seed gives the same family."""
    first = build_crossing_lines(slopes=[1.0, 0.0, -1.0], mixer=3)
    second = build_crossing_lines(slopes=[1.0, 0.0, -1.0], mixer=3)
    assert np.array_equal(first.eval(0.3).entries, second.eval(0.3).entries)
    assert first.summary()["mixer_seed"] == 3


def test_seeded_crossing_lines():
    """Test seeded lines are reproducible and stay in their draw ranges."""
    first = build_seeded_crossing_lines(seed=4, n=5)
    second = build_seeded_crossing_lines(seed=4, n=5)
    assert np.array_equal(first.slopes, second.slopes)
    assert np.array_equal(first.eval(0.3).entries, second.eval(0.3).entries)
    assert np.all(np.abs(first.slopes) <= 1.0)
    assert np.all(np.abs(first.offsets) <= 0.5)
    assert first.summary()["mixer_seed"] == 4

    values = eig_ordered(first.eval(0.3)).values
    assert values == pytest.approx(np.sort(first.line_values(0.3)), abs=1e-10)


def test_schrodinger_free_spectrum():
    """Test the n = 64 truncation against its closed form and pi^2."""
    family = build_schrodinger_1d(potential=_zero_potential, n=64)
    values = eig_ordered(family.eval(0.0)).values
    assert values.size == 64
    assert np.allclose(values, family.free_spectrum(), rtol=1e-10, atol=1e-8)
    assert abs(values[0] - np.pi**2) / np.pi**2 < 1e-3


def test_schrodinger_shift_potential():
    """Test a constant potential shifts every eigenvalue."""
    family = build_schrodinger_1d(potential=lambda u, x: u * np.ones_like(x), n=8)
    shifted = eig_ordered(family.eval(0.5)).values
    assert shifted == pytest.approx(family.free_spectrum() + 0.5, rel=1e-12)
    assert family.h == pytest.approx(1.0 / 9.0)


def test_schrodinger_needs_two_points():
    """Test the truncation dimension lower bound."""
    with pytest.raises(InvalidFamilySpecException):
        build_schrodinger_1d(potential=_zero_potential, n=1)


def test_truncation_convergence():
    """Test the lowest eigenvalue change shrinks as n grows."""
    report = truncation_convergence(_zero_potential, ns=[8, 16, 32], count=2)
    assert [entry["n"] for entry in report] == [8, 16, 32]
    assert report[0]["max_change"] is None
    assert report[2]["max_change"] < report[1]["max_change"]
    assert report[2]["eigenvalues"][0] == pytest.approx(np.pi**2, rel=1e-2)


def test_random_holder_is_deterministic():
    """Test identical seeds give identical matrices."""
    first = build_random_holder(seed=4, alpha=0.5, n=3, terms=2)
    second = build_random_holder(seed=4, alpha=0.5, n=3, terms=2)
    assert np.array_equal(first.eval(0.1).entries, second.eval(0.1).entries)
    assert first.knots.size == 2
    assert first.matrix_dim == 3


def test_random_holder_constant_is_bounded():
    """Test 20 seeded families respect their computable Hölder bound."""
    grid = np.linspace(-1.0, 1.0, 33)
    for seed in range(20):
        family = build_random_holder(seed=seed, alpha=0.5, n=2 + seed % 3, terms=2)
        constant = matrix_holder_constant(family, grid, 0.5)
        assert constant <= family.holder_bound * (1 + 1e-9)


def test_diagonal_path_closed_forms():
    """Test named closed forms on the diagonal."""
    family = DiagonalPathFamily(
        entries=[
            {"form": "exp_minus_one"},
            {"form": "linear", "coefficient": 2.0, "offset": 1.0},
            {"form": "constant", "offset": 5.0},
        ]
    )
    values = eig_ordered(family.eval(0.5)).values
    assert values == pytest.approx(sorted([np.expm1(0.5), 2.0, 5.0]))


def test_shift_family(shifted_diagonal):
    """Test diag(1, 2, 3) + t I."""
    values = eig_ordered(shifted_diagonal.eval(0.5)).values
    assert values == pytest.approx([1.5, 2.5, 3.5])


def test_pullback_along_a_line(rough_half):
    """Test the pullback evaluates the family at c(t)."""
    family = pullback(rough_half, SmoothCurve.line([-1.0], [1.0]))
    assert family.param_dim == 1
    assert eig_ordered(family.eval(0.5)).values == pytest.approx([0.0, 0.0])
    assert eig_ordered(family.eval(1.0)).values == pytest.approx([-1.0, 1.0])


def test_pullback_of_two_parameter_family():
    """Test a curve through a two-parameter family."""
    family = build_matrix_path(lambda u: np.diag([u[0], u[1]]), 2, param_dim=2)
    curve = SmoothCurve.line([0.0, 0.0], [1.0, -1.0])
    assert curve.derivative(0.3) == pytest.approx([1.0, -1.0])
    values = eig_ordered(pullback(family, curve).eval(0.5)).values
    assert values == pytest.approx([-0.5, 0.5])


def test_pullback_validation(rough_half):
    """Test curves must match the parameter dimension and stay in the domain."""
    with pytest.raises(DimensionMismatchException):
        pullback(rough_half, SmoothCurve.line([0.0, 0.0], [1.0, 1.0]))
    with pytest.raises(OutOfDomainException):
        pullback(rough_half, SmoothCurve.line([0.0], [2.0]))


def test_constant_curve():
    """Test the constant curve and its zero derivative."""
    curve = SmoothCurve.constant([0.2, 0.3])
    assert curve(0.7) == pytest.approx([0.2, 0.3])
    assert curve.derivative(0.7) == pytest.approx([0.0, 0.0])
