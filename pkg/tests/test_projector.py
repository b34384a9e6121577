"""Test code for contours, resolvents, and Riesz projectors."""

import numpy as np
import pytest

from src.holderspectra.exceptions import (
    ContourHitsSpectrumException,
    EmptyProjectionException,
    InvalidContourException,
    SpectrumTooCloseException,
)
from src.holderspectra.families.matrix_path import build_matrix_path
from src.holderspectra.hermitian import HermitianMatrix
from src.holderspectra.prng import SplitMix64
from src.holderspectra.projector import (
    Contour,
    contour_projector,
    enclosed_count,
    project_block,
    projector_holder_constant,
    resolvent,
)


@pytest.fixture
def diagonal_123():
    """Create diag(1, 2, 3)."""
    return HermitianMatrix.diagonal([1.0, 2.0, 3.0])


def _rotating(u):
    """Return R(t) diag(0, 1) R(t)^T, whose projectors rotate at unit speed."""
    c, s = np.cos(u[0]), np.sin(u[0])
    rotation = np.array([[c, -s], [s, c]])
    return rotation @ np.diag([0.0, 1.0]) @ rotation.T


def test_contour_validation():
    """Test contour invariants."""
    with pytest.raises(InvalidContourException):
        Contour(center=0.0, radius=0.0)
    with pytest.raises(InvalidContourException):
        Contour(center=1j, radius=1.0)
    with pytest.raises(InvalidContourException):
        Contour(center=0.0, radius=1.0, nodes=4)

    contour = Contour(center=1, radius=2)
    assert contour.center == 1.0
    assert contour.nodes == 64


def test_contour_quadrature_weights():
    """Test the weights integrate dz / z around the origin to 2 pi i."""
    points, weights = Contour(center=0.0, radius=2.0, nodes=16).quadrature()
    assert np.sum(weights / points) == pytest.approx(2j * np.pi)
    assert np.abs(points).tolist() == pytest.approx([2.0] * 16)


def test_around_group(diagonal_123):
    """Test the default contour of a group."""
    values = np.array([1.0, 2.0, 3.0])
    first = Contour.around_group(values, [1])
    assert first.center == 1.0
    assert first.radius == pytest.approx(0.45)

    whole = Contour.around_group(values, [1, 2, 3])
    assert whole.center == 2.0
    assert whole.radius == pytest.approx(2.8)
    assert contour_projector(diagonal_123, whole).rank == 3


def test_resolvent():
    """Test (A - zI)^{-1} and its refusal near the spectrum."""
    matrix = HermitianMatrix.diagonal([1.0, 2.0])
    assert np.allclose(resolvent(matrix, 0.0), np.diag([1.0, 0.5]))

    with pytest.raises(SpectrumTooCloseException):
        resolvent(matrix, 1.0)


def test_contour_projector_isolates_an_eigenvalue(diagonal_123):
    """Test P ~ diag(1, 0, 0) for a contour around 1."""
    projector = contour_projector(
        diagonal_123, Contour(center=1.0, radius=0.5), adaptive=False
    )
    assert projector.nodes == 64
    assert projector.rank == 1
    assert np.abs(projector.matrix - np.diag([1.0, 0.0, 0.0])).max() <= 1e-10
    assert projector.idempotency_error <= 1e-10
    assert projector.hermiticity_error <= 1e-10


def test_contour_projector_diagnostics(diagonal_123):
    """Test the diagnostics dict."""
    projector = contour_projector(diagonal_123, Contour(center=1.5, radius=0.9))
    diagnostics = projector.diagnostics()
    assert diagnostics["rank"] == 2
    assert diagnostics["trace"] == pytest.approx(2.0)
    assert diagnostics["idempotency_error"] <= 1e-10
    assert diagnostics["nodes"] >= 64
    assert repr(projector) == f"SpectralProjector(rank=2, nodes={projector.nodes})"


def test_contour_hits_spectrum(diagonal_123):
    """Test an eigenvalue on the contour."""
    with pytest.raises(ContourHitsSpectrumException) as e:
        contour_projector(diagonal_123, Contour(center=1.0, radius=1.0))
    assert e.value.eigenvalue == 2.0
    assert e.value.t is None


def test_empty_projection(diagonal_123):
    """Test a contour enclosing nothing."""
    projector = contour_projector(diagonal_123, Contour(center=10.0, radius=0.5))
    assert projector.rank == 0
    assert projector.range_basis.shape == (3, 0)
    assert project_block(diagonal_123, projector).dim == 0

    with pytest.raises(EmptyProjectionException):
        project_block(diagonal_123, projector, allow_empty=False)


def test_project_block_eigenvalues():
    """Test the block eigenvalues equal the enclosed eigenvalues."""
    matrix = HermitianMatrix(SplitMix64(11).hermitian(5))
    values = np.linalg.eigvalsh(matrix.entries)
    contour = Contour.around_group(values, [2, 3])
    block = project_block(matrix, contour_projector(matrix, contour))
    assert block.dim == 2
    assert np.linalg.eigvalsh(block.entries) == pytest.approx(values[1:3], abs=1e-8)


def test_enclosed_count_random():
    """Test trace(P) counts the enclosed eigenvalues of random matrices."""
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(200):
        matrix = HermitianMatrix(SplitMix64(int(rng.integers(1 << 31))).hermitian(4))
        contour = Contour(
            center=float(rng.uniform(-2.0, 2.0)), radius=float(rng.uniform(0.5, 2.0))
        )
        values = np.linalg.eigvalsh(matrix.entries)
        if contour.distance_to(values).min() < 0.1:
            continue
        assert enclosed_count(matrix, contour) == int(contour.encloses(values).sum())
        checked += 1
    assert checked >= 50


def test_quadrature_converges_geometrically(diagonal_123):
    """Test doubling the nodes at least halves the error."""
    contour = Contour(center=1.5, radius=1.0)
    exact = np.diag([1.0, 1.0, 0.0])

    def _error(nodes):
        projector = contour_projector(
            diagonal_123, Contour(contour.center, contour.radius, nodes), adaptive=False
        )
        return np.abs(projector.matrix - exact).max()

    assert _error(16) <= 0.5 * _error(8)
    assert _error(32) <= 0.5 * _error(16)


def test_adaptive_quadrature_reaches_tolerance(diagonal_123):
    """Test the adaptive loop doubles from a coarse start."""
    projector = contour_projector(diagonal_123, Contour(1.5, 1.0, nodes=8))
    assert projector.nodes > 8
    assert projector.idempotency_error <= 1e-10


def test_projector_holder_constant_rotating_family():
    """Test ||P(s) - P(t)|| = |sin(s - t)| gives a constant just below 1."""
    family = build_matrix_path(_rotating, matrix_dim=2)
    result = projector_holder_constant(
        family, Contour(center=0.0, radius=0.5), np.linspace(0.0, 1.0, 101), alpha=1.0
    )
    assert 0.99 <= result["constant"] <= 1.0
    assert result["pairs_tested"] == 5050


def test_projector_holder_constant_reports_the_hit(shifted_diagonal):
    """Test the parameter of a contour hit is reported."""
    with pytest.raises(ContourHitsSpectrumException) as e:
        projector_holder_constant(
            shifted_diagonal,
            Contour(center=1.0, radius=0.45),
            [0.0, 0.2, 0.45, 0.6],
            alpha=1.0,
        )
    assert e.value.t == 0.45


def test_contour_projector_encloses_two(diagonal_123):
    """Test a contour around 1 and 2 but not 3."""
    projector = contour_projector(diagonal_123, Contour(center=1.5, radius=1.2))
    assert projector.rank == 2
    assert projector.trace.real == pytest.approx(2.0)
    assert enclosed_count(diagonal_123, Contour(center=2.0, radius=1.5)) == 3


def test_contour_through_two_eigenvalues(diagonal_123):
    """Test a contour passing through 1 and 3."""
    with pytest.raises(ContourHitsSpectrumException):
        enclosed_count(diagonal_123, Contour(center=2.0, radius=1.0))


def test_resolvent_residual_off_the_real_axis():
    """Test the resolvent of a random matrix at an imaginary point."""
    matrix = HermitianMatrix(SplitMix64(5).hermitian(5))
    z = 1j * (1 + np.linalg.norm(matrix.entries, ord=2))
    residual = (matrix.entries - z * np.eye(5)) @ resolvent(matrix, z) - np.eye(5)
    assert np.abs(residual).max() <= 1e-10


def test_project_block_is_unitarily_invariant(diagonal_123):
    """Test the block spectrum of W D W* equals that of D."""
    mixer = SplitMix64(3).unitary(3)
    conjugated = HermitianMatrix(mixer @ diagonal_123.entries @ mixer.conj().T)
    contour = Contour(center=1.5, radius=0.9)
    for matrix in (diagonal_123, conjugated):
        block = project_block(matrix, contour_projector(matrix, contour))
        assert np.linalg.eigvalsh(block.entries) == pytest.approx([1.0, 2.0], abs=1e-8)
