"""Hölder regularity of eigenvalues of parametrized Hermitian families."""

from .certification import (
    HolderCertificate,
    holder_constant,
    matrix_holder_constant,
    verify_transfer_bound,
)
from .families.spec import family_from_spec
from .hermitian import HermitianMatrix, eig_ordered
from .projector import Contour, contour_projector
from .tracking import continuous_selection, sample_grid, track_family

__all__ = [
    "Contour",
    "HermitianMatrix",
    "HolderCertificate",
    "continuous_selection",
    "contour_projector",
    "eig_ordered",
    "family_from_spec",
    "holder_constant",
    "matrix_holder_constant",
    "sample_grid",
    "track_family",
    "verify_transfer_bound",
]
