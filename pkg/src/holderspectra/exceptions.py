"""Exceptions used within the holder-spectra library."""


class SpectraException(Exception):
    """A base class for holder-spectra exceptions."""


class NotHermitianException(SpectraException):
    """Raise an exception when a matrix is too far from self-adjoint."""

    def __init__(self, asymmetry: float, scale: float) -> None:
        """Initialize the NotHermitianException class."""
        self.message = (
            f"Matrix is not Hermitian; max asymmetry: {asymmetry:.3e}; "
            f"scale: {scale:.3e}"
        )
        super().__init__(self.message)


class DimensionMismatchException(SpectraException):
    """Raise an exception when two dimensions do not agree."""

    def __init__(self, expected: int, actual: int) -> None:
        """Initialize the DimensionMismatchException class."""
        self.message = f"Dimension mismatch; expected: {expected}; actual: {actual}"
        super().__init__(self.message)


class JacobiNotConvergedException(SpectraException):
    """Raise an exception when the Jacobi sweeps hit their cap."""

    def __init__(self, sweeps: int, off_norm: float) -> None:
        """Initialize the JacobiNotConvergedException class."""
        self.message = (
            f"Jacobi eigensolver did not converge after {sweeps} sweeps; "
            f"off-diagonal norm: {off_norm:.3e}"
        )
        super().__init__(self.message)


class OutOfDomainException(SpectraException):
    """Raise an exception for a parameter outside the family domain."""

    def __init__(self, u, domain_box) -> None:
        """Initialize the OutOfDomainException class."""
        self.message = f"Parameter {u} is outside the domain box {domain_box}"
        super().__init__(self.message)


class InvalidAlphaException(SpectraException):
    """Raise an exception for a Hölder exponent outside (0, 1]."""

    def __init__(self, alpha: float) -> None:
        """Initialize the InvalidAlphaException class."""
        self.message = f"Hölder exponent must lie in (0, 1]: {alpha}"
        super().__init__(self.message)


class InvalidFamilySpecException(SpectraException):
    """Raise an exception for a malformed family specification."""

    def __init__(self, field: str, reason: str) -> None:
        """Initialize the InvalidFamilySpecException class."""
        self.field = field
        self.message = f"Invalid family specification; field: {field}; {reason}"
        super().__init__(self.message)


class InvalidContourException(SpectraException):
    """Raise an exception for a contour that violates its invariants."""

    def __init__(self, reason: str) -> None:
        """Initialize the InvalidContourException class."""
        self.message = f"Invalid contour: {reason}"
        super().__init__(self.message)


class SpectrumTooCloseException(SpectraException):
    """Raise an exception when a resolvent point is too close to the spectrum."""

    def __init__(self, z: complex, distance: float) -> None:
        """Initialize the SpectrumTooCloseException class."""
        self.message = (
            f"Resolvent point {z} lies within {distance:.3e} of the spectrum"
        )
        super().__init__(self.message)


class ContourHitsSpectrumException(SpectraException):
    """Raise an exception when an eigenvalue lies on (or crosses) the contour."""

    def __init__(
        self, center: float, radius: float, eigenvalue: float, t: float | None = None
    ) -> None:
        """Initialize the ContourHitsSpectrumException class."""
        self.center = center
        self.radius = radius
        self.eigenvalue = eigenvalue
        self.t = t
        self.message = (
            f"Eigenvalue {eigenvalue:.12g} meets the contour "
            f"(center: {center}; radius: {radius})"
        )
        if t is not None:
            self.message += f" at parameter {t:.12g}"
        super().__init__(self.message)


class RankAmbiguousException(SpectraException):
    """Raise an exception when projector singular values sit near 1/2."""

    def __init__(self, singular_value: float) -> None:
        """Initialize the RankAmbiguousException class."""
        self.message = (
            f"Projector rank is ambiguous; singular value {singular_value:.6f} "
            "lies in [0.25, 0.75]"
        )
        super().__init__(self.message)


class EmptyProjectionException(SpectraException):
    """Raise an exception when a contour encloses no eigenvalue."""

    def __init__(self) -> None:
        """Initialize the EmptyProjectionException class."""
        self.message = "Contour encloses no eigenvalue; projected block is empty"
        super().__init__(self.message)


class AmbiguousCrossingException(SpectraException):
    """Raise an exception when the strict strategy cannot pick a branch."""

    def __init__(self, t_lo: float, t_hi: float, candidates: list[int]) -> None:
        """Initialize the AmbiguousCrossingException class."""
        self.t_lo = t_lo
        self.t_hi = t_hi
        self.message = (
            f"Ambiguous crossing in [{t_lo:.12g}, {t_hi:.12g}]; "
            f"candidate indices: {candidates}"
        )
        super().__init__(self.message)


class DegenerateGridException(SpectraException):
    """Raise an exception for a grid that cannot support the requested operation."""

    def __init__(self, reason: str) -> None:
        """Initialize the DegenerateGridException class."""
        self.message = f"Degenerate grid: {reason}"
        super().__init__(self.message)


class NonLipschitzBranchException(SpectraException):
    """Raise an exception when a branch does not look Lipschitz."""

    def __init__(self, growth: float) -> None:
        """Initialize the NonLipschitzBranchException class."""
        self.message = (
            "Branch is not Lipschitz on this grid; the exponent-1 constant grows "
            f"by a factor {growth:.4f} under refinement"
        )
        super().__init__(self.message)


class IncompatibleArtifactException(SpectraException):
    """Raise an exception for an artifact written by an incompatible version."""

    def __init__(self, path: str, version: str) -> None:
        """Initialize the IncompatibleArtifactException class."""
        self.message = f"Artifact {path} has incompatible format version: {version}"
        super().__init__(self.message)


class InvalidRunConfigException(SpectraException):
    """Raise an exception for a malformed command-line run configuration."""

    def __init__(self, field: str, reason: str) -> None:
        """Initialize the InvalidRunConfigException class."""
        self.field = field
        self.message = f"Invalid run configuration; field: {field}; {reason}"
        super().__init__(self.message)
