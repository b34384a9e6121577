"""Constants for the holder-spectra package."""

from .bin.kind import FamilyKind
from .families.base import ParamFamily
from .families.crossing_lines import CrossingLinesFamily
from .families.matrix_path import DiagonalPathFamily, ShiftFamily
from .families.random_holder import RandomHolderFamily
from .families.rough_coupling import RoughCouplingFamily
from .families.schrodinger import SchrodingerFamily

# Environment variable capping per-node parallelism
SPECTRA_THREADS_ENV = "SPECTRA_THREADS"

# Version stamped into every JSON artifact
FORMAT_VERSION = "1.0"

FAMILY_KIND_MAPPING: dict[FamilyKind, type[ParamFamily]] = {
    FamilyKind.ROUGH_COUPLING: RoughCouplingFamily,
    FamilyKind.CROSSING_LINES: CrossingLinesFamily,
    FamilyKind.SCHRODINGER: SchrodingerFamily,
    FamilyKind.RANDOM_HOLDER: RandomHolderFamily,
    FamilyKind.DIAGONAL_PATH: DiagonalPathFamily,
    FamilyKind.SHIFT: ShiftFamily,
}
