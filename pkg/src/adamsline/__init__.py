"""Adams E2 charts over the mod-2 Steenrod algebra, vanishing-line checks,
the splitting-range optimizer and the degree-2 homology assembler."""

from .f2 import F2Matrix, F2Vector, kernel_basis, rank, row_reduce, solve
from .steenrod import adem_reduce, admissible_basis, multiply, sq
from .modules import GradedModule, ModuleMap, parse_module, dump_module, sphere, stunted_projective, y_module
from .resolution import ExtChart, ext_chart, induced_ext_map, minimal_resolution, subadditivity_check
from .lines import VanishingLine, verify_chart, skeleton_shift, epsilon, eta
from .splitrange import ConstraintVariant, closed_form, optimize, reconcile_table
from .assembly import FgAbelianGroup, assemble_H2, lambda_square, load_stem_data

__version__ = "0.1.0"

__all__ = [
    "F2Matrix", "F2Vector", "kernel_basis", "rank", "row_reduce", "solve",
    "adem_reduce", "admissible_basis", "multiply", "sq",
    "GradedModule", "ModuleMap", "parse_module", "dump_module", "sphere", "stunted_projective", "y_module",
    "ExtChart", "ext_chart", "induced_ext_map", "minimal_resolution", "subadditivity_check",
    "VanishingLine", "verify_chart", "skeleton_shift", "epsilon", "eta",
    "ConstraintVariant", "closed_form", "optimize", "reconcile_table",
    "FgAbelianGroup", "assemble_H2", "lambda_square", "load_stem_data",
]
