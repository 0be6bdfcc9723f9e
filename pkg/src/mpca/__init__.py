"""Multidimensional periodic Costas arrays over finite abelian groups."""

from .array import (
    CorrelationReport,
    ParseError,
    PeriodicArray,
    autocorrelation,
    canonical_bytes,
    correlation_report,
    parse,
    render,
    verify,
)
from .field import FieldSpec, FieldTable, build_table, find_primitive_polys, poly_is_primitive
from .groups import GroupSpec, StructureError
from .search import SearchConfig, enumerate_arrays, enumerate_parallel, enumerate_task
from .symmetry import (
    LinearMap,
    SingularMapError,
    SymmetryError,
    apply_add,
    apply_linear,
    apply_mul,
    apply_translate,
    generator_instances,
    orbit_closure,
)
from .welch import REFERENCE_W, construct_welch, reproduce_paper_example, welch

__version__ = "0.1.0"
