"""Exact computations in the free *-algebra F<x, x*>."""

from .freepoly import FieldMode, Polynomial
from .groebner import IdealPresentation, GroebnerBasis, complete, reduce, member
from .functional import build_functional, verify_functional
from .gns import build_witness, verify_witness, bounded_family
from .repvar import MatrixTuple, evaluate_at, zero_class, commutant_type
from .quotients import regular_representation, z_ideal, hat_member, build_qweyl_system
from .parser import parse_poly, format_poly
from .catalog import get_all_problems
from .metrics import PerformanceMetrics

__all__ = [
    'FieldMode',
    'Polynomial',
    'IdealPresentation',
    'GroebnerBasis',
    'complete',
    'reduce',
    'member',
    'build_functional',
    'verify_functional',
    'build_witness',
    'verify_witness',
    'bounded_family',
    'MatrixTuple',
    'evaluate_at',
    'zero_class',
    'commutant_type',
    'regular_representation',
    'z_ideal',
    'hat_member',
    'build_qweyl_system',
    'parse_poly',
    'format_poly',
    'get_all_problems',
    'PerformanceMetrics'
]
