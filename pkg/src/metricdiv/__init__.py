"""Exact divisor theory on metric graphs.

Chip-firing linear equivalence, the max-error machinery and the reduction
of effective divisors of degree at most the genus to semibreak divisors,
with replayable firing certificates.
"""
from .divisor import (
    Divisor,
    FiringCertificate,
    FiringStep,
    apply_certificate,
    degree_on,
    fire_set,
    is_integral,
)
from .engine import (
    ReductionResult,
    are_equivalent,
    break_representative,
    equivalence_certificate,
    is_break,
    semibreak_reduce,
)
from .graph import MetricGraph, Model, PointRef, build_graph, distance_from_set, normalize_point, refine_model
from .minmax import ErrorProfile, SubmodularObjective, error_of_set, max_error_profile, smallest_submodular_minimizer
from .oracle import is_semibreak_bruteforce, max_error_bruteforce, spanning_tree_complements
from .topology import (
    AdmissibleSet,
    TopologyProfile,
    boundary_valence,
    conv_model,
    convex_hull,
    cut_size,
    diff_count,
    fatten,
    topology_profile,
)

__version__ = "0.1.0"
