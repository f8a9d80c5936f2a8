"""Exact iterated basis normalization and small Chvátal closures."""

__version__ = "0.1.0"

from .closure import (ClosureReport, ScrResult, chvatal_first_closure, scr_of_system,  # noqa: E402
                      small_closure, tighten)
from .hilbert import (HilbertBasisResult, SimplicialCone, Witness, cone_contains,  # noqa: E402
                      minimal_hilbert_basis_pointed, minimal_hilbert_basis_simplicial,
                      parallelepiped_points)
from .ibn import (Configuration, RoundLog, enumerate_bases, ibn_round, ibn_run,  # noqa: E402
                  iter_rounds, witness_for)
from .polyhedra import (AUTO, InequalitySystem, LatticeBox, VRepresentation,  # noqa: E402
                        ilp_optimum, integer_hull, lattice_points, lp_optimum,
                        vertex_enumeration)
from .supernormal import (Decision, is_supernormal, is_unimodular, scr_zero_decision,  # noqa: E402
                          verify_counterexample)

__all__ = [
    "AUTO", "ClosureReport", "Configuration", "Decision", "HilbertBasisResult",
    "InequalitySystem", "LatticeBox", "RoundLog", "ScrResult", "SimplicialCone",
    "VRepresentation", "Witness", "chvatal_first_closure", "cone_contains", "enumerate_bases",
    "ibn_round", "ibn_run", "ilp_optimum", "integer_hull", "is_supernormal", "is_unimodular",
    "iter_rounds", "lattice_points", "lp_optimum", "minimal_hilbert_basis_pointed",
    "minimal_hilbert_basis_simplicial", "parallelepiped_points", "scr_of_system",
    "scr_zero_decision", "small_closure", "tighten", "verify_counterexample", "vertex_enumeration",
    "witness_for",
]
