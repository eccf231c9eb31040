"""Red/blue cycle partitions of 2-edge-colored dense graphs."""

from .graph import Color, ColoredGraph, SimpleGraph, dumps, loads, load_graph
from .exact import (CapacityError, CyclePartition, PreconditionError, exact_partition,
                    gg_path_cycle, hamiltonian_cycle, hamiltonian_path, verify_partition)
from .extremal import FamilyKind, ColorPolicy, GenSpec, build_f9, build_family, random_instance
from .robust import robust_certificate, robust_partition, near_bipartition
from .expansion import neighborhood_cascade, connecting_certificate
from .absorbing import AbsorbingParams, absorb, build_absorbing_path
from .matching import chvatal_hamiltonian, connected_matching, multipartite_perfect_matching
from .regularity import epsilon_regular_check, reduced_graph, random_equitable_partition
from .pipeline import PipelineConfig, heuristic_partition, structure_decompose

__all__ = [
    "Color",
    "ColoredGraph",
    "SimpleGraph",
    "dumps",
    "loads",
    "load_graph",
    "CapacityError",
    "CyclePartition",
    "PreconditionError",
    "exact_partition",
    "gg_path_cycle",
    "hamiltonian_cycle",
    "hamiltonian_path",
    "verify_partition",
    "FamilyKind",
    "ColorPolicy",
    "GenSpec",
    "build_f9",
    "build_family",
    "random_instance",
    "robust_certificate",
    "robust_partition",
    "near_bipartition",
    "neighborhood_cascade",
    "connecting_certificate",
    "AbsorbingParams",
    "absorb",
    "build_absorbing_path",
    "chvatal_hamiltonian",
    "connected_matching",
    "multipartite_perfect_matching",
    "epsilon_regular_check",
    "reduced_graph",
    "random_equitable_partition",
    "PipelineConfig",
    "heuristic_partition",
    "structure_decompose",
]
