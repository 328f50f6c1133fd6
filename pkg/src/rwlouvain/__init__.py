"""Random-walk graph partitioning and the RWGP-Louvain community detector."""

from .graph import (
    Graph,
    GraphError,
    SubgraphMap,
    aggregate,
    build_graph,
    connected_components,
    induced_subgraph,
)
from .gen import (
    GaussianPartitionSpec,
    LabeledGraph,
    PlantedSpec,
    gaussian_random_partition,
    planted_l_partition,
)
from .louvain import HierarchyResult, LouvainConfig, local_move_phase, louvain, rwgp_louvain
from .quality import (
    CommunityStats,
    Partition,
    community_modularity,
    delta_q_insert,
    modularity,
    nmi,
)
from .rwgp import RwgpConfig, bisect_by_walk, refine_two_way, rwgp_partition, rwgp_refine_phase
from .spectral import EigenPair, SpectralError, newman_spectral_partition, second_eigenpair
from .walk import WalkSignature, stationary_distribution, transition_row_power, walk_signature

__version__ = "0.1.0"

__all__ = [
    "CommunityStats",
    "EigenPair",
    "GaussianPartitionSpec",
    "Graph",
    "GraphError",
    "HierarchyResult",
    "LabeledGraph",
    "LouvainConfig",
    "Partition",
    "PlantedSpec",
    "RwgpConfig",
    "SpectralError",
    "SubgraphMap",
    "WalkSignature",
    "aggregate",
    "bisect_by_walk",
    "build_graph",
    "community_modularity",
    "connected_components",
    "delta_q_insert",
    "gaussian_random_partition",
    "induced_subgraph",
    "local_move_phase",
    "louvain",
    "modularity",
    "newman_spectral_partition",
    "nmi",
    "planted_l_partition",
    "refine_two_way",
    "rwgp_louvain",
    "rwgp_partition",
    "rwgp_refine_phase",
    "second_eigenpair",
    "stationary_distribution",
    "transition_row_power",
    "walk_signature",
]
