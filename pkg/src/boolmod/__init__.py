"""Canalization analysis, decomposition, extension and counting for Boolean networks."""

from .boolfn import (
    BooleanFunction,
    CanalizationReport,
    CanalizingLayer,
    LayerStructure,
    anf,
    canalizing_pairs,
    essential_variables,
    evaluate,
    format_anf,
    from_anf,
    is_nested_canalizing,
    project,
    reindex,
    stratify,
)
from .errors import (
    ArityError,
    BoolModError,
    ContradictionError,
    DegenerateFunctionError,
    FamilyError,
    MappingError,
    NetworkError,
    NotNestedCanalizingError,
    OrderError,
    OutOfDomainError,
    ParseError,
    PartitionError,
    PlacementError,
    PolicyError,
    ResourceError,
)
from .extend import (
    NcfPlacement,
    Restriction,
    apply_placement,
    count_extensions_general,
    count_function_ncf_extensions,
    count_ncf_extensions,
    count_ncf_extensions_one,
    enumerate_extensions_brute,
    is_extension,
    ncf_from_layers,
    ncf_placements,
    placement_layers,
    restrict,
    restrict_ncf,
)
from .network import (
    BooleanNetwork,
    CutPolicy,
    Decomposition,
    GraphicalFamily,
    LabeledMatrix,
    Node,
    WiringDiagram,
    compose,
    count_acyclic_graphs,
    count_graphical_compositions,
    count_graphical_extensions,
    count_network_extensions,
    graphical_extend,
    graphical_matrix,
    graphical_realize,
    is_network_extension,
    restrict_network,
    scc_decompose,
    strongly_connected_components,
    wiring_diagram,
)

__version__ = "0.1.0"
