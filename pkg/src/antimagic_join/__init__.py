"""Local antimagic 3-colourings of ``(2k+1)P2 v O_m`` and the graph families
derived from them, with an exhaustive oracle for small graphs."""

from .constructions import (
    ColorTriple,
    LabelMatrix,
    apply_matrix,
    even_matrix,
    label_join,
    label_matrix,
    odd_matrix,
    predicted_colors,
    s_sequence,
)
from .errors import (
    AntimagicError,
    InvalidInput,
    InvalidLabeling,
    InvalidParameter,
    MergeConflict,
    PartitionFailure,
    PreconditionViolation,
    SizeLimitExceeded,
    UnsupportedDimension,
)
from .graph import (
    Graph,
    Kind,
    VertexTag,
    chromatic_number,
    disjoint_copies,
    join,
    make_matching,
    make_null,
    merge_vertices,
)
from .labeling import EdgeLabeling, color_classes, induced_colors, is_local_antimagic
from .oracle import SearchReport, brute_force_chi_la, cross_validate, exists_local_antimagic
from .partitions import (
    FamilyMember,
    MagicRectangle,
    build_family_member,
    delete_add,
    eligible_delete_add_pairs,
    enumerate_family,
    magic_rectangle,
    partition_sequence,
)

__all__ = [
    "AntimagicError",
    "ColorTriple",
    "EdgeLabeling",
    "FamilyMember",
    "Graph",
    "InvalidInput",
    "InvalidLabeling",
    "InvalidParameter",
    "Kind",
    "LabelMatrix",
    "MagicRectangle",
    "MergeConflict",
    "PartitionFailure",
    "PreconditionViolation",
    "SearchReport",
    "SizeLimitExceeded",
    "UnsupportedDimension",
    "VertexTag",
    "apply_matrix",
    "brute_force_chi_la",
    "build_family_member",
    "chromatic_number",
    "color_classes",
    "cross_validate",
    "delete_add",
    "disjoint_copies",
    "eligible_delete_add_pairs",
    "enumerate_family",
    "even_matrix",
    "exists_local_antimagic",
    "induced_colors",
    "is_local_antimagic",
    "join",
    "label_join",
    "label_matrix",
    "magic_rectangle",
    "make_matching",
    "make_null",
    "merge_vertices",
    "odd_matrix",
    "partition_sequence",
    "predicted_colors",
    "s_sequence",
]
