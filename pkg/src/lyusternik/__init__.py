"""Exact volumes of Minkowski subset sums and fractional superadditivity.

Sets are unions of closed rational intervals, finite integer sets, unions of
axis-parallel boxes, or convex polygons; all arithmetic is exact.
"""
from .boxes import BoxUnion, union_volume
from .decomposition import (
                            Certificate,
                            PieceDescriptor,
                            SumTable,
                            VerificationError,
                            certify_1d,
                            certify_boxes,
                            certify_int,
                            normalize_tuple,
                            pieces_1d,
                            pieces_boxes,
                            pieces_int,
                            verify,
                            verify_certificate,
)
from .games import (
                            SetFunction,
                            concave_extension_eval,
                            fsa_check_core,
                            fsa_check_enum,
                            is_supermodular,
)
from .integer_sets import IntegerSet
from .lp import maximize
from .partitions import (
                            FractionalPartition,
                            InvalidPartition,
                            RegularCover,
                            cover_functions,
                            extreme_partitions,
                            leave_one_out,
                            singletons,
                            to_regular_cover,
                            validate_partition,
)
from .polygons import ConvexPolygon
from .rational import to_rational
from .real_sets import IntervalUnion1D, grid_error_bound, grid_oracle
from .region import (
                            NuVector,
                            counterexample,
                            nu_vector,
                            realize_two,
                            verify_fsa,
                            verify_product,
)

__all__ = [
    "BoxUnion", "Certificate", "ConvexPolygon", "FractionalPartition", "IntegerSet", "IntervalUnion1D",
    "InvalidPartition", "NuVector", "PieceDescriptor", "RegularCover", "SetFunction", "SumTable",
    "VerificationError", "certify_1d", "certify_boxes", "certify_int", "concave_extension_eval",
    "counterexample", "cover_functions", "extreme_partitions", "fsa_check_core", "fsa_check_enum",
    "grid_error_bound", "grid_oracle", "is_supermodular", "leave_one_out", "maximize", "normalize_tuple",
    "nu_vector", "pieces_1d", "pieces_boxes", "pieces_int", "realize_two", "singletons",
    "to_rational", "to_regular_cover", "union_volume", "validate_partition", "verify",
    "verify_certificate", "verify_fsa", "verify_product",
]
