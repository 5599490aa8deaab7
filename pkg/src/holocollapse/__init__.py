"""Exact Holant evaluation, matchgates, elementary transformations and base collapse."""

from .canonical import CanonicalForm, canonicalize, reconstruct, to_underlying_graph
from .collapse import (
    CollapsedProblem,
    HoloProblem,
    collapse_symmetric,
    collapse_via_cover,
    collapse_via_realizer,
    strip_columns,
    verify_collapse,
)
from .graph import UnderlyingGraph
from .holant import Instance, Vertex, evaluate, gadget_signature, transform_left, transform_right, verify_holant
from .matchgate import is_matchgate, multiply_introduced, pfaffian, signature_from_graph
from .scalar import Scalar, parse_scalar
from .tensor import MatrixView, Signature, matrix_product, regroup, tensor_product
from .transforms import Bar, Exchange, Flip, GlobalFactor, Side, Slash, apply, invert, step_matrix

__version__ = "0.1.0"
