"""Zeckendorf representations and Fibonacci coding over free Z-modules."""

from .codec import classic_decode, classic_encode, decode, decode_stream, encode, encode_stream
from .fibseq import FibSequence, primitive_root, unique_form_conditions, zeckendorf_conditions
from .kequiv import SparseSeq, binary_normalize, block_normalize
from .module_space import Element, ModuleSpec, format_element, parse_element, preset
from .zeckendorf import ZeckRepr, decompose_unique, recompose, represent_twoway

__all__ = [
    "Element",
    "FibSequence",
    "ModuleSpec",
    "SparseSeq",
    "ZeckRepr",
    "binary_normalize",
    "block_normalize",
    "classic_decode",
    "classic_encode",
    "decode",
    "decode_stream",
    "decompose_unique",
    "encode",
    "encode_stream",
    "format_element",
    "parse_element",
    "preset",
    "primitive_root",
    "recompose",
    "represent_twoway",
    "unique_form_conditions",
    "zeckendorf_conditions",
]
