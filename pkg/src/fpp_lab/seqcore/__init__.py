"""Exact sequences in c and l1, their norms, and the c/l1 duality."""

from .indexseq import IndexSeq
from .jsonio import c_from_json, c_to_json, dumps, l1_from_json, l1_to_json, q_from_json, q_to_json
from .ops import (
    SignSet,
    coordinate_pairing,
    entry,
    l1_norm,
    pair_c,
    sign_set,
    sign_set_finiteness,
    sup_norm,
)
from .sequences import CSeq, L1Seq
from .tails import Tail


def geom_tail(start, step, coef, ratio) -> Tail:
    """Entries coef * ratio**k at indices start + k*step."""
    return Tail.geometric(start, step, coef, ratio)


__all__ = [
    "CSeq",
    "IndexSeq",
    "L1Seq",
    "SignSet",
    "Tail",
    "c_from_json",
    "c_to_json",
    "coordinate_pairing",
    "dumps",
    "entry",
    "geom_tail",
    "l1_from_json",
    "l1_norm",
    "l1_to_json",
    "pair_c",
    "q_from_json",
    "q_to_json",
    "sign_set",
    "sign_set_finiteness",
    "sup_norm",
]
