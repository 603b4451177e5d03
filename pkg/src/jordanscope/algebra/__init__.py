"""Exact and floating scalar arithmetic, polynomials, and the entry parser."""

from .exprparse import EntrySyntaxError, parse_entry
from .matrices import char_poly
from .multipoly import MultiPoly, mp_content, mp_gcd
from .scalars import GR_I, GR_ONE, GR_ZERO, GaussianRational
from .unipoly import (
    MonicPoly,
    UniPoly,
    derivative,
    gcd_monic,
    gcd_squarefree_oracle,
    pseudo_divmod,
    subresultant_gcd,
    subresultant_prs,
)

__all__ = [
    "EntrySyntaxError",
    "GaussianRational",
    "GR_I",
    "GR_ONE",
    "GR_ZERO",
    "MonicPoly",
    "MultiPoly",
    "UniPoly",
    "char_poly",
    "derivative",
    "gcd_monic",
    "gcd_squarefree_oracle",
    "mp_content",
    "mp_gcd",
    "parse_entry",
    "pseudo_divmod",
    "subresultant_gcd",
    "subresultant_prs",
]
