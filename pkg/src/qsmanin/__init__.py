"""Exact verification engine for q-super Manin matrices and quantum Berezinians."""

__version__ = "0.1.0"

from .scalars import EXACT, ExactField, ModField, QInverted, QScalar, SpecialField
from .freesuper import NcPoly, format_expr, parse_expr
from .quotient import AlgebraSpec, get_context
from .series import SeriesMatrix, TruncSeries, generic_manin_series, quasideterminant
from .berezinian import ber, ber_q, qdet

__all__ = [
    "__version__", "EXACT", "ExactField", "ModField", "QInverted", "QScalar", "SpecialField",
    "NcPoly", "format_expr", "parse_expr", "AlgebraSpec", "get_context", "SeriesMatrix",
    "TruncSeries", "generic_manin_series", "quasideterminant", "ber", "ber_q", "qdet",
]
