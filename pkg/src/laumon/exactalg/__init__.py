"""Exact arithmetic: the scalar field, series in u and torus characters."""
from .scalar import Scalar, ScalarField, field
from .series import RationalU, SeriesU, UPoly, expand_in_u
from .charpoly import CharDivisionError, CharPoly, char_div_exact, char_to_weights

__all__ = [
    "Scalar",
    "ScalarField",
    "field",
    "RationalU",
    "SeriesU",
    "UPoly",
    "expand_in_u",
    "CharDivisionError",
    "CharPoly",
    "char_div_exact",
    "char_to_weights",
]
