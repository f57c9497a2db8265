"""Exact Tamagawa numbers, volumes and Siegel masses for split groups over curves."""

from .curve_zeta import CurveZeta, base_change, from_point_counts, zeta_special_value
from .errors import InvalidCurveError, InvalidInputError, InvariantViolation, ResourceBoundError
from .root_datum import Isogeny, RootDatum, make_root_datum
from .tamagawa import MassReport, siegel_mass, tamagawa_number, vol_k_exact

__all__ = [
    "CurveZeta",
    "InvalidCurveError",
    "InvalidInputError",
    "InvariantViolation",
    "Isogeny",
    "MassReport",
    "ResourceBoundError",
    "RootDatum",
    "base_change",
    "from_point_counts",
    "make_root_datum",
    "siegel_mass",
    "tamagawa_number",
    "vol_k_exact",
    "zeta_special_value",
]
