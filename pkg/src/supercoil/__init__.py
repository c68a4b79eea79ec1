"""Polygonal supercoiled tangles and 2-bridge stick links."""

from .geom import Chain, PolyLink, check_embedded, find_generic_projection
from .link import ConwaySpec

__all__ = [
    "Chain",
    "PolyLink",
    "ConwaySpec",
    "check_embedded",
    "find_generic_projection",
]
