"""Conway vectors and polygonal 2-bridge link assembly.

A link is built from a 2n+3 stick frame (the shrunken standard diagram) with
one supercoiled integral tangle inserted per frame vertex; the total stick
count realizes the closed-form upper bound exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import geom
from .geom import Chain, PolyLink, Vec3, check_embedded


class LinkBuildError(ValueError):
    """Construction or post-construction verification failure."""


@dataclass(frozen=True)
class ConwaySpec:
    """The integer vector (c_1, ..., c_n) of a 2-bridge link, n odd."""

    c_list: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.c_list)
        object.__setattr__(self, "c_list", cs)
        if len(cs) < 1:
            raise ValueError("Conway vector must be non-empty")
        if len(cs) % 2 == 0:
            raise ValueError("number of tangles must be odd")
        if any(c < 1 for c in cs):
            raise ValueError("every c_i must be a positive integer")

    @classmethod
    def coerce(cls, value) -> "ConwaySpec":
        if isinstance(value, ConwaySpec):
            return value
        if isinstance(value, int):
            return cls((value,))
        return cls(tuple(value))

    @classmethod
    def parse(cls, text: str) -> "ConwaySpec":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        try:
            values = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"cannot parse Conway vector {text!r}") from exc
        return cls(values)

    @property
    def n(self) -> int:
        return len(self.c_list)

    @property
    def c(self) -> int:
        return sum(self.c_list)

    @property
    def p_count(self) -> int:
        return sum(1 for ci in self.c_list if ci % 3 == 0)

    @property
    def q_count(self) -> int:
        return sum(1 for ci in self.c_list if ci % 3 == 1)

    @property
    def r_count(self) -> int:
        return sum(1 for ci in self.c_list if ci % 3 == 2)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.c_list)
