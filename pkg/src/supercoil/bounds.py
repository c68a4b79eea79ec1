"""Closed-form stick and bigon bounds for 2-bridge links.

All formulas are evaluated in exact rational arithmetic; every bound is an
integer for a valid Conway vector and a non-integer result signals a bug.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from fractions import Fraction

from .link import ConwaySpec

PREVIOUS_BOUND_OFFSET = 2  # earlier constructions give s(L) <= c(L) + 2


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"{what} evaluated to non-integer {x}")
    return int(x)


def lemma1_sticks(c: int) -> int:
    """Sticks needed for a supercoiled integral tangle with c crossings."""
    if c < 1:
        raise ValueError("crossing count must be >= 1")
    r = c % 3
    if r == 0:
        val = Fraction(2, 3) * c + 4
    elif r == 1:
        val = Fraction(2, 3) * c + Fraction(10, 3)
    else:
        val = Fraction(2, 3) * c + Fraction(11, 3)
    return _as_int(val, "tangle stick count")


def theorem2_bound(spec: ConwaySpec) -> int:
    """Upper bound for the stick number of the 2-bridge link of `spec`."""
    spec = ConwaySpec.coerce(spec)
    val = (
        Fraction(2, 3) * spec.c
        + 2 * spec.n
        + 3
        - Fraction(2, 3) * spec.q_count
        - Fraction(1, 3) * spec.r_count
    )
    return _as_int(val, "stick upper bound")


def previous_bound(spec: ConwaySpec) -> int:
    spec = ConwaySpec.coerce(spec)
    return spec.c + PREVIOUS_BOUND_OFFSET


def improvement_threshold(spec: ConwaySpec) -> bool:
    """True when the supercoiled bound beats the previous c + 2 bound."""
    spec = ConwaySpec.coerce(spec)
    return 6 * spec.n + 1 - 2 * spec.q_count - spec.r_count < spec.c


def lemma4_bound(spec: ConwaySpec) -> int:
    """Minimum bigons in any minimal crossing diagram (needs all c_i >= 2)."""
    spec = ConwaySpec.coerce(spec)
    if any(ci < 2 for ci in spec.c_list):
        raise ValueError("bigon bound requires every c_i >= 2")
    return spec.c - 2 * spec.n + 2


def theorem5_obstruction(spec: ConwaySpec) -> bool:
    """True when no minimal stick representative has a minimal projection."""
    spec = ConwaySpec.coerce(spec)
    if any(ci < 2 for ci in spec.c_list):
        raise ValueError("obstruction predicate requires every c_i >= 2")
    return 12 * spec.n + 3 - 2 * spec.q_count - spec.r_count < spec.c


def continued_fraction(spec: ConwaySpec) -> tuple[int, int]:
    """Numerator and denominator of [c_1, ..., c_n] in lowest terms."""
    spec = ConwaySpec.coerce(spec)
    value = Fraction(spec.c_list[-1])
    for ci in reversed(spec.c_list[:-1]):
        value = ci + 1 / value
    p, q = value.numerator, value.denominator
    if p < 0:
        p, q = -p, -q
    return p, q


@dataclass(frozen=True)
class BoundsReport:
    conway: tuple[int, ...]
    crossing_number: int
    tangle_count: int
    residue_p: int
    residue_q: int
    residue_r: int
    tangle_sticks: tuple[int, ...]
    stick_upper_bound: int
    previous_bound: int
    improvement: bool
    bigon_lower_bound: int | None
    obstruction: bool | None
    determinant_fraction: tuple[int, int]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["conway"] = list(self.conway)
        d["tangle_sticks"] = list(self.tangle_sticks)
        d["determinant_fraction"] = list(self.determinant_fraction)
        return d


def bounds_report(spec: ConwaySpec) -> BoundsReport:
    """All bounds and predicates for one Conway vector.

    Bigon and obstruction fields are None when some c_i < 2, where the
    corresponding results do not apply.
    """
    spec = ConwaySpec.coerce(spec)
    has_bigon_data = all(ci >= 2 for ci in spec.c_list)
    report = BoundsReport(
        conway=spec.c_list,
        crossing_number=spec.c,
        tangle_count=spec.n,
        residue_p=spec.p_count,
        residue_q=spec.q_count,
        residue_r=spec.r_count,
        tangle_sticks=tuple(lemma1_sticks(ci) for ci in spec.c_list),
        stick_upper_bound=theorem2_bound(spec),
        previous_bound=previous_bound(spec),
        improvement=improvement_threshold(spec),
        bigon_lower_bound=lemma4_bound(spec) if has_bigon_data else None,
        obstruction=theorem5_obstruction(spec) if has_bigon_data else None,
        determinant_fraction=continued_fraction(spec),
    )
    if report.obstruction:
        assert report.stick_upper_bound < report.bigon_lower_bound
    return report
