"""Existence bounds for minimal-support AME(n, d) states.

Writing N(d) for the largest n at which a minimal-support AME(n, d) state
exists (the set of feasible n is an interval, so N(d) is well defined):

* necessary condition: for n >= 4 existence forces d >= ceil(n/2) + 1,
  equivalently N(d) <= 2d - 2 (even) / 2d - 3 (odd);
* constructive lower bound: N(d) >= d + 1 for prime powers d >= 3, via
  extended Reed-Solomon codes;
* the one known exact value beyond forced coincidences: N(5) = 6,
  reproducible with the exhaustive search in ameforge.search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .codes import ame_distance
from .errors import InvalidParams
from .fields import is_prime_power


class ConditionResult(NamedTuple):
    allowed: bool
    explanation: str

    def __bool__(self) -> bool:  # truthiness follows the verdict, not tuple length
        return self.allowed


def necessary_condition(n: int, d: int) -> ConditionResult:
    """Gate (n, d) through the necessary condition for minimal support.

    Returns allowed=False only when the pair is excluded outright; an
    allowed pair may still be infeasible (the condition is not sufficient).
    """
    if n < 2 or d < 2:
        raise InvalidParams("need n >= 2 and d >= 2")
    if n < 4:
        return ConditionResult(
            True, f"n = {n} < 4: the necessary condition is vacuous and "
            f"diagonal constructions exist for every d"
        )
    need = ame_distance(n)  # d must reach ceil(n/2) + 1
    if d >= need:
        return ConditionResult(
            True,
            f"necessary condition holds: d = {d} >= ceil({n}/2) + 1 = {need} "
            f"(existence is still not guaranteed)",
        )
    return ConditionResult(
        False,
        f"necessary condition violated: a minimal-support AME({n},{d}) state "
        f"requires d >= ceil({n}/2) + 1 = {need}, but d = {d}",
    )


#: Exact N(d) values this toolkit can stand behind, with provenance.
#: d=5 is the computational result (see ameforge.search.nonexistence_certificate);
#: d=3 is forced because the lower and upper bounds coincide.
KNOWN_EXACT: dict[int, tuple[int, str]] = {
    3: (4, "lower and upper bounds coincide"),
    5: (
        6,
        "exhaustive systematic search finds no linear MDS code over GF(5) with "
        "wordlength 7 and dimension 3; the nonlinear-to-linear reduction of "
        "Kokkala-Krotov-Ostergard extends this to all codes, and the verified "
        "AME(6,5) witness settles N(5) = 6 (reproduce: ameforge search 5 7 3 --certificate)",
    ),
}


@dataclass(frozen=True)
class Bounds:
    """Best known bracket for N(d) at one local dimension."""

    d: int
    lower: int
    upper: int
    exact: int | None
    note: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise InvalidParams(f"lower {self.lower} > upper {self.upper} at d={self.d}")
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise InvalidParams(f"exact {self.exact} outside [{self.lower}, {self.upper}]")


def bounds_for(d: int) -> Bounds:
    if d < 3:
        raise InvalidParams("bounds are tabulated for d >= 3")
    # Parity-consistent maximum: 2d-2 is even, so the even branch dominates.
    upper = 2 * d - 2
    if is_prime_power(d):
        lower = d + 1
        note = "lower bound from extended Reed-Solomon construction"
    else:
        lower = 2
        note = "no general construction known for non-prime-power d; n = 2 (pair state) is free"
    exact, provenance = KNOWN_EXACT.get(d, (None, ""))
    if exact is None and lower == upper:
        exact, provenance = lower, "lower and upper bounds coincide"
    if exact is not None:
        note = provenance
    return Bounds(d=d, lower=lower, upper=upper, exact=exact, note=note)


def bounds_table(d_max: int) -> list[Bounds]:
    """Bounds rows for every d in 3..d_max."""
    if d_max < 3:
        raise InvalidParams("d_max must be >= 3")
    return [bounds_for(d) for d in range(3, d_max + 1)]


def known_max_sites(d: int) -> int | None:
    """Exact N(d) when known to the toolkit, else None."""
    if d < 3:
        return None
    value = KNOWN_EXACT.get(d)
    if value is not None:
        return value[0]
    row = bounds_for(d)
    return row.exact
