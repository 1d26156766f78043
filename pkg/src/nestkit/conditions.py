"""Sufficient conditions on canonical rank-3 tuples ``(r0, r1, r2, r0)``.

Flags follow the published labels: ``thm4`` a-d and ``thm5`` a-d are the
earlier conditions, ``thm7`` is "r0 and r1 both divide r2 - 1" and ``thm8``
is "k*r0 <= r1 <= k*(r0 + 1) for some k". Integer arithmetic only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .errors import IndexOutOfRange, InvalidTuple

LEGACY, ALL = "legacy", "all"


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ConditionReport:
    tuple: tuple[int, int, int]
    thm4: dict[str, bool]
    thm5: dict[str, bool]
    f_values: list[int]
    thm7: bool
    thm7_quotients: Optional[tuple[int, int]]
    thm8: bool
    thm8_k: Optional[int]
    thm8_t: Optional[int]
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def any_satisfied(self) -> bool:
        return any(self.flags.values())

    @property
    def legacy_satisfied(self) -> bool:
        return any(v for k, v in self.flags.items() if k.startswith(("thm4", "thm5")))

    def satisfied(self) -> list[str]:
        return [name for name, v in self.flags.items() if v]

    def to_json(self) -> dict:
        return {
            "tuple": list(self.tuple),
            "flags": dict(self.flags),
            "f_values": list(self.f_values),
            "thm7_quotients": None if self.thm7_quotients is None else list(self.thm7_quotients),
            "thm8_k": self.thm8_k,
            "thm8_t": self.thm8_t,
            "any_satisfied": self.any_satisfied,
        }


def _check(r0, r1, r2):
    if not 0 < r0 < r1 < r2:
        raise InvalidTuple(f"need 0 < r0 < r1 < r2, got ({r0}, {r1}, {r2})")


def f_value(r0: int, r1: int, r2: int, i: int) -> int:
    """``ceil(r0 (1 + i) / (r2 - r0)) - floor(r0 i / (r1 - r0))``."""
    _check(r0, r1, r2)
    if not 1 <= i <= r1 - r0 - 1:
        raise IndexOutOfRange(f"i={i} outside 1..{r1 - r0 - 1}")
    return ceil_div(r0 * (1 + i), r2 - r0) - (r0 * i) // (r1 - r0)


def thm8_witness(r0: int, r1: int, strict: bool = False) -> Optional[int]:
    """Smallest ``k`` with ``k r0 <= r1 <= k (r0 + 1)`` (strict inequalities if asked)."""
    for k in range(max(1, ceil_div(r1, r0 + 1)), r1 // r0 + 1):
        lo, hi = k * r0, k * (r0 + 1)
        if (lo < r1 < hi) if strict else (lo <= r1 <= hi):
            return k
    return None


def check_conditions(r0: int, r1: int, r2: int) -> ConditionReport:
    _check(r0, r1, r2)
    thm4 = {
        "a": r1 >= r2 - ceil_div(r2, r0) + 1,
        "b": r1 == r0 + 1,
        "c": r2 > r0 * r1,
        "d": r2 % r1 == 0,
    }
    f_values = [f_value(r0, r1, r2, i) for i in range(1, r1 - r0)]
    thm5 = {
        "a": r1 % r0 == 0,
        "b": r1 % (r0 + 1) == 0,
        "c": all(v >= 0 for v in f_values),
        "d": r2 > r0 * r1 - r0 * gcd(r1, r2),
    }
    thm7 = (r2 - 1) % r0 == 0 and (r2 - 1) % r1 == 0
    quotients = ((r2 - 1) // r0, (r2 - 1) // r1) if thm7 else None
    k = thm8_witness(r0, r1)
    flags = {f"thm4{key}": v for key, v in thm4.items()}
    flags.update({f"thm5{key}": v for key, v in thm5.items()})
    flags["thm7"] = thm7
    flags["thm8"] = k is not None
    return ConditionReport(
        (r0, r1, r2), thm4, thm5, f_values, thm7, quotients,
        k is not None, k, None if k is None else r1 - k * r0, flags,
    )


def enumerate_open(max_r2: int, conditions: str = ALL) -> list[tuple[int, int, int]]:
    """Tuples ``0 < r0 < r1 < r2 <= max_r2`` not covered by any condition.

    ``conditions="legacy"`` uses only the earlier two theorems. Sorted by
    ``(r2, r0, r1)``.
    """
    if conditions not in (LEGACY, ALL):
        raise ValueError(f"conditions must be 'legacy' or 'all', got {conditions!r}")
    out = []
    for r2 in range(3, max_r2 + 1):
        for r0 in range(1, r2 - 1):
            for r1 in range(r0 + 1, r2):
                report = check_conditions(r0, r1, r2)
                covered = report.legacy_satisfied if conditions == LEGACY else report.any_satisfied
                if not covered:
                    out.append((r0, r1, r2))
    return out
