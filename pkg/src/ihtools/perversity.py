"""Perversities: integer-valued functions of (real) codimension c >= 2.

Built-ins
---------
zero      p(c) = 0
middle    p(c) = floor((c - 2) / 2)           (lower middle on odd codims)
upper     p(c) = floor((c - 1) / 2)           (equals middle on even codims)
log       p(c) = middle(c) + 1                 (so log(2c) = c)
k-family  middle(c) for c <= 2k, middle(c) + 1 for c > 2k
top       p(c) = c - 2

On even codimension 2i these reproduce the complex-variety conventions
middle(2i) = i - 1, log(2i) = i and k(2i) in {i - 1, i}. Odd codimensions
are filled in by the same floor rule, which is what suspensions and other
PL test spaces need.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping


class PerversityError(ValueError):
    pass


def _middle(c: int) -> int:
    return (c - 2) // 2


_BUILTIN: dict[str, Callable[[int], int]] = {
    "zero": lambda c: 0,
    "middle": _middle,
    "upper": lambda c: (c - 1) // 2,
    "log": lambda c: _middle(c) + 1,
    "top": lambda c: c - 2,
}


@dataclass(frozen=True)
class Perversity:
    name: str
    _fn: Callable[[int], int] = field(repr=False, compare=False)
    table: tuple[tuple[int, int], ...] | None = None  # only for custom perversities

    def __call__(self, c: int) -> int:
        return self.value(c)

    def value(self, c: int) -> int:
        if c < 2:
            raise PerversityError(f"perversities are defined for codimension >= 2, got {c}")
        return self._fn(c)

    def values(self, codims) -> dict[int, int]:
        return {c: self.value(c) for c in codims}

    def check(self, max_codim: int) -> None:
        """Raise unless nondecreasing with p(c) <= c - 1 on 2..max_codim."""
        prev = None
        for c in range(2, max_codim + 1):
            try:
                v = self.value(c)
            except PerversityError:
                continue
            if v < 0 or v > c - 1:
                raise PerversityError(f"{self.name}: value {v} at codim {c} outside [0, {c - 1}]")
            if prev is not None and v < prev:
                raise PerversityError(f"{self.name}: decreases at codim {c}")
            prev = v


def leq(p: Perversity, q: Perversity, max_codim: int) -> bool:
    return all(p.value(c) <= q.value(c) for c in range(2, max_codim + 1))


ZERO = Perversity("zero", _BUILTIN["zero"])
MIDDLE = Perversity("middle", _BUILTIN["middle"])
UPPER = Perversity("upper", _BUILTIN["upper"])
LOG = Perversity("log", _BUILTIN["log"])
TOP = Perversity("top", _BUILTIN["top"])


def k_perversity(k: int) -> Perversity:
    if k < 0:
        raise PerversityError("k must be non-negative")
    return Perversity(f"k={k}", lambda c: _middle(c) + (1 if c > 2 * k else 0))


def custom(values: Mapping[int, int]) -> Perversity:
    table = tuple(sorted((int(c), int(v)) for c, v in values.items()))
    if any(c < 2 for c, _ in table):
        raise PerversityError("custom perversity codims must be >= 2")
    lookup = dict(table)

    def fn(c: int) -> int:
        try:
            return lookup[c]
        except KeyError:
            raise PerversityError(f"custom perversity has no value at codim {c}") from None

    name = "custom=" + ",".join(f"{c}:{v}" for c, v in table)
    p = Perversity(name, fn, table)
    if table:
        p.check(table[-1][0])
    return p


def perversity_value(p: Perversity, c: int) -> int:
    return p.value(c)


def parse(text: str) -> Perversity:
    """Parse ``zero|middle|upper|log|top|k=<int>|custom=<c1:v1,c2:v2,...>``."""
    text = text.strip()
    if text in _BUILTIN:
        return {"zero": ZERO, "middle": MIDDLE, "upper": UPPER, "log": LOG, "top": TOP}[text]
    if text.startswith("k="):
        try:
            return k_perversity(int(text[2:]))
        except ValueError as exc:
            raise PerversityError(f"bad k-perversity {text!r}") from exc
    if text.startswith("custom="):
        body = text[len("custom="):]
        values = {}
        for item in filter(None, body.split(",")):
            try:
                c, v = item.split(":")
                values[int(c)] = int(v)
            except ValueError as exc:
                raise PerversityError(f"bad custom entry {item!r}") from exc
        return custom(values)
    raise PerversityError(f"unknown perversity {text!r}")
