"""Merger patterns: perfect matchings on the ordered levels 1..2J.

A pattern records which pairs of levels coalesce as the coupling grows.
Admissible patterns are non-crossing; the centrally symmetric ones are
those fixed by the level reflection n -> 2J + 1 - n.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

DEFAULT_CAP = 14

Pair = tuple[int, int]


class ParseError(ValueError):
    """Text does not follow the pattern-symbol grammar."""


class InvalidMatching(ValueError):
    """Pairs do not form a perfect matching of 1..2J."""


class CapExceeded(ValueError):
    """Requested enumeration is larger than the configured cap."""


@dataclass(frozen=True)
class MergerPattern:
    """A perfect matching of the levels ``1..size``.

    ``pairs`` is stored canonically: each pair ascending, pairs sorted by
    their first element. Construct through :meth:`from_pairs` to get
    validation and normalisation.
    """

    size: int
    pairs: tuple[Pair, ...]

    def __post_init__(self) -> None:
        if self.size < 2 or self.size % 2:
            raise InvalidMatching(f"size must be a positive even integer, got {self.size}")
        seen: set[int] = set()
        for a, b in self.pairs:
            if a == b:
                raise InvalidMatching(f"pair [{a},{b}] links a level to itself")
            for n in (a, b):
                if not 1 <= n <= self.size:
                    raise InvalidMatching(f"level {n} outside 1..{self.size}")
                if n in seen:
                    raise InvalidMatching(f"level {n} appears more than once")
                seen.add(n)
        if len(seen) != self.size:
            missing = sorted(set(range(1, self.size + 1)) - seen)
            raise InvalidMatching(f"levels {missing} are not matched")
        canon = tuple(sorted((min(a, b), max(a, b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", canon)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]], size: int | None = None) -> MergerPattern:
        pairs = [tuple(int(n) for n in p) for p in pairs]
        for p in pairs:
            if len(p) != 2:
                raise InvalidMatching(f"pair {list(p)} does not have two entries")
        if size is None:
            size = max((max(p) for p in pairs), default=0)
        return cls(size, tuple(pairs))  # type: ignore[arg-type]

    @property
    def J(self) -> int:
        return self.size // 2

    def partner(self, level: int) -> int:
        for a, b in self.pairs:
            if a == level:
                return b
            if b == level:
                return a
        raise KeyError(level)

    def __str__(self) -> str:
        return format_symbol(self)


def is_noncrossing(p: MergerPattern) -> bool:
    # a stack scan: every closing level must close the innermost open arch
    closer = {a: b for a, b in p.pairs}
    stack: list[int] = []
    for n in range(1, p.size + 1):
        if n in closer:
            stack.append(closer[n])
        elif not stack or stack.pop() != n:
            return False
    return True


def reflect(p: MergerPattern) -> MergerPattern:
    m = p.size + 1
    return MergerPattern(p.size, tuple((m - a, m - b) for a, b in p.pairs))


def is_centrally_symmetric(p: MergerPattern) -> bool:
    return reflect(p) == p


def _check_cap(J: int, cap: int | None) -> None:
    if J < 1:
        raise ValueError(f"J must be >= 1, got {J}")
    cap = DEFAULT_CAP if cap is None else cap
    if J > cap:
        raise CapExceeded(f"J={J} exceeds the enumeration cap {cap}")


def _noncrossing_segment(lo: int, hi: int) -> Iterator[tuple[Pair, ...]]:
    """All non-crossing matchings of levels lo..hi-1, in lexicographic order."""
    if lo >= hi:
        yield ()
        return
    for partner in range(lo + 1, hi, 2):
        for inner in _noncrossing_segment(lo + 1, partner):
            head = ((lo, partner),) + inner
            for outer in _noncrossing_segment(partner + 1, hi):
                yield head + outer


def iter_noncrossing(J: int, cap: int | None = None) -> Iterator[MergerPattern]:
    """Lazily yield the non-crossing matchings of 2J levels in lexicographic order."""
    _check_cap(J, cap)
    size = 2 * J
    for pairs in _noncrossing_segment(1, size + 1):
        yield MergerPattern(size, pairs)


def enumerate_noncrossing(J: int, cap: int | None = None) -> list[MergerPattern]:
    """All non-crossing perfect matchings of 2J levels.

    Level 1 links to an even position; the arch splits the remaining levels
    into an inner and an outer segment matched independently. The result is
    ordered lexicographically by the canonical pair tuple.
    """
    return list(iter_noncrossing(J, cap))


def _symmetric_segment(lo: int, hi: int) -> Iterator[tuple[Pair, ...]]:
    """Non-crossing matchings of lo..hi-1 fixed by the reflection about its midpoint."""
    if lo >= hi:
        yield ()
        return
    mirror = lo + hi - 1
    # the outermost levels link to each other
    for middle in _symmetric_segment(lo + 1, hi - 1):
        yield ((lo, hi - 1),) + middle
    # lo closes an arch of width 2k; the right end carries its mirror image
    width = hi - lo
    for k in range(1, width // 4 + 1):
        partner = lo + 2 * k - 1
        for inner in _noncrossing_segment(lo + 1, partner):
            left = ((lo, partner),) + inner
            right = tuple((mirror - b, mirror - a) for a, b in left)
            for middle in _symmetric_segment(partner + 1, hi - 2 * k):
                yield left + middle + right


def enumerate_symmetric(J: int, cap: int | None = None) -> list[MergerPattern]:
    """Non-crossing matchings of 2J levels that are invariant under reflection."""
    _check_cap(J, cap)
    size = 2 * J
    found = [MergerPattern(size, pairs) for pairs in _symmetric_segment(1, size + 1)]
    found.sort(key=lambda p: p.pairs)
    return found


def format_symbol(p: MergerPattern) -> str:
    return "{" + ",".join(f"[{a},{b}]" for a, b in p.pairs) + "}"


_PAIR = re.compile(r"\[ *([0-9]+) *, *([0-9]+) *\]")
_SYMBOL = re.compile(r" *\{ *(\[[^\]]*\] *(?:, *\[[^\]]*\] *)*)\} *")


def parse_symbol(text: str) -> MergerPattern:
    """Parse ``{[a,b],[c,d],...}`` into a pattern; spaces are tolerated."""
    m = _SYMBOL.fullmatch(text)
    if m is None:
        raise ParseError(f"not a pattern symbol: {text!r}")
    pairs = []
    for chunk in re.split(r"(?<=\]) *, *", m.group(1).strip()):
        pm = _PAIR.fullmatch(chunk.strip())
        if pm is None:
            raise ParseError(f"malformed pair {chunk!r} in {text!r}")
        a, b = pm.groups()
        if a.startswith("0") or b.startswith("0"):
            raise ParseError(f"level indices must be nonzero without leading zeros: {chunk!r}")
        pairs.append((int(a), int(b)))
    size = max(max(p) for p in pairs)
    if size % 2:
        raise InvalidMatching(f"largest index {size} is odd; a matching needs an even size")
    return MergerPattern(size, tuple(pairs))
