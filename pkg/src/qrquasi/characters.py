"""Finitely supported integer functions on the weight lattice."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


@dataclass(frozen=True)
class Box:
    """Closed coordinate box ``prod [lo_i, hi_i]`` in ``Z^rank``."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(int(x) for x in self.lo))
        object.__setattr__(self, "hi", tuple(int(x) for x in self.hi))
        if len(self.lo) != len(self.hi):
            raise ValueError("box corners have different ranks")

    @classmethod
    def from_ranges(cls, ranges: Sequence[tuple[int, int]]) -> "Box":
        return cls(tuple(r[0] for r in ranges), tuple(r[1] for r in ranges))

    @classmethod
    def around(cls, points: Iterable[Sequence], pad: int = 0) -> "Box":
        """Smallest integer box containing ``points`` (rationals allowed), padded."""
        from math import ceil, floor

        pts = [tuple(p) for p in points]
        if not pts:
            raise ValueError("no points")
        n = len(pts[0])
        lo = tuple(floor(min(p[i] for p in pts)) - pad for i in range(n))
        hi = tuple(ceil(max(p[i] for p in pts)) + pad for i in range(n))
        return cls(lo, hi)

    @property
    def rank(self) -> int:
        return len(self.lo)

    @property
    def empty(self) -> bool:
        return any(l > h for l, h in zip(self.lo, self.hi))

    def __contains__(self, p) -> bool:
        return all(l <= x <= h for l, x, h in zip(self.lo, p, self.hi))

    def __iter__(self) -> Iterator[tuple]:
        if self.empty:
            return iter(())
        return itertools.product(*(range(l, h + 1) for l, h in zip(self.lo, self.hi)))

    def __len__(self) -> int:
        if self.empty:
            return 0
        out = 1
        for l, h in zip(self.lo, self.hi):
            out *= h - l + 1
        return out

    def shrink(self, lo_pad: Sequence[int], hi_pad: Sequence[int]) -> "Box":
        return Box(tuple(l + a for l, a in zip(self.lo, lo_pad)),
                   tuple(h - b for h, b in zip(self.hi, hi_pad)))

    def __str__(self) -> str:
        return ",".join(f"{l}:{h}" for l, h in zip(self.lo, self.hi))


class FormalCharacter(Mapping):
    """``sum_lambda c(lambda) t^lambda`` with integer coefficients and finite support.

    Behaves as a read-only mapping from weight tuples to nonzero integers;
    missing weights have coefficient 0 (``char[w]`` returns 0 for them).
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping | Iterable = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        c: dict = {}
        for k, v in items:
            k = tuple(int(x) for x in k)
            c[k] = c.get(k, 0) + int(v)
        self._c = {k: v for k, v in c.items() if v != 0}

    def __getitem__(self, key):
        return self._c.get(tuple(key), 0)

    def __iter__(self):
        return iter(sorted(self._c))

    def __len__(self):
        return len(self._c)

    def __contains__(self, key):
        return tuple(key) in self._c

    def __eq__(self, other):
        if isinstance(other, FormalCharacter):
            return self._c == other._c
        if isinstance(other, Mapping):
            return self._c == {tuple(k): v for k, v in other.items() if v != 0}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self._c.items()))
        return f"FormalCharacter({{{body}}})"

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        return FormalCharacter(itertools.chain(self._c.items(), other._c.items()))

    def __neg__(self) -> "FormalCharacter":
        return FormalCharacter({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        return self + (-other)

    def __mul__(self, other: "FormalCharacter") -> "FormalCharacter":
        out: dict = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                k = tuple(i + j for i, j in zip(a, b))
                out[k] = out.get(k, 0) + x * y
        return FormalCharacter(out)

    def shift(self, by: Sequence[int]) -> "FormalCharacter":
        return FormalCharacter({tuple(i + j for i, j in zip(k, by)): v for k, v in self._c.items()})

    def restrict(self, box: Box) -> "FormalCharacter":
        return FormalCharacter({k: v for k, v in self._c.items() if k in box})

    @property
    def support(self) -> list[tuple]:
        return sorted(self._c)

    def total(self) -> int:
        return sum(self._c.values())

    @classmethod
    def spike(cls, weight: Sequence[int], coefficient: int = 1) -> "FormalCharacter":
        return cls({tuple(weight): coefficient})
