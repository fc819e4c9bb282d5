"""Operation counting.

A :class:`CostCounter` is an additive tally owned by one call tree.  Every
arithmetic routine accepts an optional counter and charges the field
operations it performs; ``None`` means "don't count".
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field


@dataclass
class NodeRecord:
    """Work issued by one recursion node of a half-gcd algorithm, children excluded."""

    algorithm: str
    k: int
    length: int  # transform length of the node (k for Alg. 2, l for Alg. 5, 0 if generic)
    forward: dict[int, int]
    inverse: dict[int, int]
    degeneracy: int = 0
    base_case: bool = False

    def transforms_at(self, n: int) -> int:
        return self.forward.get(n, 0) + self.inverse.get(n, 0)


@dataclass
class CostCounter:
    field_mults: int = 0
    field_adds: int = 0
    field_divs: int = 0
    forward: dict[int, int] = field(default_factory=lambda: defaultdict(int))
    inverse: dict[int, int] = field(default_factory=lambda: defaultdict(int))
    # when not None, half-gcd algorithms append one NodeRecord per recursion node
    trace: list[NodeRecord] | None = None

    def mults(self, n: int = 1) -> None:
        self.field_mults += n

    def adds(self, n: int = 1) -> None:
        self.field_adds += n

    def divs(self, n: int = 1) -> None:
        self.field_divs += n

    def transform(self, n: int, inverse: bool = False) -> None:
        (self.inverse if inverse else self.forward)[n] += 1

    def merge(self, other: "CostCounter") -> None:
        self.field_mults += other.field_mults
        self.field_adds += other.field_adds
        self.field_divs += other.field_divs
        for n, c in other.forward.items():
            self.forward[n] += c
        for n, c in other.inverse.items():
            self.inverse[n] += c

    @property
    def transforms(self) -> dict[int, tuple[int, int]]:
        """Length -> (forward, inverse) invocation counts."""
        lengths = sorted(set(self.forward) | set(self.inverse))
        return {n: (self.forward.get(n, 0), self.inverse.get(n, 0)) for n in lengths}

    @property
    def total_transforms(self) -> int:
        return sum(self.forward.values()) + sum(self.inverse.values())

    @property
    def weighted_transforms(self) -> int:
        """Sum of n*log2(n) over all transform invocations."""
        total = 0
        for table in (self.forward, self.inverse):
            for n, c in table.items():
                total += c * n * (n.bit_length() - 1)
        return total

    def snapshot(self) -> "CostCounter":
        out = CostCounter()
        out.merge(self)
        return out
