# core/partitions.py

import itertools
import json
import re
from functools import lru_cache
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from sympy.utilities.iterables import partitions as sympy_partitions

from core.errors import DomainError
from core.segments import EMPTY_SYMBOL, check_e
from core.weights import WeightExpr


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def part(self, row: int) -> int:
        """The length of row `row` (1-based); 0 below the last row."""
        if row < 1:
            raise DomainError(f"row index must be >= 1, got {row}")
        return self.parts[row - 1] if row <= len(self.parts) else 0

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= k) for k in range(1, self.parts[0] + 1)))

    def with_row(self, row: int, length: int) -> "Partition":
        parts = list(self.parts) + [0] * max(0, row - len(self.parts))
        parts[row - 1] = length
        return Partition(tuple(p for p in parts if p > 0))

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order."""
    if n < 0:
        return ()
    if n == 0:
        return (Partition(),)
    found = []
    for counts in sympy_partitions(n):
        # sympy reuses the yielded dict
        parts = sorted((k for k, m in dict(counts).items() for _ in range(m)), reverse=True)
        found.append(Partition(tuple(parts)))
    return tuple(sorted(found, key=lambda p: p.parts, reverse=True))


@dataclass(frozen=True)
class Multicharge:
    """The multicharge v = (v_0, ..., v_{l-1}) together with e."""
    values: Tuple[int, ...]
    e: int

    def __post_init__(self):
        check_e(self.e)
        if len(self.values) < 1:
            raise DomainError("a multicharge needs at least one entry")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @classmethod
    def parse(cls, text: str, e: int) -> "Multicharge":
        try:
            values = tuple(int(x) for x in text.split(",") if x.strip() != "")
        except ValueError:
            raise DomainError(f"malformed charge '{text}'")
        return cls(values, e)

    @property
    def level(self) -> int:
        return len(self.values)

    def residues(self) -> Tuple[int, ...]:
        return tuple(v % self.e for v in self.values)

    def in_flotw_range(self) -> bool:
        """Membership in the set of v with v_0 <= v_1 <= ... <= v_{l-1} < v_0 + e."""
        v = self.values
        return all(v[k] <= v[k + 1] for k in range(len(v) - 1)) and v[-1] < v[0] + self.e

    def require_flotw_range(self):
        if not self.in_flotw_range():
            raise DomainError(f"charge {self} does not satisfy v_0 <= ... <= v_(l-1) < v_0 + e")

    def highest_weight(self) -> WeightExpr:
        """Lambda = Lambda_{v_0} + ... + Lambda_{v_{l-1}} (indices mod e)."""
        weight = WeightExpr.zero(self.e)
        for r in self.residues():
            weight = weight + WeightExpr.fundamental_weight(self.e, r)
        return weight

    def tau(self) -> "Multicharge":
        """(v_1, ..., v_{l-1}, v_0 + e)."""
        return Multicharge(self.values[1:] + (self.values[0] + self.e,), self.e)

    def swap(self, j: int) -> "Multicharge":
        """Exchanges v_{j-1} and v_j."""
        if not 1 <= j < self.level:
            raise DomainError(f"swap index {j} out of range for level {self.level}")
        values = list(self.values)
        values[j - 1], values[j] = values[j], values[j - 1]
        return Multicharge(tuple(values), self.e)

    def negated(self) -> "Multicharge":
        return Multicharge(tuple(-v for v in self.values), self.e)

    def label(self) -> str:
        return "_".join(str(v) for v in self.values)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class ChargedMultiPartition:
    """An l-tuple of partitions together with a multicharge of length l."""
    charge: Multicharge
    components: Tuple[Partition, ...]

    def __post_init__(self):
        components = tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in self.components)
        if len(components) != self.charge.level:
            raise DomainError(f"{len(components)} components given for a charge of level {self.charge.level}")
        object.__setattr__(self, "components", components)

    @classmethod
    def empty(cls, charge: Multicharge) -> "ChargedMultiPartition":
        return cls(charge, tuple(Partition() for _ in range(charge.level)))

    @classmethod
    def of(cls, charge: Multicharge, *parts: Sequence[int]) -> "ChargedMultiPartition":
        return cls(charge, tuple(Partition(tuple(p)) for p in parts))

    @property
    def e(self) -> int:
        return self.charge.e

    @property
    def level(self) -> int:
        return self.charge.level

    @property
    def rank(self) -> int:
        return sum(c.size for c in self.components)

    def is_empty(self) -> bool:
        return self.rank == 0

    def nodes(self) -> Iterator[Tuple[int, int, int]]:
        """All nodes (row, col, comp), 1-based rows and columns."""
        for c, lam in enumerate(self.components):
            for a, length in enumerate(lam.parts, start=1):
                for b in range(1, length + 1):
                    yield a, b, c

    def residue_counts(self) -> List[int]:
        counts = [0] * self.e
        for a, b, c in self.nodes():
            counts[node_content((a, b, c), self.charge) % self.e] += 1
        return counts

    def with_component(self, c: int, partition: Partition) -> "ChargedMultiPartition":
        components = list(self.components)
        components[c] = partition
        return ChargedMultiPartition(self.charge, tuple(components))

    def add_node(self, a: int, c: int) -> "ChargedMultiPartition":
        lam = self.components[c]
        return self.with_component(c, lam.with_row(a, lam.part(a) + 1))

    def remove_node(self, a: int, c: int) -> "ChargedMultiPartition":
        lam = self.components[c]
        return self.with_component(c, lam.with_row(a, lam.part(a) - 1))

    def transpose(self, charge: Multicharge = None) -> "ChargedMultiPartition":
        """Transposes every component (order kept) and attaches `charge` (default: same)."""
        return ChargedMultiPartition(charge or self.charge, tuple(c.transpose() for c in self.components))

    def recharge(self, charge: Multicharge) -> "ChargedMultiPartition":
        return ChargedMultiPartition(charge, self.components)

    def cyclic_shift(self) -> "ChargedMultiPartition":
        """(lam^(1), ..., lam^(l-1), lam^(0)) under the charge tau(v)."""
        return ChargedMultiPartition(self.charge.tau(), self.components[1:] + self.components[:1])

    def sort_key(self) -> Tuple:
        return tuple(c.parts for c in self.components)

    def to_json(self):
        return {"charge": list(self.charge.values), "parts": [list(c.parts) for c in self.components]}

    def __str__(self):
        return "(" + ",".join(str(c) if c.parts else EMPTY_SYMBOL for c in self.components) + ")"


def node_content(node: Tuple[int, int, int], charge: Multicharge) -> int:
    """The content b - a + v_c of the node (a, b, c)."""
    a, b, c = node
    if a < 1 or b < 1:
        raise DomainError(f"node {node} must have row and column >= 1")
    if not 0 <= c < charge.level:
        raise DomainError(f"component index {c} out of range for level {charge.level}")
    return b - a + charge.values[c]


_GROUP_PATTERN = re.compile(r"\(([^()]*)\)|∅")


def parse_multipartition(text: str, charge: Multicharge) -> ChargedMultiPartition:
    """
    Parses "((2,1),(1))", "((2),∅)" or JSON {"charge": [...], "parts": [[...], ...]}.

    A JSON charge, when present, must agree with `charge`.

    Raises:
        DomainError: On malformed input.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
            parts = data["parts"]
        except (ValueError, KeyError, TypeError) as exc:
            raise DomainError(f"malformed multipartition JSON: {exc}")
        if "charge" in data and tuple(data["charge"]) != charge.values:
            raise DomainError(f"input charge {data['charge']} differs from --charge {charge}")
        return ChargedMultiPartition(charge, tuple(Partition(tuple(p)) for p in parts))
    inner = text
    if charge.level > 1 or inner.count("(") > 1:
        if inner.startswith("(") and inner.endswith(")"):
            inner = inner[1:-1]
    elif not inner.startswith("(") and inner != EMPTY_SYMBOL:
        inner = f"({inner})"
    groups = []
    for match in _GROUP_PATTERN.finditer(inner):
        if match.group(0) == EMPTY_SYMBOL:
            groups.append(())
            continue
        body = match.group(1).replace(EMPTY_SYMBOL, "")
        try:
            groups.append(tuple(int(x) for x in body.split(",") if x.strip() != ""))
        except ValueError:
            raise DomainError(f"malformed partition '({body})'")
    if not groups and charge.level == 1 and inner in ("", EMPTY_SYMBOL):
        groups = [()]
    if len(groups) != charge.level:
        raise DomainError(f"'{text}' has {len(groups)} components, charge {charge} needs {charge.level}")
    return ChargedMultiPartition(charge, tuple(Partition(g) for g in groups))


def compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of n into `parts` nonnegative entries."""
    for cuts in itertools.combinations_with_replacement(range(n + 1), parts - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[k + 1] - bounds[k] for k in range(parts))


def multipartitions_of(charge: Multicharge, n: int) -> List[ChargedMultiPartition]:
    """All l-partitions of rank n with the given charge, in canonical order."""
    found = []
    for sizes in compositions(n, charge.level):
        for choice in itertools.product(*(partitions_of(s) for s in sizes)):
            found.append(ChargedMultiPartition(charge, tuple(choice)))
    return sorted(found, key=ChargedMultiPartition.sort_key)
