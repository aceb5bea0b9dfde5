# core/segments.py

import json
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from core.errors import ContextMismatchError, DomainError

EMPTY_SYMBOL = "∅"


def check_e(e: int) -> int:
    if not isinstance(e, int) or e < 2:
        raise DomainError(f"e must be an integer >= 2, got {e!r}")
    return e


def residue_value(i, e: int) -> int:
    """
    Returns the canonical representative in [0, e) of an int or Residue.

    Raises:
        ContextMismatchError: If a Residue built for another e is passed.
    """
    if isinstance(i, Residue):
        if i.e != e:
            raise ContextMismatchError(f"residue mod {i.e} used in a context with e = {e}")
        return i.value
    return int(i) % e


@dataclass(frozen=True)
class Residue:
    """A class in Z/eZ, stored by its representative in [0, e)."""
    value: int
    e: int

    def __post_init__(self):
        check_e(self.e)
        object.__setattr__(self, "value", int(self.value) % self.e)

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.e != self.e:
                raise ContextMismatchError(f"cannot combine residues mod {self.e} and mod {other.e}")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._other(other), self.e)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._other(other), self.e)

    def __neg__(self):
        return Residue(-self.value, self.e)

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class CyclicContext:
    """Factory for objects sharing one value of e."""
    e: int

    def __post_init__(self):
        check_e(self.e)

    def residue(self, value: int) -> Residue:
        return Residue(value, self.e)

    def residues(self) -> List[Residue]:
        return [Residue(i, self.e) for i in range(self.e)]

    def segment(self, head, length: int) -> "Segment":
        return Segment(Residue(residue_value(head, self.e), self.e), length)

    def multisegment(self, segments: Iterable = ()) -> "Multisegment":
        return Multisegment.from_segments(self.e, segments)


@dataclass(frozen=True)
class Segment:
    """The segment [head; length) of consecutive residues head, head+1, ..., head+length-1."""
    head: Residue
    length: int

    def __post_init__(self):
        if not isinstance(self.head, Residue):
            raise DomainError("segment head must be a Residue")
        if self.length < 1:
            raise DomainError(f"segment length must be >= 1, got {self.length}")

    @classmethod
    def from_tail(cls, tail: Residue, length: int) -> "Segment":
        """The segment written (length; tail] in tail notation."""
        return cls(tail - (length - 1), length)

    @property
    def e(self) -> int:
        return self.head.e

    @property
    def tail(self) -> Residue:
        return self.head + (self.length - 1)

    def residues(self) -> List[int]:
        return [(self.head.value + p) % self.e for p in range(self.length)]

    def tail_notation(self) -> str:
        return f"({self.length};{self.tail.value}]"

    def __str__(self):
        return f"[{self.head.value};{self.length})"


@dataclass(frozen=True)
class DimensionVector:
    """Nonnegative integer entries indexed by Z/eZ."""
    e: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        check_e(self.e)
        if len(self.entries) != self.e:
            raise DomainError(f"dimension vector needs {self.e} entries, got {len(self.entries)}")
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @classmethod
    def zero(cls, e: int) -> "DimensionVector":
        return cls(e, (0,) * e)

    @classmethod
    def simple(cls, e: int, i) -> "DimensionVector":
        entries = [0] * e
        entries[residue_value(i, e)] = 1
        return cls(e, tuple(entries))

    @classmethod
    def parse(cls, text: str, e: int) -> "DimensionVector":
        """Parses comma separated alpha-coefficients indexed 0..e-1."""
        try:
            entries = tuple(int(x) for x in text.split(",") if x.strip() != "")
        except ValueError:
            raise DomainError(f"malformed weight '{text}'")
        if any(x < 0 for x in entries):
            raise DomainError(f"weight '{text}' has negative entries")
        return cls(e, entries)

    def __getitem__(self, i) -> int:
        return self.entries[residue_value(i, self.e)]

    def _check(self, other: "DimensionVector"):
        if other.e != self.e:
            raise ContextMismatchError(f"dimension vectors mod {self.e} and mod {other.e}")

    def __add__(self, other: "DimensionVector") -> "DimensionVector":
        self._check(other)
        return DimensionVector(self.e, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "DimensionVector") -> "DimensionVector":
        self._check(other)
        entries = tuple(a - b for a, b in zip(self.entries, other.entries))
        if any(x < 0 for x in entries):
            raise DomainError(f"dimension vector {entries} has negative entries")
        return DimensionVector(self.e, entries)

    @property
    def rank(self) -> int:
        return sum(self.entries)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.entries) + ")"


@dataclass(frozen=True)
class Multisegment:
    """
    A finite multiset of segments over Z/eZ.

    `items` holds (head, length, multiplicity) triples with positive multiplicity,
    sorted by (length descending, head ascending). This order is the canonical order
    used for equality, hashing and every printed form.
    """
    e: int
    items: Tuple[Tuple[int, int, int], ...] = ()

    # --- Construction ---

    @classmethod
    def from_counts(cls, e: int, counts: Dict[Tuple[int, int], int]) -> "Multisegment":
        check_e(e)
        merged: Dict[Tuple[int, int], int] = {}
        for (head, length), mult in counts.items():
            if length < 1:
                raise DomainError(f"segment length must be >= 1, got {length}")
            if mult < 0:
                raise DomainError(f"negative multiplicity {mult} for [{head};{length})")
            key = (int(head) % e, int(length))
            merged[key] = merged.get(key, 0) + int(mult)
        items = tuple(sorted(((h, l, m) for (h, l), m in merged.items() if m > 0),
                             key=lambda t: (-t[1], t[0])))
        return cls(e, items)

    @classmethod
    def from_segments(cls, e: int, segments: Iterable) -> "Multisegment":
        """Accepts Segment objects or (head, length) pairs."""
        counts: Dict[Tuple[int, int], int] = {}
        for seg in segments:
            if isinstance(seg, Segment):
                if seg.e != e:
                    raise ContextMismatchError(f"segment mod {seg.e} in a multisegment mod {e}")
                key = (seg.head.value, seg.length)
            else:
                head, length = seg
                key = (residue_value(head, e), int(length))
            counts[key] = counts.get(key, 0) + 1
        return cls.from_counts(e, counts)

    @classmethod
    def empty(cls, e: int) -> "Multisegment":
        return cls(check_e(e), ())

    # --- Queries ---

    def __iter__(self) -> Iterator[Tuple[Segment, int]]:
        for head, length, mult in self.items:
            yield Segment(Residue(head, self.e), length), mult

    def counts(self) -> Dict[Tuple[int, int], int]:
        return {(h, l): m for h, l, m in self.items}

    def multiplicity(self, head, length: int) -> int:
        h = residue_value(head, self.e)
        for hh, ll, m in self.items:
            if hh == h and ll == length:
                return m
        return 0

    def segments(self) -> List[Tuple[int, int]]:
        """All (head, length) pairs repeated by multiplicity, canonical order."""
        return [(h, l) for h, l, m in self.items for _ in range(m)]

    @property
    def rank(self) -> int:
        return sum(l * m for _, l, m in self.items)

    @property
    def max_length(self) -> int:
        return max((l for _, l, _ in self.items), default=0)

    @property
    def segment_count(self) -> int:
        return sum(m for _, _, m in self.items)

    def is_empty(self) -> bool:
        return not self.items

    def lengths(self) -> List[int]:
        return sorted({l for _, l, _ in self.items}, reverse=True)

    # --- Modification ---

    def add(self, head, length: int, count: int = 1) -> "Multisegment":
        counts = self.counts()
        key = (residue_value(head, self.e), length)
        counts[key] = counts.get(key, 0) + count
        return Multisegment.from_counts(self.e, counts)

    def remove(self, head, length: int, count: int = 1) -> "Multisegment":
        key = (residue_value(head, self.e), length)
        counts = self.counts()
        if counts.get(key, 0) < count:
            raise DomainError(f"segment [{key[0]};{length}) does not occur {count} time(s) in {self}")
        counts[key] -= count
        return Multisegment.from_counts(self.e, counts)

    def union(self, other: "Multisegment") -> "Multisegment":
        if other.e != self.e:
            raise ContextMismatchError(f"multisegments mod {self.e} and mod {other.e}")
        counts = self.counts()
        for key, m in other.counts().items():
            counts[key] = counts.get(key, 0) + m
        return Multisegment.from_counts(self.e, counts)

    # --- Presentation ---

    def sort_key(self) -> Tuple:
        return self.items

    def canonical_name(self) -> str:
        """Vertex id of the form "[h,l]^m;..." (multiplicity shown when > 1)."""
        if not self.items:
            return EMPTY_SYMBOL
        return ";".join(f"[{h},{l}]" + (f"^{m}" if m > 1 else "") for h, l, m in self.items)

    def tail_notation(self) -> str:
        if not self.items:
            return EMPTY_SYMBOL
        parts = []
        for seg, m in self:
            parts.append(seg.tail_notation() + (f"^{m}" if m > 1 else ""))
        return "{" + ",".join(parts) + "}"

    def to_json(self) -> List[Dict[str, int]]:
        return [{"head": h, "len": l, "mult": m} for h, l, m in self.items]

    @classmethod
    def from_json(cls, e: int, data) -> "Multisegment":
        counts: Dict[Tuple[int, int], int] = {}
        for entry in data:
            key = (int(entry["head"]) % e, int(entry["len"]))
            counts[key] = counts.get(key, 0) + int(entry.get("mult", 1))
        return cls.from_counts(e, counts)

    def __str__(self):
        if not self.items:
            return EMPTY_SYMBOL
        return "{" + ",".join(f"[{h};{l})" + (f"^{m}" if m > 1 else "") for h, l, m in self.items) + "}"


_HEAD_PATTERN = re.compile(r"\[\s*(-?\d+)\s*[;,]\s*(\d+)\s*[)\]](?:\s*\^\s*(\d+))?")
_TAIL_PATTERN = re.compile(r"\(\s*(\d+)\s*;\s*(-?\d+)\s*\](?:\s*\^\s*(\d+))?")
_SEPARATOR = re.compile(r"\s*[,;]\s*")


def parse_multisegment(text: str, e: int) -> Multisegment:
    """
    Parses a multisegment from any of its printed forms.

    Accepted: JSON lists of {"head","len","mult"}; head notation "{[0;2),[3;1)}" or
    "[0,2];[3,1]^2"; tail notation "{(2;2],(1;1]}"; "∅" or "" for the empty multisegment.
    Segments are separated by ',' or ';' and one text uses a single notation.

    Raises:
        DomainError: If the text is not recognized, or any part of it is left unread.
    """
    text = text.strip()
    if text in ("", EMPTY_SYMBOL, "{}", "[]"):
        return Multisegment.empty(e)
    if text.startswith("[{") or text.startswith("[\n"):
        try:
            return Multisegment.from_json(e, json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise DomainError(f"malformed multisegment JSON: {exc}")
    body = text
    if body.startswith("{"):
        if not body.endswith("}"):
            raise DomainError(f"unbalanced braces in '{text}'")
        body = body[1:-1].strip()
    counts: Dict[Tuple[int, int], int] = {}
    notations = set()
    pos = 0
    while True:
        match = _HEAD_PATTERN.match(body, pos)
        if match is not None:
            head, length, mult = match.groups()
            key = (int(head) % e, int(length))
            notations.add("head")
        else:
            match = _TAIL_PATTERN.match(body, pos)
            if match is None:
                raise DomainError(f"could not parse a multisegment from '{text}': unexpected '{body[pos:]}'")
            length, tail, mult = match.groups()
            key = ((int(tail) - int(length) + 1) % e, int(length))
            notations.add("tail")
        counts[key] = counts.get(key, 0) + int(mult or 1)
        pos = match.end()
        if pos == len(body):
            break
        separator = _SEPARATOR.match(body, pos)
        if separator is None:
            raise DomainError(f"expected ',' or ';' before '{body[pos:]}' in '{text}'")
        pos = separator.end()
    if len(notations) > 1:
        raise DomainError(f"'{text}' mixes head and tail notation")
    return Multisegment.from_counts(e, counts)


def rho(psi: Multisegment) -> Multisegment:
    """Sends [i;L) to the segment of length L whose tail is -i, i.e. head -i-L+1."""
    return Multisegment.from_counts(psi.e, {((-h - l + 1) % psi.e, l): m for h, l, m in psi.items})


def is_aperiodic(psi: Multisegment) -> bool:
    """True iff for every length the heads of segments of that length miss some residue."""
    heads: Dict[int, set] = {}
    for h, l, _ in psi.items:
        heads.setdefault(l, set()).add(h)
    return all(len(hs) < psi.e for hs in heads.values())


def require_aperiodic(psi: Multisegment):
    if not is_aperiodic(psi):
        raise DomainError(f"multisegment {psi} is not aperiodic")


def dimension_vector(psi: Multisegment) -> DimensionVector:
    entries = [0] * psi.e
    for h, l, m in psi.items:
        for p in range(l):
            entries[(h + p) % psi.e] += m
    return DimensionVector(psi.e, tuple(entries))


# --- Enumeration ---

def _enumerate(e: int, total: int, dims: Optional[Tuple[int, ...]]) -> Iterator[Multisegment]:
    candidates = [(h, l) for l in range(total, 0, -1) for h in range(e)]

    def fits(head, length, mult, remaining):
        if dims is None:
            return True
        need = [0] * e
        for p in range(length):
            need[(head + p) % e] += mult
        return all(need[k] <= remaining[k] for k in range(e))

    def consume(head, length, mult, remaining):
        if dims is None:
            return remaining
        left = list(remaining)
        for p in range(length):
            left[(head + p) % e] -= mult
        return tuple(left)

    def extend(index, left, remaining, chosen):
        if left == 0:
            yield Multisegment(e, tuple(chosen))
            return
        for k in range(index, len(candidates)):
            head, length = candidates[k]
            if length > left:
                continue
            for mult in range(left // length, 0, -1):
                if not fits(head, length, mult, remaining):
                    continue
                yield from extend(k + 1, left - mult * length,
                                  consume(head, length, mult, remaining),
                                  chosen + [(head, length, mult)])

    yield from extend(0, total, dims, [])


def multisegments_of_rank(e: int, n: int) -> List[Multisegment]:
    """All multisegments of rank n, in canonical order."""
    check_e(e)
    return sorted(_enumerate(e, n, None), key=Multisegment.sort_key)


def aperiodic_multisegments(e: int, n: int) -> List[Multisegment]:
    return [psi for psi in multisegments_of_rank(e, n) if is_aperiodic(psi)]


def multisegments_of_dimension(dims: DimensionVector, aperiodic_only: bool = False) -> List[Multisegment]:
    found = sorted(_enumerate(dims.e, dims.rank, dims.entries), key=Multisegment.sort_key)
    if aperiodic_only:
        found = [psi for psi in found if is_aperiodic(psi)]
    return found
