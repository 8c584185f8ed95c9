"""Uniform set families over a ground set [n] = {1, ..., n}.

A k-subset A of [n] is stored as an n-bit incidence word: element e is present
iff bit (e-1) is set.  A uniform family is a duplicate-free, numerically sorted
tuple of such words, all of the same popcount k.  Single-word incidence keeps
every family-level operation (intersection sizes, membership, shifting) at a
few machine-int operations per pair, which is what makes exhaustive checks at
desk scale practical.  Enumeration-level operations are capped at n <= WORD_CAP;
counting-level operations elsewhere in the package take unbounded n.

Intersection conventions: a family F is t-intersecting when |A & B| >= t for
all A, B in F (A = B included, so a nonempty family needs k >= t); families A
and B are cross-t-intersecting when |A & B| >= t for every A in A, B in B.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, UsageError

# Family-level operations hold whole subsets in one machine word.
WORD_CAP = 64


def mask_of(elements: Iterable[int], n: int | None = None) -> int:
    """Incidence word of a collection of elements (1-based, duplicates folded)."""
    mask = 0
    for e in elements:
        if e < 1:
            raise UsageError(f"elements are 1-based, got {e}")
        if n is not None and e > n:
            raise UsageError(f"element {e} outside ground set [{n}]")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    """Ascending elements of an incidence word."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def bottom_mask(m: int) -> int:
    """Incidence word of [m]."""
    return (1 << m) - 1


@dataclass(frozen=True, order=True)
class KSubset:
    """A k-subset of [n]: incidence word plus its ground set size."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= WORD_CAP:
            raise UsageError(f"ground set size {self.n} outside [1, {WORD_CAP}]")
        if self.bits < 0 or self.bits >> self.n:
            raise UsageError(f"incidence word {self.bits:#x} not within [{self.n}]")

    @classmethod
    def from_elements(cls, elements: Iterable[int], n: int) -> "KSubset":
        return cls(mask_of(elements, n), n)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.bits >> (element - 1) & 1)


def intersection_size(a: KSubset, b: KSubset) -> int:
    """|A & B|; the two subsets must live on the same ground set."""
    if a.n != b.n:
        raise UsageError(f"mismatched ground sets: [{a.n}] vs [{b.n}]")
    return (a.bits & b.bits).bit_count()


@dataclass(frozen=True)
class UniformFamily:
    """A duplicate-free family of k-subsets of [n], members sorted numerically."""

    n: int
    k: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= WORD_CAP:
            raise CapacityError(f"ground set size {self.n} outside [1, {WORD_CAP}]")
        if not 0 <= self.k <= self.n:
            raise UsageError(f"subset size {self.k} outside [0, {self.n}]")
        prev = -1
        for m in self.members:
            if m <= prev:
                raise UsageError("members must be strictly increasing incidence words")
            if m >> self.n:
                raise UsageError(f"member {m:#x} not within [{self.n}]")
            if m.bit_count() != self.k:
                raise UsageError(
                    f"member {elements_of(m)} has size {m.bit_count()}, expected {self.k}"
                )
            prev = m

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int]) -> "UniformFamily":
        return cls(n, k, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> "UniformFamily":
        return cls.from_masks(n, k, (mask_of(s, n) for s in sets))

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self.member_set

    def subsets(self) -> Iterator[KSubset]:
        for m in self.members:
            yield KSubset(m, self.n)

    def restrict_trace(self, mask: int) -> tuple[int, ...]:
        """Traces A & mask of all members, in member order (repeats kept)."""
        return tuple(m & mask for m in self.members)


def enumerate_k_subsets(n: int, k: int) -> UniformFamily:
    """All C(n,k) k-subsets of [n] in increasing incidence-word order."""
    if n > WORD_CAP:
        raise CapacityError(f"n = {n} exceeds the {WORD_CAP}-bit word cap")
    if not 0 <= k <= n:
        raise UsageError(f"subset size {k} outside [0, {n}]")
    if k == 0:
        return UniformFamily(n, 0, (0,))
    masks = []
    v = bottom_mask(k)
    limit = 1 << n
    while v < limit:
        masks.append(v)
        # Gosper's hack: next larger word with the same popcount.
        low = v & -v
        ripple = v + low
        v = ripple | (((v ^ ripple) >> 2) // low)
    return UniformFamily(n, k, tuple(masks))


def is_t_intersecting(family: UniformFamily, t: int) -> bool:
    """True iff |A & B| >= t for all A, B in the family (A = B included)."""
    if t < 0:
        raise UsageError(f"t must be nonnegative, got {t}")
    ms = family.members
    if ms and family.k < t:
        return False
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            if (a & b).bit_count() < t:
                return False
    return True


def is_cross_t_intersecting(fam_a: UniformFamily, fam_b: UniformFamily, t: int) -> bool:
    """True iff |A & B| >= t for every A in fam_a, B in fam_b."""
    if fam_a.n != fam_b.n:
        raise UsageError(f"mismatched ground sets: [{fam_a.n}] vs [{fam_b.n}]")
    if t < 0:
        raise UsageError(f"t must be nonnegative, got {t}")
    for a in fam_a.members:
        for b in fam_b.members:
            if (a & b).bit_count() < t:
                return False
    return True


def shade(family: UniformFamily) -> UniformFamily:
    """All (k+1)-subsets containing at least one member (the upper shadow)."""
    if family.k >= family.n:
        raise UsageError(f"shade undefined: k = {family.k} already equals n = {family.n}")
    full = bottom_mask(family.n)
    out = set()
    for m in family.members:
        absent = full & ~m
        while absent:
            low = absent & -absent
            out.add(m | low)
            absent ^= low
    return UniformFamily.from_masks(family.n, family.k + 1, out)


# ---------------------------------------------------------------------------
# Text round-trip: header "n k", then one member per line, comma-separated
# ascending elements.  '#' starts a comment; blank lines are skipped.
# ---------------------------------------------------------------------------


def write_family(family: UniformFamily, target) -> None:
    """Write the family to a path or text file object."""
    if isinstance(target, (str, bytes)):
        with open(target, "w", encoding="utf-8") as fh:
            write_family(family, fh)
        return
    target.write(f"{family.n} {family.k}\n")
    for m in family.members:
        target.write(",".join(str(e) for e in elements_of(m)) + "\n")


def family_to_text(family: UniformFamily) -> str:
    buf = io.StringIO()
    write_family(family, buf)
    return buf.getvalue()


def read_family(source) -> UniformFamily:
    """Read a family from a path, text file object, or string of lines."""
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_family(fh)
    header: tuple[int, int] | None = None
    masks: list[int] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise UsageError(f"line {lineno}: header must be 'n k', got {raw!r}")
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise UsageError(f"line {lineno}: non-integer header {raw!r}") from None
            continue
        try:
            elements = [int(tok) for tok in line.split(",")]
        except ValueError:
            raise UsageError(f"line {lineno}: bad member line {raw!r}") from None
        masks.append(mask_of(elements, header[0]))
    if header is None:
        raise UsageError("empty input: missing 'n k' header")
    try:
        return UniformFamily.from_masks(header[0], header[1], masks)
    except UsageError as exc:
        raise UsageError(f"invalid family in input: {exc}") from None


def family_from_text(text: str) -> UniformFamily:
    return read_family(io.StringIO(text))
