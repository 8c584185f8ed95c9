"""Generating sets of uniform families and cell-based size counting.

A generating set g of a k-uniform family F on [n] is any collection of subsets
(sizes <= k) whose up-set, intersected with the k-th layer, is exactly F.  Every
family generates itself; the interesting gensets are small antichains living in
a bounded prefix [s] of the ground set, because then |F| can be *counted*
without enumeration:

* cell counting: with s+(E) = max E, the cell D(E) = {B : B cap [s+(E)] = E}
  has exactly C(n - s+(E), k - |E|) members, and for a minimal genset of a
  left-compressed family the cells partition F;
* profile counting: for any genset with top element s = s+(g), grouping the
  up-set's traces on [s] by size j gives |F| = Sum_j N_j * C(n-s, k-j), valid
  unconditionally (used when nothing is known about the genset's shape).

Both counters take unbounded n; expansion to an explicit family is capped.

The perturbation moves trade cells between a cross-t-intersecting pair: push
A's top slice down one element while deleting B's complementary slice (or the
reverse).  The deleted cells are always counted exactly; the added cells match
the closed-form delta exactly when the genset is closed under left shifts in
the sense of the structural lemma, and the constructors verify this against the
expanded families, refusing to return silently wrong deltas.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, IntegrityError, UsageError
from .families import (
    WORD_CAP,
    UniformFamily,
    bottom_mask,
    elements_of,
    enumerate_k_subsets,
    is_cross_t_intersecting,
    mask_of,
)
from math import comb

# Expanding an up-set to an explicit family is refused beyond this many sets.
EXPAND_CAP = 2_000_000
# Profile counting enumerates 2^(s+) trace patterns.
PROFILE_CAP = 24
# size_from_genset cross-validates against expansion automatically up to here.
VALIDATE_CAP = 14


def _sorted_elements(masks) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=lambda m: (m.bit_count(), m)))


@dataclass(frozen=True)
class GenSet:
    """A genset: context parameters (n, k) plus element incidence words.

    Elements are nonempty subsets of [n] of size <= k, kept sorted by
    (size, word).  n is *not* capped: counting operations work at any scale,
    only expansion requires n <= WORD_CAP.  When ``minimal`` is set the
    elements must form an antichain.
    """

    n: int
    k: int
    elements: tuple[int, ...]
    minimal: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise UsageError(f"ground set size must be positive, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise UsageError(f"subset size {self.k} outside [0, {self.n}]")
        prev = None
        for m in self.elements:
            if m == 0:
                raise UsageError("genset elements must be nonempty")
            if m >> self.n:
                raise UsageError(f"element {elements_of(m)} not within [{self.n}]")
            if m.bit_count() > self.k:
                raise UsageError(
                    f"element {elements_of(m)} larger than the layer size {self.k}"
                )
            key = (m.bit_count(), m)
            if prev is not None and key <= prev:
                raise UsageError("elements must be sorted by (size, word), no repeats")
            prev = key
        if self.minimal:
            for a in self.elements:
                for b in self.elements:
                    if a != b and a & b == a:
                        raise UsageError(
                            f"flagged minimal but {elements_of(a)} is contained "
                            f"in {elements_of(b)}"
                        )

    @classmethod
    def from_masks(cls, n: int, k: int, masks, minimal: bool = False) -> "GenSet":
        return cls(n, k, _sorted_elements(masks), minimal)

    @classmethod
    def from_sets(cls, n: int, k: int, sets, minimal: bool = False) -> "GenSet":
        return cls.from_masks(n, k, (mask_of(s, n) for s in sets), minimal)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def element_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of(m) for m in self.elements)


def compact(text_elements: str, n: int, k: int, minimal: bool = False) -> GenSet:
    """Genset from single-digit element strings: compact("123,1256", 12, 6).

    Only for elements within [9]; used to transcribe small explicit gensets.
    """
    masks = []
    for token in text_elements.replace(" ", "").split(","):
        if not token:
            continue
        if not token.isdigit() or "0" in token:
            raise UsageError(f"compact tokens are nonzero digit strings, got {token!r}")
        masks.append(mask_of((int(ch) for ch in token), n))
    return GenSet.from_masks(n, k, masks, minimal)


def s_plus_mask(mask: int) -> int:
    """Largest element of a nonempty subset."""
    if mask == 0:
        raise UsageError("s+ of the empty set is undefined")
    return mask.bit_length()


def s_plus(genset: GenSet) -> int:
    """Largest element appearing in any element of a nonempty genset."""
    if not genset.elements:
        raise UsageError("s+ of an empty genset is undefined")
    return max(m.bit_length() for m in genset.elements)


def upset_k(genset: GenSet) -> UniformFamily:
    """The generated family: all k-supersets of genset elements, expanded."""
    if genset.n > WORD_CAP:
        raise CapacityError(f"cannot expand on a ground set of size {genset.n}")
    bound = sum(comb(genset.n - m.bit_count(), genset.k - m.bit_count()) for m in genset.elements)
    if bound > EXPAND_CAP:
        raise CapacityError(f"expansion bound {bound} exceeds cap {EXPAND_CAP}")
    out = set()
    for m in genset.elements:
        free = [e for e in range(1, genset.n + 1) if not m >> (e - 1) & 1]
        for extra in combinations(free, genset.k - m.bit_count()):
            out.add(m | mask_of(extra))
    return UniformFamily.from_masks(genset.n, genset.k, out)


def is_generating(genset: GenSet, family: UniformFamily) -> bool:
    """True iff the genset generates exactly the given family."""
    if (genset.n, genset.k) != (family.n, family.k):
        raise UsageError(
            f"genset context ({genset.n}, {genset.k}) does not match "
            f"family ({family.n}, {family.k})"
        )
    return upset_k(genset).members == family.members


def minimal_elements(genset: GenSet) -> GenSet:
    """Inclusion-minimal elements; generates the same up-set."""
    keep = [
        a
        for a in genset.elements
        if not any(b != a and a & b == b for b in genset.elements)
    ]
    return GenSet.from_masks(genset.n, genset.k, keep, minimal=True)


def minimal_genset(family: UniformFamily) -> GenSet:
    """The canonical minimal genset: minimal sets all of whose k-supersets lie
    in the family.  Every genset of the family consists of such sets, so this
    is the coarsest antichain generating it."""
    n, k = family.n, family.k
    members = family.member_set
    safe_cache: dict[int, bool] = {}
    full = bottom_mask(n)

    def safe(mask: int) -> bool:
        cached = safe_cache.get(mask)
        if cached is not None:
            return cached
        if mask.bit_count() == k:
            result = mask in members
        else:
            result = True
            absent = full & ~mask
            while absent:
                low = absent & -absent
                absent ^= low
                if not safe(mask | low):
                    result = False
                    break
        safe_cache[mask] = result
        return result

    candidates: set[int] = set()
    seen: set[int] = set()
    for m in family.members:
        # walk down from each member: only subsets of members can be safe,
        # and subsets of unsafe sets are unsafe, so prune below failures
        if m in seen:
            continue
        stack = [m]
        seen.add(m)
        while stack:
            cur = stack.pop()
            if not safe(cur):
                continue
            candidates.add(cur)
            rest = cur
            while rest:
                low = rest & -rest
                rest ^= low
                child = cur ^ low
                if child and child not in seen:
                    seen.add(child)
                    stack.append(child)
    keep = [a for a in candidates if not any(b != a and a & b == b for b in candidates)]
    return GenSet.from_masks(n, k, keep, minimal=True)


def cell_D(element_mask: int, n: int, k: int) -> UniformFamily:
    """The cell D(E) = {B in the k-th layer : B cap [s+(E)] = E}, expanded."""
    if n > WORD_CAP:
        raise CapacityError(f"cannot expand cells on a ground set of size {n}")
    top = s_plus_mask(element_mask)
    if element_mask.bit_count() > k:
        raise UsageError("cell of an element larger than the layer size is empty")
    free = list(range(top + 1, n + 1))
    out = [
        element_mask | mask_of(extra)
        for extra in combinations(free, k - element_mask.bit_count())
    ]
    return UniformFamily.from_masks(n, k, out)


def cells_union(genset: GenSet) -> UniformFamily:
    """Union of the cells D(E) over the genset's elements."""
    out: set[int] = set()
    for m in genset.elements:
        out.update(cell_D(m, genset.n, genset.k).members)
    return UniformFamily.from_masks(genset.n, genset.k, out)


def size_from_genset(genset: GenSet, validate: str | bool = "auto") -> int:
    """Cell count Sum_E C(n - s+(E), k - |E|) of the generated family.

    Exact when the cells cover the family (minimal genset of a left-compressed
    family); for other antichains the cells are merely disjoint and the sum
    undercounts.  validate=True compares against expansion (n <= WORD_CAP
    required); "auto" does so whenever n <= VALIDATE_CAP; False skips.
    """
    total = sum(
        comb(genset.n - s_plus_mask(m), genset.k - m.bit_count()) for m in genset.elements
    )
    must_check = validate is True or (validate == "auto" and genset.n <= VALIDATE_CAP)
    if must_check:
        true_size = len(upset_k(genset))
        if true_size != total:
            raise IntegrityError(
                f"cell count {total} != generated family size {true_size}; "
                "the cells of this genset do not cover its up-set"
            )
    return total


def upset_closure_bitmap(elements, s: int) -> int:
    """Bitmap over 2^[s] (index = trace word) of the up-closure of the given
    element words: bit x set iff x contains some element."""
    reach = 0
    for m in elements:
        reach |= 1 << m
    width = 1 << s
    all_ones = (1 << width) - 1
    for b in range(s):
        step = 1 << b
        period = step << 1
        # ones exactly at indices whose bit b is clear
        pattern = (all_ones // ((1 << period) - 1)) * ((1 << step) - 1)
        reach |= (reach & pattern) << step
    return reach


def profile_counts(reach: int, s: int) -> list[int]:
    """counts[j] = number of size-j indices set in a 2^[s]-bitmap."""
    counts = [0] * (s + 1)
    data = reach.to_bytes((1 << s) // 8 or 1, "little")
    for byte_index, byte in enumerate(data):
        if not byte:
            continue
        base = byte_index << 3
        bits = byte
        while bits:
            low = bits & -bits
            bits ^= low
            counts[(base + low.bit_length() - 1).bit_count()] += 1
    return counts


def upset_size(genset: GenSet) -> int:
    """Exact size of the generated family for *any* genset, by profile counting
    over [s+]: the up-set's traces of size j each contribute C(n-s+, k-j)."""
    if not genset.elements:
        return 0
    s = s_plus(genset)
    if s > PROFILE_CAP:
        raise CapacityError(f"profile counting over [{s}] exceeds cap {PROFILE_CAP}")
    counts = profile_counts(upset_closure_bitmap(genset.elements, s), s)
    return sum(
        counts[j] * comb(genset.n - s, genset.k - j)
        for j in range(min(s, genset.k) + 1)
    )


def slice_top(genset: GenSet, i: int, top: int | None = None) -> GenSet:
    """g*_i: elements of size i containing the top element (default s+(g))."""
    if top is None:
        top = s_plus(genset)
    bit = 1 << (top - 1)
    return GenSet.from_masks(
        genset.n,
        genset.k,
        (m for m in genset.elements if m.bit_count() == i and m & bit),
        minimal=genset.minimal,
    )


def strip_top(genset: GenSet, i: int, top: int | None = None) -> GenSet:
    """g*_i': the size-i top slice with the top element removed from each set."""
    if top is None:
        top = s_plus(genset)
    sliced = slice_top(genset, i, top)
    bit = 1 << (top - 1)
    return GenSet.from_masks(genset.n, genset.k, (m & ~bit for m in sliced.elements))


@dataclass(frozen=True)
class PairingEntry:
    size: int
    element: int
    partner: int | None


@dataclass(frozen=True)
class PairingReport:
    """Partner structure of the top slices of a cross-t-intersecting pair."""

    s: int
    t: int
    ok: bool
    entries: tuple[PairingEntry, ...]


def pairing_check(gen_a: GenSet, gen_b: GenSet, t: int) -> PairingReport:
    """For each E in g*_i(A), find F in g*_{s+t-i}(B) with |E cap F| = t and
    E u F = [s], where s = max(s+(A), s+(B)); report a None partner on failure.
    Checked in both directions (the roles of A and B are symmetric)."""
    if gen_a.n != gen_b.n:
        raise UsageError(f"mismatched ground sets: [{gen_a.n}] vs [{gen_b.n}]")
    s = max(s_plus(gen_a), s_plus(gen_b))
    full = bottom_mask(s)
    entries = []
    ok = True
    for first, second in ((gen_a, gen_b), (gen_b, gen_a)):
        top_bit = 1 << (s - 1)
        for e in first.elements:
            if not e & top_bit:
                continue
            i = e.bit_count()
            want = s + t - i
            partner = None
            for f in second.elements:
                if (
                    f.bit_count() == want
                    and f & top_bit
                    and (e & f).bit_count() == t
                    and e | f == full
                ):
                    partner = f
                    break
            if partner is None:
                ok = False
            entries.append(PairingEntry(i, e, partner))
    return PairingReport(s, t, ok, tuple(entries))


@dataclass(frozen=True)
class PerturbResult:
    """Outcome of a cell-trading move: new families plus closed-form deltas."""

    families: tuple[UniformFamily, ...]
    deltas: tuple[int, ...]
    s: int


def _added_cells(strip: GenSet) -> set[int]:
    out: set[int] = set()
    for m in strip.elements:
        out.update(cell_D(m, strip.n, strip.k).members)
    return out


def _removed_cells(sliced: GenSet) -> set[int]:
    out: set[int] = set()
    for m in sliced.elements:
        out.update(cell_D(m, sliced.n, sliced.k).members)
    return out


def _checked_delta(new_len: int, old_len: int, formula: int, what: str) -> int:
    if new_len - old_len != formula:
        raise IntegrityError(
            f"{what}: closed-form delta {formula} != actual {new_len - old_len}; "
            "genset lacks the shift-closure the formula needs"
        )
    return formula


def perturb_single(family: UniformFamily, genset: GenSet, i: int, t: int) -> PerturbResult:
    """F -> (F u D(g*_i')) minus D(g*_{s+t-i}) with its closed-form size delta."""
    if (genset.n, genset.k) != (family.n, family.k):
        raise UsageError("genset context does not match the family")
    s = s_plus(genset)
    up = slice_top(genset, i, s)
    if not up.elements:
        raise UsageError(f"empty top slice g*_{i}; nothing to perturb")
    down = slice_top(genset, s + t - i, s)
    members = set(family.members)
    members |= _added_cells(strip_top(genset, i, s))
    members -= _removed_cells(down)
    new_family = UniformFamily.from_masks(family.n, family.k, members)
    formula = len(up) * comb(family.n - s, family.k - i + 1) - len(down) * comb(
        family.n - s, family.k + i - s - t
    )
    delta = _checked_delta(len(new_family), len(family), formula, "perturb_single")
    return PerturbResult((new_family,), (delta,), s)


def perturb_pair(
    fam_a: UniformFamily,
    fam_b: UniformFamily,
    gen_a: GenSet,
    gen_b: GenSet,
    i: int,
    t: int,
    direction: str = "up-down",
) -> PerturbResult:
    """Trade cells between a cross-t-intersecting pair at complementary sizes.

    direction "up-down": A gains D(g*_i(A)'), B loses D(g*_{s+t-i}(B));
    direction "down-up": A loses D(g*_i(A)),  B gains D(g*_{s+t-i}(B)').
    s is the larger of the two top elements; both slices are taken there.
    """
    if direction not in ("up-down", "down-up"):
        raise UsageError(f"direction must be 'up-down' or 'down-up', got {direction!r}")
    for fam, gen, name in ((fam_a, gen_a, "A"), (fam_b, gen_b, "B")):
        if (gen.n, gen.k) != (fam.n, fam.k):
            raise UsageError(f"genset context does not match family {name}")
    if fam_a.n != fam_b.n:
        raise UsageError("families live on different ground sets")
    s = max(s_plus(gen_a), s_plus(gen_b))
    j = s + t - i
    slice_a = slice_top(gen_a, i, s)
    slice_b = slice_top(gen_b, j, s)
    if not slice_a.elements:
        raise UsageError(f"empty top slice g*_{i}(A) at s = {s}; nothing to perturb")
    n, k = fam_a.n, fam_a.k
    if direction == "up-down":
        new_a_members = set(fam_a.members) | _added_cells(strip_top(gen_a, i, s))
        new_b_members = set(fam_b.members) - _removed_cells(slice_b)
        delta_a_formula = len(slice_a) * comb(n - s, k - i + 1)
        delta_b_formula = -len(slice_b) * comb(n - s, k + i - s - t)
    else:
        new_a_members = set(fam_a.members) - _removed_cells(slice_a)
        new_b_members = set(fam_b.members) | _added_cells(strip_top(gen_b, j, s))
        delta_a_formula = -len(slice_a) * comb(n - s, k - i)
        delta_b_formula = len(slice_b) * comb(n - s, k + i - s - t + 1)
    new_a = UniformFamily.from_masks(n, k, new_a_members)
    new_b = UniformFamily.from_masks(n, k, new_b_members)
    delta_a = _checked_delta(len(new_a), len(fam_a), delta_a_formula, "perturb_pair A")
    delta_b = _checked_delta(len(new_b), len(fam_b), delta_b_formula, "perturb_pair B")
    return PerturbResult((new_a, new_b), (delta_a, delta_b), s)


# ---------------------------------------------------------------------------
# Text round-trip, same shape as the family format: header "n k", then one
# element per line as comma-separated elements.
# ---------------------------------------------------------------------------


def write_genset(genset: GenSet, target) -> None:
    if isinstance(target, (str, bytes)):
        with open(target, "w", encoding="utf-8") as fh:
            write_genset(genset, fh)
        return
    target.write(f"{genset.n} {genset.k}\n")
    for m in genset.elements:
        target.write(",".join(str(e) for e in elements_of(m)) + "\n")


def genset_to_text(genset: GenSet) -> str:
    buf = io.StringIO()
    write_genset(genset, buf)
    return buf.getvalue()


def read_genset(source) -> GenSet:
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_genset(fh)
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
            raise UsageError(f"line {lineno}: bad element line {raw!r}") from None
        masks.append(mask_of(elements, header[0]))
    if header is None:
        raise UsageError("empty input: missing 'n k' header")
    return GenSet.from_masks(header[0], header[1], masks)


def genset_from_text(text: str) -> GenSet:
    return read_genset(io.StringIO(text))


def genset_cross_t(gen_a: GenSet, gen_b: GenSet, t: int) -> bool:
    """True iff every element of one genset meets every element of the other
    in >= t points.  Implies the generated families are cross-t-intersecting;
    the converse holds when n > 2k - t."""
    for a in gen_a.elements:
        for b in gen_b.elements:
            if (a & b).bit_count() < t:
                return False
    return True


def assert_cross_t_equivalence(gen_a: GenSet, gen_b: GenSet, t: int) -> bool:
    """Expansion-scale check that genset-level and family-level cross-t agree
    (requires n > 2k - t for the equivalence to be a theorem)."""
    n, k = gen_a.n, gen_a.k
    if n <= 2 * k - t:
        raise UsageError(f"equivalence needs n > 2k - t, got n = {n}, 2k - t = {2 * k - t}")
    lhs = genset_cross_t(gen_a, gen_b, t)
    rhs = is_cross_t_intersecting(upset_k(gen_a), upset_k(gen_b), t)
    return lhs == rhs


def full_layer_genset(n: int, k: int, s: int, size: int) -> GenSet:
    """The genset consisting of all size-`size` subsets of [s]."""
    if not 0 < size <= min(k, s):
        raise UsageError(f"layer size {size} outside [1, min({k}, {s})]")
    return GenSet.from_masks(
        n, k, (m for m in enumerate_k_subsets(s, size).members), minimal=True
    )
