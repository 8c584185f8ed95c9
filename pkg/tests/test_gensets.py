"""Gensets: expansion, minimal generators, exact counting, pairing structure,
cell-trading perturbations, and the genset-level cross-intersection test.

The counting tests pin down the difference between the cell-sum formula
(exact only when the cells cover the up-set) and profile counting (exact for
every antichain), using the smallest genset that separates them.
"""

from __future__ import annotations

import random
from math import comb

import pytest

from crossint.errors import CapacityError, IntegrityError, UsageError
from crossint.families import (
    UniformFamily,
    enumerate_k_subsets,
    is_cross_t_intersecting,
    mask_of,
)
from crossint.compression import left_compress
from crossint.gensets import (
    GenSet,
    assert_cross_t_equivalence,
    cell_D,
    cells_union,
    compact,
    full_layer_genset,
    genset_cross_t,
    genset_from_text,
    genset_to_text,
    is_generating,
    minimal_elements,
    minimal_genset,
    pairing_check,
    perturb_pair,
    perturb_single,
    profile_counts,
    s_plus,
    s_plus_mask,
    size_from_genset,
    slice_top,
    strip_top,
    upset_closure_bitmap,
    upset_k,
    upset_size,
)


def test_genset_validation() -> None:
    with pytest.raises(UsageError):
        GenSet(5, 3, (0,))  # empty element
    with pytest.raises(UsageError):
        GenSet(3, 2, (0b1000,))  # element outside [3]
    with pytest.raises(UsageError):
        GenSet(5, 2, (0b111,))  # element larger than the layer
    with pytest.raises(UsageError):
        GenSet(5, 3, (0b11, 0b1))  # wrong sort order
    with pytest.raises(UsageError):
        GenSet(5, 3, (0b1, 0b11), minimal=True)  # not an antichain


def test_compact_parser() -> None:
    g = compact("12, 134", 6, 3)
    assert g.element_sets() == ((1, 2), (1, 3, 4))
    with pytest.raises(UsageError):
        compact("102", 6, 3)
    with pytest.raises(UsageError):
        compact("1a", 6, 3)


def test_s_plus() -> None:
    assert s_plus_mask(mask_of([2, 5])) == 5
    assert s_plus(compact("12,134", 6, 3)) == 4
    with pytest.raises(UsageError):
        s_plus_mask(0)


def test_upset_k_of_singleton_is_star() -> None:
    g = compact("1", 5, 3)
    fam = upset_k(g)
    assert len(fam) == comb(4, 2)
    assert all(m & 1 for m in fam)


def test_upset_k_respects_expansion_cap() -> None:
    with pytest.raises(CapacityError):
        upset_k(GenSet.from_sets(40, 20, [[1]]))


def test_minimal_elements() -> None:
    g = GenSet.from_sets(5, 3, [[1], [1, 2], [2, 3]])
    assert minimal_elements(g).element_sets() == ((1,), (2, 3))


def test_minimal_genset_of_star() -> None:
    star = UniformFamily.from_masks(
        5, 3, [m for m in enumerate_k_subsets(5, 3).members if m & 1]
    )
    assert minimal_genset(star).element_sets() == ((1,),)


def test_minimal_genset_of_full_layer_is_all_singletons() -> None:
    fam = enumerate_k_subsets(5, 3)
    assert minimal_genset(fam).element_sets() == ((1,), (2,), (3,), (4,), (5,))


def test_minimal_genset_generates_any_family() -> None:
    rng = random.Random(31337)
    for _ in range(120):
        n = rng.randint(2, 7)
        k = rng.randint(1, n - 1)
        layer = enumerate_k_subsets(n, k).members
        fam = UniformFamily.from_masks(
            n, k, rng.sample(layer, rng.randint(1, len(layer)))
        )
        gen = minimal_genset(fam)
        assert is_generating(gen, fam)
        # re-extracting from the generated family is idempotent
        assert minimal_genset(upset_k(gen)) == gen


def test_cell_D_counts() -> None:
    cell = cell_D(mask_of([1, 4]), 6, 3)
    assert cell.members == (mask_of([1, 4, 5]), mask_of([1, 4, 6]))


def test_cells_are_disjoint_for_antichains_but_may_undercount() -> None:
    g = GenSet.from_sets(5, 3, [[1, 4], [2, 3]], minimal=True)
    union = cells_union(g)
    assert len(union) == 3  # {145} from one cell, {234},{235} from the other
    assert len(upset_k(g)) == 6
    assert size_from_genset(g, validate=False) == 3
    with pytest.raises(IntegrityError):
        size_from_genset(g, validate=True)
    # profile counting stays exact even where the cell sum fails
    assert upset_size(g) == 6


def test_size_from_genset_exact_on_compressed_minimal_gensets() -> None:
    rng = random.Random(4242)
    for _ in range(120):
        n = rng.randint(3, 8)
        k = rng.randint(1, n - 1)
        layer = enumerate_k_subsets(n, k).members
        fam = left_compress(
            UniformFamily.from_masks(n, k, rng.sample(layer, rng.randint(1, len(layer))))
        )
        gen = minimal_genset(fam)
        assert size_from_genset(gen, validate=True) == len(fam)


def test_upset_size_matches_expansion_for_random_antichains() -> None:
    rng = random.Random(777)
    for _ in range(250):
        n = rng.randint(3, 9)
        k = rng.randint(1, n - 1)
        pool = [
            m
            for m in range(1, 1 << min(n, k + 2))
            if 1 <= m.bit_count() <= k
        ]
        picked = rng.sample(pool, rng.randint(1, min(len(pool), 5)))
        g = minimal_elements(GenSet.from_masks(n, k, picked))
        assert upset_size(g) == len(upset_k(g))


def test_upset_size_of_empty_genset_is_zero() -> None:
    assert upset_size(GenSet(9, 4, ())) == 0


def test_profile_counts_small() -> None:
    reach = upset_closure_bitmap([0b1], 2)  # up-closure of {1} within 2^[2]
    # traces {1} and {1,2} are reachable; {} and {2} are not
    assert profile_counts(reach, 2) == [0, 1, 1]


def test_slice_and_strip_top() -> None:
    g = compact("14,23,124,134", 6, 3)
    assert slice_top(g, 3).element_sets() == ((1, 2, 4), (1, 3, 4))
    assert strip_top(g, 3).element_sets() == ((1, 2), (1, 3))
    assert slice_top(g, 2).element_sets() == ((1, 4),)


def test_pairing_check_window_layer() -> None:
    g = full_layer_genset(8, 4, 4, 3)  # all triples of [4]
    report = pairing_check(g, g, 2)
    assert report.s == 4
    assert report.ok
    for entry in report.entries:
        assert entry.partner is not None
        assert (entry.element & entry.partner).bit_count() == 2
        assert entry.element | entry.partner == 0b1111


def test_pairing_check_detects_missing_partner() -> None:
    g = GenSet.from_sets(8, 4, [[1, 2, 4]], minimal=True)
    report = pairing_check(g, g, 2)
    assert not report.ok
    assert any(e.partner is None for e in report.entries)


def test_perturb_single_window_example() -> None:
    g = full_layer_genset(6, 3, 4, 3)
    fam = upset_k(g)
    assert len(fam) == 4
    result = perturb_single(fam, g, 3, 2)
    (new_fam,) = result.families
    assert result.s == 4
    assert result.deltas == (3,)
    assert len(new_fam) == 7


def test_perturb_single_needs_nonempty_slice() -> None:
    g = full_layer_genset(6, 3, 4, 3)
    with pytest.raises(UsageError):
        perturb_single(upset_k(g), g, 2, 2)


def test_perturb_pair_trades_complementary_cells() -> None:
    g = full_layer_genset(6, 3, 4, 3)
    fam = upset_k(g)
    assert is_cross_t_intersecting(fam, fam, 2)
    result = perturb_pair(fam, fam, g, g, 3, 2, direction="up-down")
    new_a, new_b = result.families
    assert result.deltas == (6, -3)
    assert (len(new_a), len(new_b)) == (10, 1)
    assert is_cross_t_intersecting(new_a, new_b, 2)


def test_perturb_pair_down_up_mirrors() -> None:
    g = full_layer_genset(6, 3, 4, 3)
    fam = upset_k(g)
    result = perturb_pair(fam, fam, g, g, 3, 2, direction="down-up")
    new_a, new_b = result.families
    assert result.deltas == (-len(slice_top(g, 3)) * comb(2, 0), len(slice_top(g, 3)) * comb(2, 1))
    assert len(new_a) == len(fam) + result.deltas[0]
    assert len(new_b) == len(fam) + result.deltas[1]
    with pytest.raises(UsageError):
        perturb_pair(fam, fam, g, g, 3, 2, direction="sideways")


def test_genset_cross_t() -> None:
    star = compact("123", 9, 4)
    window = full_layer_genset(9, 4, 5, 4)
    assert genset_cross_t(star, star, 3)
    assert not genset_cross_t(star, window, 3)


def test_cross_t_equivalence_randomized() -> None:
    """Genset-level and expanded-family-level cross-t agree whenever
    n > 2k - t, across random antichain pairs."""
    rng = random.Random(1009)
    checked = 0
    for _ in range(300):
        n = rng.randint(4, 9)
        k = rng.randint(2, n - 1)
        t = rng.randint(1, k)
        if n <= 2 * k - t:
            continue
        pool = [m for m in range(1, 1 << min(n, k + 1)) if 1 <= m.bit_count() <= k]

        def pick() -> GenSet:
            return minimal_elements(
                GenSet.from_masks(n, k, rng.sample(pool, rng.randint(1, 4)))
            )

        assert assert_cross_t_equivalence(pick(), pick(), t)
        checked += 1
    assert checked >= 100


def test_cross_t_equivalence_requires_large_ground_set() -> None:
    g = compact("12", 5, 3)
    with pytest.raises(UsageError):
        assert_cross_t_equivalence(g, g, 1)  # n = 5 = 2k - t


def test_full_layer_genset() -> None:
    g = full_layer_genset(9, 4, 5, 4)
    assert len(g) == comb(5, 4)
    assert all(m.bit_count() == 4 and m < (1 << 5) for m in g)
    with pytest.raises(UsageError):
        full_layer_genset(9, 4, 5, 6)


def test_genset_text_roundtrip() -> None:
    g = compact("14,23,124", 7, 3)
    text = genset_to_text(g)
    assert text.splitlines()[0] == "7 3"
    assert genset_from_text(text) == GenSet(g.n, g.k, g.elements)  # minimal flag not serialized


def test_read_genset_reports_line_numbers() -> None:
    with pytest.raises(UsageError, match="line 1"):
        genset_from_text("9\n1,2\n")
    with pytest.raises(UsageError, match="line 3"):
        genset_from_text("9 4\n1,2\nx,y\n")
    with pytest.raises(UsageError):
        genset_from_text("# only comments\n")
