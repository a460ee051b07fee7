"""NBB atom sets and Mobius numbers, checked against the raw definition."""

import itertools
import random

import numpy as np
import pytest

from mobiuslat.families import build_family, weak_order_lattice
from mobiuslat.nbb import (
    AtomOrder,
    EmptyAtomSet,
    NbbBase,
    is_bounded_below,
    is_nbb,
    mobius_via_nbb,
    nbb_bases_of,
    shuffled_order,
)
from mobiuslat.poset import FinitePoset, as_lattice


def m3_lattice():
    p = FinitePoset.from_covers(
        "0abc1",
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    return as_lattice(p)


def diamond_lattice():
    p = FinitePoset.from_covers("0ab1", [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    return as_lattice(p)


def two_chain():
    return as_lattice(FinitePoset.from_covers("01", [("0", "1")]))


def set_partitions(ground):
    if not ground:
        yield []
        return
    first, rest = ground[0], ground[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def partition_lattice(k):
    """Partitions of {1..k} ordered by refinement; 15 elements at k=4."""
    parts = [sorted(sorted(b) for b in p) for p in set_partitions(list(range(1, k + 1)))]
    labels = ["|".join("".join(map(str, b)) for b in p) for p in parts]
    block_of = []
    for p in parts:
        lookup = {}
        for b in p:
            for v in b:
                lookup[v] = frozenset(b)
        block_of.append(lookup)
    n = len(parts)
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            leq[i, j] = all(
                block_of[i][v] <= block_of[j][v] for v in range(1, k + 1)
            )
    return as_lattice(FinitePoset(labels, leq))


def order_by_labels(lat, labs):
    return AtomOrder(lat, tuple(lat.poset.index(x) for x in labs))


# -- raw-definition oracle, no shortcuts ---------------------------------


def raw_is_bb(order, subset):
    """Every member has a strictly earlier atom strictly below the join."""
    lat = order.lattice
    j = lat.join_of(subset)
    for d in subset:
        witnesses = [
            a
            for a in order.sequence
            if order.position(a) < order.position(d) and a != j and lat.leq(a, j)
        ]
        if not witnesses:
            return False
    return True


def raw_nbb_bases(order):
    out = set()
    atoms = list(order.sequence)
    for r in range(1, len(atoms) + 1):
        for combo in itertools.combinations(atoms, r):
            has_bb = any(
                raw_is_bb(order, sub)
                for k in range(1, r + 1)
                for sub in itertools.combinations(combo, k)
            )
            if not has_bb:
                out.add((frozenset(combo), order.lattice.join_of(combo)))
    return out


# -- examples -------------------------------------------------------------


def test_atom_order_validates():
    lat = m3_lattice()
    with pytest.raises(ValueError):
        AtomOrder(lat, (1, 2))
    with pytest.raises(ValueError):
        AtomOrder(lat, (1, 1, 2))
    with pytest.raises(ValueError):
        AtomOrder(lat, (0, 1, 2))


def test_bounded_below_examples():
    lat = m3_lattice()
    order = order_by_labels(lat, "abc")
    assert not is_bounded_below(order, ["a"])
    assert not is_bounded_below(order, ["a", "b"])
    assert is_bounded_below(order, ["b", "c"])
    # earliest member never has a witness, so the full set is not BB
    # even though it contains the BB subset {b, c}
    assert not is_bounded_below(order, ["a", "b", "c"])
    with pytest.raises(EmptyAtomSet):
        is_bounded_below(order, [])
    with pytest.raises(ValueError):
        is_bounded_below(order, ["0"])


def test_nbb_examples():
    lat = m3_lattice()
    order = order_by_labels(lat, "abc")
    assert is_nbb(order, ["a"])
    assert is_nbb(order, ["a", "b"])
    assert is_nbb(order, ["a", "c"])
    assert not is_nbb(order, ["b", "c"])
    assert not is_nbb(order, ["a", "b", "c"])


def test_nbb_bases_of_m3():
    lat = m3_lattice()
    order = order_by_labels(lat, "abc")
    bases = nbb_bases_of(order, "1")
    got = {frozenset(lat.labels[a] for a in b.atoms) for b in bases}
    assert got == {frozenset("ab"), frozenset("ac")}
    assert mobius_via_nbb(order) == 2 == lat.mobius_number()


def test_nbb_base_atom_listing_respects_order():
    lat = m3_lattice()
    order = order_by_labels(lat, "cba")
    for base in nbb_bases_of(order, "1"):
        positions = [order.position(a) for a in base.atoms]
        assert positions == sorted(positions)


def test_two_chain():
    lat = two_chain()
    order = AtomOrder(lat, tuple(lat.atoms()))
    assert mobius_via_nbb(order) == -1 == lat.mobius_number()


def test_diamond():
    lat = diamond_lattice()
    order = order_by_labels(lat, "ab")
    bases = nbb_bases_of(order, "1")
    assert [set(b.atoms) for b in bases] == [
        {lat.poset.index("a"), lat.poset.index("b")}
    ]
    assert mobius_via_nbb(order) == 1


def test_trivial_lattice_rejected():
    single = as_lattice(FinitePoset.from_covers(["x"], []))
    order = AtomOrder(single, ())
    with pytest.raises(ValueError):
        mobius_via_nbb(order)


# -- equivalence with the raw definition ----------------------------------


def equivalence_case(lat, order):
    engine = set()
    for x in range(lat.size):
        for b in nbb_bases_of(order, x):
            engine.add((frozenset(b.atoms), b.joins_to))
    assert engine == raw_nbb_bases(order)


def test_engine_matches_raw_definition():
    cases = [
        m3_lattice(),
        diamond_lattice(),
        partition_lattice(4),
        weak_order_lattice(4),
        build_family("B", 5).lattice,
        build_family("C", 6).lattice.dual(),
        build_family("A", 5).lattice,
    ]
    rng = random.Random(20260814)
    for lat in cases:
        equivalence_case(lat, AtomOrder(lat, tuple(lat.atoms())))
        equivalence_case(lat, shuffled_order(lat, rng))


def test_is_bb_matches_raw_on_all_subsets():
    lat = build_family("B", 5).lattice
    order = shuffled_order(lat, random.Random(7))
    atoms = list(order.sequence)
    for r in range(1, len(atoms) + 1):
        for combo in itertools.combinations(atoms, r):
            assert is_bounded_below(order, combo) == raw_is_bb(order, combo)
            raw_nbb = not any(
                raw_is_bb(order, sub)
                for k in range(1, r + 1)
                for sub in itertools.combinations(combo, k)
            )
            assert is_nbb(order, combo) == raw_nbb


def test_partition_lattice_mobius():
    lat = partition_lattice(4)
    assert lat.mobius_number() == -6
    rng = random.Random(1)
    for _ in range(5):
        assert mobius_via_nbb(shuffled_order(lat, rng)) == -6


def test_per_element_mobius_identity():
    # signed base count at x equals mu(bottom, x), element by element;
    # the empty set counts once for the bottom itself
    for lat in (m3_lattice(), partition_lattice(4), weak_order_lattice(4)):
        order = AtomOrder(lat, tuple(lat.atoms()))
        for x in range(lat.size):
            signed = sum((-1) ** len(b.atoms) for b in nbb_bases_of(order, x))
            if x == lat.bottom:
                signed += 1
            assert signed == lat.poset.mobius(lat.bottom, x)


def test_order_independence_exhaustive():
    for lat in (m3_lattice(), weak_order_lattice(3), weak_order_lattice(4)):
        want = lat.mobius_number()
        for seq in itertools.permutations(lat.atoms()):
            assert mobius_via_nbb(AtomOrder(lat, seq)) == want


def test_dual_run_gives_same_mobius():
    # coatom-side computation: same engine on the reversed lattice
    for fam, n in (("B", 5), ("C", 5), ("A", 5)):
        lat = build_family(fam, n).lattice
        want = lat.mobius_number()
        rng = random.Random(f"{fam}{n}")
        assert mobius_via_nbb(shuffled_order(lat, rng)) == want
        assert mobius_via_nbb(shuffled_order(lat.dual(), rng)) == want


def test_random_intervals_of_s5():
    lat = weak_order_lattice(5)
    p = lat.poset
    rng = random.Random(55)
    done = 0
    while done < 100:
        x = rng.randrange(p.size)
        z = rng.randrange(p.size)
        if x == z or not p.leq[x, z]:
            continue
        sub = lat.interval_lattice(x, z)
        order = shuffled_order(sub, rng)
        assert mobius_via_nbb(order) == p.mobius(x, z)
        done += 1
