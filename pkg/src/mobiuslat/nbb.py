"""Mobius numbers from NBB bases of atoms under a chosen total order.

Fix a total order on the atoms of a bounded lattice.  A nonempty atom set
D is bounded below (BB) when every member has a strictly earlier atom
lying strictly below the join of D; a set is NBB when it contains no BB
subset.  Summing (-1)^|B| over the NBB sets joining to an element gives
its Mobius value, for any choice of total order.

The coatom-side statement is the same computation on the dual lattice, so
no separate machinery exists for it.

One shortcut is used throughout: a single witness atom earlier than the
earliest member of D serves every member at once, and the earliest member
can accept no other witness, so D is BB exactly when some atom before
min(D) lies below join(D).  The test suite re-checks this against the raw
per-member definition by exhaustive enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .poset import BoundedLattice


class EmptyAtomSet(ValueError):
    """Raised when a BB or NBB query is made on the empty set."""


@dataclass(frozen=True)
class AtomOrder:
    """A total order on the atoms of a lattice, earliest first."""

    lattice: BoundedLattice
    sequence: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sequence) != self.lattice.atoms():
            raise ValueError("sequence must list every atom exactly once")

    def position(self, atom: int) -> int:
        return self.sequence.index(atom)

    def labels(self, atoms) -> list[str]:
        """Labels of the given atoms, sorted by order position."""
        ranked = sorted(atoms, key=self.position)
        return [self.lattice.labels[a] for a in ranked]


@dataclass(frozen=True)
class NbbBase:
    """An NBB atom set together with its join."""

    atoms: tuple[int, ...]
    joins_to: int


def shuffled_order(lattice: BoundedLattice, rng) -> AtomOrder:
    """An AtomOrder drawn from the given random generator."""
    seq = lattice.atoms()
    rng.shuffle(seq)
    return AtomOrder(lattice, tuple(seq))


class _Search:
    """Shared state for BB tests and base enumeration over one order."""

    def __init__(self, order: AtomOrder):
        self.order = order
        self.lattice = order.lattice
        self.atoms = order.sequence
        self._joins: dict[int, int] = {0: self.lattice.bottom}
        self._below: dict[int, int] = {}

    def join(self, mask: int) -> int:
        """Join of the atoms at the masked positions, cached per mask."""
        v = self._joins.get(mask)
        if v is None:
            low = mask & -mask
            v = self.lattice.join(
                self.join(mask ^ low), self.atoms[low.bit_length() - 1]
            )
            self._joins[mask] = v
        return v

    def below_positions(self, element: int) -> int:
        """Bitmask of order positions whose atom is strictly below element."""
        bm = self._below.get(element)
        if bm is None:
            bm = 0
            for p, a in enumerate(self.atoms):
                if a != element and self.lattice.leq(a, element):
                    bm |= 1 << p
            self._below[element] = bm
        return bm

    def is_bb(self, mask: int) -> bool:
        first = (mask & -mask).bit_length() - 1
        return self.below_positions(self.join(mask)) & ((1 << first) - 1) != 0

    def nbb_sets(self):
        """Yield every NBB position mask, nonempty, by pruned backtracking.

        Sets are grown in order position; any BB subset of a grown set
        must contain the newest position, so only those subsets are
        checked before descending.
        """
        k = len(self.atoms)

        def grow(mask: int, start: int):
            for p in range(start, k):
                bit = 1 << p
                sub = mask
                ok = True
                while True:
                    if self.is_bb(sub | bit):
                        ok = False
                        break
                    if sub == 0:
                        break
                    sub = (sub - 1) & mask
                if ok:
                    yield mask | bit
                    yield from grow(mask | bit, p + 1)

        yield from grow(0, 0)


def _mask_atoms(order: AtomOrder, atoms) -> int:
    positions = {a: p for p, a in enumerate(order.sequence)}
    mask = 0
    for a in atoms:
        a = order.lattice._as_index(a)
        if a not in positions:
            raise ValueError(f"{order.lattice.labels[a]!r} is not an atom")
        mask |= 1 << positions[a]
    if mask == 0:
        raise EmptyAtomSet("atom set must be nonempty")
    return mask


def is_bounded_below(order: AtomOrder, atoms) -> bool:
    """Does every member have an earlier atom below the set's join?"""
    return _Search(order).is_bb(_mask_atoms(order, atoms))


def is_nbb(order: AtomOrder, atoms) -> bool:
    """Does the set contain no bounded-below subset?"""
    mask = _mask_atoms(order, atoms)
    search = _Search(order)
    positions = [p for p in range(mask.bit_length()) if mask >> p & 1]
    for r in range(1, len(positions) + 1):
        for combo in itertools.combinations(positions, r):
            sub = 0
            for p in combo:
                sub |= 1 << p
            if search.is_bb(sub):
                return False
    return True


def _bases(search: _Search):
    for mask in search.nbb_sets():
        atoms = tuple(
            search.atoms[p] for p in range(mask.bit_length()) if mask >> p & 1
        )
        yield NbbBase(atoms=atoms, joins_to=search.join(mask))


def nbb_bases_of(order: AtomOrder, x) -> list[NbbBase]:
    """All NBB sets joining to x, atoms listed in order position."""
    xi = order.lattice._as_index(x)
    return [b for b in _bases(_Search(order)) if b.joins_to == xi]


def mobius_via_nbb(order: AtomOrder) -> int:
    """Signed count of NBB bases of the top element.

    Run on the dual lattice, this is the coatom-side computation of the
    Mobius number.
    """
    lattice = order.lattice
    if lattice.size < 2:
        raise ValueError("lattice must have distinct bounds")
    total = 0
    for base in _bases(_Search(order)):
        if base.joins_to == lattice.top:
            total += -1 if len(base.atoms) % 2 else 1
    return total
