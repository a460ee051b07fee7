"""Permutations in one-line notation under the weak order.

Comparison is by inversion sets: p <= q iff Inv(p) is a subset of Inv(q).
The join closes the union of two inversion sets under transitive chains;
the meet keeps a pair (i, j) only when every increasing chain from i to j
crosses the intersection.  Both constructions are cross-checked against
exhaustive bound search in the test suite.

Pairs (i, j) with 1 <= i < j <= n are also packed into flat bitmasks so
that subset tests cost one machine operation; lattice builders rely on
this representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class DegreeMismatch(ValueError):
    """Raised when two permutations of different degrees are compared."""


class DuplicateEntries(ValueError):
    """Raised when a word presented for standardization repeats a value."""


class NotAnInversionSet(ValueError):
    """Raised when a pair set fails the transitive-closure criterion."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on [n], stored as its one-line word."""

    word: tuple[int, ...]

    def __post_init__(self):
        n = len(self.word)
        if n == 0 or sorted(self.word) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation word: {self.word!r}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        """Value at position i, 1-based."""
        if not 1 <= i <= len(self.word):
            raise IndexError(f"position {i} not in 1..{len(self.word)}")
        return self.word[i - 1]

    def __str__(self) -> str:
        return format_word(self.word)


def format_word(word) -> str:
    """Digit string for degrees up to 9, comma-separated beyond.

    >>> format_word((2, 3, 1))
    '231'
    """
    if len(word) <= 9:
        return "".join(str(v) for v in word)
    return ",".join(str(v) for v in word)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def reversal(n: int) -> Permutation:
    """The word n, n-1, ..., 1: the maximum of the weak order."""
    return Permutation(tuple(range(n, 0, -1)))


def adjacent_transposition(n: int, i: int) -> Permutation:
    """The identity with positions i and i+1 swapped, 1 <= i <= n-1."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"transposition index {i} out of range for degree {n}")
    word = list(range(1, n + 1))
    word[i - 1], word[i] = word[i], word[i - 1]
    return Permutation(tuple(word))


def reverse(p: Permutation) -> Permutation:
    """Flip the word left to right; an involution that dualizes the order."""
    return Permutation(p.word[::-1])


def inversion_set(p: Permutation) -> frozenset[tuple[int, int]]:
    """All pairs (i, j) with i < j and p(i) > p(j).

    >>> sorted(inversion_set(Permutation((2, 3, 1))))
    [(1, 3), (2, 3)]
    """
    w = p.word
    n = len(w)
    return frozenset(
        (i, j) for i in range(1, n) for j in range(i + 1, n + 1) if w[i - 1] > w[j - 1]
    )


def pair_index(n: int, i: int, j: int) -> int:
    """Flat index of the pair (i, j), i < j, in a fixed triangular layout."""
    # pairs with first coordinate i occupy a contiguous block
    return (i - 1) * (2 * n - i) // 2 + (j - i - 1)


def inversion_mask(p: Permutation) -> int:
    """Inversion set packed into an integer bitmask via pair_index."""
    w = p.word
    n = len(w)
    mask = 0
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if w[i - 1] > w[j - 1]:
                mask |= 1 << pair_index(n, i, j)
    return mask


def _check_degrees(p: Permutation, q: Permutation) -> int:
    if p.n != q.n:
        raise DegreeMismatch(f"degrees differ: {p.n} vs {q.n}")
    return p.n


def from_inversion_set(n: int, pairs) -> Permutation:
    """Rebuild the permutation with the given inversion set.

    A pair set is an inversion set exactly when it and its complement are
    both closed under composing (i, j), (j, k) into (i, k); anything else
    is rejected.
    """
    pairs = set(pairs)
    for i, j in pairs:
        if not (1 <= i < j <= n):
            raise NotAnInversionSet(f"pair {(i, j)} invalid for degree {n}")
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        ij, jk, ik = (i, j) in pairs, (j, k) in pairs, (i, k) in pairs
        if ij and jk and not ik:
            raise NotAnInversionSet(f"{(i, j)} and {(j, k)} present without {(i, k)}")
        if not ij and not jk and ik:
            raise NotAnInversionSet(f"{(i, k)} present but {(i, j)}, {(j, k)} absent")
    # value at i counts the smaller values forced before/after it
    word = []
    for i in range(1, n + 1):
        v = 1
        v += sum(1 for j in range(i + 1, n + 1) if (i, j) in pairs)
        v += sum(1 for j in range(1, i) if (j, i) not in pairs)
        word.append(v)
    p = Permutation(tuple(word))
    assert inversion_set(p) == frozenset(pairs)
    return p


def weak_leq(p: Permutation, q: Permutation) -> bool:
    """p <= q in the weak order: Inv(p) a subset of Inv(q)."""
    _check_degrees(p, q)
    return inversion_mask(p) & ~inversion_mask(q) == 0


def _chain_closure(n: int, pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Close a set of increasing pairs under (i,j)+(j,k) -> (i,k)."""
    closed = set(pairs)
    # one sweep with the middle vertex outermost closes a DAG relation
    for j in range(2, n):
        for i in range(1, j):
            if (i, j) in closed:
                for k in range(j + 1, n + 1):
                    if (j, k) in closed:
                        closed.add((i, k))
    return closed


def weak_join(p: Permutation, q: Permutation) -> Permutation:
    """Least upper bound: the chain closure of the union of inversions.

    >>> str(weak_join(Permutation((2, 1, 3)), Permutation((1, 3, 2))))
    '321'
    """
    n = _check_degrees(p, q)
    union = set(inversion_set(p)) | set(inversion_set(q))
    return from_inversion_set(n, _chain_closure(n, union))


def weak_meet(p: Permutation, q: Permutation) -> Permutation:
    """Greatest lower bound.

    A pair (i, j) survives when every increasing chain from i to j uses at
    least one pair from Inv(p) & Inv(q); equivalently, j is unreachable
    from i through pairs outside the intersection.
    """
    n = _check_degrees(p, q)
    common = inversion_set(p) & inversion_set(q)
    outside = {
        (i, j)
        for i in range(1, n)
        for j in range(i + 1, n + 1)
        if (i, j) not in common
    }
    reachable = _chain_closure(n, outside)
    kept = {
        (i, j)
        for i in range(1, n)
        for j in range(i + 1, n + 1)
        if (i, j) not in reachable
    }
    return from_inversion_set(n, kept)


def _ends_with_pattern(word, pat_word) -> bool:
    """Does some subsequence ending at the last position match the pattern?"""
    L, k = len(word), len(pat_word)
    if L < k:
        return False
    for idxs in itertools.combinations(range(L - 1), k - 1):
        vals = tuple(word[i] for i in idxs) + (word[-1],)
        if all(
            (vals[a] < vals[b]) == (pat_word[a] < pat_word[b])
            for a in range(k)
            for b in range(a + 1, k)
        ):
            return True
    return False


def contains_pattern(p: Permutation, pat: Permutation) -> bool:
    """Classical containment: some subsequence of p orders like pat.

    >>> contains_pattern(Permutation((3, 1, 2)), Permutation((3, 2, 1)))
    False
    """
    w, pw = p.word, pat.word
    if len(pw) > len(w):
        return False
    for end in range(len(pw) - 1, len(w)):
        if _ends_with_pattern(w[: end + 1], pw):
            return True
    return False


def standardize(word) -> Permutation:
    """Replace distinct entries by their ranks, preserving relative order.

    >>> str(standardize((4, 2, 5)))
    '213'
    """
    word = tuple(word)
    if len(set(word)) != len(word):
        raise DuplicateEntries(f"repeated value in {word!r}")
    rank = {v: r for r, v in enumerate(sorted(word), start=1)}
    return Permutation(tuple(rank[v] for v in word))


def enumerate_avoiders(n: int, pats) -> list[Permutation]:
    """All permutations of [n] avoiding every given pattern, in lex order.

    Prefix-pruned search: a prefix already containing a pattern cannot be
    completed to an avoider, and a new occurrence must use the freshly
    appended position, so only anchored checks run per extension.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    pat_words = [p.word for p in pats]
    out: list[Permutation] = []
    word: list[int] = []
    used = [False] * (n + 1)

    def grow():
        if len(word) == n:
            out.append(Permutation(tuple(word)))
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            word.append(v)
            if not any(_ends_with_pattern(word, pw) for pw in pat_words):
                used[v] = True
                grow()
                used[v] = False
            word.pop()

    grow()
    return out


def _value_swap(w, k) -> Permutation:
    # exchanging the consecutive values k, k+1 flips exactly one pair,
    # so the result is a cover neighbour in the containment order
    pos_k = w.index(k)
    pos_k1 = w.index(k + 1)
    nw = list(w)
    nw[pos_k], nw[pos_k1] = nw[pos_k1], nw[pos_k]
    return Permutation(tuple(nw))


def upper_covers(p: Permutation) -> list[Permutation]:
    """Permutations whose inversion set adds exactly one pair to p's."""
    w = p.word
    return [_value_swap(w, k) for k in range(1, len(w)) if w.index(k) < w.index(k + 1)]


def lower_covers(p: Permutation) -> list[Permutation]:
    """Permutations whose inversion set drops exactly one pair from p's."""
    w = p.word
    return [_value_swap(w, k) for k in range(1, len(w)) if w.index(k) > w.index(k + 1)]
