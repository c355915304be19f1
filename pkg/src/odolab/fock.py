"""Words over the alphabet {1..n} and the graded basis of the truncated
vector-valued Fock space.

A word is a plain tuple of 1-based letters; the empty tuple is the vacuum.
The basis enumerates (word, slot) pairs in graded lexicographic order with
the slot nested innermost, so a depth-D basis is a prefix of every deeper
one over the same alphabet and coefficient dimension.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from .errors import AllNsWord, CapExceeded, OnesChainWord

Word = tuple  # tuple of ints in 1..n
VACUUM: Word = ()

DEFAULT_CAP = 200_000
CAP_ENV_VAR = "ODOLAB_CAP"


def basis_cap() -> int:
    """Configured basis-size cap; ODOLAB_CAP overrides the default."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError("%s must be an integer, got %r" % (CAP_ENV_VAR, raw))
    if cap <= 0:
        raise ValueError("%s must be positive" % CAP_ENV_VAR)
    return cap


def check_word(word, n: int) -> Word:
    w = tuple(int(a) for a in word)
    for a in w:
        if not 1 <= a <= n:
            raise ValueError("letter %d outside alphabet 1..%d" % (a, n))
    return w


def word_in_m0(word) -> bool:
    """Some letter differs from 1 (word meets the interior row space)."""
    return any(a != 1 for a in word)


def word_in_n0(word, n: int) -> bool:
    """Some letter differs from n (word has a successor of equal length)."""
    return any(a != n for a in word)


def is_ones_chain(word) -> bool:
    return all(a == 1 for a in word)


def is_ns_chain(word, n: int) -> bool:
    return all(a == n for a in word)


@dataclass(frozen=True)
class WordClass:
    in_m0: bool
    in_n0: bool
    ones_chain: bool
    ns_chain: bool


def classify_word(word, n: int) -> WordClass:
    w = check_word(word, n)
    return WordClass(
        in_m0=word_in_m0(w),
        in_n0=word_in_n0(w, n),
        ones_chain=is_ones_chain(w),
        ns_chain=is_ns_chain(w, n),
    )


def successor(mu, n: int) -> Word:
    """Odometer carry: bump the first letter below n, reset the prefix to 1s.

    Defined exactly on words with some letter != n; the all-n chains (and
    the vacuum) have no successor of equal length.
    """
    w = check_word(mu, n)
    for k, letter in enumerate(w):
        if letter != n:
            return (1,) * k + (letter + 1,) + w[k + 1 :]
    raise AllNsWord("word %r has no letter below %d" % (w, n))


def predecessor(gamma, n: int) -> Word:
    """Inverse carry: decrement the first letter above 1, prefix becomes ns."""
    w = check_word(gamma, n)
    for k, letter in enumerate(w):
        if letter != 1:
            return (n,) * k + (letter - 1,) + w[k + 1 :]
    raise OnesChainWord("word %r is a chain of 1s" % (w,))


@dataclass(frozen=True)
class LeadingOnes:
    """Split gamma = 1^p . tail with tail empty or starting above 1."""

    p: int
    tail: Word

    def drop(self, m: int) -> Word:
        # 1^{p-m} . tail, for 0 <= m <= p
        if not 0 <= m <= self.p:
            raise ValueError("can drop 0..%d ones, got %d" % (self.p, m))
        return (1,) * (self.p - m) + self.tail


def leading_ones(gamma) -> LeadingOnes:
    p = 0
    for a in gamma:
        if a != 1:
            break
        p += 1
    return LeadingOnes(p=p, tail=tuple(gamma[p:]))


def word_count(n: int, depth: int) -> int:
    """Number of words of length <= depth."""
    if n == 1:
        return depth + 1
    return (n ** (depth + 1) - 1) // (n - 1)


def enumerate_words(n: int, depth: int):
    """All words of length <= depth in graded lexicographic order."""
    out = [VACUUM]
    for m in range(1, depth + 1):
        out.extend(product(range(1, n + 1), repeat=m))
    return out


class BasisIndex:
    """Index map for the (word, slot) basis at a fixed truncation depth.

    Flat index = word position * d + (slot - 1), with words in graded lex
    order.  Slots are 1-based throughout.
    """

    def __init__(self, n: int, depth: int, d: int, cap: int | None = None):
        if n < 1 or d < 1 or depth < 0:
            raise ValueError("need n >= 1, d >= 1, depth >= 0")
        cap = basis_cap() if cap is None else cap
        total = d * word_count(n, depth)
        if total > cap:
            raise CapExceeded(
                "basis size %d exceeds cap %d (n=%d, depth=%d, d=%d)"
                % (total, cap, n, depth, d)
            )
        self.n = n
        self.depth = depth
        self.d = d
        self.words = enumerate_words(n, depth)
        self._pos = {w: i for i, w in enumerate(self.words)}
        self.size = total

    def index(self, word, slot: int) -> int:
        if not 1 <= slot <= self.d:
            raise ValueError("slot %d outside 1..%d" % (slot, self.d))
        return self._pos[tuple(word)] * self.d + (slot - 1)

    def pair(self, i: int):
        if not 0 <= i < self.size:
            raise IndexError(i)
        return self.words[i // self.d], i % self.d + 1

    def contains_word(self, word) -> bool:
        return tuple(word) in self._pos

    def pairs(self):
        for w in self.words:
            for s in range(1, self.d + 1):
                yield w, s

    def __repr__(self):
        return "BasisIndex(n=%d, depth=%d, d=%d, size=%d)" % (
            self.n,
            self.depth,
            self.d,
            self.size,
        )


def enumerate_basis(n: int, depth: int, d: int, cap: int | None = None) -> BasisIndex:
    return BasisIndex(n, depth, d, cap=cap)
