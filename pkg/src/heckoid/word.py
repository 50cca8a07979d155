"""Words in the free group F(a, b) and their S-sequences.

Words are plain strings over ``a b A B`` where ``A = a^-1`` and ``B = b^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

LETTERS = "abAB"
_INV = str.maketrans("abAB", "ABab")


class WordError(ValueError):
    pass


class SingleSignError(WordError):
    """A cyclic word whose letters all carry the same exponent sign."""


def check_letters(w: str) -> str:
    bad = set(w) - set(LETTERS)
    if bad:
        raise WordError(f"letters must be among a, b, A, B; got {sorted(bad)}")
    return w


def letter(gen: str, exponent: int) -> str:
    if gen not in "ab" or exponent not in (1, -1):
        raise WordError(f"bad letter ({gen!r}, {exponent})")
    return gen if exponent == 1 else gen.upper()


def from_pairs(pairs: Iterable[Tuple[str, int]]) -> str:
    return "".join(letter(g, e) for g, e in pairs)


def to_pairs(w: str):
    return [(c.lower(), 1 if c.islower() else -1) for c in w]


def inverse(w: str) -> str:
    return w[::-1].translate(_INV)


def is_positive(c: str) -> bool:
    return c.islower()


def free_reduce(w: str) -> str:
    check_letters(w)
    out = []
    for c in w:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def is_reduced(w: str) -> bool:
    return all(w[i] != w[i + 1].swapcase() for i in range(len(w) - 1))


def is_cyclically_reduced(w: str) -> bool:
    return is_reduced(w) and (len(w) < 2 or w[0] != w[-1].swapcase())


def cyclically_reduce(w: str) -> str:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == w[j - 1].swapcase():
        i += 1
        j -= 1
    return w[i:j]


def rotate(w: str, k: int) -> str:
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def rotations(w: str):
    return [rotate(w, k) for k in range(len(w))]


def is_cyclic_shift(u: str, v: str) -> bool:
    return len(u) == len(v) and (not u or v in u + u)


def _min_rotation(seq):
    n = len(seq)
    if n == 0:
        return seq
    return min(seq[k:] + seq[:k] for k in range(n))


@dataclass(frozen=True, eq=False)
class CyclicWord:
    """The set of cyclic permutations of a cyclically reduced word."""

    representative: str

    def __post_init__(self):
        check_letters(self.representative)
        if not is_cyclically_reduced(self.representative):
            raise WordError(f"{self.representative!r} is not cyclically reduced")

    def __len__(self):
        return len(self.representative)

    def canonical(self) -> str:
        return _min_rotation(self.representative)

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return is_cyclic_shift(self.representative, other.representative)

    def __hash__(self):
        return hash(self.canonical())

    def __str__(self):
        return f"({self.representative})"


class CyclicSequence:
    """A cyclic sequence of positive integers, equal modulo rotation only."""

    __slots__ = ("runs",)

    def __init__(self, runs: Iterable[int]):
        self.runs = tuple(int(x) for x in runs)

    def __len__(self):
        return len(self.runs)

    def __iter__(self):
        return iter(self.runs)

    def rotations(self):
        r = self.runs
        return [r[k:] + r[:k] for k in range(len(r))]

    def canonical(self) -> tuple:
        return _min_rotation(self.runs)

    def __eq__(self, other):
        if isinstance(other, CyclicSequence):
            other = other.runs
        other = tuple(other)
        if len(other) != len(self.runs):
            return False
        return not other or other in self.rotations()

    def __hash__(self):
        return hash(self.canonical())

    def equal_up_to_reversal(self, other) -> bool:
        other = CyclicSequence(other)
        return self == other or self == CyclicSequence(reversed(other.runs))

    def contains(self, pattern: Sequence[int]) -> bool:
        return contains_subsequence(self, pattern)

    def count(self, pattern: Sequence[int]) -> int:
        """Number of rotations starting with ``pattern`` (overlaps counted)."""
        pattern = tuple(pattern)
        n, m = len(self.runs), len(pattern)
        if not pattern or m > n:
            return 0
        doubled = self.runs + self.runs
        first = pattern[0]
        return sum(1 for k in range(n) if doubled[k] == first and doubled[k : k + m] == pattern)

    def __repr__(self):
        return "<<" + ", ".join(map(str, self.runs)) + ">>"

    def to_json(self):
        return list(self.runs)


def s_sequence(v: str) -> tuple:
    """Lengths of the maximal blocks of constant exponent sign, in order."""
    check_letters(v)
    if not v:
        raise WordError("S-sequence of the empty word is undefined")
    runs = []
    prev = None
    for c in v:
        sign = c.islower()
        if sign == prev:
            runs[-1] += 1
        else:
            runs.append(1)
            prev = sign
    return tuple(runs)


def cyclic_s_sequence(v: Union[str, CyclicWord], allow_single_sign: bool = False) -> CyclicSequence:
    """Cyclic S-sequence of the cyclic word (v).

    A word all of whose letters share one sign has no alternation; this is an
    error unless ``allow_single_sign`` is set, in which case the one-block
    sequence <<|v|>> is returned (so CS(ab) = <<2>>).
    """
    rep = v.representative if isinstance(v, CyclicWord) else v
    if not isinstance(v, CyclicWord):
        CyclicWord(rep)
    if not rep:
        raise WordError("cyclic S-sequence of the empty word is undefined")
    signs = [c.islower() for c in rep]
    if all(signs) or not any(signs):
        if allow_single_sign:
            return CyclicSequence((len(rep),))
        raise SingleSignError(f"{rep!r} has no sign alternation")
    # start at a sign change so the first block is complete
    k = next(i for i in range(len(rep)) if signs[i] != signs[i - 1])
    return CyclicSequence(s_sequence(rotate(rep, k)))


def is_alternating(v: Union[str, CyclicWord]) -> bool:
    """No a^{+-2} or b^{+-2}; cyclically so for a CyclicWord."""
    if isinstance(v, CyclicWord):
        w = v.representative
        return is_alternating(w) and (len(w) < 2 or w[0].lower() != w[-1].lower())
    return all(v[i].lower() != v[i + 1].lower() for i in range(len(v) - 1))


def contains_subsequence(cs: Union[CyclicSequence, Sequence[int]], pattern: Sequence[int]) -> bool:
    """True iff some rotation of ``cs`` begins with ``pattern`` (no leaps, no wrapping past one turn)."""
    runs = cs.runs if isinstance(cs, CyclicSequence) else tuple(cs)
    pattern = tuple(pattern)
    if not pattern:
        raise WordError("empty pattern")
    n = len(runs)
    if len(pattern) > n:
        return False
    doubled = runs + runs
    return any(doubled[k : k + len(pattern)] == pattern for k in range(n))


def contains_linear(seq: Sequence[int], pattern: Sequence[int]) -> bool:
    seq, pattern = tuple(seq), tuple(pattern)
    m = len(pattern)
    return any(seq[k : k + m] == pattern for k in range(len(seq) - m + 1))
