"""Words in a free group on N generators, with linear and cyclic reduction.

A word is a raw string of letters that may or may not simplify; no reduction
happens on construction.  Letters are stored as signed generator indices:
``+g`` is the g-th generator and ``-g`` its inverse, so the word u1*u2^-1 is
``(1, -2)``.  Two text encodings are supported: a compact alphabetic one for
alphabets of up to 26 generators (``a``..``z`` are generators, uppercase their
inverses) and a JSON array of signed integers (``[1, -2]``) for any alphabet.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class Letter(NamedTuple):
    """A single generator or inverse generator: ``generator`` in 1..N, ``exponent`` +1 or -1."""

    generator: int
    exponent: int

    @classmethod
    def from_signed(cls, value: int) -> "Letter":
        if value == 0:
            raise ValueError("letter value must be a nonzero signed generator index")
        return cls(abs(value), 1 if value > 0 else -1)

    @property
    def signed(self) -> int:
        return self.generator * self.exponent

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.exponent)


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters over a fixed alphabet of ``alphabet_size`` generators."""

    alphabet_size: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be at least 1")
        for l in self.letters:
            if l == 0 or abs(l) > self.alphabet_size:
                raise ValueError(
                    f"generator {abs(l)} exceeds alphabet size {self.alphabet_size}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return word_to_text(self)

    def letter_at(self, i: int) -> Letter:
        """The i-th letter, 1-based, as a (generator, exponent) pair."""
        return Letter.from_signed(self.letters[i - 1])

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet_size != other.alphabet_size:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.alphabet_size, self.letters + other.letters)


def word(letters: Iterable[int], alphabet_size: int) -> Word:
    """Build a Word from signed generator indices."""
    return Word(alphabet_size, tuple(letters))


def parse_word(text: str, alphabet_size: int) -> Word:
    """Parse either encoding into a Word; no reduction is applied.

    Alphabetic: ``"aB"`` is u1*u2^-1 (requires alphabet_size <= 26).
    JSON: ``"[1, -2]"`` works for any alphabet size.
    """
    text = text.strip()
    if text.startswith("["):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed word {text!r}: {exc}") from exc
        if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
            raise ValueError(f"malformed word {text!r}: expected a JSON array of integers")
        return Word(alphabet_size, tuple(values))
    letters = []
    for ch in text:
        if "a" <= ch <= "z":
            letters.append(ord(ch) - ord("a") + 1)
        elif "A" <= ch <= "Z":
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise ValueError(f"malformed word {text!r}: unexpected character {ch!r}")
    return Word(alphabet_size, tuple(letters))


def word_to_text(w: Word) -> str:
    """Alphabetic form when the alphabet fits in a-z, JSON array form otherwise."""
    if w.alphabet_size <= 26:
        return "".join(
            chr(ord("a") + l - 1) if l > 0 else chr(ord("A") - l - 1) for l in w.letters
        )
    return json.dumps(list(w.letters))


def invert(w: Word) -> Word:
    """Reverse the string and invert each letter, with no reduction."""
    return Word(w.alphabet_size, tuple(-l for l in reversed(w.letters)))


def rotate(w: Word, r: int) -> Word:
    """Cyclic rotation by offset r: the word l_{r+1} ... l_n l_1 ... l_r."""
    if len(w.letters) == 0:
        return w
    r %= len(w.letters)
    return Word(w.alphabet_size, w.letters[r:] + w.letters[:r])


def _reduce(letters: tuple[int, ...]) -> list[int]:
    """One left-to-right pass with a stack; adjacent inverse pairs cancel."""
    stack: list[int] = []
    push = stack.append
    pop = stack.pop
    for l in letters:
        if stack and stack[-1] == -l:
            pop()
        else:
            push(l)
    return stack


def _reduce_with_partners(
    letters: tuple[int, ...],
) -> tuple[list[int], list[tuple[int, int]]]:
    """Stack reduction that also reports cancellations.

    Returns the 0-based positions of the surviving letters and the list of
    cancelled (earlier, later) position pairs.  The pairs are exactly the ones
    produced by repeatedly cancelling the leftmost adjacent inverse pair.
    """
    stack: list[int] = []
    pairs: list[tuple[int, int]] = []
    for i, l in enumerate(letters):
        if stack and letters[stack[-1]] == -l:
            pairs.append((stack.pop(), i))
        else:
            stack.append(i)
    return stack, pairs


def linear_reduce(w: Word) -> Word:
    """The unique linearly reduced word obtained by cancelling adjacent inverse pairs."""
    return Word(w.alphabet_size, tuple(_reduce(w.letters)))


def cyclic_reduce(w: Word) -> Word:
    """Canonical cyclic reduction: linear reduction, then strip cancelling end pairs.

    The result is cyclically reduced; its length is the same for every
    rotation of ``w``, even though the resulting word may differ by a rotation.
    """
    reduced = _reduce(w.letters)
    lo, hi = 0, len(reduced)
    while hi - lo >= 2 and reduced[lo] == -reduced[hi - 1]:
        lo += 1
        hi -= 1
    return Word(w.alphabet_size, tuple(reduced[lo:hi]))


def is_reducible_to_one(w: Word) -> bool:
    """True iff the word reduces linearly (equivalently cyclically) to the identity."""
    return not _reduce(w.letters)


def is_linearly_reduced(w: Word) -> bool:
    """No two adjacent letters cancel."""
    return all(a != -b for a, b in zip(w.letters, w.letters[1:]))


def is_cyclically_reduced(w: Word) -> bool:
    """Linearly reduced and the first and last letters do not cancel either."""
    return is_linearly_reduced(w) and (
        len(w.letters) == 0 or w.letters[0] != -w.letters[-1]
    )


def _has_good_reduction(letters: tuple[int, ...]) -> bool:
    stack: list[int] = []
    push = stack.append
    pop = stack.pop
    for l in letters:
        if stack and stack[-1] == -l:
            pop()
            if not stack:
                return False
        else:
            push(l)
    # Nonempty stack here; reduction is cyclically reduced iff the ends do not
    # cancel (a single letter never cancels itself).
    return stack[0] != -stack[-1]


def has_good_reduction(w: Word) -> bool:
    """True iff no prefix reduces to the identity and the linear reduction is cyclically reduced."""
    if not w.letters:
        raise ValueError("good reduction is undefined for the empty word")
    return _has_good_reduction(w.letters)


def good_rotations(w: Word) -> list[int]:
    """Sorted offsets r whose rotation has good reduction.

    There are always exactly as many such offsets as there are letters in a
    cyclic reduction of ``w``; in particular the list is empty iff the word
    reduces to the identity.
    """
    if not w.letters:
        raise ValueError("good rotations are undefined for the empty word")
    letters = w.letters
    n = len(letters)
    doubled = letters + letters
    return [r for r in range(n) if _has_good_reduction(doubled[r : r + n])]


@dataclass(frozen=True)
class ReductionProfile:
    """Prefix reduction lengths t_1..t_horizon of the word repeated forever.

    ``values[i-1]`` is the length of the linear reduction of the first i
    letters of w w w ...; consecutive values differ by exactly 1.  From
    ``period_start`` on, the profile is shift-periodic: t_{i+n} = t_i + k,
    where n = len(word) and k is the cyclic reduction length.
    """

    word: Word
    k: int
    values: tuple[int, ...]
    period_start: int

    @property
    def horizon(self) -> int:
        return len(self.values)


def periodicity_bound(n: int, k: int) -> int:
    """Shift-periodicity is guaranteed from this index on: floor(n(1+n/k)) + 1."""
    return n + (n * n) // k + 1


def default_profile_horizon(n: int, k: int) -> int:
    return 2 * (n + (n * n) // k + n)


def reduction_profile(w: Word, horizon: int | None = None) -> ReductionProfile:
    """Compute the prefix-reduction profile of w repeated, and where it turns periodic.

    ``period_start`` is the least index from which t_{i+n} = t_i + k holds for
    every later i inside the horizon.  Requires a cyclic reduction of length
    k >= 1; for k = 0 the profile keeps returning to 0 and never becomes
    shift-periodic with positive k.
    """
    if not w.letters:
        raise ValueError("profile is undefined for the empty word")
    k = len(cyclic_reduce(w).letters)
    n = len(w.letters)
    if k == 0:
        raise ValueError("profile requires a word that does not reduce to the identity")
    if horizon is None:
        horizon = default_profile_horizon(n, k)
    minimum = periodicity_bound(n, k) + n
    if horizon < minimum:
        raise ValueError(f"horizon {horizon} is too short; need at least {minimum}")
    values = []
    stack: list[int] = []
    for i in range(horizon):
        l = w.letters[i % n]
        if stack and stack[-1] == -l:
            stack.pop()
        else:
            stack.append(l)
        values.append(len(stack))
    period_start = 1
    for i in range(horizon - n, 0, -1):  # 1-based index i, checked high to low
        if values[i - 1 + n] != values[i - 1] + k:
            period_start = i + 1
            break
    return ReductionProfile(w, k, tuple(values), period_start)


@dataclass(frozen=True)
class Decomposition:
    """A split w = prefix * core * suffix with prefix*suffix reducible to 1.

    The core has no prefix or suffix reducible to the identity and its first
    and last letters do not cancel, so its linear reduction is already
    cyclically reduced.
    """

    prefix: Word
    core: Word
    suffix: Word

    @property
    def word(self) -> Word:
        return self.prefix + self.core + self.suffix


def _max_reducible_prefix(letters: tuple[int, ...]) -> int:
    """Length of the longest prefix that reduces to the identity (0 if none)."""
    best = 0
    stack: list[int] = []
    for i, l in enumerate(letters):
        if stack and stack[-1] == -l:
            stack.pop()
        else:
            stack.append(l)
        if not stack:
            best = i + 1
    return best


def standard_decomposition(w: Word) -> Decomposition:
    """Strip cancelling end pairs and identity-reducible prefixes/suffixes until stable.

    End cancellation is tried first, then a maximal prefix reducible to the
    identity, then a maximal such suffix.  Different strip orders can give
    different valid splits; this order is fixed so results are reproducible.
    """
    letters = w.letters
    lo, hi = 0, len(letters)
    while lo < hi:
        if hi - lo >= 2 and letters[lo] == -letters[hi - 1]:
            lo += 1
            hi -= 1
            continue
        p = _max_reducible_prefix(letters[lo:hi])
        if p:
            lo += p
            continue
        s = _max_reducible_prefix(tuple(-l for l in reversed(letters[lo:hi])))
        if s:
            hi -= s
            continue
        break
    return Decomposition(
        Word(w.alphabet_size, letters[:lo]),
        Word(w.alphabet_size, letters[lo:hi]),
        Word(w.alphabet_size, letters[hi:]),
    )
