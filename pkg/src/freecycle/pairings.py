"""Non-crossing half-pairings on circled points and the pairing attached to a word.

A half-pairing partitions the points 1..n (clockwise on a circle) into pairs
and at least one singleton, such that the partition is non-crossing and stays
non-crossing after merging all singletons into one block.  Singletons are the
"through strings": when the pairing belongs to a word, they mark the letters
that survive cyclic reduction, while each pair joins two letters that cancel.

Every point carries an orientation.  Singletons point out; in a pair, the
endpoint whose singleton-free side follows it clockwise points out.  A point i
covers a point j when both point out and the clockwise gap between them is
fully paired within itself.  A pairing of a word is admissible when no covered
point carries the inverse letter of its coverer; each word has exactly one
admissible half-pairing, and this module computes it.

Indices are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .words import (
    Word,
    cyclic_reduce,
    _has_good_reduction,
    _reduce,
    _reduce_with_partners,
)

OUT = "out"
IN = "in"


@dataclass(frozen=True)
class HalfPairing:
    """A non-crossing partition of 1..n into pairs and >= 1 singletons."""

    n: int
    pairs: frozenset[tuple[int, int]]
    singletons: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "pairs",
            frozenset((min(a, b), max(a, b)) for a, b in self.pairs),
        )
        object.__setattr__(self, "singletons", frozenset(self.singletons))
        reason = _invalid_reason(self.n, self.pairs, self.singletons)
        if reason:
            raise ValueError(reason)

    @property
    def through_count(self) -> int:
        return len(self.singletons)

    def blocks(self) -> list[tuple[int, ...]]:
        return sorted([(s,) for s in self.singletons] + [tuple(p) for p in self.pairs])


def _invalid_reason(
    n: int, pairs: frozenset[tuple[int, int]], singletons: frozenset[int]
) -> str | None:
    if n < 1:
        return "a half-pairing needs at least one point"
    seen: list[int] = list(singletons)
    for a, b in pairs:
        seen.extend((a, b))
    if len(seen) != n or set(seen) != set(range(1, n + 1)):
        return f"blocks do not partition 1..{n}"
    if not singletons:
        return "a half-pairing needs at least one singleton (through string)"
    pair_list = sorted(pairs)
    for (a, b), (c, d) in combinations(pair_list, 2):
        if (a < c < b < d) or (c < a < d < b):
            return f"pairs {(a, b)} and {(c, d)} cross"
    # Merging the singletons must also stay non-crossing: no chord may have
    # singletons strictly on both sides.
    for a, b in pair_list:
        inside = any(a < s < b for s in singletons)
        outside = any(s < a or s > b for s in singletons)
        if inside and outside:
            return f"pair {(a, b)} separates the through strings"
    return None


def is_half_pairing(n: int, blocks: Iterable[Iterable[int]]) -> bool:
    """Whether a partition of 1..n is a valid non-crossing half-pairing.

    Raises if ``blocks`` is not a partition of 1..n at all; returns False for
    partitions that break a half-pairing rule (a block of size > 2, no
    singleton, or a crossing in the partition or its singleton merge).
    """
    block_list = [tuple(b) for b in blocks]
    elements = [x for b in block_list for x in b]
    if len(elements) != len(set(elements)) or set(elements) != set(range(1, n + 1)):
        raise ValueError(f"blocks do not partition 1..{n}")
    if any(len(b) == 0 for b in block_list):
        raise ValueError("empty block")
    if any(len(b) > 2 for b in block_list):
        return False
    pairs = frozenset((min(b), max(b)) for b in block_list if len(b) == 2)
    singletons = frozenset(b[0] for b in block_list if len(b) == 1)
    return _invalid_reason(n, pairs, singletons) is None


@lru_cache(maxsize=None)
def _out_points(p: HalfPairing) -> frozenset[int]:
    outs = set(p.singletons)
    for a, b in p.pairs:
        # Clockwise from a to b is the stretch a+1..b-1; the out endpoint is
        # the one whose following stretch holds no singleton.
        if any(a < s < b for s in p.singletons):
            outs.add(b)
        else:
            outs.add(a)
    return frozenset(outs)


def orientations(p: HalfPairing) -> dict[int, str]:
    """Per-point orientation: singletons out, one out endpoint per pair."""
    outs = _out_points(p)
    return {i: (OUT if i in outs else IN) for i in range(1, p.n + 1)}


@lru_cache(maxsize=None)
def cover_relation(p: HalfPairing) -> frozenset[tuple[int, int]]:
    """All ordered pairs (i, j) of out-points where i covers j.

    i covers j when j immediately follows i clockwise, or everything strictly
    between them (clockwise) is paired within that stretch.
    """
    outs = _out_points(p)
    partner: dict[int, int] = {}
    for a, b in p.pairs:
        partner[a] = b
        partner[b] = a
    n = p.n
    covers = set()
    for i in outs:
        for j in outs:
            if i == j:
                continue
            gap = (j - i - 1) % n
            if gap == 0:
                covers.add((i, j))
                continue
            internal = True
            for d in range(1, gap + 1):
                t = (i + d - 1) % n + 1
                q = partner.get(t)
                if q is None or not ((q - i - 1) % n) < gap:
                    internal = False
                    break
            if internal:
                covers.add((i, j))
    return frozenset(covers)


def _is_rotation_of(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = b + b
    return any(doubled[r : r + len(a)] == a for r in range(len(a)))


def is_word_pairing(w: Word, p: HalfPairing) -> bool:
    """Whether p pairs inverse letters of w and its singletons read a cyclic reduction."""
    letters = w.letters
    if len(letters) != p.n:
        raise ValueError(f"word length {len(letters)} does not match pairing on {p.n} points")
    for a, b in p.pairs:
        if letters[a - 1] != -letters[b - 1]:
            return False
    through = tuple(letters[i - 1] for i in sorted(p.singletons))
    if any(through[i] == -through[i + 1] for i in range(len(through) - 1)):
        return False
    if len(through) > 1 and through[0] == -through[-1]:
        return False
    return _is_rotation_of(through, cyclic_reduce(w).letters)


def is_word_admissible(w: Word, p: HalfPairing) -> bool:
    """A word pairing with no covered point holding the inverse of its coverer."""
    if not is_word_pairing(w, p):
        return False
    letters = w.letters
    return all(letters[i - 1] != -letters[j - 1] for i, j in cover_relation(p))


def admissible_half_pairing(w: Word, rotation: int | None = None) -> HalfPairing:
    """The unique admissible half-pairing of a word that does not reduce to 1.

    Rotate the word to any offset with good reduction, repeatedly cancel the
    leftmost adjacent inverse pair (recording partners), make the survivors
    singletons, and map the indices back.  The result does not depend on which
    good rotation is used; ``rotation`` can force a specific one.
    """
    letters = w.letters
    n = len(letters)
    if n == 0:
        raise ValueError("the empty word has no half-pairing")
    doubled = letters + letters
    if rotation is None:
        for r in range(n):
            if _has_good_reduction(doubled[r : r + n]):
                rotation = r
                break
        else:
            raise ValueError("word reduces to the identity; no half-pairing exists")
    else:
        rotation %= n
        if not _has_good_reduction(doubled[rotation : rotation + n]):
            raise ValueError(f"rotation {rotation} does not have good reduction")
    survivors, partners = _reduce_with_partners(doubled[rotation : rotation + n])
    back = lambda j: (rotation + j) % n + 1
    return HalfPairing(
        n,
        frozenset((back(i), back(j)) for i, j in partners),
        frozenset(back(j) for j in survivors),
    )


def standard_cyclic_reduction(w: Word) -> Word:
    """The through-string letters of the admissible half-pairing, in index order.

    This is a cyclic reduction of the word, possibly a different rotation than
    the one ``cyclic_reduce`` returns.  Words reducible to the identity reduce
    to the empty word by convention.
    """
    if len(cyclic_reduce(w).letters) == 0:
        return Word(w.alphabet_size, ())
    p = admissible_half_pairing(w)
    return Word(w.alphabet_size, tuple(w.letters[i - 1] for i in sorted(p.singletons)))


def _standard_reduction_letters(letters: tuple[int, ...]) -> tuple[int, ...]:
    """standard_cyclic_reduction on a raw letter tuple, skipping object overhead.

    Used by the exhaustive census, where the admissible pairing itself is not
    needed, only its through-string letters.
    """
    reduced = _reduce(letters)
    lo, hi = 0, len(reduced)
    while hi - lo >= 2 and reduced[lo] == -reduced[hi - 1]:
        lo += 1
        hi -= 1
    if hi == lo:
        return ()
    n = len(letters)
    doubled = letters + letters
    for r in range(n):
        if _has_good_reduction(doubled[r : r + n]):
            break
    survivors, _ = _reduce_with_partners(doubled[r : r + n])
    positions = sorted((r + j) % n for j in survivors)
    return tuple(letters[pos] for pos in positions)


@dataclass(frozen=True)
class DotDiagram:
    """Black/white colouring of n circled points encoding a half-pairing."""

    colors: str

    def __post_init__(self) -> None:
        if not self.colors or any(c not in "BW" for c in self.colors):
            raise ValueError("colors must be a nonempty string over 'B' and 'W'")

    @property
    def n(self) -> int:
        return len(self.colors)


def to_dots(p: HalfPairing) -> DotDiagram:
    """Black on the out endpoint of every pair, white everywhere else."""
    blacks = _out_points(p) - p.singletons
    return DotDiagram("".join("B" if i in blacks else "W" for i in range(1, p.n + 1)))


def from_dots(d: DotDiagram) -> HalfPairing:
    """Match each black dot clockwise to its white partner; leftover whites are singletons.

    Walking clockwise from a black dot, every intervening black claims one
    white, so the partner is the first white at which the walk is balanced.
    Needs strictly fewer blacks than whites so at least one singleton remains.
    """
    colors = d.colors
    n = d.n
    blacks = [i for i in range(1, n + 1) if colors[i - 1] == "B"]
    if 2 * len(blacks) >= n:
        raise ValueError("need fewer black dots than white dots")
    pairs = []
    for b in blacks:
        depth = 0
        for step in range(1, n):
            t = (b + step - 1) % n + 1
            if colors[t - 1] == "B":
                depth += 1
            elif depth == 0:
                pairs.append((b, t))
                break
            else:
                depth -= 1
    matched = {x for pair in pairs for x in pair}
    singles = frozenset(i for i in range(1, n + 1) if i not in matched)
    return HalfPairing(n, frozenset(pairs), singles)


def enumerate_half_pairings(n: int, k: int) -> list[HalfPairing]:
    """All half-pairings on n points with exactly k through strings.

    Generated from dot diagrams, one per choice of (n-k)/2 black positions,
    so the count is C(n, (n-k)/2).
    """
    if k < 1 or k > n:
        raise ValueError("need 1 <= k <= n")
    if (n - k) % 2:
        raise ValueError(f"no half-pairing on {n} points with {k} through strings: parity")
    result = []
    for blacks in combinations(range(1, n + 1), (n - k) // 2):
        black_set = set(blacks)
        colors = "".join("B" if i in black_set else "W" for i in range(1, n + 1))
        result.append(from_dots(DotDiagram(colors)))
    return result


def render_half_pairing(p: HalfPairing) -> str:
    """One line per block: ``a-b`` for pairs, ``|s`` for through strings."""
    lines = [f"{a}-{b}" for a, b in sorted(p.pairs)]
    lines += [f"|{s}" for s in sorted(p.singletons)]
    return "\n".join(lines)


def half_pairing_to_json(p: HalfPairing) -> dict:
    return {
        "n": p.n,
        "pairs": [list(pair) for pair in sorted(p.pairs)],
        "singletons": sorted(p.singletons),
        "orientations": {str(i): o for i, o in orientations(p).items()},
    }


def half_pairing_from_json(data: Mapping) -> HalfPairing:
    return HalfPairing(
        int(data["n"]),
        frozenset((int(a), int(b)) for a, b in data["pairs"]),
        frozenset(int(s) for s in data["singletons"]),
    )
