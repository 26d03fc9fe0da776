"""Brute-force ground truth for score sequences.

A non-decreasing integer vector s_1 <= ... <= s_n is a score sequence iff
every prefix sum s_1 + ... + s_k is at least C(k, 2), with equality at k = n
(Landau). Everything here works directly from that condition.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import ConsistencyError, GuardError

ENUMERATION_MAX = 13
SAMPLER_MAX = 40

ScoreSequence = tuple[int, ...]


def is_score_sequence(s: Sequence[int]) -> bool:
    total = 0
    for k, x in enumerate(s, start=1):
        if k > 1 and x < s[k - 2]:
            return False
        total += x
        if total < comb(k, 2):
            return False
    return total == comb(len(s), 2)


def _check_n(n: int, limit: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > limit:
        raise GuardError(f"n={n} exceeds the limit {limit}")


def enumerate_scores(n: int) -> list[ScoreSequence]:
    """All score sequences on n teams, in lexicographic order."""
    _check_n(n, ENUMERATION_MAX)
    target = comb(n, 2)
    out: list[ScoreSequence] = []
    prefix: list[int] = []

    def extend(k: int, low: int, total: int) -> None:
        # k entries placed, next entry >= low, running sum total
        if k == n:
            if total == target:
                out.append(tuple(prefix))
            return
        left = n - k
        for x in range(low, n):
            # the remaining entries are all >= x
            if total + left * x > target:
                break
            if total + x < comb(k + 1, 2) or total + left * (n - 1) < target:
                continue
            prefix.append(x)
            extend(k + 1, x, total + x)
            prefix.pop()

    extend(0, 0, 0)
    for s in out:
        if s[0] < 0 or s[-1] > n - 1:
            raise ConsistencyError(f"enumerated sequence {s} out of range")
    return out


def _require_valid(s: Sequence[int]) -> None:
    if not is_score_sequence(s):
        raise ValueError(f"{tuple(s)} is not a score sequence")


def irreducible_count(s: Sequence[int]) -> int:
    """Number of k in 1..n with s_1 + ... + s_k = C(k, 2)."""
    _require_valid(s)
    count, total = 0, 0
    for k, x in enumerate(s, start=1):
        total += x
        count += total == comb(k, 2)
    return count


def is_strong(s: Sequence[int]) -> bool:
    return irreducible_count(s) == 1


def score_to_subset(s: Sequence[int]) -> frozenset[int]:
    """The set {s_1 + 1, ..., s_n + n}: n distinct elements of 1..2n-1 summing to n^2."""
    _require_valid(s)
    n = len(s)
    image = frozenset(x + i for i, x in enumerate(s, start=1))
    if len(image) != n or min(image) < 1 or max(image) > 2 * n - 1 or sum(image) != n * n:
        raise ConsistencyError(f"subset image {sorted(image)} of {tuple(s)} is malformed")
    return image


def count_by_subscores_brute(n: int) -> dict[int, int]:
    """Histogram m -> #{score sequences on n teams with m irreducible subscores}."""
    return dict(sorted(Counter(irreducible_count(s) for s in enumerate_scores(n)).items()))


@dataclass(frozen=True)
class CompletionCounts:
    """Completion counts for the Landau constraints on n teams.

    ``table[i][s][t]`` is the number of ways to choose s_{i+1} <= ... <= s_n,
    all >= s, given that the first i entries sum to t, so that every later
    prefix obeys Landau and the total is C(n, 2). Out-of-range states count 0.
    """

    n: int
    table: tuple

    def __call__(self, i: int, s: int, t: int) -> int:
        if not (0 <= i <= self.n and 0 <= s < self.n and 0 <= t <= comb(self.n, 2)):
            return 0
        return self.table[i][s][t]

    @property
    def total(self) -> int:
        return self(0, 0, 0)


@lru_cache(maxsize=4)
def completion_counts(n: int) -> CompletionCounts:
    _check_n(n, SAMPLER_MAX)
    target = comb(n, 2)
    width = target + 1
    # f(n, s, t) = [t == target]
    last = [[1 if t == target else 0 for t in range(width)] for _ in range(n)]
    layers = [last]
    for i in range(n - 1, -1, -1):
        floor_next = comb(i + 1, 2)
        nxt = layers[-1]
        layer = [[0] * width for _ in range(n + 1)]
        for s in range(n - 1, -1, -1):
            row, above, nrow = layer[s], layer[s + 1], nxt[s]
            for t in range(width):
                # either s_{i+1} = s, or every remaining entry is >= s + 1
                take = nrow[t + s] if t + s >= floor_next and t + s < width else 0
                row[t] = take + above[t]
        layers.append([tuple(r) for r in layer[:n]])
    layers.reverse()
    return CompletionCounts(n, tuple(tuple(layer) for layer in layers))


def _walk(counts: CompletionCounts, r: int) -> ScoreSequence:
    """The r-th score sequence (0-based, lexicographic) under ``counts``."""
    n = counts.n
    out = []
    i, s, t = 0, 0, 0
    while i < n:
        take = counts(i + 1, s, t + s) if t + s >= comb(i + 1, 2) else 0
        if r < take:
            out.append(s)
            i, t = i + 1, t + s
        else:
            r -= take
            s += 1
            if s >= n:
                raise ConsistencyError("sampler walked past the last score value")
    return tuple(out)


def sample_uniform(n: int, seed: int, count: int) -> list[ScoreSequence]:
    """``count`` exactly uniform score sequences on n teams.

    Draws one integer uniformly below S_n with :class:`random.Random`
    (Mersenne Twister seeded by ``seed``) and unranks it through the
    completion counts, so uniformity is exact.
    """
    _check_n(n, SAMPLER_MAX)
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    counts = completion_counts(n)
    rng = random.Random(seed)
    return [_walk(counts, rng.randrange(counts.total)) for _ in range(count)]
