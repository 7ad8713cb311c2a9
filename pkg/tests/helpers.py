"""Shared test utilities: independent oracles and instance generators.

Everything here is deliberately written from the definitions, not by
calling back into the package internals under test, so the main
implementations have something honest to disagree with.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from semilen import (
    FiniteSemigroup,
    cyclic_group,
    full_transformation_monoid,
    left_zero,
    random_associative_tables,
    right_zero,
    subadditivity_violations,
)

Word = tuple[int, ...]


def brute_is_framed(w: Word) -> bool:
    """Definition-direct framed-word test over {0, 1}: 0^3 V 1^3 with
    V = 1 V' 0 and neither 000 nor 111 inside V."""
    if len(w) < 8 or any(x not in (0, 1) for x in w):
        return False
    if w[:3] != (0, 0, 0) or w[-3:] != (1, 1, 1):
        return False
    v = w[3:-3]
    if len(v) < 2 or v[0] != 1 or v[-1] != 0:
        return False
    for i in range(len(v) - 2):
        if v[i] == v[i + 1] == v[i + 2]:
            return False
    return True


def _is_factor(y: Word, z: Word) -> int | None:
    """First position where y occurs inside z, else None."""
    for s in range(len(z) - len(y) + 1):
        if z[s : s + len(y)] == y:
            return s
    return None


def pair_overlap_ok(y: Word, z: Word) -> bool:
    """Definitional overlap check for one ordered pair (y, z)."""
    if y != z and len(y) < len(z) and _is_factor(y, z) is not None:
        return False
    for k in range(1, min(len(y), len(z)) + 1):
        if y[:k] == z[-k:]:
            if not (y == z == y[:k]):
                return False
    return True


def brute_overlap_ok(words) -> bool:
    """Quadratic definitional overlap check for a whole set."""
    ws = sorted(set(map(tuple, words)))
    return all(pair_overlap_ok(y, z) for y in ws for z in ws)


def compositions(n: int):
    """All compositions of n as tuples, exhaustively."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def brute_min_composition_cost(values, i: int) -> int:
    """min over compositions i = j_1 + ... + j_s of sum values[j_t - 1]."""
    return min(sum(values[j - 1] for j in comp) for comp in compositions(i))


def random_subadditive_lengths(
    sg: FiniteSemigroup,
    rng: random.Random,
    lo: int = 3,
    hi: int = 12,
    max_tries: int = 100_000,
) -> dict[int, int]:
    """Uniform rejection: draw l values in [lo, hi] until subadditive."""
    for _ in range(max_tries):
        lengths = {g: rng.randint(lo, hi) for g in sg.elements()}
        if not subadditivity_violations(sg, lengths):
            return lengths
    raise RuntimeError(f"no subadditive length function found in {max_tries} tries")


def mutate_one_entry(words: list[Word], size: int, rng: random.Random) -> list[Word]:
    """Copy of ``words`` with one letter of one word replaced (possibly by
    itself, in which case the set is unchanged, a legitimate outcome)."""
    out = [tuple(w) for w in words]
    k = rng.randrange(len(out))
    w = list(out[k])
    pos = rng.randrange(len(w))
    w[pos] = rng.randrange(size)
    out[k] = tuple(w)
    return out


def standard_suite(seed: int = 20260817) -> list[tuple[str, FiniteSemigroup]]:
    """The acceptance semigroup suite: small cyclic groups, one-sided
    zero semigroups, the full transformation monoid on 2 points, and 50
    random associative tables of order <= 4 found by uniform rejection.

    Rejection draws mix the orders: associative tables are dense at
    order 2, sparse at order 3, and vanishingly rare at order 4 (which
    is why the order-4 share is smallest); the numpy batch sampler keeps
    even that case affordable.
    """
    suite: list[tuple[str, FiniteSemigroup]] = []
    for n in range(1, 7):
        suite.append((f"cyclic_{n}", cyclic_group(n)))
    for n in range(1, 5):
        suite.append((f"left_zero_{n}", left_zero(n)))
        suite.append((f"right_zero_{n}", right_zero(n)))
    suite.append(("full_transformations_2", full_transformation_monoid(2)))

    counts = {2: 25, 3: 20, 4: 5}
    for order, count in counts.items():
        gen = np.random.default_rng(seed + order)
        for idx, sg in enumerate(random_associative_tables(order, count, gen)):
            suite.append((f"random_{order}_{idx}", sg))
    return suite


def as_fraction(text: str) -> Fraction:
    return Fraction(text)
