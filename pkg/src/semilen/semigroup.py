"""Finite semigroups given by multiplication tables, and length functions.

A length function l on a semigroup S is admissible for the embedding
construction when

(1) it is subadditive: l(g h) <= l(g) + l(h) for all g, h, and
(2) its level sets grow at most exponentially: there is an integer
    a >= 1 with card{g : l(g) <= r} <= a ** r for every r >= 1.

For a finite S condition (2) always holds; :func:`growth_witness`
computes the least such ``a`` exactly, and for truncated data (a length
sequence cut off at some index) it also reports the witness at half the
truncation, flagging growth that suggests the untruncated function
would fail.

Element references in JSON documents may be element names (when the
instance declares any) or integer indices; tables always use indices.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from .errors import InputError, SemilenError

__all__ = [
    "FiniteSemigroup",
    "AssociativityError",
    "UnreachableElement",
    "SubadditivityError",
    "GrowthWitness",
    "LengthConditions",
    "validate_semigroup",
    "validate_lengths",
    "subadditivity_violations",
    "growth_witness",
    "check_length_conditions",
    "word_lengths",
    "word_length",
    "equivalence_constants",
    "ceil_root",
    "cyclic_group",
    "left_zero",
    "right_zero",
    "full_transformation_monoid",
    "random_associative_tables",
    "SemigroupData",
    "semigroup_from_json",
    "semigroup_to_json",
]


class AssociativityError(SemilenError):
    """A multiplication table is not associative; carries the witness."""

    def __init__(self, x: int, y: int, z: int):
        self.triple = (x, y, z)
        super().__init__(f"(x*y)*z != x*(y*z) at (x, y, z) = ({x}, {y}, {z})")


class UnreachableElement(SemilenError):
    """An element is not a product of the given generators; the
    generating-set assumption fails."""

    def __init__(self, g: int):
        self.element = g
        super().__init__(
            f"element {g} is not a product of the generators; the set does not generate"
        )


class SubadditivityError(SemilenError):
    """A length function breaks l(g h) <= l(g) + l(h); carries the first
    witnessing pair (for a cyclic instance: exponents i, j)."""

    def __init__(self, g: int, h: int, detail: str = ""):
        self.pair = (g, h)
        msg = f"length function is not subadditive at pair ({g}, {h})"
        super().__init__(msg + (f": {detail}" if detail else ""))


def _check_table_shape(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(rows)
    if n == 0:
        raise InputError("multiplication table must be nonempty")
    out = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InputError(f"table row {i} has length {len(row)}, expected {n}")
        for j, entry in enumerate(row):
            if not isinstance(entry, int) or isinstance(entry, bool) or not 0 <= entry < n:
                raise InputError(f"table[{i}][{j}] = {entry!r} is not an element index in [0, {n})")
        out.append(tuple(row))
    return tuple(out)


def validate_semigroup(rows: Sequence[Sequence[int]]) -> tuple[int, int, int] | None:
    """First lexicographic triple (x, y, z) violating associativity, or None.

    Raises :class:`InputError` for a ragged or out-of-range table.
    """
    table = _check_table_shape(rows)
    n = len(table)
    for x in range(n):
        tx = table[x]
        for y in range(n):
            txy = table[tx[y]]
            ty = table[y]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    return (x, y, z)
    return None


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup as a validated multiplication table.

    ``table[x][y]`` is the index of the product x * y.  Construct via
    :meth:`from_rows`, which rejects non-associative tables.
    """

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[int]],
        names: Sequence[str] | None = None,
    ) -> "FiniteSemigroup":
        witness = validate_semigroup(rows)
        if witness is not None:
            raise AssociativityError(*witness)
        table = tuple(tuple(row) for row in rows)
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != len(table):
                raise InputError(f"{len(names)} names for {len(table)} elements")
            if len(set(names)) != len(names):
                raise InputError("element names must be distinct")
        return cls(table, names)

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, seq: Sequence[int]) -> int:
        """Fold a nonempty element sequence through the table."""
        if not seq:
            raise InputError("cannot take the product of an empty sequence")
        acc = seq[0]
        for x in seq[1:]:
            acc = self.table[acc][x]
        return acc

    def name_of(self, g: int) -> str:
        if self.names is not None:
            return self.names[g]
        return str(g)

    @cached_property
    def _name_index(self) -> dict[str, int]:
        if self.names is None:
            return {}
        return {name: i for i, name in enumerate(self.names)}

    def resolve(self, ref: object) -> int:
        """Turn a name or index (int or numeric string) into an element index."""
        if isinstance(ref, int) and not isinstance(ref, bool):
            if 0 <= ref < self.order:
                return ref
            raise InputError(f"element index {ref} out of range [0, {self.order})")
        if isinstance(ref, str):
            if ref in self._name_index:
                return self._name_index[ref]
            if ref.isdigit():
                return self.resolve(int(ref))
        raise InputError(f"unknown element reference {ref!r}")


def validate_lengths(
    sg: FiniteSemigroup, lengths: Mapping[int, int] | Sequence[int]
) -> dict[int, int]:
    """Check a length function: defined on every element, values are
    positive integers.  Accepts a mapping keyed by element index or a
    sequence in element order; returns a plain index-keyed dict."""
    if not isinstance(lengths, Mapping):
        seq = list(lengths)
        if len(seq) != sg.order:
            raise InputError(
                f"length table has {len(seq)} entries for {sg.order} elements"
            )
        lengths = dict(enumerate(seq))
    out = {}
    for g in sg.elements():
        if g not in lengths:
            raise InputError(f"length function missing element {sg.name_of(g)}")
        v = lengths[g]
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InputError(f"l({sg.name_of(g)}) = {v!r} is not a positive integer")
        out[g] = v
    return out


def subadditivity_violations(
    sg: FiniteSemigroup, lengths: Mapping[int, int] | Sequence[int]
) -> list[tuple[int, int]]:
    """All ordered pairs (g, h) with l(g h) > l(g) + l(h), in index order."""
    lf = validate_lengths(sg, lengths)
    out = []
    for g in sg.elements():
        for h in sg.elements():
            if lf[sg.mul(g, h)] > lf[g] + lf[h]:
                out.append((g, h))
    return out


def ceil_root(n: int, r: int) -> int:
    """Smallest integer t >= 0 with t ** r >= n, by binary search (exact
    for arbitrarily large n)."""
    if r < 1:
        raise InputError(f"root order {r} must be >= 1")
    if n <= 1:
        return max(n, 0)
    lo, hi = 1, 1 << -((-n.bit_length()) // r)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** r >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class GrowthWitness:
    """Least integer a >= 1 with card{g : l(g) <= r} <= a ** r for all r.

    For truncated data ``half_a`` is the witness at half the truncation;
    ``growth_warning`` is set when the witness grew with the window,
    which suggests the untruncated function admits no finite witness.
    """

    a: int
    half_a: int | None = None
    growth_warning: bool = False


def _witness_of(values: Sequence[int]) -> int:
    ordered = sorted(values)
    best = 1
    i = 0
    n = len(ordered)
    while i < n:
        r = ordered[i]
        while i < n and ordered[i] == r:
            i += 1
        # i values are <= r; between jumps of the count the constraint
        # only loosens, so distinct values are the only r that matter
        best = max(best, ceil_root(i, r))
    return best


def growth_witness(values: Sequence[int], truncated: bool = False) -> GrowthWitness:
    """Exact minimal exponential-growth witness for a value multiset.

    Between jumps of the counting function the bound only loosens as r
    grows, so the maximum of ceil(count ** (1/r)) over r is attained at
    the distinct values themselves; those are the only r examined.

    With ``truncated=True`` the values are taken as l(1), ..., l(I) of a
    truncated infinite sequence and the witness is recomputed on the
    first half as a growth probe.
    """
    vals = list(values)
    if not vals:
        raise InputError("growth witness needs at least one value")
    for v in vals:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InputError(f"length value {v!r} is not a positive integer")
    a = _witness_of(vals)
    if not truncated or len(vals) < 4:
        return GrowthWitness(a=a)
    half = _witness_of(vals[: len(vals) // 2])
    return GrowthWitness(a=a, half_a=half, growth_warning=a > half)


@dataclass(frozen=True)
class LengthConditions:
    """Bundle of the two admissibility checks for a length function."""

    violations: tuple[tuple[int, int], ...]
    witness: GrowthWitness

    @property
    def ok(self) -> bool:
        return not self.violations


def check_length_conditions(
    sg: FiniteSemigroup, lengths: Mapping[int, int] | Sequence[int]
) -> LengthConditions:
    lf = validate_lengths(sg, lengths)
    return LengthConditions(
        violations=tuple(subadditivity_violations(sg, lf)),
        witness=growth_witness([lf[g] for g in sg.elements()]),
    )


def word_lengths(sg: FiniteSemigroup, generators: Iterable[int]) -> dict[int, int]:
    """Length of every reachable element over the generating set: the
    least number of generator factors whose product is the element.

    Breadth first from the generators; every product of k + 1 generators
    is a product of k generators times one generator, so right
    multiplication explores all products in length order.
    """
    gens = sorted({sg.resolve(g) for g in generators})
    if not gens:
        raise InputError("generating set must be nonempty")
    dist: dict[int, int] = {g: 1 for g in gens}
    queue = deque(gens)
    while queue:
        x = queue.popleft()
        for a in gens:
            y = sg.mul(x, a)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def word_length(sg: FiniteSemigroup, generators: Iterable[int], g: int) -> int:
    dist = word_lengths(sg, generators)
    g = sg.resolve(g)
    if g not in dist:
        raise UnreachableElement(g)
    return dist[g]


def equivalence_constants(
    l1: Mapping[int, int] | Sequence[int],
    l2: Mapping[int, int] | Sequence[int],
) -> tuple[Fraction, Fraction]:
    """Optimal constants (c1, c2) with c1 * l1 <= l2 <= c2 * l1 pointwise.

    c1 is the minimum and c2 the maximum of l2/l1 over the common
    domain, as exact fractions.
    """
    if isinstance(l1, Mapping) != isinstance(l2, Mapping):
        raise InputError("equivalence constants need two mappings or two sequences")
    if isinstance(l1, Mapping):
        keys = set(l1) | set(l2)
        pairs = [(l1.get(k), l2.get(k)) for k in sorted(keys)]
    else:
        if len(l1) != len(l2):
            raise InputError(f"length mismatch: {len(l1)} vs {len(l2)} values")
        pairs = list(zip(l1, l2))
    if not pairs:
        raise InputError("equivalence constants need a nonempty domain")
    ratios = []
    for a, b in pairs:
        if a is None or b is None:
            raise InputError("the two length functions have different domains")
        if a < 1 or b < 1:
            raise InputError("length values must be positive")
        ratios.append(Fraction(b, a))
    return (min(ratios), max(ratios))


# ---------------------------------------------------------------------------
# Instance builders


def cyclic_group(n: int) -> FiniteSemigroup:
    """The cyclic group of order n, written additively on indices."""
    if n < 1:
        raise InputError("cyclic group order must be >= 1")
    return FiniteSemigroup.from_rows([[(i + j) % n for j in range(n)] for i in range(n)])


def left_zero(n: int) -> FiniteSemigroup:
    """The left-zero semigroup: x * y = x."""
    if n < 1:
        raise InputError("left-zero order must be >= 1")
    return FiniteSemigroup.from_rows([[i] * n for i in range(n)])


def right_zero(n: int) -> FiniteSemigroup:
    """The right-zero semigroup: x * y = y."""
    if n < 1:
        raise InputError("right-zero order must be >= 1")
    return FiniteSemigroup.from_rows([list(range(n)) for _ in range(n)])


def full_transformation_monoid(points: int) -> FiniteSemigroup:
    """All maps on {0, ..., points-1} under left-to-right composition:
    (f * g)(x) = g(f(x)).  Order is points ** points."""
    if points < 1:
        raise InputError("transformation monoid needs at least one point")
    maps = sorted(product(range(points), repeat=points))
    index = {f: i for i, f in enumerate(maps)}
    rows = [
        [index[tuple(g[f[x]] for x in range(points))] for g in maps]
        for f in maps
    ]
    names = ["".join(map(str, f)) for f in maps]
    return FiniteSemigroup.from_rows(rows, names=names)


def random_associative_tables(
    order: int,
    count: int,
    rng: np.random.Generator,
    batch_size: int = 100_000,
) -> list[FiniteSemigroup]:
    """Uniform random multiplication tables filtered by rejection.

    Tables of the given order are sampled uniformly and kept only when
    associative.  The associativity scan is vectorized over batches
    (associative tables of order 4 are about one in a million, so a
    scalar rejection loop would be far too slow).
    """
    if order < 1:
        raise InputError("order must be >= 1")
    if order == 1:
        return [FiniteSemigroup.from_rows([[0]]) for _ in range(count)]
    n = order
    found: list[FiniteSemigroup] = []
    bidx = None
    while len(found) < count:
        b = batch_size if n >= 4 else 10_000
        t = rng.integers(0, n, size=(b, n, n))
        if bidx is None or bidx.shape[0] != b:
            bidx = np.arange(b)[:, None, None, None]
        x = np.arange(n)[None, :, None, None]
        z = np.arange(n)[None, None, None, :]
        left = t[bidx, t[:, :, :, None], z]   # (x*y)*z
        right = t[bidx, x, t[:, None, :, :]]  # x*(y*z)
        ok = (left == right).reshape(b, -1).all(axis=1)
        for row in np.nonzero(ok)[0]:
            found.append(FiniteSemigroup.from_rows([[int(v) for v in r] for r in t[row]]))
            if len(found) == count:
                break
    return found


# ---------------------------------------------------------------------------
# JSON input format


@dataclass(frozen=True)
class SemigroupData:
    """A parsed semigroup instance file."""

    semigroup: FiniteSemigroup
    lengths: dict[int, int] | None
    generators: tuple[int, ...] | None


def semigroup_from_json(doc: object) -> SemigroupData:
    """Parse ``{"elements": [...]?, "table": [[...]], "length": {...}?,
    "generators": [...]?}``.

    ``table`` holds element indices.  ``length`` keys and ``generators``
    entries may be element names (when ``elements`` is present) or
    indices.  Raises :class:`InputError` naming the offending field;
    associativity is NOT checked here (run :func:`validate_semigroup`
    or construct via :meth:`FiniteSemigroup.from_rows` for that).
    """
    if not isinstance(doc, dict):
        raise InputError("semigroup document must be a JSON object")
    rows = doc.get("table")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("field 'table' must be a list of rows")
    table = _check_table_shape(rows)
    names_raw = doc.get("elements")
    names: tuple[str, ...] | None = None
    if names_raw is not None:
        if not isinstance(names_raw, list) or len(names_raw) != len(table):
            raise InputError("field 'elements' must name every row of 'table'")
        names = tuple(str(x) for x in names_raw)
        if len(set(names)) != len(names):
            raise InputError("field 'elements' has duplicate names")
    sg = FiniteSemigroup(table=table, names=names)

    lengths: dict[int, int] | None = None
    if doc.get("length") is not None:
        raw = doc["length"]
        if not isinstance(raw, dict):
            raise InputError("field 'length' must be an object mapping element -> value")
        lengths = {}
        for key, value in raw.items():
            try:
                g = sg.resolve(key)
            except InputError as exc:
                raise InputError(f"field 'length': {exc}") from None
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InputError(f"length[{key!r}] = {value!r} is not a positive integer")
            lengths[g] = value
        lengths = validate_lengths(sg, lengths)

    generators: tuple[int, ...] | None = None
    if doc.get("generators") is not None:
        raw = doc["generators"]
        if not isinstance(raw, list) or not raw:
            raise InputError("field 'generators' must be a nonempty list")
        try:
            generators = tuple(sorted({sg.resolve(x) for x in raw}))
        except InputError as exc:
            raise InputError(f"field 'generators': {exc}") from None

    return SemigroupData(semigroup=sg, lengths=lengths, generators=generators)


def semigroup_to_json(
    sg: FiniteSemigroup,
    lengths: Mapping[int, int] | None = None,
    generators: Iterable[int] | None = None,
) -> dict:
    doc: dict = {"table": [list(row) for row in sg.table]}
    if sg.names is not None:
        doc["elements"] = list(sg.names)
    if lengths is not None:
        doc["length"] = {sg.name_of(g): lengths[g] for g in sg.elements()}
    if generators is not None:
        doc["generators"] = [sg.name_of(g) for g in generators]
    return doc
