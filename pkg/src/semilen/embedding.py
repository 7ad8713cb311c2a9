"""Embedding a finite semigroup so that a prescribed length is induced.

The construction.  Each element g of a finite semigroup S receives a
codeword X[g] from a code with the overlap property, injectively.  The
target semigroup H is presented on the code's alphabet by the relations

    X[g h]  =  X[g] X[h]        for every ordered pair (g, h),

so the map g -> X[g] is a homomorphism into H.  Because the code
decodes uniquely and no codeword straddles a codeword boundary, every
word equal in H to some concatenation of codewords is itself such a
concatenation, with the same product of subscripts.  Hence the map is
injective, and the length of g measured in H is

    |X[g]|_H  =  min over factorizations g = g_1 ... g_s in S
                 of  |X[g_1]| + ... + |X[g_s]|,

computed here by fixpoint relaxation (:func:`induced_lengths`).

Two assignment modes:

* *exact*: |X[g]| = l(g) via a guarded code built to the demand
  histogram of l; then the induced length reproduces l exactly
  (subadditivity of l makes the one-factor term the minimum).
* *equivalent*: codewords are drawn from the two-letter framed family,
  greedily, ShortLex-least unused with length in [l(g), d * l(g));
  then l(g) <= |X[g]|_H < d * l(g), so the induced length is
  equivalent to l with explicit constants.

:func:`congruence_orbit` explores the congruence class of a word by
applying the relations in both directions and serves as an independent
oracle for the induced length; :func:`verify_orbit_factorizes` and
:func:`verify_orbit_products` check, on every explored word, the two
facts the argument above rests on.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import InputError, SemilenError
from .semigroup import (
    FiniteSemigroup,
    SubadditivityError,
    equivalence_constants,
    subadditivity_violations,
    validate_lengths,
)
from .words import (
    Alphabet,
    CodeSet,
    TWO_LETTER,
    Word,
    build_guarded_code,
    factorize,
    framed_words_of_length,
    shortlex_key,
)

__all__ = [
    "Assignment",
    "Presentation",
    "LengthTable",
    "OrbitReport",
    "OrbitProductReport",
    "EmbeddingReport",
    "InfeasibleAssignment",
    "VerificationFailure",
    "UnfactorizableOrbitWord",
    "OrbitProductMismatch",
    "assign_exact",
    "assign_equivalent",
    "exact_assignment_for",
    "equivalent_assignment_for",
    "default_length_cap",
    "build_presentation",
    "induced_lengths",
    "verify_induced_lengths",
    "congruence_orbit",
    "orbit_min_length",
    "verify_orbit_factorizes",
    "verify_orbit_products",
]

DEFAULT_STATE_CAP = 10**6
_INITIAL_D = Fraction(16)


class InfeasibleAssignment(SemilenError):
    """No unused codeword of admissible length exists for an element."""

    def __init__(self, element: int, low: int, high: Fraction):
        self.element = element
        self.interval = (low, high)
        super().__init__(
            f"no unused codeword with length in [{low}, {high}) for element {element}"
        )


class VerificationFailure(SemilenError):
    """The induced length disagrees with the prescribed one: a bug or
    invalid input, never a expected outcome."""

    def __init__(self, element: int, expected: object, got: int):
        self.element = element
        self.expected = expected
        self.got = got
        super().__init__(
            f"element {element}: induced length {got}, expected {expected}"
        )


class UnfactorizableOrbitWord(SemilenError):
    """A word in a congruence orbit fails to decode over the code; this
    breaks the closure property the construction relies on."""

    def __init__(self, word: Word, position: int):
        self.word = word
        self.position = position
        super().__init__(f"orbit word {word} does not factorize (stuck at {position})")


class OrbitProductMismatch(SemilenError):
    """An orbit word decodes to factors whose product differs from the
    orbit's element; would contradict injectivity."""

    def __init__(self, element: int, word: Word, product: int):
        self.element = element
        self.word = word
        self.product = product
        super().__init__(
            f"orbit of element {element} contains a word with factor product {product}"
        )


@dataclass(frozen=True)
class Assignment:
    """An injective element -> codeword map.

    ``code`` holds exactly the assigned codewords.  ``d`` is the
    equivalence parameter in equivalent mode (lengths were drawn from
    [l(g), d * l(g))) and None in exact mode.
    """

    mode: str  # "exact" | "equiv"
    code: CodeSet
    x: dict[int, Word]
    d: Fraction | None = None

    def codeword(self, g: int) -> Word:
        try:
            return self.x[g]
        except KeyError:
            raise InputError(f"assignment has no codeword for element {g!r}") from None

    @property
    def max_norm(self) -> int:
        return max(len(w) for w in self.x.values())

    def subscript_of(self, w: Word) -> int:
        return self._inverse[w]

    @cached_property
    def _inverse(self) -> dict[Word, int]:
        return {w: g for g, w in self.x.items()}

    def validate_against(self, lengths: Mapping[int, int]) -> None:
        """Assert the mode's length window and injectivity; raises
        :class:`SemilenError` on breach."""
        if len(set(self.x.values())) != len(self.x):
            raise SemilenError("assignment is not injective")
        for g, w in self.x.items():
            if w not in self.code.word_set:
                raise SemilenError(f"codeword of element {g} is not in the code")
            lv = lengths[g]
            if self.mode == "exact":
                if len(w) != lv:
                    raise SemilenError(
                        f"exact assignment: |X[{g}]| = {len(w)} but l = {lv}"
                    )
            else:
                if self.d is None or not lv <= len(w) < self.d * lv:
                    raise SemilenError(
                        f"equivalent assignment: |X[{g}]| = {len(w)} outside [{lv}, {self.d} * {lv})"
                    )


def _sorted_by_length(lengths: Mapping[int, int]) -> list[int]:
    return sorted(lengths, key=lambda g: (lengths[g], g))


def _require_subadditive(sg: FiniteSemigroup, lengths: Mapping[int, int]) -> dict[int, int]:
    lf = validate_lengths(sg, lengths)
    bad = subadditivity_violations(sg, lf)
    if bad:
        g, h = bad[0]
        raise SubadditivityError(g, h, f"{len(bad)} violating pair(s) in total")
    return lf


def exact_assignment_for(lengths: Mapping[int, int]) -> Assignment:
    """Exact-length assignment for any keyed length map (no semigroup
    structure needed): build the guarded code to the demand histogram,
    then hand out codewords per length in ShortLex order, keys in
    nondecreasing (length, key) order."""
    lf = dict(lengths)
    demand = dict(Counter(lf.values()))
    code = build_guarded_code(demand)
    cursor = {length: iter(ws) for length, ws in code.by_length.items()}
    x: dict[int, Word] = {}
    for g in _sorted_by_length(lf):
        x[g] = next(cursor[lf[g]])
    return Assignment(mode="exact", code=code, x=x, d=None)


def assign_exact(sg: FiniteSemigroup, lengths: Mapping[int, int]) -> Assignment:
    """Codewords with |X[g]| = l(g) exactly, from a guarded code built
    to the demand histogram of l.

    Elements are processed in nondecreasing (l(g), g) order and receive
    the ShortLex-least unused codeword of their length.  Requires l
    subadditive (raises :class:`SubadditivityError` otherwise).
    """
    return exact_assignment_for(_require_subadditive(sg, lengths))


class _FramedSupply:
    """Lazy per-length cache of the framed family (unbounded lengths)."""

    def __init__(self) -> None:
        self._cache: dict[int, tuple[Word, ...]] = {}
        self.max_length: float = float("inf")

    def at(self, length: int) -> tuple[Word, ...]:
        if length not in self._cache:
            self._cache[length] = tuple(framed_words_of_length(length))
        return self._cache[length]


class _FixedSupply:
    """Per-length view of a caller-supplied code."""

    def __init__(self, code: CodeSet) -> None:
        self._by_len = code.by_length
        self.max_length = max(code.lengths) if code.lengths else 0

    def at(self, length: int) -> tuple[Word, ...]:
        return self._by_len.get(length, ())


def _greedy_pass(
    order: Sequence[int],
    lf: Mapping[int, int],
    supply: _FramedSupply | _FixedSupply,
    d: Fraction,
) -> dict[int, Word] | tuple[int, int]:
    """One greedy assignment attempt; returns the map, or the failing
    (element, low) when some interval [l(g), d * l(g)) is exhausted."""
    used: set[Word] = set()
    x: dict[int, Word] = {}
    for g in order:
        low = lf[g]
        top = d * low  # lengths strictly below this
        top_int = int(top) - (1 if top.denominator == 1 else 0)
        picked: Word | None = None
        for length in range(low, top_int + 1):
            for w in supply.at(length):
                if w not in used:
                    picked = w
                    break
            if picked is not None:
                break
        if picked is None:
            return (g, low)
        used.add(picked)
        x[g] = picked
    return x


def equivalent_assignment_for(
    lengths: Mapping[int, int],
    code: CodeSet | None = None,
    d: Fraction | int | str | None = None,
) -> Assignment:
    """Equivalent-mode greedy assignment for any keyed length map; see
    :func:`assign_equivalent` for the contract."""
    lf = dict(lengths)
    supply = _FramedSupply() if code is None else _FixedSupply(code)
    alphabet = TWO_LETTER if code is None else code.alphabet
    order = _sorted_by_length(lf)

    fixed_d = d is not None
    if fixed_d:
        d_frac = Fraction(d)
        if d_frac <= 0:
            raise InputError(f"d = {d_frac} must be positive")
        # d <= 1 makes every window [l, d*l) empty; the greedy pass will
        # report that as InfeasibleAssignment rather than rejecting here
    else:
        d_frac = _INITIAL_D

    while True:
        outcome = _greedy_pass(order, lf, supply, d_frac)
        if isinstance(outcome, dict):
            image = CodeSet.from_words(alphabet, outcome.values())
            return Assignment(mode="equiv", code=image, x=outcome, d=d_frac)
        g, low = outcome
        if fixed_d:
            raise InfeasibleAssignment(g, low, d_frac * low)
        if d_frac * low > supply.max_length + 1:
            # the interval already covers the whole finite supply
            raise InfeasibleAssignment(g, low, d_frac * low)
        d_frac *= 2


def assign_equivalent(
    sg: FiniteSemigroup,
    lengths: Mapping[int, int],
    code: CodeSet | None = None,
    d: Fraction | int | str | None = None,
) -> Assignment:
    """Codewords with l(g) <= |X[g]| < d * l(g), greedily ShortLex-least.

    Elements are processed in nondecreasing (l(g), g) order; each takes
    the ShortLex-least unused codeword with length in [l(g), d * l(g)).
    ``code`` defaults to the framed two-letter family, enumerated lazily
    as far as needed; pass a :class:`CodeSet` (must satisfy the overlap
    property) to restrict the supply.

    When ``d`` is given the single greedy pass either succeeds or raises
    :class:`InfeasibleAssignment`.  When absent, d starts at 16 and
    doubles until the pass succeeds; the achieved d is recorded on the
    returned assignment.  Requires l subadditive.
    """
    return equivalent_assignment_for(_require_subadditive(sg, lengths), code, d)


@dataclass(frozen=True)
class Presentation:
    """Defining relations of the target semigroup on the code alphabet.

    One relation (X[g h], X[g] X[h]) per ordered pair, in (g, h) index
    order; always exactly order**2 pairwise distinct relations, since
    the right-hand side determines (g, h) by unique factorization.
    """

    alphabet: Alphabet
    relations: tuple[tuple[Word, Word], ...]

    @cached_property
    def max_lhs_len(self) -> int:
        return max((len(lhs) for lhs, _ in self.relations), default=0)


def build_presentation(sg: FiniteSemigroup, asg: Assignment) -> Presentation:
    relations = []
    for g in sg.elements():
        xg = asg.codeword(g)
        for h in sg.elements():
            relations.append((asg.codeword(sg.mul(g, h)), xg + asg.codeword(h)))
    return Presentation(alphabet=asg.code.alphabet, relations=tuple(relations))


@dataclass(frozen=True)
class LengthTable:
    """Induced length of every element, and the relaxation pass count."""

    cost: dict[int, int]
    passes: int


def induced_lengths(sg: FiniteSemigroup, asg: Assignment) -> LengthTable:
    """|X[g]|_H for every g, by fixpoint relaxation.

    Start from cost(g) = |X[g]| and repeatedly apply
    cost(g h) <- min(cost(g h), cost(g) + cost(h)) until stable.  Any
    factorization folds left-to-right through such relaxations, so the
    fixpoint is the minimum of sum |X[g_j]| over all factorizations
    g = g_1 ... g_s, which is the length of g inside the presented
    semigroup.  Costs are positive integers and strictly decrease, so
    the loop terminates.
    """
    cost = {g: len(asg.codeword(g)) for g in sg.elements()}
    passes = 0
    changed = True
    while changed:
        changed = False
        passes += 1
        for g in sg.elements():
            cg = cost[g]
            row = sg.table[g]
            for h in sg.elements():
                c = cg + cost[h]
                p = row[h]
                if c < cost[p]:
                    cost[p] = c
                    changed = True
    return LengthTable(cost=cost, passes=passes)


@dataclass(frozen=True)
class EmbeddingReport:
    """Outcome of verifying the induced length against the prescribed one."""

    mode: str
    ok: bool
    d: Fraction | None
    constants: tuple[Fraction, Fraction]  # optimal (c1, c2): c1*l <= cost <= c2*l


def verify_induced_lengths(
    sg: FiniteSemigroup,
    lengths: Mapping[int, int],
    asg: Assignment,
    table: LengthTable,
) -> EmbeddingReport:
    """Exact mode: assert cost == l elementwise.  Equivalent mode:
    assert l(g) <= cost(g) <= d * l(g).  Raises
    :class:`VerificationFailure` on the first breach; on success reports
    the optimal equivalence constants as exact fractions.
    """
    lf = validate_lengths(sg, lengths)
    for g in sg.elements():
        got = table.cost[g]
        if asg.mode == "exact":
            if got != lf[g]:
                raise VerificationFailure(g, lf[g], got)
        else:
            if asg.d is None:
                raise InputError("equivalent-mode assignment lacks d")
            if not lf[g] <= got <= asg.d * lf[g]:
                raise VerificationFailure(g, (lf[g], asg.d * lf[g]), got)
    constants = equivalence_constants(lf, table.cost)
    return EmbeddingReport(mode=asg.mode, ok=True, d=asg.d, constants=constants)


@dataclass(frozen=True)
class OrbitReport:
    """Explored fragment of a congruence class.

    ``words`` are the reachable words of length <= ``length_cap``;
    ``min_word`` is the ShortLex-least of them.  ``saturated`` certifies
    the minimum: it holds when no state cap was hit and length_cap >=
    |start| + max |lhs| over the relations.  Under that margin, for a
    start that is a codeword, every minimal factorization is reachable
    through intermediates of at most that length (expand the product
    left to right: each intermediate is a prefix of the final word plus
    one codeword for the remaining tail), so the explored minimum is the
    true one.  Words produced beyond the cap are dropped (counted in
    ``dropped``), never expanded.
    """

    words: frozenset[Word]
    min_word: Word
    saturated: bool
    length_cap: int
    state_cap: int
    depth_sizes: tuple[int, ...]
    dropped: int
    states_capped: bool


def congruence_orbit(
    p: Presentation,
    start: Sequence[int],
    length_cap: int,
    state_cap: int = DEFAULT_STATE_CAP,
) -> OrbitReport:
    """Breadth-first closure of ``start`` under the relations of ``p``,
    applied in both directions at every factor occurrence.

    Exploration is truncated at ``length_cap`` (longer words are
    discarded) and aborts once more than ``state_cap`` words are
    recorded; see :class:`OrbitReport` for what ``saturated`` then
    means.
    """
    if length_cap < 1 or state_cap < 1:
        raise InputError("caps must be positive")
    start = p.alphabet.check_word(start)
    if not start:
        raise InputError("orbit start word must be nonempty")
    if len(start) > length_cap:
        raise InputError(f"start word is longer than length_cap = {length_cap}")

    rules: list[tuple[Word, Word]] = []
    for lhs, rhs in p.relations:
        rules.append((lhs, rhs))
        rules.append((rhs, lhs))

    seen: set[Word] = {start}
    current: list[Word] = [start]
    depth_sizes = [1]
    dropped = 0
    states_capped = False
    while current and not states_capped:
        nxt: list[Word] = []
        for w in current:
            lw = len(w)
            for pat, rep in rules:
                lp = len(pat)
                if lp > lw:
                    continue
                if lw - lp + len(rep) > length_cap:
                    # every occurrence would overflow; count them
                    dropped += sum(
                        1 for i in range(lw - lp + 1) if w[i : i + lp] == pat
                    )
                    continue
                for i in range(lw - lp + 1):
                    if w[i : i + lp] == pat:
                        new = w[:i] + rep + w[i + lp :]
                        if new not in seen:
                            if len(seen) == state_cap:
                                states_capped = True
                                break
                            seen.add(new)
                            nxt.append(new)
                if states_capped:
                    break
            if states_capped:
                break
        if nxt:
            depth_sizes.append(len(nxt))
        current = nxt

    min_word = min(seen, key=shortlex_key)
    margin_ok = length_cap >= len(start) + p.max_lhs_len
    return OrbitReport(
        words=frozenset(seen),
        min_word=min_word,
        saturated=(not states_capped) and margin_ok,
        length_cap=length_cap,
        state_cap=state_cap,
        depth_sizes=tuple(depth_sizes),
        dropped=dropped,
        states_capped=states_capped,
    )


def default_length_cap(asg: Assignment) -> int:
    """Twice the longest codeword: enough margin for any codeword start."""
    return 2 * asg.max_norm


def orbit_min_length(
    p: Presentation,
    asg: Assignment,
    g: int,
    length_cap: int | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> tuple[int, bool]:
    """Independent oracle for the induced length of ``g``: the shortest
    word in the explored congruence orbit of X[g].

    Returns (length, saturated).  When saturated, the value equals
    ``induced_lengths(...).cost[g]``; unsaturated values are only upper
    bounds and must not be asserted against.
    """
    if length_cap is None:
        length_cap = default_length_cap(asg)
    report = congruence_orbit(p, asg.codeword(g), length_cap, state_cap)
    return (len(report.min_word), report.saturated)


def verify_orbit_factorizes(report: OrbitReport, code: CodeSet) -> int:
    """Check that every explored orbit word is a codeword concatenation.

    This is the closure fact behind injectivity and the induced-length
    formula.  Returns the number of words checked; raises
    :class:`UnfactorizableOrbitWord` on the first failure (which would
    signal an implementation bug, not bad input).
    """
    checked = 0
    for w in sorted(report.words, key=shortlex_key):
        res = factorize(w, code)
        if not res.ok:
            raise UnfactorizableOrbitWord(w, res.failure_position or 0)
        checked += 1
    return checked


@dataclass(frozen=True)
class OrbitProductReport:
    """Per-element orbit statistics from :func:`verify_orbit_products`."""

    orbit_sizes: dict[int, int]
    all_saturated: bool
    words_checked: int


def verify_orbit_products(
    sg: FiniteSemigroup,
    asg: Assignment,
    p: Presentation,
    length_cap: int | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> OrbitProductReport:
    """Decode every word in every element's orbit and check the factor
    subscripts multiply back to that element.

    The subscript product is invariant under the defining relations, so
    a mismatch would break injectivity of the embedding.  In particular
    the orbits of distinct elements stay disjoint within the explored
    fragments.  Raises :class:`UnfactorizableOrbitWord` or
    :class:`OrbitProductMismatch` on breach.
    """
    if length_cap is None:
        length_cap = default_length_cap(asg)
    sizes: dict[int, int] = {}
    all_saturated = True
    words_checked = 0
    for g in sorted(asg.x):
        report = congruence_orbit(p, asg.codeword(g), length_cap, state_cap)
        sizes[g] = len(report.words)
        all_saturated = all_saturated and report.saturated
        for w in sorted(report.words, key=shortlex_key):
            res = factorize(w, asg.code)
            if not res.ok:
                raise UnfactorizableOrbitWord(w, res.failure_position or 0)
            subs = [asg.subscript_of(f) for f in res.factors]
            prod = sg.product(subs)
            words_checked += 1
            if prod != g:
                raise OrbitProductMismatch(g, w, prod)
    return OrbitProductReport(
        orbit_sizes=sizes, all_saturated=all_saturated, words_checked=words_checked
    )
