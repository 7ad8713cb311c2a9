"""Words over finite alphabets and codes with the overlap property.

A set of words ``ws`` has the *overlap property* when

(e1) no member is a proper factor (contiguous subword) of another member,
     and
(e2) whenever a nonempty word ``U`` is both a prefix of a member ``Y`` and
     a suffix of a member ``Z``, then ``Y == U == Z``.

Such a set is a code: any concatenation of members decodes uniquely, and
the decoding can be done greedily left to right, because at each position
at most one member can be a prefix of what remains (two distinct prefixes
would make the shorter one a factor of the longer, breaking (e1)).

Two families are built here.

* *Framed words* over the two-letter alphabet ``{b1, b2}``: all words
  ``b1 b1 b1 V b2 b2 b2`` where ``V`` starts with ``b2``, ends with
  ``b1``, and contains neither ``b1 b1 b1`` nor ``b2 b2 b2``.  The frame
  pins every occurrence of a member to its own boundaries, which gives
  the overlap property, and the number of members of length at most
  ``i`` grows exponentially (at least ``2 ** ((i - 6) // 2)`` once
  ``i >= 9``).  The shortest member has length 8.

* The *guarded code* over a role-tagged alphabet: length-1 codewords are
  dedicated singleton letters, and every longer codeword is
  ``start + interior... + end`` where start letters occur only in first
  position and end letters only in last position.  Given a demand map
  ``length -> count`` the smallest such alphabet is chosen, and the code
  supplies exactly the demanded number of codewords per length.  This
  family provides codewords of every length >= 1, which the framed
  family (minimum length 8) cannot.

Words are plain tuples of letter indices.  ShortLex order (length first,
then lexicographic) is used everywhere an order is needed.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import product

from .errors import InputError, SemilenError

__all__ = [
    "Word",
    "Role",
    "Alphabet",
    "CodeSet",
    "OverlapViolation",
    "OverlapReport",
    "FactorizationResult",
    "TWO_LETTER",
    "shortlex_key",
    "is_framed_word",
    "framed_words",
    "framed_words_of_length",
    "framed_code",
    "check_overlap",
    "factorize",
    "build_guarded_code",
    "word_to_str",
    "word_from_str",
    "code_to_json",
    "code_from_json",
]

Word = tuple[int, ...]

FRAME_MIN_LEN = 8  # b1^3 + b2 + b1 + b2^3


def shortlex_key(w: Sequence[int]) -> tuple[int, Sequence[int]]:
    """Sort key for ShortLex order: length first, then lexicographic."""
    return (len(w), tuple(w))


class Role(Enum):
    """Role tag of a letter.

    PLAIN letters carry no structural promise.  The guarded-code roles
    constrain where a letter may occur inside a codeword: SINGLETON
    letters form length-1 codewords and occur nowhere else, START only
    in first position, END only in last position, INTERIOR in between.
    """

    PLAIN = "plain"
    SINGLETON = "singleton"
    START = "start"
    INTERIOR = "interior"
    END = "end"


_ROLE_PREFIX = {
    Role.PLAIN: "b",
    Role.SINGLETON: "d",
    Role.START: "s",
    Role.INTERIOR: "i",
    Role.END: "e",
}


@dataclass(frozen=True)
class Alphabet:
    """A finite ordered alphabet; letters are indices into ``roles``.

    An alphabet is either all-PLAIN or contains no PLAIN letter at all:
    mixing untagged letters into a guarded alphabet would void the
    positional guarantees the roles exist to provide.
    """

    roles: tuple[Role, ...]

    def __post_init__(self) -> None:
        if not self.roles:
            raise InputError("alphabet must have at least one letter")
        plain = sum(1 for r in self.roles if r is Role.PLAIN)
        if plain not in (0, len(self.roles)):
            raise InputError("alphabet mixes PLAIN letters with role-tagged letters")

    @property
    def size(self) -> int:
        return len(self.roles)

    @cached_property
    def letter_names(self) -> tuple[str, ...]:
        """Display names: ``b1, b2, ...`` for plain alphabets; otherwise
        role prefix + 1-based position within the role block (``d1``,
        ``s1``, ``i2``, ``e1``, ...)."""
        names = []
        seen: dict[Role, int] = {}
        for role in self.roles:
            if role is Role.PLAIN:
                names.append(f"b{len(names) + 1}")
            else:
                seen[role] = seen.get(role, 0) + 1
                names.append(f"{_ROLE_PREFIX[role]}{seen[role]}")
        return tuple(names)

    @cached_property
    def _name_to_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.letter_names)}

    def check_word(self, w: Sequence[int]) -> Word:
        """Validate letter indices and return the word as a tuple."""
        t = tuple(w)
        for x in t:
            if not isinstance(x, int) or not 0 <= x < self.size:
                raise InputError(f"letter {x!r} out of range for alphabet of size {self.size}")
        return t


TWO_LETTER = Alphabet((Role.PLAIN, Role.PLAIN))

_B1, _B2 = 0, 1


def is_framed_word(w: Sequence[int], alphabet: Alphabet = TWO_LETTER) -> bool:
    """Membership test for the framed family over ``{b1, b2}``.

    True iff ``w == b1^3 V b2^3`` where ``V`` starts with ``b2``, ends
    with ``b1``, and contains neither letter three times in a row.
    """
    if alphabet.size != 2:
        raise InputError("framed words are defined over a 2-letter alphabet")
    w = alphabet.check_word(w)
    if len(w) < FRAME_MIN_LEN:
        return False
    if w[:3] != (_B1, _B1, _B1) or w[-3:] != (_B2, _B2, _B2):
        return False
    v = w[3:-3]
    if v[0] != _B2 or v[-1] != _B1:
        return False
    return all(not (v[i] == v[i + 1] == v[i + 2]) for i in range(len(v) - 2))


def _iter_bodies(n: int) -> Iterator[Word]:
    """All words of length ``n`` starting with b2, ending with b1, with no
    triple-letter run, in lexicographic order (b1 < b2)."""
    if n < 2:
        return
    body = [_B2] * n

    def extend(pos: int, last: int, run: int) -> Iterator[Word]:
        if pos == n - 1:
            # final letter is forced to b1
            if not (last == _B1 and run >= 2):
                body[pos] = _B1
                yield tuple(body)
            return
        for letter in (_B1, _B2):
            if letter == last and run >= 2:
                continue
            body[pos] = letter
            new_run = run + 1 if letter == last else 1
            yield from extend(pos + 1, letter, new_run)

    yield from extend(1, _B2, 1)


def framed_words_of_length(length: int) -> Iterator[Word]:
    """Framed words of exactly ``length``, in lexicographic order."""
    frame_l = (_B1, _B1, _B1)
    frame_r = (_B2, _B2, _B2)
    for body in _iter_bodies(length - 6):
        yield frame_l + body + frame_r


def framed_words(max_len: int) -> list[Word]:
    """All framed words of length <= ``max_len`` in ShortLex order.

    Empty for ``max_len < 8``.  Words of equal length share the frame
    and differ only in the body, so lexicographic body order is
    lexicographic word order.
    """
    out: list[Word] = []
    for length in range(FRAME_MIN_LEN, max_len + 1):
        out.extend(framed_words_of_length(length))
    return out


@dataclass(frozen=True)
class CodeSet:
    """A finite set of codewords over a common alphabet.

    ``words`` is ShortLex sorted and duplicate free.  ``expo_threshold``
    and ``expo_base`` optionally record an exponential-supply guarantee
    for the family the set was drawn from: the number of family members
    of length <= i is at least ``expo_base ** i`` for all i >=
    ``expo_threshold``.
    """

    alphabet: Alphabet
    words: tuple[Word, ...]
    expo_threshold: int | None = None
    expo_base: Fraction | None = None

    @classmethod
    def from_words(
        cls,
        alphabet: Alphabet,
        words: Iterable[Sequence[int]],
        expo_threshold: int | None = None,
        expo_base: Fraction | None = None,
    ) -> "CodeSet":
        checked = {alphabet.check_word(w) for w in words}
        for w in checked:
            if not w:
                raise InputError("codewords must be nonempty")
        ordered = tuple(sorted(checked, key=shortlex_key))
        return cls(alphabet, ordered, expo_threshold, expo_base)

    @cached_property
    def word_set(self) -> frozenset[Word]:
        return frozenset(self.words)

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(w) for w in self.words}))

    @cached_property
    def by_length(self) -> dict[int, tuple[Word, ...]]:
        out: dict[int, list[Word]] = {}
        for w in self.words:
            out.setdefault(len(w), []).append(w)
        return {k: tuple(v) for k, v in out.items()}

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: object) -> bool:
        return w in self.word_set


def framed_code(max_len: int) -> CodeSet:
    """The framed words up to ``max_len`` as a :class:`CodeSet`.

    The recorded supply guarantee: at least ``(19/16) ** i`` members of
    length <= i for every i >= 12 (since cumulative counts dominate
    ``2 ** ((i - 6) / 2)`` there, and ``(19/16) ** i`` stays below that
    bound for all i >= 12).
    """
    return CodeSet.from_words(
        TWO_LETTER,
        framed_words(max_len),
        expo_threshold=12,
        expo_base=Fraction(19, 16),
    )


@dataclass(frozen=True)
class OverlapViolation:
    """Witness of an overlap-property failure.

    ``kind == "e1"``: ``y`` occurs as a proper factor of ``z`` at
    ``position``.  ``kind == "e2"``: the nonempty word ``u`` is a prefix
    of ``y`` and a suffix of ``z`` without ``y == u == z``.
    """

    kind: str
    y: Word
    z: Word
    u: Word | None = None
    position: int | None = None


@dataclass(frozen=True)
class OverlapReport:
    ok: bool
    violation: OverlapViolation | None = None


def check_overlap(
    words: CodeSet | Iterable[Sequence[int]], alphabet: Alphabet | None = None
) -> OverlapReport:
    """Decide the overlap property for a set of nonempty words.

    Accepts a :class:`CodeSet` or any iterable of words.  Returns a
    passing report, or the first violation found when ordered pairs
    (Y, Z) of the ShortLex-sorted members are scanned in lexicographic
    index order, checking (e1) before (e2) on each pair; for (e2) the
    shortest witness ``u`` of the winning pair is reported.
    """
    if isinstance(words, CodeSet):
        if alphabet is None:
            alphabet = words.alphabet
        words = words.words
    ws = sorted({tuple(w) for w in words}, key=shortlex_key)
    if not ws:
        raise InputError("overlap check needs a nonempty set of words")
    if any(not w for w in ws):
        raise InputError("overlap check got an empty word")
    if alphabet is not None:
        for w in ws:
            alphabet.check_word(w)

    index_of = {w: i for i, w in enumerate(ws)}
    lengths = sorted({len(w) for w in ws})

    # (e1): scan every factor of every member whose length is a member
    # length; distinct words of equal length are never factors of each
    # other, so only strictly shorter lengths matter.
    best_e1: tuple[int, int, int] | None = None
    for j, z in enumerate(ws):
        for d in lengths:
            if d >= len(z):
                break
            for start in range(len(z) - d + 1):
                i = index_of.get(z[start : start + d])
                if i is not None:
                    cand = (i, j, start)
                    if best_e1 is None or cand < best_e1:
                        best_e1 = cand

    # (e2): index every suffix by the two smallest word indices carrying
    # it, then scan prefixes.  The only permitted coincidence is
    # U == Y == Z, i.e. a full word matching its own full suffix.
    suffix_index: dict[Word, tuple[int, int | None]] = {}
    for j, z in enumerate(ws):
        for s in range(1, len(z) + 1):
            u = z[len(z) - s :]
            entry = suffix_index.get(u)
            if entry is None:
                suffix_index[u] = (j, None)
            elif entry[1] is None and entry[0] != j:
                suffix_index[u] = (entry[0], j)

    best_e2: tuple[int, int, Word] | None = None
    for y, w in enumerate(ws):
        found: dict[int, int] = {}  # z index -> shortest witnessing |U|
        for u_len in range(1, len(w) + 1):
            entry = suffix_index.get(w[:u_len])
            if entry is None:
                continue
            z1, z2 = entry
            z: int | None = z1
            if u_len == len(w) and z1 == y:
                z = z2  # full self-suffix is the permitted U == Y == Z
            if z is not None and (z not in found or u_len < found[z]):
                found[z] = u_len
        if found:
            z = min(found)
            best_e2 = (y, z, w[: found[z]])
            break  # first y in pair order; min z for it

    if best_e1 is None and best_e2 is None:
        return OverlapReport(ok=True)
    key_e1 = (best_e1[0], best_e1[1], 0) if best_e1 else None
    key_e2 = (best_e2[0], best_e2[1], 1) if best_e2 else None
    if key_e2 is None or (key_e1 is not None and key_e1 < key_e2):
        i, j, start = best_e1  # type: ignore[misc]
        return OverlapReport(
            ok=False,
            violation=OverlapViolation(kind="e1", y=ws[i], z=ws[j], position=start),
        )
    y, z, u = best_e2  # type: ignore[misc]
    return OverlapReport(ok=False, violation=OverlapViolation(kind="e2", y=ws[y], z=ws[z], u=u))


@dataclass(frozen=True)
class FactorizationResult:
    """Either a factor sequence or the position where decoding stalled."""

    factors: tuple[Word, ...] | None
    failure_position: int | None = None

    @property
    def ok(self) -> bool:
        return self.factors is not None


def factorize(w: Sequence[int], code: CodeSet) -> FactorizationResult:
    """Greedy left-to-right decoding of ``w`` over ``code``.

    For a code with the overlap property at most one codeword is a
    prefix of the remaining suffix at any position, so greedy decoding
    is exact: it succeeds if and only if ``w`` is a concatenation of
    codewords, and then returns the unique factor sequence.
    """
    w = code.alphabet.check_word(w)
    factors: list[Word] = []
    pos = 0
    n = len(w)
    while pos < n:
        match: Word | None = None
        for d in code.lengths:
            if pos + d > n:
                break
            cand = w[pos : pos + d]
            if cand in code.word_set:
                if match is not None:
                    raise InputError(
                        "code violates (e1): two codewords match at one position"
                    )
                match = cand
        if match is None:
            return FactorizationResult(factors=None, failure_position=pos)
        factors.append(match)
        pos += len(match)
    return FactorizationResult(factors=tuple(factors))


def _guarded_sizes(demand: dict[int, int]) -> tuple[int, int, int, int]:
    """Smallest (singletons, starts, interiors, ends), minimized in that
    priority order, whose guarded code meets ``demand`` at every length."""
    m1 = demand.get(1, 0)
    long_keys = [k for k in demand if k >= 2]
    if not long_keys:
        return m1, 0, 0, 0
    j = 1  # one start letter always suffices: ends and interiors can grow
    k = max(1, demand.get(2, 0))
    deep = [kk for kk in long_keys if kk >= 3]
    if not deep:
        return m1, j, k, 0
    b = 1
    while any(j * k * b ** (kk - 2) < demand[kk] for kk in deep):
        b += 1
    return m1, j, k, b


def build_guarded_code(demand: Mapping[int, int]) -> CodeSet:
    """Build the smallest guarded code meeting ``demand`` exactly.

    ``demand`` maps codeword length (>= 1) to the number of codewords
    required at that length.  Length-1 codewords are singleton letters;
    every longer codeword is start + interiors + end, with the first
    ``demand[k]`` words of each length k taken in lexicographic order.
    Supply at length k >= 2 is starts * ends * interiors ** (k - 2), so
    sizes are chosen minimal in priority order (singletons, starts,
    interiors last since they scale fastest).

    The role constraints force the overlap property: a start letter can
    only sit at position 0 and an end letter only at the final position,
    so no proper factor or straddling overlap can spell a codeword.  The
    built set is re-verified by :func:`check_overlap` regardless.
    """
    clean: dict[int, int] = {}
    for key, count in demand.items():
        if not isinstance(key, int) or key < 1:
            raise InputError(f"demand length {key!r} must be an integer >= 1")
        if not isinstance(count, int) or count < 1:
            raise InputError(f"demand count {count!r} at length {key} must be an integer >= 1")
        clean[key] = count
    if not clean:
        raise InputError("demand must be nonempty")

    m1, j, k, b = _guarded_sizes(clean)
    roles = (
        (Role.SINGLETON,) * m1
        + (Role.START,) * j
        + (Role.INTERIOR,) * b
        + (Role.END,) * k
    )
    alphabet = Alphabet(roles)
    starts = range(m1, m1 + j)
    interiors = range(m1 + j, m1 + j + b)
    ends = range(m1 + j + b, m1 + j + b + k)

    words: list[Word] = []
    for length in sorted(clean):
        if length == 1:
            words.extend((d,) for d in range(m1))
            continue
        need = clean[length]
        got = 0
        for s in starts:
            for mid in product(interiors, repeat=length - 2):
                for e in ends:
                    words.append((s, *mid, e))
                    got += 1
                    if got == need:
                        break
                if got == need:
                    break
            if got == need:
                break

    code = CodeSet.from_words(alphabet, words)
    report = check_overlap(code.words, alphabet)
    if not report.ok:
        raise SemilenError(f"guarded code failed overlap re-verification: {report.violation}")
    return code


_TOKEN = re.compile(r"[a-z]+[0-9]+")


def word_to_str(w: Sequence[int], alphabet: Alphabet) -> str:
    """Render a word with letter names, e.g. ``b1b1b1b2b1b2b2b2``."""
    w = alphabet.check_word(w)
    names = alphabet.letter_names
    return "".join(names[x] for x in w)


def word_from_str(s: str, alphabet: Alphabet) -> Word:
    """Parse the rendering produced by :func:`word_to_str`."""
    tokens = _TOKEN.findall(s)
    if "".join(tokens) != s.strip():
        raise InputError(f"cannot tokenize word string {s!r}")
    lookup = alphabet._name_to_index
    out = []
    for tok in tokens:
        if tok not in lookup:
            raise InputError(f"unknown letter {tok!r} for this alphabet")
        out.append(lookup[tok])
    return tuple(out)


def code_to_json(code: CodeSet) -> dict:
    """JSON-ready document: alphabet size + roles, words in ShortLex order."""
    return {
        "alphabet": {
            "size": code.alphabet.size,
            "roles": [r.value for r in code.alphabet.roles],
        },
        "words": [list(w) for w in code.words],
    }


def code_from_json(doc: object) -> CodeSet:
    """Parse and validate the document shape produced by :func:`code_to_json`."""
    if not isinstance(doc, dict):
        raise InputError("code document must be a JSON object")
    alpha = doc.get("alphabet")
    if not isinstance(alpha, dict) or "size" not in alpha:
        raise InputError("code document needs an 'alphabet' object with 'size'")
    size = alpha["size"]
    if not isinstance(size, int) or size < 1:
        raise InputError(f"alphabet size {size!r} must be an integer >= 1")
    roles_raw = alpha.get("roles", ["plain"] * size)
    if not isinstance(roles_raw, list) or len(roles_raw) != size:
        raise InputError("alphabet 'roles' must list one role per letter")
    try:
        roles = tuple(Role(r) for r in roles_raw)
    except ValueError as exc:
        raise InputError(f"unknown role in alphabet: {exc}") from None
    alphabet = Alphabet(roles)
    words_raw = doc.get("words")
    if not isinstance(words_raw, list):
        raise InputError("code document needs a 'words' list")
    words = []
    for idx, item in enumerate(words_raw):
        if not isinstance(item, list):
            raise InputError(f"words[{idx}] must be a list of letter indices")
        words.append(alphabet.check_word(item))
    return CodeSet.from_words(alphabet, words)
