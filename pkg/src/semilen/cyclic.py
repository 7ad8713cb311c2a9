"""Truncated monogenic semigroups with a prescribed length sequence.

An instance is a sequence l(1), ..., l(i_max) of positive integers
standing for the length prescribed to the powers g, g^2, ..., g^i_max
of a single generator.  Admissibility mirrors the finite-semigroup
case:

triangle subadditivity, l(i + j) <= l(i) + l(j) whenever
i + j <= i_max, and an exponential-growth witness, the least integer
a with card{i : l(i) <= r} <= a ** r for all r.

Because the data is a truncation, the witness is also probed at half the
window; a witness that grows with the window flags a function that
likely has no finite witness at all (for example the constant
sequence l == 1, whose witness at truncation I is I itself).

Codeword assignment and the induced length reuse the embedding
machinery keyed by exponent.  Products inside the truncation only
combine smaller exponents, so every factorization of g^i corresponds
to a composition i = j_1 + ... + j_s, and the induced length is the
minimum of sum l-costs over compositions
(:func:`cyclic_length_table`).

The distortion report compares the induced length against the
intrinsic length of g^i (which is i, the word length over the
generator) and against the prescribed l, with exact-fraction
constants; distortion verdicts hold at the truncation scale only and
the report says so explicitly.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .embedding import Assignment, LengthTable, equivalent_assignment_for, exact_assignment_for
from .errors import InputError, SemilenError
from .semigroup import GrowthWitness, SubadditivityError, ceil_root, equivalence_constants, growth_witness

__all__ = [
    "CyclicInstance",
    "DistortionRow",
    "DistortionReport",
    "LengthFormula",
    "NonPositiveLength",
    "SubadditivityError",
    "parse_formula",
    "make_cyclic",
    "cyclic_assignment",
    "cyclic_length_table",
    "distortion_report",
]

TRUNCATION_NOTE = (
    "verdicts are certified for the truncated window i <= i_max only; "
    "they need not persist for the untruncated function"
)


class NonPositiveLength(SemilenError):
    """A length value is not a positive integer."""

    def __init__(self, i: int, value: object):
        self.index = i
        self.value = value
        super().__init__(f"l({i}) = {value!r} is not a positive integer")


@dataclass(frozen=True)
class LengthFormula:
    """A built-in length formula: callable on i >= 1, plus provenance.

    ``note`` documents any approximation baked into the formula (the
    irrational exponent case).
    """

    source: str
    fn: object  # Callable[[int], int]
    note: str | None = None

    def __call__(self, i: int) -> int:
        return self.fn(i)


def _pow_rational(alpha: Fraction):
    p, q = alpha.numerator, alpha.denominator

    def fn(i: int) -> int:
        return ceil_root(i**p, q)  # ceil(i ** (p/q)): least t with t**q >= i**p

    return fn


def _pow_binary64(alpha: float):
    exact = mpmath.mpf(alpha)  # binary64 values are exact in mpmath

    def fn(i: int) -> int:
        with mpmath.workdps(60):
            v = mpmath.power(i, exact)
            nearest = mpmath.nint(v)
            if v != nearest and abs(v - nearest) < mpmath.mpf("1e-45"):
                raise SemilenError(
                    f"power evaluation at i = {i} too close to an integer to round safely"
                )
            return int(mpmath.ceil(v))

    return fn


def parse_formula(spec: str) -> LengthFormula:
    """Parse a built-in formula descriptor.

    ``pow:pi-e``   ceil(i ** (pi - e)) with the exponent fixed to its
                   binary64 approximation (documented in the note);
    ``pow:A``      ceil(i ** A) for a rational 0 < A <= 1, exact
                   integer arithmetic (A like ``0.5`` or ``1/2``);
    ``lin:B``      ceil(B * i) for a rational B > 0;
    ``log2``       ceil(log2(i + 1)), exact via bit length.
    """
    spec = spec.strip()
    if spec == "log2":
        def log_fn(i: int) -> int:
            m = i + 1
            bits = m.bit_length()
            return bits - 1 if m == 1 << (bits - 1) else bits

        return LengthFormula(source="log2", fn=log_fn)
    if spec.startswith("pow:"):
        arg = spec[4:]
        if arg == "pi-e":
            alpha = math.pi - math.e
            frac = Fraction(alpha)
            note = (
                "exponent pi - e fixed to its binary64 approximation "
                f"{alpha!r} = {alpha.hex()} = {frac.numerator}/{frac.denominator}"
            )
            return LengthFormula(source=spec, fn=_pow_binary64(alpha), note=note)
        try:
            alpha = Fraction(arg)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot parse exponent {arg!r} as a rational") from None
        if not 0 < alpha <= 1:
            raise InputError(f"power exponent {alpha} outside (0, 1]")
        return LengthFormula(source=spec, fn=_pow_rational(alpha))
    if spec.startswith("lin:"):
        arg = spec[4:]
        try:
            beta = Fraction(arg)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot parse slope {arg!r} as a rational") from None
        if beta <= 0:
            raise InputError(f"linear slope {beta} must be positive")
        p, q = beta.numerator, beta.denominator

        def lin_fn(i: int) -> int:
            return -((-p * i) // q)  # ceil(p * i / q)

        return LengthFormula(source=spec, fn=lin_fn)
    raise InputError(f"unknown formula {spec!r} (expected pow:..., lin:..., or log2)")


@dataclass(frozen=True)
class CyclicInstance:
    """A validated truncated monogenic instance."""

    i_max: int
    values: tuple[int, ...]  # values[i - 1] == l(i)
    source: str
    witness: GrowthWitness
    note: str | None = None

    def length(self, i: int) -> int:
        if not 1 <= i <= self.i_max:
            raise InputError(f"exponent {i} outside [1, {self.i_max}]")
        return self.values[i - 1]


def make_cyclic(
    spec: str | LengthFormula | Sequence[int],
    i_max: int | None = None,
) -> CyclicInstance:
    """Build and validate a truncated monogenic instance.

    ``spec`` is a formula descriptor (see :func:`parse_formula`), an
    already-parsed :class:`LengthFormula`, or an explicit value table
    l(1), ..., l(i_max).  Rejects non-positive values
    (:class:`NonPositiveLength`) and any triangle violation
    (:class:`SubadditivityError` carrying the first witness (i, j) in
    lexicographic order).  The growth witness is computed with its
    half-window probe.
    """
    note = None
    if isinstance(spec, str):
        spec = parse_formula(spec)
    if isinstance(spec, LengthFormula):
        if i_max is None or i_max < 1:
            raise InputError("formula instances need i_max >= 1")
        raw = [spec(i) for i in range(1, i_max + 1)]
        source = spec.source
        note = spec.note
    else:
        raw = list(spec)
        if not raw:
            raise InputError("value table must be nonempty")
        if i_max is not None and i_max != len(raw):
            raise InputError(f"i_max = {i_max} but the table has {len(raw)} values")
        i_max = len(raw)
        source = "table"

    for idx, v in enumerate(raw, start=1):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InputError(f"l({idx}) = {v!r} is not an integer")
        if v < 1:
            raise NonPositiveLength(idx, v)

    values = tuple(raw)
    for i in range(1, i_max):
        li = values[i - 1]
        for j in range(1, i_max - i + 1):
            if values[i + j - 1] > li + values[j - 1]:
                raise SubadditivityError(
                    i, j, f"l({i + j}) = {values[i + j - 1]} > {li} + {values[j - 1]}"
                )

    witness = growth_witness(values, truncated=True)
    return CyclicInstance(i_max=i_max, values=values, source=source, witness=witness, note=note)


def cyclic_assignment(
    inst: CyclicInstance,
    mode: str = "exact",
    d: Fraction | int | str | None = None,
) -> Assignment:
    """Codewords for the powers g, g^2, ..., keyed by exponent.

    Exact mode uses the guarded code (|X[i]| = l(i)); equivalent mode
    draws from the framed family with the usual greedy window.
    """
    lengths = {i: inst.values[i - 1] for i in range(1, inst.i_max + 1)}
    if mode == "exact":
        return exact_assignment_for(lengths)
    if mode == "equiv":
        return equivalent_assignment_for(lengths, d=d)
    raise InputError(f"unknown mode {mode!r} (expected 'exact' or 'equiv')")


def cyclic_length_table(inst: CyclicInstance, asg: Assignment) -> LengthTable:
    """Induced length of g^i: minimum of sum |X[j_t]| over compositions
    i = j_1 + ... + j_s.

    Inside the truncation every product of powers adds exponents, so
    compositions are exactly the factorizations of g^i; one increasing
    sweep suffices because parts are strictly smaller than their sum.
    """
    cost: dict[int, int] = {}
    for i in range(1, inst.i_max + 1):
        best = len(asg.codeword(i))
        for j in range(1, i // 2 + 1):
            c = cost[j] + cost[i - j]
            if c < best:
                best = c
        cost[i] = best
    return LengthTable(cost=cost, passes=1)


@dataclass(frozen=True)
class DistortionRow:
    i: int
    length: int  # prescribed l(i)
    cost: int  # induced length of g^i
    ratio: Fraction  # intrinsic/induced = i / cost


@dataclass(frozen=True)
class DistortionReport:
    """Distortion of the embedding against intrinsic and prescribed length.

    ``constants_vs_length`` are the optimal (c1, c2) with
    c1 * l <= cost <= c2 * l; ``constants_vs_intrinsic`` likewise with
    the intrinsic length i in place of l.  ``distorted_at_scale`` is set
    when the intrinsic spread c2/c1 strictly grows from the half window
    to the full window, i.e. the embedding keeps distorting as the
    truncation extends.
    """

    rows: tuple[DistortionRow, ...]
    constants_vs_length: tuple[Fraction, Fraction]
    constants_vs_intrinsic: tuple[Fraction, Fraction]
    half_spread: Fraction | None
    full_spread: Fraction
    distorted_at_scale: bool
    truncation_note: str = TRUNCATION_NOTE


def _spread(costs: Sequence[int], upto: int) -> Fraction:
    ratios = [Fraction(costs[i - 1], i) for i in range(1, upto + 1)]
    return max(ratios) / min(ratios)


def distortion_report(inst: CyclicInstance, table: LengthTable) -> DistortionReport:
    costs = [table.cost[i] for i in range(1, inst.i_max + 1)]
    rows = tuple(
        DistortionRow(
            i=i,
            length=inst.values[i - 1],
            cost=costs[i - 1],
            ratio=Fraction(i, costs[i - 1]),
        )
        for i in range(1, inst.i_max + 1)
    )
    vs_length = equivalence_constants(list(inst.values), costs)
    vs_intrinsic = equivalence_constants(list(range(1, inst.i_max + 1)), costs)
    full = _spread(costs, inst.i_max)
    half = _spread(costs, inst.i_max // 2) if inst.i_max >= 4 else None
    distorted = half is not None and full > half
    return DistortionReport(
        rows=rows,
        constants_vs_length=vs_length,
        constants_vs_intrinsic=vs_intrinsic,
        half_spread=half,
        full_spread=full,
        distorted_at_scale=distorted,
    )
