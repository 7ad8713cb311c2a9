"""Session fixtures shared between the unit tests and the acceptance
suite.

The heavyweight pieces (the 65-semigroup suite, its 10 length
functions apiece, and both embedding passes) are computed once per
session; several acceptance criteria then read different aspects of
the same records.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import pytest

from semilen import (
    Assignment,
    FiniteSemigroup,
    LengthTable,
    assign_equivalent,
    assign_exact,
    build_presentation,
    induced_lengths,
    orbit_min_length,
    verify_induced_lengths,
    verify_orbit_factorizes,
    verify_orbit_products,
    congruence_orbit,
    default_length_cap,
)

import helpers


@dataclass
class EmbeddingRecord:
    name: str
    sg: FiniteSemigroup
    lengths: dict[int, int]
    exact_asg: Assignment
    exact_table: LengthTable
    equiv_asg: Assignment
    equiv_table: LengthTable
    equiv_constants: tuple


@dataclass
class SuiteResult:
    records: list[EmbeddingRecord]
    build_seconds: float
    exact_seconds: float
    equiv_seconds: float


@pytest.fixture(scope="session")
def embedding_suite() -> SuiteResult:
    """Criterion 4/5/7 workload: both embedding modes over the standard
    suite with 10 subadditive length functions per semigroup."""
    t0 = time.monotonic()
    suite = helpers.standard_suite()
    t1 = time.monotonic()
    rng = random.Random(417)
    records: list[EmbeddingRecord] = []
    exact_s = equiv_s = 0.0
    for name, sg in suite:
        for trial in range(10):
            lengths = helpers.random_subadditive_lengths(sg, rng, lo=3, hi=12)
            ta = time.monotonic()
            exact_asg = assign_exact(sg, lengths)
            exact_table = induced_lengths(sg, exact_asg)
            verify_induced_lengths(sg, lengths, exact_asg, exact_table)
            tb = time.monotonic()
            equiv_asg = assign_equivalent(sg, lengths)
            equiv_table = induced_lengths(sg, equiv_asg)
            equiv_report = verify_induced_lengths(sg, lengths, equiv_asg, equiv_table)
            tc = time.monotonic()
            exact_s += tb - ta
            equiv_s += tc - tb
            records.append(
                EmbeddingRecord(
                    name=f"{name}/l{trial}",
                    sg=sg,
                    lengths=lengths,
                    exact_asg=exact_asg,
                    exact_table=exact_table,
                    equiv_asg=equiv_asg,
                    equiv_table=equiv_table,
                    equiv_constants=equiv_report.constants,
                )
            )
    return SuiteResult(
        records=records,
        build_seconds=t1 - t0,
        exact_seconds=exact_s,
        equiv_seconds=equiv_s,
    )


@dataclass
class OrbitRecord:
    name: str
    sg: FiniteSemigroup
    lengths: dict[int, int]
    asg: Assignment
    table: LengthTable
    oracle: dict[int, int]
    saturated: bool
    words_checked: int
    products_ok: bool


@pytest.fixture(scope="session")
def oracle_suite() -> list[OrbitRecord]:
    """Criterion 6 workload: small instances (order <= 3, l <= 4) where
    the congruence-orbit oracle saturates and can be checked word by
    word."""
    import numpy as np

    from semilen import cyclic_group, left_zero, random_associative_tables, right_zero

    bases: list[tuple[str, FiniteSemigroup]] = [
        ("cyclic_1", cyclic_group(1)),
        ("cyclic_2", cyclic_group(2)),
        ("cyclic_3", cyclic_group(3)),
        ("left_zero_2", left_zero(2)),
        ("left_zero_3", left_zero(3)),
        ("right_zero_2", right_zero(2)),
        ("right_zero_3", right_zero(3)),
    ]
    gen = np.random.default_rng(909)
    for idx, sg in enumerate(random_associative_tables(2, 6, gen)):
        bases.append((f"random_2_{idx}", sg))
    for idx, sg in enumerate(random_associative_tables(3, 7, gen)):
        bases.append((f"random_3_{idx}", sg))

    rng = random.Random(909)
    records: list[OrbitRecord] = []
    for name, sg in bases:
        for trial in range(3):
            lengths = helpers.random_subadditive_lengths(sg, rng, lo=1, hi=4)
            asg = assign_exact(sg, lengths)
            table = induced_lengths(sg, asg)
            p = build_presentation(sg, asg)
            cap = default_length_cap(asg)
            oracle: dict[int, int] = {}
            saturated = True
            checked = 0
            for g in sg.elements():
                n, sat = orbit_min_length(p, asg, g, length_cap=cap)
                oracle[g] = n
                saturated = saturated and sat
                rep = congruence_orbit(p, asg.x[g], cap)
                checked += verify_orbit_factorizes(rep, asg.code)
            products = verify_orbit_products(sg, asg, p, length_cap=cap)
            records.append(
                OrbitRecord(
                    name=f"{name}/l{trial}",
                    sg=sg,
                    lengths=lengths,
                    asg=asg,
                    table=table,
                    oracle=oracle,
                    saturated=saturated and products.all_saturated,
                    words_checked=checked + products.words_checked,
                    products_ok=True,
                )
            )
    return records
