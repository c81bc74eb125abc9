"""Shared fixtures.

The two expensive whole-suite computations (the exhaustive degree-16
factorization cross-check and the degree-20 perfect-polynomial scan) run
once per session and are shared between the per-module tests and the
acceptance tests.
"""

from __future__ import annotations

import time

import pytest

import oracles
from gf2sigma.catalog import build_catalog
from gf2sigma.factorizer import factor
from gf2sigma.gf2poly import Poly
from gf2sigma.search import exhaustive_scan, run_pipeline


@pytest.fixture(scope="session")
def catalog():
    return build_catalog()


@pytest.fixture(scope="session")
def names(catalog):
    """Poly -> display-name map over the whole roster."""
    return dict(catalog.names_by_poly)


@pytest.fixture(scope="session")
def family(catalog):
    """The 28 cataloged irreducibles, in roster order."""
    return list(catalog.family)


@pytest.fixture(scope="session")
def t_polys(catalog):
    """Name -> polynomial for the eleven cataloged perfect polynomials."""
    return {e.name: e.poly for e in catalog.perfects}


@pytest.fixture(scope="session")
def factor_oracle_report():
    """Factor every polynomial of degree <= 16 and compare with the oracle.

    Also re-multiplies each library factorization, so the same sweep is a
    full round-trip check.  Returns case and mismatch counts; the tests
    assert on them.
    """
    spf = oracles.smallest_factor_table(16)
    mismatches: list[int] = []
    cases = 0
    for m in range(2, 1 << 17):
        got = [(q.mask, e) for q, e in factor(Poly(m))]
        if got != oracles.factor_with_table(m, spf):
            mismatches.append(m)
        else:
            v = 1
            for q, e in got:
                v = oracles.mul(v, oracles.pow_(q, e))
            if v != m:
                mismatches.append(m)
        cases += 1
    return {"cases": cases, "mismatches": mismatches}


@pytest.fixture(scope="session")
def pipeline_report():
    return run_pipeline()


@pytest.fixture(scope="session")
def scan_degree20():
    """Run the degree-20 exhaustive scan once, single-threaded and with 8
    workers, recording wall-clock times for the acceptance bounds."""
    t0 = time.perf_counter()
    single = exhaustive_scan(20)
    single_seconds = time.perf_counter() - t0
    t0 = time.perf_counter()
    parallel = exhaustive_scan(20, workers=8)
    parallel_seconds = time.perf_counter() - t0
    return {
        "single": single,
        "single_seconds": single_seconds,
        "parallel": parallel,
        "parallel_seconds": parallel_seconds,
    }
