"""Bounded search routines behind the classification of perfect polynomials.

Everything here revolves around the shape
A = x^a (x+1)^b * prod M_i^c_i * prod S_j^d_j with exponents written
2-adically: a = 2^n u - 1, b = 2^m v - 1, c_i = 2^{n_i} u_i - 1,
d_j = 2^{m_j} v_j - 1 (u, v, u_i, v_j odd).  sigma splits geometrically over
that 2-adic form, so the exponent of every tracked prime in sigma(A) is an
explicit integer formula in the tuple; `compute_sigma_exponents` evaluates
those formulas and the pipeline solves sigma(A) = A as a fixed point of the
exponent system in three steps, then closes the perfect survivors under the
x -> x+1 conjugation.

The sigma tables enumerate which sigma(base^{2h}) factor entirely over the
28-member catalog family, under the degree bound 2h*deg(base) <= 2*h_max
(default h_max = 92, i.e. sigma arguments of degree at most 184).

`exhaustive_scan` enumerates every monic polynomial of degree 1..max_degree
by unique factorization (a DFS over ordered prime multisets) while updating
sigma multiplicatively, and reports all perfect polynomials found.  Nothing
is pruned: each polynomial, odd ones included, is visited exactly once.
"""

from __future__ import annotations

import multiprocessing
import os
from dataclasses import dataclass
from functools import lru_cache

from .gf2poly import Poly, _bar, _divmod, _mul, _pow
from .factorizer import Factorization, _irreducible_masks
from .sigma import _geom_sum
from .catalog import DEFAULT_H_MAX, Catalog, build_catalog

__all__ = [
    "ExponentTuple",
    "SearchError",
    "SearchReport",
    "SigmaExponents",
    "SigmaTableRow",
    "compute_sigma_exponents",
    "exhaustive_scan",
    "pipeline_finalize",
    "pipeline_step1",
    "pipeline_step2",
    "pipeline_step3",
    "run_pipeline",
    "sigma_mersenne_table",
    "sigma_s_table",
    "sigma_x2h_table",
]

SCAN_CEILING_ENV = "GF2SIGMA_SCAN_CEILING"
DEFAULT_SCAN_CEILING = 24

# enumeration ranges for the 2-adic exponent parameters
_U_RANGE = (1, 3, 5, 7, 9, 13, 15)
_U1_RANGE = (1, 3, 5, 7, 15)
_U23_RANGE = (1, 3)
_V1_RANGE = (1, 3)


class SearchError(RuntimeError):
    """The enumeration finished in a state violating a hard contract."""


@lru_cache(maxsize=1)
def _cat() -> Catalog:
    return build_catalog()


# ---------------------------------------------------------------------------
# exponent tuples and the sigma exponent formulas
# ---------------------------------------------------------------------------


def _split_2adic(k: int) -> tuple[int, int]:
    """Write k + 1 = 2^t * s with s odd and return (t, s)."""
    n = k + 1
    t = (n & -n).bit_length() - 1
    return t, n >> t


@dataclass(frozen=True)
class ExponentTuple:
    """2-adic exponent parameters of a candidate A.

    a = 2^n u - 1 is the exponent of x, b = 2^m v - 1 of x+1,
    c_i = 2^{n_i} u_i - 1 of M_i (i = 1..5), d_j = 2^{m_j} v_j - 1 of S_j
    (j = 1..8); all of u, v, u_i, v_j are odd.
    """

    n: int
    u: int
    m: int
    v: int
    n_i: tuple[int, int, int, int, int] = (0, 0, 0, 0, 0)
    u_i: tuple[int, int, int, int, int] = (1, 1, 1, 1, 1)
    m_j: tuple[int, ...] = (0,) * 8
    v_j: tuple[int, ...] = (1,) * 8

    @property
    def a(self) -> int:
        return (1 << self.n) * self.u - 1

    @property
    def b(self) -> int:
        return (1 << self.m) * self.v - 1

    @property
    def c(self) -> tuple[int, ...]:
        return tuple((1 << n) * u - 1 for n, u in zip(self.n_i, self.u_i))

    @property
    def d(self) -> tuple[int, ...]:
        return tuple((1 << m) * v - 1 for m, v in zip(self.m_j, self.v_j))

    @classmethod
    def from_exponents(cls, a: int, b: int, c: tuple[int, ...] = (), d: tuple[int, ...] = ()) -> "ExponentTuple":
        """Build the tuple from plain exponents of x, x+1, M_1..M_5, S_1..S_8."""
        c = tuple(c) + (0,) * (5 - len(c))
        d = tuple(d) + (0,) * (8 - len(d))
        n, u = _split_2adic(a)
        m, v = _split_2adic(b)
        ni, ui = zip(*(_split_2adic(k) for k in c))
        mj, vj = zip(*(_split_2adic(k) for k in d))
        return cls(n, u, m, v, ni, ui, mj, vj)

    def validate(self) -> None:
        """Check membership in the bounded parameter ranges of the search."""
        t = self
        ok = (
            0 <= t.n <= 4 and 0 <= t.m <= 4 and t.u in _U_RANGE and t.v in _U_RANGE
            and len(t.n_i) == 5 and len(t.u_i) == 5 and len(t.m_j) == 8 and len(t.v_j) == 8
            and 0 <= t.n_i[0] <= 4 and t.u_i[0] in _U1_RANGE
            and 0 <= t.n_i[1] <= 3 and t.u_i[1] in _U23_RANGE
            and 0 <= t.n_i[2] <= 3 and t.u_i[2] in _U23_RANGE
            and 0 <= t.n_i[3] <= 5 and t.u_i[3] == 1
            and 0 <= t.n_i[4] <= 5 and t.u_i[4] == 1
            and 0 <= t.m_j[0] <= 3 and t.v_j[0] in _V1_RANGE
            and all(0 <= mj <= 1 for mj in t.m_j[1:])
            and all(vj == 1 for vj in t.v_j[1:])
        )
        if not ok:
            raise ValueError(f"exponent tuple outside the supported ranges: {t}")

    def to_json(self) -> dict:
        return {
            "n": self.n, "u": self.u, "m": self.m, "v": self.v,
            "n_i": list(self.n_i), "u_i": list(self.u_i),
            "m_j": list(self.m_j), "v_j": list(self.v_j),
            "a": self.a, "b": self.b, "c": list(self.c), "d": list(self.d),
        }


@dataclass(frozen=True)
class SigmaExponents:
    """Exponents of x, x+1, M_1..M_5, S_1..S_8 in sigma(A)."""

    alpha: int
    beta: int
    gamma: tuple[int, int, int, int, int]
    delta: tuple[int, ...]


def _chi(val: int, *targets: int) -> int:
    return 1 if val in targets else 0


def compute_sigma_exponents(t: ExponentTuple) -> SigmaExponents:
    """Evaluate the closed-form exponents of the tracked primes in sigma(A)."""
    t.validate()
    cat = _cat()
    m_ab = [e.params for e in cat.mersennes[:5]]  # (a_i, b_i)
    s_abc = [e.params for e in cat.stypes[:8]]  # (alpha_j, beta_j, nu_j)

    n, u, m, v = t.n, t.u, t.m, t.v
    n1, u1 = t.n_i[0], t.u_i[0]
    n2, u2 = t.n_i[1], t.u_i[1]
    n3, u3 = t.n_i[2], t.u_i[2]
    m1, v1 = t.m_j[0], t.v_j[0]

    xi1 = _chi(u, 3, 9, 15)
    xi2 = _chi(v, 3, 9, 15)
    xi3 = _chi(u, 5, 15)
    xi4 = _chi(v, 5, 15)

    alpha = (
        (1 << m) - 1
        + sum(((1 << ni) - 1) * ab[0] for ni, ab in zip(t.n_i, m_ab))
        + sum(((1 << mj) - 1) * abc[0] for mj, abc in zip(t.m_j, s_abc))
    )
    beta = (
        (1 << n) - 1
        + sum(((1 << ni) - 1) * ab[1] for ni, ab in zip(t.n_i, m_ab))
        + sum(((1 << mj) - 1) * abc[1] for mj, abc in zip(t.m_j, s_abc))
    )
    g1 = (
        sum(((1 << mj) - 1) * abc[2] for mj, abc in zip(t.m_j, s_abc))
        + (xi1 << n) + (xi2 << m)
        + (_chi(u2, 3) << n2) + (_chi(u3, 3) << n3)
    )
    g2 = (_chi(u, 7) << n) + (_chi(v, 7) << m) + (_chi(u1, 7) << n1)
    g4 = (
        (xi3 << n) + (_chi(v, 15) << m) + (_chi(u1, 15) << n1)
        + (_chi(u3, 3) << n3) + (_chi(v1, 3) << m1)
    )
    g5 = (
        (_chi(u, 15) << n) + (xi4 << m) + (_chi(u1, 15) << n1)
        + (_chi(u2, 3) << n2) + (_chi(v1, 3) << m1)
    )
    d1 = (_chi(u, 15) << n) + (_chi(v, 15) << m) + (_chi(u1, 3, 15) << n1)
    d2 = _chi(u1, 7) << n1
    d3 = _chi(u, 13) << n
    d4 = _chi(u, 9) << n
    d5 = _chi(v, 9) << m
    d6 = _chi(v, 13) << m
    d7 = _chi(u1, 15) << n1
    d8 = _chi(u1, 5, 15) << n1

    return SigmaExponents(alpha, beta, (g1, g2, g2, g4, g5), (d1, d2, d3, d4, d5, d6, d7, d8))


# ---------------------------------------------------------------------------
# sigma factor tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaTableRow:
    """One table row: sigma(base^exponent) factored over the family."""

    base_name: str
    base: Poly
    exponent: int  # the even exponent 2h
    factorization: Factorization

    def to_json(self) -> dict:
        return {
            "base": self.base_name,
            "base_hex": self.base.to_hex(),
            "exponent": self.exponent,
            "factors": self.factorization.to_json(),
        }


def _family_factorization(value: int, family: list[tuple[int, str]]) -> list[tuple[int, int]] | None:
    """Factor value over the family masks by trial division, or None."""
    out = []
    for q, _name in family:
        e = 0
        while True:
            quo, rem = _divmod(value, q)
            if rem:
                break
            value = quo
            e += 1
        if e:
            out.append((q, e))
    return out if value == 1 else None


def _sigma_power_rows(bases: list[tuple[str, int]], h_max: int, catalog: Catalog) -> list[SigmaTableRow]:
    family = [(e.poly.mask, e.name) for e in catalog.mersennes + catalog.stypes]
    rows = []
    for name, bm in bases:
        deg = bm.bit_length() - 1
        acc = 1
        bsq = _mul(bm, bm)
        for h in range(1, h_max + 1):
            if 2 * h * deg > 2 * h_max:
                break
            acc = _mul(acc, bsq) ^ bm ^ 1  # sigma(b^2h) from sigma(b^(2h-2))
            fac = _family_factorization(acc, family)
            if fac is not None:
                rows.append(
                    SigmaTableRow(
                        base_name=name,
                        base=Poly(bm),
                        exponent=2 * h,
                        factorization=Factorization(tuple((Poly(q), e) for q, e in fac)),
                    )
                )
    return rows


def sigma_x2h_table(h_max: int = DEFAULT_H_MAX, catalog: Catalog | None = None) -> list[SigmaTableRow]:
    """Rows (base in {x, x+1}, 2h) where sigma(base^2h) factors over the family."""
    cat = catalog or _cat()
    return _sigma_power_rows([("x", 2), ("x+1", 3)], h_max, cat)


def sigma_mersenne_table(h_max: int = DEFAULT_H_MAX, catalog: Catalog | None = None) -> list[SigmaTableRow]:
    """Rows (M, 2h), 2h*deg(M) <= 2*h_max, where sigma(M^2h) factors over the family."""
    cat = catalog or _cat()
    return _sigma_power_rows([(e.name, e.poly.mask) for e in cat.mersennes], h_max, cat)


def sigma_s_table(h_max: int = DEFAULT_H_MAX, catalog: Catalog | None = None) -> list[SigmaTableRow]:
    """Rows (S, 2h), 2h*deg(S) <= 2*h_max, where sigma(S^2h) factors over the family."""
    cat = catalog or _cat()
    return _sigma_power_rows([(e.name, e.poly.mask) for e in cat.stypes], h_max, cat)


# ---------------------------------------------------------------------------
# the three-step pipeline
# ---------------------------------------------------------------------------


def pipeline_step1() -> list[tuple[int, ...]]:
    """Enumerate 8-tuples (n,u,m,v,n1,u1,n2,u2) with a >= 1, a <= b, c_2 = gamma_2."""
    out = []
    for n in range(5):
        for u in _U_RANGE:
            a = (1 << n) * u - 1
            if a < 1:
                continue
            for m in range(5):
                for v in _U_RANGE:
                    b = (1 << m) * v - 1
                    if a > b:
                        continue
                    for n1 in range(5):
                        for u1 in _U1_RANGE:
                            g2 = (_chi(u, 7) << n) + (_chi(v, 7) << m) + (_chi(u1, 7) << n1)
                            for n2 in range(4):
                                for u2 in _U23_RANGE:
                                    if (1 << n2) * u2 - 1 == g2:
                                        out.append((n, u, m, v, n1, u1, n2, u2))
    return out


def pipeline_step2(step1: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Extend to 18-tuples (.., d1..d8, m1, v1) with every d_j = delta_j."""
    out = []
    for n, u, m, v, n1, u1, n2, u2 in step1:
        d1 = (_chi(u, 15) << n) + (_chi(v, 15) << m) + (_chi(u1, 3, 15) << n1)
        d2 = _chi(u1, 7) << n1
        d3 = _chi(u, 13) << n
        d4 = _chi(u, 9) << n
        d5 = _chi(v, 9) << m
        d6 = _chi(v, 13) << m
        d7 = _chi(u1, 15) << n1
        d8 = _chi(u1, 5, 15) << n1
        if max(d2, d3, d4, d5, d6, d7, d8) > 1:
            continue  # d_j = 2^{m_j} - 1 with m_j <= 1 for j >= 2
        for m1 in range(4):
            for v1 in _V1_RANGE:
                if (1 << m1) * v1 - 1 == d1:
                    out.append((n, u, m, v, n1, u1, n2, u2, d1, d2, d3, d4, d5, d6, d7, d8, m1, v1))
    return out


def _tuple_from_step3(fields: tuple[int, ...], n4: int, n5: int) -> ExponentTuple:
    n, u, m, v, n1, u1, n2, u2, d1, d2, d3, d4, d5, d6, d7, d8, m1, v1 = fields
    return ExponentTuple(
        n=n, u=u, m=m, v=v,
        n_i=(n1, n2, n2, n4, n5),
        u_i=(u1, u2, u2, 1, 1),
        m_j=(m1, d2, d3, d4, d5, d6, d7, d8),
        v_j=(v1, 1, 1, 1, 1, 1, 1, 1),
    )


def _poly_from_tuple(t: ExponentTuple, catalog: Catalog) -> int:
    m = _mul(_pow(2, t.a), _pow(3, t.b))
    for e, c in zip(catalog.mersennes[:5], t.c):
        if c:
            m = _mul(m, _pow(e.poly.mask, c))
    for e, d in zip(catalog.stypes[:8], t.d):
        if d:
            m = _mul(m, _pow(e.poly.mask, d))
    return m


def _sigma_from_tuple(t: ExponentTuple, catalog: Catalog) -> int:
    s = _mul(_geom_sum(2, t.a), _geom_sum(3, t.b))
    for e, c in zip(catalog.mersennes[:5], t.c):
        if c:
            s = _mul(s, _geom_sum(e.poly.mask, c))
    for e, d in zip(catalog.stypes[:8], t.d):
        if d:
            s = _mul(s, _geom_sum(e.poly.mask, d))
    return s


def pipeline_step3(step2: list[tuple[int, ...]]) -> list[tuple[ExponentTuple, Poly]]:
    """Complete each 18-tuple to a full tuple and keep those with a = alpha, b = beta.

    Completion mirrors (n3, u3) from (n2, u2) because gamma_3 = gamma_2 = c_2,
    then enforces the remaining fixed-point equations: c_1 = gamma_1 and
    c_4 = gamma_4, c_5 = gamma_5 with c_4, c_5 of the shape 2^{n_4} - 1,
    2^{n_5} - 1 inside their ranges.
    """
    cat = _cat()
    nu = [e.params[2] for e in cat.stypes[:8]]
    out = []
    for fields in step2:
        n, u, m, v, n1, u1, n2, u2, d1, d2, d3, d4, d5, d6, d7, d8, m1, v1 = fields
        n3, u3 = n2, u2  # gamma_3 = gamma_2 forces c_3 = c_2
        m_j = (m1, d2, d3, d4, d5, d6, d7, d8)  # m_j = d_j for j >= 2 since d_j <= 1
        xi1 = _chi(u, 3, 9, 15)
        xi2 = _chi(v, 3, 9, 15)
        g1 = (
            sum(((1 << mj) - 1) * nuj for mj, nuj in zip(m_j, nu))
            + (xi1 << n) + (xi2 << m)
            + (_chi(u2, 3) << n2) + (_chi(u3, 3) << n3)
        )
        if (1 << n1) * u1 - 1 != g1:
            continue
        g4 = (
            (_chi(u, 5, 15) << n) + (_chi(v, 15) << m) + (_chi(u1, 15) << n1)
            + (_chi(u3, 3) << n3) + (_chi(v1, 3) << m1)
        )
        g5 = (
            (_chi(u, 15) << n) + (_chi(v, 5, 15) << m) + (_chi(u1, 15) << n1)
            + (_chi(u2, 3) << n2) + (_chi(v1, 3) << m1)
        )
        n4 = (g4 + 1).bit_length() - 1
        n5 = (g5 + 1).bit_length() - 1
        if (1 << n4) - 1 != g4 or n4 > 5 or (1 << n5) - 1 != g5 or n5 > 5:
            continue
        t = _tuple_from_step3(fields, n4, n5)
        se = compute_sigma_exponents(t)
        if t.a == se.alpha and t.b == se.beta:
            out.append((t, Poly(_poly_from_tuple(t, cat))))
    return out


@dataclass(frozen=True)
class SearchReport:
    """Counts, candidates and the bar-closed survivor set of the pipeline."""

    step1_count: int
    step2_count: int
    step3_count: int
    candidates: tuple[tuple[ExponentTuple, Poly], ...]
    perfect_survivors: tuple[Poly, ...]
    closure: tuple[Poly, ...]
    closure_names: tuple[str, ...]

    def to_json(self) -> dict:
        cat = _cat()
        names = {p: n for p, n in cat.names_by_poly.items()}
        return {
            "counts": {
                "step1": self.step1_count,
                "step2": self.step2_count,
                "step3": self.step3_count,
                "perfect_survivors": len(self.perfect_survivors),
                "closure": len(self.closure),
            },
            "candidates": [
                {
                    "exponents": t.to_json(),
                    "hex": p.to_hex(),
                    "degree": p.degree,
                    "factorization": _render_tuple_factorization(t),
                }
                for t, p in self.candidates
            ],
            "perfect_survivors": [p.to_hex() for p in self.perfect_survivors],
            "closure": [
                {"name": names.get(p, ""), "hex": p.to_hex(), "poly": str(p)}
                for p in self.closure
            ],
            "closure_names": list(self.closure_names),
        }


def _render_tuple_factorization(t: ExponentTuple) -> str:
    parts = []
    if t.a:
        parts.append(f"x^{t.a}" if t.a > 1 else "x")
    if t.b:
        parts.append(f"(x+1)^{t.b}" if t.b > 1 else "(x+1)")
    for i, c in enumerate(t.c, start=1):
        if c:
            parts.append(f"M_{i}^{c}" if c > 1 else f"M_{i}")
    for j, d in enumerate(t.d, start=1):
        if d:
            parts.append(f"S_{j}^{d}" if d > 1 else f"S_{j}")
    return " * ".join(parts) if parts else "1"


def pipeline_finalize(candidates: list[tuple[ExponentTuple, Poly]], counts: tuple[int, int, int] | None = None) -> SearchReport:
    """Filter candidates by perfectness, close under bar, check the known set.

    Survivors must carry at least one odd prime factor (candidates that are
    pure x^a (x+1)^b powers are the trivial perfect family and belong to a
    different classification).  Raises SearchError if the bar-closure differs
    from the eleven cataloged perfect polynomials.
    """
    cat = _cat()
    survivors = []
    for t, p in candidates:
        if not any(t.c) and not any(t.d):
            continue
        if _sigma_from_tuple(t, cat) == p.mask:
            survivors.append(p)
    survivors.sort()
    closure = sorted({p for p in survivors} | {Poly(_bar(p.mask)) for p in survivors})
    expected = sorted(e.poly for e in cat.perfects)
    if closure != expected:
        missing = [str(p) for p in expected if p not in closure]
        extra = [str(p) for p in closure if p not in expected]
        raise SearchError(
            f"closure mismatch: missing={missing!r} extra={extra!r}"
        )
    names = tuple(cat.names_by_poly[p] for p in closure)
    c1, c2, c3 = counts if counts else (0, 0, 0)
    return SearchReport(
        step1_count=c1,
        step2_count=c2,
        step3_count=c3,
        candidates=tuple(candidates),
        perfect_survivors=tuple(survivors),
        closure=tuple(closure),
        closure_names=names,
    )


def run_pipeline() -> SearchReport:
    """Run the full three-step enumeration and finalization."""
    s1 = pipeline_step1()
    s2 = pipeline_step2(s1)
    s3 = pipeline_step3(s2)
    return pipeline_finalize(s3, counts=(len(s1), len(s2), len(s3)))


# ---------------------------------------------------------------------------
# exhaustive scan
# ---------------------------------------------------------------------------

_SCAN_PRIMES: list[int] = []  # per-process state for worker tasks


def _scan_subtree(primes: list[int], i0: int, a: int, s: int, budget: int, out: list[int]) -> None:
    for idx in range(i0, len(primes)):
        p = primes[idx]
        dp = p.bit_length() - 1
        if dp > budget:
            break
        pe = p
        se = p ^ 1
        rem = budget - dp
        while True:
            a2 = _mul(a, pe)
            s2 = _mul(s, se)
            if a2 == s2:
                out.append(a2)
            if rem >= 1:
                _scan_subtree(primes, idx + 1, a2, s2, rem, out)
            if rem < dp:
                break
            rem -= dp
            pe = _mul(pe, p)
            se = _mul(se, p) ^ 1  # sigma(p^(e+1)) = sigma(p^e)*p + 1


def _scan_task_init(primes: list[int]) -> None:
    global _SCAN_PRIMES
    _SCAN_PRIMES = primes


def _scan_task(args: tuple[int, int, int]) -> list[int]:
    idx, e, budget = args
    primes = _SCAN_PRIMES
    p = primes[idx]
    dp = p.bit_length() - 1
    a = _pow(p, e)
    s = _geom_sum(p, e)
    out: list[int] = []
    if a == s:
        out.append(a)
    rem = budget - dp * e
    if rem >= 1:
        _scan_subtree(primes, idx + 1, a, s, rem, out)
    return out


def exhaustive_scan(max_degree: int, *, workers: int = 1, ceiling: int | None = None) -> list[Poly]:
    """All perfect polynomials of degree 1..max_degree, sorted by (degree, mask).

    Enumerates every monic polynomial exactly once via its factorization.
    The ceiling defaults to 24 and may be overridden with the
    GF2SIGMA_SCAN_CEILING environment variable.
    """
    if ceiling is None:
        ceiling = int(os.environ.get(SCAN_CEILING_ENV, DEFAULT_SCAN_CEILING))
    if not 1 <= max_degree <= ceiling:
        raise ValueError(f"max_degree must be in 1..{ceiling}, got {max_degree}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    primes = _irreducible_masks(max_degree)
    found: list[int] = []
    if workers <= 1:
        _scan_subtree(primes, 0, 1, 1, max_degree, found)
    else:
        tasks = []
        for idx, p in enumerate(primes):
            dp = p.bit_length() - 1
            e = 1
            while dp * e <= max_degree:
                tasks.append((idx, e, max_degree))
                e += 1
        # large subtrees first so the pool tail stays short
        tasks.sort(key=lambda t: t[2] - (primes[t[0]].bit_length() - 1) * t[1], reverse=True)
        with multiprocessing.Pool(workers, initializer=_scan_task_init, initargs=(primes,)) as pool:
            for chunk in pool.imap_unordered(_scan_task, tasks, chunksize=16):
                found.extend(chunk)
    return [Poly(m) for m in sorted(found)]
