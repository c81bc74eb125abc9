"""Deterministic irreducibility testing and factorization over GF(2).

Irreducibility is Rabin's criterion: p of degree d is irreducible iff
x^(2^d) == x (mod p) and gcd(x^(2^(d/r)) - x, p) = 1 for every prime r | d.

Factorization runs squarefree decomposition (characteristic-2 aware: a
vanishing derivative means the polynomial is a perfect square), then
distinct-degree splitting, then equal-degree splitting with the trace map
T(v) = v + v^2 + v^4 + ... + v^(2^(d-1)) swept over the basis monomials
v = x, x^2, x^3, ...  No randomness anywhere: factor order is reproducible
and results are always sorted by (degree, mask).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .gf2poly import Poly, _divmod, _gcd, _mod, _mul, _derivative, _popcount, _pow, _sqr, _sqr_mod, _sqrt

__all__ = ["Factorization", "factor", "irreducibles", "is_irreducible", "is_squarefree", "omega", "rad"]


# ---------------------------------------------------------------------------
# irreducibility
# ---------------------------------------------------------------------------


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible_mask(p: int) -> bool:
    d = p.bit_length() - 1
    if d < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    x0 = _mod(2, p)
    checkpoints = {d // r for r in _prime_divisors(d)}
    h = x0
    for i in range(1, d + 1):
        h = _sqr_mod(h, p)
        if i in checkpoints and _gcd(h ^ x0, p) != 1:
            return False
    return h == x0


def is_irreducible(p: Poly) -> bool:
    """Rabin's irreducibility test; raises for constants and zero."""
    return _is_irreducible_mask(p.mask)


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------


def _edf(g: int, d: int) -> list[int]:
    """Split a product of distinct degree-d irreducibles into its factors."""
    if g.bit_length() - 1 == d:
        return [g]
    deg_g = g.bit_length() - 1
    for i in range(1, deg_g):
        v = _mod(1 << i, g)
        # trace map: v + v^2 + ... + v^(2^(d-1)), values in GF(2) per factor
        acc = v
        w = v
        for _ in range(d - 1):
            w = _sqr_mod(w, g)
            acc ^= w
        u = _gcd(acc, g)
        if 0 < u.bit_length() - 1 < deg_g:
            return _edf(u, d) + _edf(_divmod(g, u)[0], d)
    raise AssertionError("trace splitting exhausted the basis")  # unreachable


def _factor_squarefree(s: int) -> list[int]:
    """Factor a squarefree mask of degree >= 1 by distinct-degree splitting."""
    out = []
    f = s
    h = _mod(2, f)
    d = 0
    while 2 * (d + 1) <= f.bit_length() - 1:
        d += 1
        h = _sqr_mod(h, f)
        g = _gcd(h ^ 2, f)
        if g != 1:
            out.extend(_edf(g, d))
            f = _divmod(f, g)[0]
            if f == 1:
                break
            h = _mod(h, f)
    if f.bit_length() - 1 >= 1:
        out.append(f)
    return out


def _factor_into(f: int, mult: int, counts: dict[int, int]) -> None:
    if f == 1:
        return
    fp = _derivative(f)
    if fp == 0:
        # only even-position bits set: f is the square of its de-interleave
        _factor_into(_sqrt(f), 2 * mult, counts)
        return
    s = _divmod(f, _gcd(f, fp))[0]  # product of the odd-multiplicity primes
    for q in _factor_squarefree(s):
        e = 0
        while True:
            quo, rem = _divmod(f, q)
            if rem:
                break
            f = quo
            e += 1
        counts[q] = counts.get(q, 0) + e * mult
    _factor_into(f, mult, counts)  # leftover: the even-multiplicity part


def _factor_mask(m: int) -> list[tuple[int, int]]:
    if m == 0:
        raise ValueError("cannot factor the zero polynomial")
    counts: dict[int, int] = {}
    _factor_into(m, 1, counts)
    return sorted(counts.items())  # mask order == (degree, mask) order


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as an ordered tuple of (prime, exponent) pairs."""

    factors: tuple[tuple[Poly, int], ...]

    def __iter__(self) -> Iterator[tuple[Poly, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def value(self) -> Poly:
        """Recombine the factorization into the original polynomial."""
        m = 1
        for p, e in self.factors:
            m = _mul(m, _pow(p.mask, e))
        return Poly(m)

    def render(self, names: Mapping[Poly, str] | None = None) -> str:
        """Human-readable product, using catalog names where available."""
        if not self.factors:
            return "1"
        parts = []
        for p, e in self.factors:
            name = names.get(p) if names else None
            base = name if name is not None else f"({p})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return " * ".join(parts)

    def to_json(self) -> list[list]:
        """JSON form: [[hexmask, exponent], ...] in canonical order."""
        return [[p.to_hex(), e] for p, e in self.factors]


def factor(p: Poly) -> Factorization:
    """Full factorization of a nonzero polynomial, sorted by (degree, mask)."""
    return Factorization(tuple((Poly(q), e) for q, e in _factor_mask(p.mask)))


def omega(p: Poly) -> int:
    """Number of distinct prime factors."""
    return len(_factor_mask(p.mask))


def rad(p: Poly) -> Poly:
    """Product of the distinct prime factors (the radical)."""
    m = 1
    for q, _ in _factor_mask(p.mask):
        m = _mul(m, q)
    return Poly(m)


def is_squarefree(p: Poly) -> bool:
    """True iff no prime divides p twice.

    In characteristic 2 a vanishing derivative means p is a perfect square,
    so any p of degree >= 1 with derivative 0 is not squarefree; otherwise
    squarefreeness is gcd(p, p') = 1.
    """
    m = p.mask
    if m == 0:
        raise ValueError("squarefreeness of the zero polynomial is undefined")
    if m == 1:
        return True
    fp = _derivative(m)
    if fp == 0:
        return False
    return _gcd(m, fp) == 1


# ---------------------------------------------------------------------------
# irreducible enumeration (sieve)
# ---------------------------------------------------------------------------


def _mark_products(p: int, budget: int, comp: bytearray) -> None:
    """Mark p*q composite for every q with constant term 1, 2 <= deg q <= budget."""
    prods = [p]  # p*s for s odd, s < 2^t, grown level by level
    for t in range(1, budget + 1):
        if t >= 2:
            top = p << t
            for w in prods:
                comp[top ^ w] = 1
        if t < budget:
            sh = p << t
            prods += [sh ^ w for w in prods]


def _irreducible_masks(max_degree: int) -> list[int]:
    """All irreducible masks of degree 1..max_degree in (degree, mask) order."""
    if max_degree < 1:
        return []
    out = [2, 3]
    limit = 1 << (max_degree + 1)
    comp = bytearray(limit)
    # odd composites are products of two odd factors, so marking products of
    # each odd prime with every constant-term-1 multiplier covers them all
    for m in range(5, limit, 2):
        if comp[m] or _popcount(m) % 2 == 0:
            continue  # marked composite, or divisible by x + 1
        out.append(m)
        budget = max_degree - (m.bit_length() - 1)
        if budget >= 2:
            _mark_products(m, budget, comp)
    return out


def irreducibles(max_degree: int) -> list[Poly]:
    """All irreducible polynomials of degree 1..max_degree, canonically ordered."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    return [Poly(m) for m in _irreducible_masks(max_degree)]
