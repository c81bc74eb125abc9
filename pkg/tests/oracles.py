"""Independent reference implementations used to cross-check the library.

Nothing in this module imports from the package under test: polynomials over
GF(2) are plain ints (bit i = coefficient of x^i) and every algorithm is the
naive textbook version, so agreement with the fast implementations is
meaningful evidence rather than a tautology.
"""

from __future__ import annotations


def degree(m: int) -> int:
    """Degree of the polynomial with bit mask m (-1 for the zero polynomial)."""
    return m.bit_length() - 1


def mul(a: int, b: int) -> int:
    """Carry-less product: one shift-XOR per set bit of a."""
    out = 0
    i = 0
    while a:
        if a & 1:
            out ^= b << i
        a >>= 1
        i += 1
    return out


def divmod_(a: int, b: int) -> tuple[int, int]:
    """Long division: (quotient, remainder) with deg(remainder) < deg(b)."""
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = degree(b)
    q = 0
    while degree(a) >= db:
        shift = degree(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def pow_(a: int, k: int) -> int:
    """k-fold product by repeated multiplication (no squaring shortcut)."""
    out = 1
    for _ in range(k):
        out = mul(out, a)
    return out


def bar(m: int) -> int:
    """Substitute x -> x+1 by expanding (x+1)^i for every set bit i."""
    out = 0
    i = 0
    while m:
        if m & 1:
            out ^= pow_(0b11, i)
        m >>= 1
        i += 1
    return out


def star(m: int) -> int:
    """Reverse the coefficient string of a nonzero polynomial."""
    if m == 0:
        raise ValueError("star of the zero polynomial")
    return int(bin(m)[2:][::-1], 2)


def sieve_irreducibles(max_degree: int) -> list[int]:
    """All irreducible masks of degree 1..max_degree, by trial division.

    A composite of degree d always has an irreducible factor of degree
    <= d//2, and masks are visited in ascending order (hence ascending
    degree), so testing against the primes found so far is complete.
    """
    primes: list[int] = []
    for m in range(2, 1 << (max_degree + 1)):
        d = degree(m)
        if not any(divmod_(m, p)[1] == 0 for p in primes if 2 * degree(p) <= d):
            primes.append(m)
    return primes


def smallest_factor_table(max_degree: int) -> list[int]:
    """spf[m] = smallest irreducible factor of m, or 0 when m has no factor
    of degree <= max_degree//2.

    Built by marking products of sieve primes, so the later factorization
    walk never invokes any library code.  Complete for every composite of
    degree <= max_degree because such a composite has an irreducible factor
    of degree <= max_degree//2.
    """
    size = 1 << (max_degree + 1)
    spf = [0] * size
    for p in sieve_irreducibles(max_degree // 2):
        dp = degree(p)
        for q in range(1, 1 << (max_degree - dp + 1)):
            m = mul(p, q)
            if m < size and spf[m] == 0:
                spf[m] = p
    return spf


def factor_with_table(m: int, spf: list[int]) -> list[tuple[int, int]]:
    """Complete factorization of m (degree >= 0) using a smallest-factor table.

    A cofactor with no table entry is irreducible, because the table covers
    every possible smallest factor at the sizes it was built for.
    """
    counts: dict[int, int] = {}
    while degree(m) >= 1:
        p = spf[m] or m
        e = 0
        while True:
            q, r = divmod_(m, p)
            if r:
                break
            m = q
            e += 1
        counts[p] = counts.get(p, 0) + e
    return sorted(counts.items(), key=lambda t: (degree(t[0]), t[0]))


def divisor_sigma_scan(m: int) -> int:
    """XOR of all divisors of m, found by scanning every candidate mask.

    Entirely independent of any factorization routine; only usable for
    small degrees (the scan is exponential in deg m).
    """
    out = 0
    for d in range(1, 1 << (degree(m) + 1)):
        if divmod_(m, d)[1] == 0:
            out ^= d
    return out


def mobius(n: int) -> int:
    """Moebius function by naive prime-by-prime division."""
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def necklace_count(d: int) -> int:
    """Number of degree-d irreducibles over GF(2): (1/d) * sum mu(e) 2^(d/e)."""
    return sum(mobius(e) * (1 << (d // e)) for e in range(1, d + 1) if d % e == 0) // d
