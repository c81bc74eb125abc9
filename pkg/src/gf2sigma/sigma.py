"""The sum-of-divisors function sigma on GF(2)[x] and perfectness tests.

sigma is multiplicative; on a prime power it is the geometric sum
sigma(p^k) = 1 + p + ... + p^k, evaluated by Horner as k folds of
acc <- acc*p + 1.  A polynomial is perfect when sigma(A) = A, and an
indecomposable perfect does not factor into two coprime nonconstant
perfect polynomials.

`check_geometric_split` verifies the 2-adic splitting of a geometric sum:
writing the exponent as 2^t * s - 1 with s odd,
sigma(p^(2^t*s-1)) = (1+p)^(2^t-1) * sigma(p^(s-1))^(2^t),
which is the identity driving every exponent computation in `search`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2poly import Poly, _mul, _pow
from .factorizer import Factorization, _factor_mask, _is_irreducible_mask, factor

__all__ = [
    "SigmaValue",
    "check_geometric_split",
    "is_indecomposable_perfect",
    "is_perfect",
    "sigma",
    "sigma_prime_power",
]


def _geom_sum(pm: int, k: int) -> int:
    """1 + pm + ... + pm^k by Horner; k = 0 gives 1."""
    acc = 1
    for _ in range(k):
        acc = _mul(acc, pm) ^ 1
    return acc


def _sigma_mask(m: int) -> int:
    val = 1
    for q, e in _factor_mask(m):
        val = _mul(val, _geom_sum(q, e))
    return val


@dataclass(frozen=True)
class SigmaValue:
    """sigma of some polynomial, together with its own factorization."""

    value: Poly
    factored: Factorization


def sigma_prime_power(p: Poly, k: int) -> Poly:
    """sigma(p^k) = 1 + p + ... + p^k for irreducible p and k >= 1."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    if not _is_irreducible_mask(p.mask):
        raise ValueError(f"{p} is not irreducible")
    return Poly(_geom_sum(p.mask, k))


def sigma(a: Poly) -> SigmaValue:
    """Sum of all divisors of a nonzero polynomial, with its factorization."""
    if not a.mask:
        raise ValueError("sigma of the zero polynomial is undefined")
    val = _sigma_mask(a.mask)
    return SigmaValue(value=Poly(val), factored=factor(Poly(val)))


def is_perfect(a: Poly) -> bool:
    """True iff sigma(a) = a."""
    if not a.mask:
        raise ValueError("perfectness of the zero polynomial is undefined")
    return _sigma_mask(a.mask) == a.mask


def is_indecomposable_perfect(a: Poly) -> bool:
    """True iff perfect and no proper coprime split into perfects exists.

    sigma is multiplicative, so if a proper nonempty subset of the
    prime-power factors multiplies to a perfect polynomial, the complementary
    subset does too; checking subsets is exactly the decomposability test.
    """
    if not is_perfect(a):
        raise ValueError(f"{a} is not perfect")
    parts = _factor_mask(a.mask)
    w = len(parts)
    powers = [_pow(q, e) for q, e in parts]
    sums = [_geom_sum(q, e) for q, e in parts]
    for sub in range(1, (1 << w) - 1):
        prod = 1
        sig = 1
        for i in range(w):
            if (sub >> i) & 1:
                prod = _mul(prod, powers[i])
                sig = _mul(sig, sums[i])
        if prod == sig:
            return False
    return True


def check_geometric_split(p: Poly, exponent: int) -> bool:
    """Verify sigma(p^e) = (1+p)^(2^t-1) * sigma(p^(s-1))^(2^t), e = 2^t*s-1."""
    if exponent < 1:
        raise ValueError("exponent must be >= 1")
    if not _is_irreducible_mask(p.mask):
        raise ValueError(f"{p} is not irreducible")
    n = exponent + 1
    t = (n & -n).bit_length() - 1  # 2-adic valuation
    s = n >> t
    lhs = _geom_sum(p.mask, exponent)
    rhs = _mul(_pow(p.mask ^ 1, (1 << t) - 1), _pow(_geom_sum(p.mask, s - 1), 1 << t))
    return lhs == rhs
