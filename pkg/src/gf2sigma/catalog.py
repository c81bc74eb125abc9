"""The verified catalog of special polynomials over GF(2).

Three rosters are built from their defining parameters and cross-checked on
construction:

* thirteen Mersenne irreducibles 1 + x^a (x+1)^b (names M_1..M_13),
* fifteen irreducibles of the shape 1 + x^a (x+1)^b M_1^c (names S_1..S_15),
* eleven known perfect polynomials (names T_1..T_11), each stored with its
  full prime-power shape x^a (x+1)^b * prod M_i^c_i * prod S_j^d_j.

Construction fails loudly if any entry is reducible, has the wrong shape, or
breaks one of the structural facts (bar-conjugate pairing, the degree sum 184
over the union of the two irreducible rosters, distinctness).

`check_admissible` decides whether a family of odd irreducibles satisfies any
of the three closure conditions that make the classification theorem apply,
searching sigma witnesses up to a configurable even-exponent bound h_max; a
failed search is reported as "not established up to h_max", never as a
refutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd as _int_gcd
from typing import Iterable, Mapping

from .gf2poly import Poly, _bar, _divmod, _mul, _popcount, _pow, _star
from .factorizer import _is_irreducible_mask
from .sigma import _geom_sum

__all__ = [
    "AdmissibilityReport",
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "build_catalog",
    "check_admissible",
    "is_mersenne_prime",
    "one_plus_product",
]

DEFAULT_H_MAX = 92  # degree bound: sigma arguments of even exponent <= 184


class CatalogError(ValueError):
    """A catalog entry failed one of its construction invariants."""


def one_plus_product(q: Poly, a: int, b: int, c: int) -> Poly:
    """Return 1 + x^a (x+1)^b q^c for an odd q and a, b, c >= 1."""
    if a < 1 or b < 1 or c < 1:
        raise ValueError("a, b, c must all be >= 1")
    if not q.mask or q.is_even():
        raise ValueError(f"base polynomial must be odd, got {q}")
    m = _mul(1 << a, _pow(3, b))
    return Poly(_mul(m, _pow(q.mask, c)) ^ 1)


def is_mersenne_prime(p: Poly) -> bool:
    """True iff p is irreducible and p + 1 = x^a (x+1)^b with a, b >= 1."""
    m = p.mask
    if m.bit_length() - 1 < 1:
        raise ValueError("Mersenne test is defined for degree >= 1")
    v = m ^ 1
    a = (v & -v).bit_length() - 1  # multiplicity of x
    if a < 1:
        return False
    w = v >> a
    b = w.bit_length() - 1  # remaining degree; w must be (x+1)^b
    if b < 1 or w != _pow(3, b):
        return False
    return _is_irreducible_mask(m)


# ---------------------------------------------------------------------------
# catalog construction
# ---------------------------------------------------------------------------

# Mersenne entries: name -> (a, b) in 1 + x^a (x+1)^b
_MERSENNE_PARAMS: tuple[tuple[str, int, int], ...] = (
    ("M_1", 1, 1),
    ("M_2", 1, 2),
    ("M_3", 2, 1),
    ("M_4", 1, 3),
    ("M_5", 3, 1),
    ("M_6", 3, 2),
    ("M_7", 3, 4),
    ("M_8", 6, 1),
    ("M_9", 2, 3),
    ("M_10", 4, 3),
    ("M_11", 1, 6),
    ("M_12", 1, 8),
    ("M_13", 8, 1),
)

# S-type entries: name -> (a, b, c) in 1 + x^a (x+1)^b M_1^c
_STYPE_PARAMS: tuple[tuple[str, int, int, int], ...] = (
    ("S_1", 1, 1, 1),
    ("S_2", 2, 2, 1),
    ("S_3", 1, 3, 4),
    ("S_4", 3, 1, 1),
    ("S_5", 1, 3, 1),
    ("S_6", 3, 1, 4),
    ("S_7", 1, 1, 3),
    ("S_8", 3, 3, 1),
    ("S_9", 1, 1, 5),
    ("S_10", 4, 1, 1),
    ("S_11", 1, 2, 1),
    ("S_12", 2, 1, 2),
    ("S_13", 1, 4, 1),
    ("S_14", 2, 1, 1),
    ("S_15", 1, 2, 2),
)

# Known perfect polynomials: name -> (a, b, (c_1..c_5), (d_1..d_8)) in
# x^a (x+1)^b * prod M_i^c_i * prod S_j^d_j
_PERFECT_PARAMS: tuple[tuple[str, int, int, tuple[int, ...], tuple[int, ...]], ...] = (
    ("T_1", 2, 1, (1, 0, 0, 0, 0), (0,) * 8),
    ("T_2", 1, 2, (1, 0, 0, 0, 0), (0,) * 8),
    ("T_3", 4, 3, (0, 0, 0, 1, 0), (0,) * 8),
    ("T_4", 3, 4, (0, 0, 0, 0, 1), (0,) * 8),
    ("T_5", 4, 4, (0, 0, 0, 1, 1), (0,) * 8),
    ("T_6", 6, 3, (0, 1, 1, 0, 0), (0,) * 8),
    ("T_7", 3, 6, (0, 1, 1, 0, 0), (0,) * 8),
    ("T_8", 4, 6, (0, 1, 1, 1, 0), (0,) * 8),
    ("T_9", 6, 4, (0, 1, 1, 0, 1), (0,) * 8),
    ("T_10", 2, 1, (2, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 0)),
    ("T_11", 1, 2, (2, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 0)),
)

# bar-conjugate pairing expected among the entries (an involution)
_BAR_PAIRS: Mapping[str, str] = {
    "M_1": "M_1", "M_2": "M_3", "M_4": "M_5", "M_6": "M_9", "M_7": "M_10",
    "M_8": "M_11", "M_12": "M_13",
    "S_1": "S_1", "S_2": "S_2", "S_3": "S_6", "S_4": "S_5", "S_7": "S_7",
    "S_8": "S_8", "S_9": "S_9", "S_10": "S_13", "S_11": "S_14", "S_12": "S_15",
    "T_1": "T_2", "T_3": "T_4", "T_5": "T_5", "T_6": "T_7", "T_8": "T_9",
    "T_10": "T_11",
}

EXPECTED_DEGREE_SUM = 184  # over the 28 irreducible roster members


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog member with its shape parameters and conjugate partners."""

    name: str
    poly: Poly
    kind: str  # "mersenne" | "stype" | "perfect"
    params: tuple[int, ...]
    bar_partner: str
    star_partner: str | None

    @property
    def degree(self) -> int:
        return self.poly.degree

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "hex": self.poly.to_hex(),
            "poly": str(self.poly),
            "degree": self.degree,
            "params": list(self.params),
            "bar_partner": self.bar_partner,
            "star_partner": self.star_partner,
        }


@dataclass(frozen=True)
class Catalog:
    """The full verified roster, with name and polynomial lookups."""

    mersennes: tuple[CatalogEntry, ...]
    stypes: tuple[CatalogEntry, ...]
    perfects: tuple[CatalogEntry, ...]
    by_name: dict[str, CatalogEntry] = field(repr=False)
    names_by_poly: dict[Poly, str] = field(repr=False)

    @property
    def entries(self) -> tuple[CatalogEntry, ...]:
        return self.mersennes + self.stypes + self.perfects

    @property
    def family(self) -> tuple[Poly, ...]:
        """The 28 irreducibles (Mersenne and S-type rosters together)."""
        return tuple(e.poly for e in self.mersennes + self.stypes)

    def __getitem__(self, name: str) -> CatalogEntry:
        return self.by_name[name]

    def name_of(self, p: Poly) -> str | None:
        return self.names_by_poly.get(p)

    def to_json(self) -> dict:
        return {
            "mersennes": [e.to_json() for e in self.mersennes],
            "stypes": [e.to_json() for e in self.stypes],
            "perfects": [e.to_json() for e in self.perfects],
            "degree_sum": sum(e.degree for e in self.mersennes + self.stypes),
        }


def _resolve_partners(entries: list[tuple[str, Poly, str, tuple[int, ...]]]) -> list[CatalogEntry]:
    by_poly = {poly: name for name, poly, _, _ in entries}
    out = []
    for name, poly, kind, params in entries:
        bar_name = by_poly.get(Poly(_bar(poly.mask)))
        if bar_name is None:
            raise CatalogError(f"{name}: bar conjugate not present in the catalog")
        if _BAR_PAIRS.get(name, _BAR_PAIRS_REVERSED.get(name)) != bar_name:
            raise CatalogError(f"{name}: bar partner is {bar_name}, expected pairing broken")
        star_name = by_poly.get(Poly(_star(poly.mask))) if poly.mask & 1 else None
        out.append(CatalogEntry(name, poly, kind, params, bar_name, star_name))
    return out


_BAR_PAIRS_REVERSED = {v: k for k, v in _BAR_PAIRS.items()}


def build_catalog() -> Catalog:
    """Construct and verify the full catalog; raises CatalogError on any violation."""
    raw: list[tuple[str, Poly, str, tuple[int, ...]]] = []

    for name, a, b in _MERSENNE_PARAMS:
        poly = Poly(_mul(1 << a, _pow(3, b)) ^ 1)
        if not _is_irreducible_mask(poly.mask):
            raise CatalogError(f"{name}: 1 + x^{a}(x+1)^{b} is reducible")
        if not is_mersenne_prime(poly):
            raise CatalogError(f"{name}: not of Mersenne shape")
        raw.append((name, poly, "mersenne", (a, b)))

    m1 = raw[0][1]
    for name, a, b, c in _STYPE_PARAMS:
        if _int_gcd(a, b, c) != 1:
            raise CatalogError(f"{name}: parameters ({a},{b},{c}) are not coprime")
        poly = one_plus_product(m1, a, b, c)
        if not _is_irreducible_mask(poly.mask):
            raise CatalogError(f"{name}: 1 + x^{a}(x+1)^{b}M_1^{c} is reducible")
        raw.append((name, poly, "stype", (a, b, c)))

    degree_sum = sum(poly.degree for _, poly, _, _ in raw)
    if degree_sum != EXPECTED_DEGREE_SUM:
        raise CatalogError(f"irreducible roster degree sum {degree_sum} != {EXPECTED_DEGREE_SUM}")

    m_polys = [poly.mask for _, poly, _, _ in raw[:13]]
    s_polys = [poly.mask for _, poly, _, _ in raw[13:28]]
    for name, a, b, c_i, d_j in _PERFECT_PARAMS:
        m = _mul(1 << a, _pow(3, b))
        for q, e in zip(m_polys[:5], c_i):
            if e:
                m = _mul(m, _pow(q, e))
        for q, e in zip(s_polys[:8], d_j):
            if e:
                m = _mul(m, _pow(q, e))
        raw.append((name, Poly(m), "perfect", (a, b) + c_i + d_j))

    if len({poly for _, poly, _, _ in raw}) != len(raw):
        raise CatalogError("catalog entries are not pairwise distinct")

    entries = _resolve_partners(raw)
    mersennes = tuple(e for e in entries if e.kind == "mersenne")
    stypes = tuple(e for e in entries if e.kind == "stype")
    perfects = tuple(e for e in entries if e.kind == "perfect")
    if (len(mersennes), len(stypes), len(perfects)) != (13, 15, 11):
        raise CatalogError("roster sizes are wrong")
    by_name = {e.name: e for e in entries}
    names_by_poly = {e.poly: e.name for e in entries}
    return Catalog(mersennes, stypes, perfects, by_name, names_by_poly)


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------


def _factors_over(value: int, allowed: Iterable[int]) -> bool:
    """True iff every prime factor of value lies in the allowed set."""
    for q in allowed:
        while True:
            quo, rem = _divmod(value, q)
            if rem:
                break
            value = quo
            if value == 1:
                return True
    return value == 1


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of the three admissibility conditions for one family.

    `admissible` means established by at least one condition; a False value
    only means "not established with witnesses up to h_max", never a proof
    of inadmissibility.
    """

    family: tuple[Poly, ...]
    h_max: int
    closed_under_star_or_bar: bool  # condition (i)
    sigma_x_witness: tuple[int, str] | None  # condition (ii): (h, side)
    member_witnesses: dict[str, dict | None]  # condition (iii), keyed by member

    @property
    def all_members_witnessed(self) -> bool:
        return all(w is not None for w in self.member_witnesses.values())

    @property
    def admissible(self) -> bool:
        return (
            self.closed_under_star_or_bar
            or self.sigma_x_witness is not None
            or self.all_members_witnessed
        )

    def to_json(self) -> dict:
        return {
            "family": [p.to_hex() for p in self.family],
            "h_max": self.h_max,
            "closed_under_star_or_bar": self.closed_under_star_or_bar,
            "sigma_x_witness": list(self.sigma_x_witness) if self.sigma_x_witness else None,
            "member_witnesses": self.member_witnesses,
            "admissible": self.admissible,
            "conclusive": self.admissible,
        }


def check_admissible(family: Iterable[Poly], h_max: int = DEFAULT_H_MAX) -> AdmissibilityReport:
    """Check the three admissibility conditions for a family of odd irreducibles."""
    members = sorted(set(family))
    for p in members:
        if not p.mask or p.is_even():
            raise ValueError(f"family member {p} is even")
        if not _is_irreducible_mask(p.mask):
            raise ValueError(f"family member {p} is reducible")
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    masks = [p.mask for p in members]
    mask_set = set(masks)
    with_linear = masks + [2, 3]

    # (i) closure under star or bar, member by member
    cond_i = all(_star(m) in mask_set or _bar(m) in mask_set for m in masks)

    # (ii) some sigma(x^2h) or sigma((x+1)^2h) factors entirely inside the family
    cond_ii = None
    if masks:
        sx = 1
        sx1 = 1
        for h in range(1, h_max + 1):
            sx = _mul(sx, 4) ^ 2 ^ 1  # sigma(x^2h) from sigma(x^(2h-2))
            sx1 = _mul(sx1, _mul(3, 3)) ^ 3 ^ 1  # same on the x+1 side
            if _factors_over(sx, masks):
                cond_ii = (h, "x")
                break
            if _factors_over(sx1, masks):
                cond_ii = (h, "x+1")
                break

    # (iii) every member has 1+T factoring, or some sigma(T^2h) factoring,
    # over the family together with x and x+1
    witnesses: dict[str, dict | None] = {}
    for p, m in zip(members, masks):
        key = str(p)
        if _factors_over(m ^ 1, with_linear):
            witnesses[key] = {"kind": "one_plus_factors"}
            continue
        found = None
        acc = 1
        for h in range(1, h_max + 1):
            acc = _mul(_mul(acc, m) ^ 1, m) ^ 1  # sigma(T^2h) from sigma(T^(2h-2))
            if _factors_over(acc, with_linear):
                found = {"kind": "sigma_even_power", "h": h}
                break
        witnesses[key] = found

    return AdmissibilityReport(
        family=tuple(members),
        h_max=h_max,
        closed_under_star_or_bar=cond_i,
        sigma_x_witness=cond_ii,
        member_witnesses=witnesses,
    )
