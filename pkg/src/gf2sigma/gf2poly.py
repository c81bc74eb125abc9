"""Univariate polynomial arithmetic over GF(2).

A polynomial is stored as a nonnegative Python int whose bit i is the
coefficient of x^i, so 0b111 is x^2 + x + 1.  Addition is XOR, multiplication
is shift-and-XOR over the set bits of the sparser operand, and squaring just
spreads the bits apart.  The zero polynomial is the int 0 and its degree is
the sentinel -1.

The public surface is the immutable :class:`Poly` wrapper plus a few module
functions; the underscore-prefixed int-level helpers are shared with the
sibling modules, which run their hot loops on raw masks.
"""

from __future__ import annotations

import re

__all__ = ["Poly", "ParseError", "gcd", "parse", "parse_expr", "X", "ONE", "ZERO"]

# int.bit_count needs 3.11; fall back to counting the binary string on 3.10
_popcount = getattr(int, "bit_count", None) or (lambda m: bin(m).count("1"))


class ParseError(ValueError):
    """Malformed polynomial text; carries the 0-based offending position."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


# ---------------------------------------------------------------------------
# int-level primitives
# ---------------------------------------------------------------------------


def _mul(a: int, b: int) -> int:
    """Carry-less product of two bit masks."""
    if not a or not b:
        return 0
    if _popcount(a) > _popcount(b):
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a ^= low
    return r


def _sqr(a: int) -> int:
    """Square of a mask: interleave a zero bit after every coefficient."""
    if a < 2:
        return a
    return int("0".join(bin(a)[2:]), 2)


def _sqrt(a: int) -> int:
    """Inverse of _sqr; the caller guarantees all odd-position bits are 0."""
    if a < 2:
        return a
    return int(bin(a)[2:][::2], 2)


def _divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of mask division."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    da = a.bit_length()
    while da >= db:
        shift = da - db
        q |= 1 << shift
        a ^= b << shift
        da = a.bit_length()
    return q, a


def _mod(a: int, b: int) -> int:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    da = a.bit_length()
    while da >= db:
        a ^= b << (da - db)
        da = a.bit_length()
    return a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _pow(a: int, k: int) -> int:
    """a**k by repeated squaring."""
    if k < 0:
        raise ValueError("negative exponent")
    r = 1
    while k:
        if k & 1:
            r = _mul(r, a)
        k >>= 1
        if k:
            a = _sqr(a)
    return r


def _sqr_mod(a: int, m: int) -> int:
    return _mod(_sqr(a), m)


def _derivative(a: int) -> int:
    """Formal derivative: keep odd-position coefficients, shifted down."""
    n = a.bit_length()
    even_mask = ((1 << (2 * ((n + 1) // 2))) - 1) // 3  # bits 0, 2, 4, ...
    return (a >> 1) & even_mask


def _bar(a: int) -> int:
    """Substitute x -> x + 1 (a ring involution), by Horner evaluation."""
    r = 0
    for i in range(a.bit_length() - 1, -1, -1):
        r = (r << 1) ^ r ^ ((a >> i) & 1)
    return r


def _star(a: int) -> int:
    """Reverse the coefficients of a nonzero mask across positions 0..deg."""
    if not a:
        raise ValueError("star transform of the zero polynomial")
    return int(bin(a)[2:][::-1], 2)


# ---------------------------------------------------------------------------
# parsing and printing
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^(?:0|1|x(?:\^(\d+))?)$")
_HEX_RE = re.compile(r"^0[xX][0-9a-fA-F]+$")


def _parse_mask(text: str) -> int:
    """Strict grammar: '+'-separated terms from {1, x, x^k}, or a 0x... mask."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty polynomial", text, 0)
    if stripped[:2] in ("0x", "0X"):
        if not _HEX_RE.match(stripped):
            raise ParseError("malformed hex mask", text, text.find(stripped[:2]))
        return int(stripped, 16)
    mask = 0
    pos = 0
    for chunk in text.split("+"):
        term = "".join(chunk.split())  # whitespace is ignored, even inside a term
        m = _TERM_RE.match(term)
        if not m:
            raise ParseError(f"malformed term {term!r}", text, pos + len(chunk) - len(chunk.lstrip()))
        if term == "0":
            pass  # zero term contributes nothing; lets the printer's "0" re-parse
        elif term == "1":
            mask ^= 1  # repeated terms cancel mod 2
        elif m.group(1) is None:
            mask ^= 2
        else:
            mask ^= 1 << int(m.group(1))
        pos += len(chunk) + 1
    return mask


_EXPR_TOKEN_RE = re.compile(r"\s*(0[xX][0-9a-fA-F]+|\d+|x|[-+*^()])")


def _tokenize_expr(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _EXPR_TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError("unexpected character", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _ExprParser:
    """Recursive descent for sums/products/powers of parenthesized atoms."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize_expr(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, int]:
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", self.text, len(self.text))
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> int:
        if not self.tokens:
            raise ParseError("empty polynomial", self.text, 0)
        mask = self.expr()
        if self.i < len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()!r}", self.text, self.tokens[self.i][1])
        return mask

    def expr(self) -> int:
        mask = self.term()
        while self.peek() == "+":
            self.next()
            mask ^= self.term()
        return mask

    def term(self) -> int:
        mask = self.factor()
        while self.peek() == "*":
            self.next()
            mask = _mul(mask, self.factor())
        return mask

    def factor(self) -> int:
        mask = self.atom()
        if self.peek() == "^":
            self.next()
            tok, pos = self.next()
            if not tok.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer, got {tok!r}", self.text, pos)
            mask = _pow(mask, int(tok))
        return mask

    def atom(self) -> int:
        tok, pos = self.next()
        if tok == "(":
            mask = self.expr()
            tok2, pos2 = self.next()
            if tok2 != ")":
                raise ParseError(f"expected ')', got {tok2!r}", self.text, pos2)
            return mask
        if tok == "x":
            return 2
        if tok[:2] in ("0x", "0X"):
            return int(tok, 16)
        if tok == "0":
            return 0
        if tok == "1":
            return 1
        raise ParseError(f"unexpected token {tok!r}", self.text, pos)


def _format_mask(mask: int) -> str:
    if not mask:
        return "0"
    parts = []
    for i in range(mask.bit_length() - 1, -1, -1):
        if (mask >> i) & 1:
            parts.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(parts)


# ---------------------------------------------------------------------------
# the Poly wrapper
# ---------------------------------------------------------------------------


class Poly:
    """Immutable polynomial over GF(2), hashable and totally ordered by mask.

    The mask order coincides with (degree, then mask) order, which is the
    canonical ordering used everywhere factors are listed.
    """

    __slots__ = ("mask",)

    def __init__(self, mask: int):
        if not isinstance(mask, int) or mask < 0:
            raise ValueError(f"mask must be a nonnegative int, got {mask!r}")
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return self.mask.bit_length() - 1

    # -- construction ------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse a '+'-separated sum of terms {1, x, x^k} or a 0x... mask."""
        return cls(_parse_mask(text))

    @classmethod
    def parse_expr(cls, text: str) -> "Poly":
        """Parse the extended grammar with '*', '^' and parenthesized atoms."""
        return cls(_ExprParser(text).parse())

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.mask ^ other.mask)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly(_mul(self.mask, other.mask))

    def __pow__(self, k: int) -> "Poly":
        return Poly(_pow(self.mask, k))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        q, r = _divmod(self.mask, other.mask)
        return Poly(q), Poly(r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return Poly(_divmod(self.mask, other.mask)[0])

    def __mod__(self, other: "Poly") -> "Poly":
        return Poly(_mod(self.mask, other.mask))

    # -- transforms --------------------------------------------------------

    def derivative(self) -> "Poly":
        """Formal derivative."""
        return Poly(_derivative(self.mask))

    def bar(self) -> "Poly":
        """The conjugate under x -> x + 1; an involution."""
        return Poly(_bar(self.mask))

    def star(self) -> "Poly":
        """Coefficient reversal x^deg * p(1/x); requires p != 0."""
        return Poly(_star(self.mask))

    def is_even(self) -> bool:
        """True iff divisible by x or by x + 1 (i.e. has a root in GF(2))."""
        if not self.mask:
            raise ValueError("evenness of the zero polynomial is undefined")
        return (self.mask & 1) == 0 or _popcount(self.mask) % 2 == 0

    def is_odd(self) -> bool:
        return not self.is_even()

    # -- comparisons and niceties ------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __lt__(self, other: "Poly") -> bool:
        return self.mask < other.mask

    def __le__(self, other: "Poly") -> bool:
        return self.mask <= other.mask

    def __bool__(self) -> bool:
        return self.mask != 0

    def __str__(self) -> str:
        return _format_mask(self.mask)

    def __repr__(self) -> str:
        return f"Poly({_format_mask(self.mask)})"

    def to_hex(self) -> str:
        return format(self.mask, "#x")


def gcd(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor; gcd(0, 0) = 0, gcd(p, 0) = p."""
    return Poly(_gcd(p.mask, q.mask))


def parse(text: str) -> Poly:
    """Module-level alias of :meth:`Poly.parse`."""
    return Poly.parse(text)


def parse_expr(text: str) -> Poly:
    """Module-level alias of :meth:`Poly.parse_expr`."""
    return Poly.parse_expr(text)


ZERO = Poly(0)
ONE = Poly(1)
X = Poly(2)
