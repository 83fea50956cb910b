"""Finite field arithmetic for the distinct-root counting machinery.

Fields GF(p^e) are represented by a prime, a degree and a monic irreducible
modulus polynomial; elements are little-endian coefficient tuples over F_p.
Only desk-scale prime powers are needed, so irreducibility is verified by
brute-force trial division at construction time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .errors import SpecError
from .groups import _is_prime

Element = tuple[int, ...]

# Monic irreducible moduli (little-endian, constant term first) for the
# prime powers the package ships with.
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),        # x^2 + x + 1 over F_2
    8: (1, 1, 0, 1),     # x^3 + x + 1 over F_2
    9: (1, 0, 1),        # x^2 + 1 over F_3
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1 over F_2
    25: (2, 1, 1),       # x^2 + x + 2 over F_5
    27: (1, 2, 0, 1),    # x^3 + 2x + 1 over F_3
    49: (3, 1, 1),       # x^2 + x + 3 over F_7
}


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mod(num: list[int], den: tuple[int, ...], p: int) -> tuple[int, ...]:
    num = [x % p for x in num]
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            f = (c * inv_lead) % p
            for j, m in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - f * m) % p
    return _poly_trim(num[:dd] if dd else [])


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p == 0:
        return False
    if e == 1:
        return True
    for deg in range(1, e // 2 + 1):
        for tail in product(range(p), repeat=deg):
            div = tuple(tail) + (1,)
            if not _poly_mod(list(modulus), div, p):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    """GF(p^e) with a fixed monic irreducible modulus (ignored when e = 1)."""

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise SpecError(f"{self.p} is not prime")
        if self.e < 1:
            raise SpecError("field degree must be positive")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] % self.p != 1:
            raise SpecError("modulus must be monic of degree e")
        if not _is_irreducible(tuple(c % self.p for c in self.modulus), self.p):
            raise SpecError("modulus polynomial is reducible")

    @property
    def order(self) -> int:
        return self.p**self.e

    @property
    def zero(self) -> Element:
        return (0,) * self.e

    @property
    def one(self) -> Element:
        return (1,) + (0,) * (self.e - 1)

    def elements(self) -> list[Element]:
        """All q elements, ordered by their integer encoding sum c_i p^i."""
        out = []
        for idx in range(self.order):
            n, digits = idx, []
            for _ in range(self.e):
                n, r = divmod(n, self.p)
                digits.append(r)
            out.append(tuple(digits))
        return out

    def label(self, a: Element) -> str:
        return str(sum(c * self.p**i for i, c in enumerate(a)))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % self.p for x in a)

    def mul(self, a: Element, b: Element) -> Element:
        conv = [0] * (2 * self.e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        red = list(_poly_mod(conv, self.modulus, self.p))
        return tuple(red) + (0,) * (self.e - len(red))

    def pow(self, a: Element, n: int) -> Element:
        acc = self.one
        base = a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def inv(self, a: Element) -> Element:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.order - 2)


def field_for_order(q: int, modulus: tuple[int, ...] | None = None) -> FiniteField:
    """Field of order q, using the built-in modulus table for prime powers."""
    p, e = None, None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            e = 0
            n = q
            while n % cand == 0:
                n //= cand
                e += 1
            if n != 1:
                raise SpecError(f"{q} is not a prime power")
            break
    if p is None:
        raise SpecError(f"{q} is not a prime power")
    if e == 1:
        return FiniteField(p, 1, (0, 1) if modulus is None else modulus)
    if modulus is None:
        if q not in DEFAULT_MODULI:
            raise SpecError(f"no built-in modulus for GF({q}); supply one explicitly")
        modulus = DEFAULT_MODULI[q]
    return FiniteField(p, e, modulus)


_TERM = re.compile(r"^(\d*)\*?(x(\^(\d+))?)?$")


def _parse_poly(text: str, p: int) -> tuple[int, ...]:
    coeffs: dict[int, int] = {}
    for raw in text.replace("-", "+-").split("+"):
        term = raw.strip()
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:].strip()
        m = _TERM.match(term)
        if not m or (not m.group(1) and not m.group(2)):
            raise SpecError(f"cannot parse polynomial term {raw!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        deg = 0
        if m.group(2):
            deg = int(m.group(4)) if m.group(4) else 1
        coeffs[deg] = (coeffs.get(deg, 0) + (-coef if neg else coef)) % p
    degree = max(coeffs) if coeffs else 0
    return tuple(coeffs.get(i, 0) for i in range(degree + 1))


def parse_field(text: str) -> FiniteField:
    """Parse field specs like "GF(7)" or "GF(25;x^2+x+2)"."""
    m = re.fullmatch(r"GF\((\d+)(?:;([^)]+))?\)", text.strip())
    if not m:
        raise SpecError(f"cannot parse field spec {text!r}")
    q = int(m.group(1))
    if m.group(2) is None:
        return field_for_order(q)
    # characteristic of q, for reducing the polynomial's coefficients
    p = next(c for c in range(2, q + 1) if q % c == 0)
    return field_for_order(q, _parse_poly(m.group(2), p))


def distinct_root_histogram(field: FiniteField, k: int) -> dict[tuple[Element, ...], int]:
    """Bucket counts N(a_1..a_k) of split polynomials by mid coefficients.

    For every (a_1,...,a_k) in F_q^k the value is the number of constants a_0
    such that x^(k+1) + a_k x^k + ... + a_1 x + a_0 has k+1 distinct roots.
    Each (k+1)-subset of F_q lands in exactly one bucket, so the counts are
    gathered by a single sweep over all subsets.
    """
    if k >= field.p:
        raise ValueError("power sums degenerate")
    elems = field.elements()
    hist: dict[tuple[Element, ...], int] = {key: 0 for key in product(elems, repeat=k)}
    for subset in combinations(elems, k + 1):
        poly = [field.one]
        for x in subset:
            nxt = [field.neg(field.mul(x, poly[0]))]
            for i in range(1, len(poly)):
                nxt.append(field.add(poly[i - 1], field.neg(field.mul(x, poly[i]))))
            nxt.append(poly[-1])
            poly = nxt
        hist[tuple(poly[1:k + 1])] += 1
    assert sum(hist.values()) == comb(field.order, k + 1)
    return hist
