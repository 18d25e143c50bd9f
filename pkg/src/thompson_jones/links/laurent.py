"""Laurent polynomials in one variable ``A`` with integer coefficients."""

from __future__ import annotations

from typing import Mapping

__all__ = ["LaurentPoly", "A", "ONE", "DELTA"]


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {int(e): int(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()})

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.terms.items())}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly({-e * -k: c ** (-k)})
        out = LaurentPoly({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A**k``."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def invert_variable(self) -> "LaurentPoly":
        """Substitute ``A -> A⁻¹``."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def min_exponent(self) -> int:
        return min(self.terms)

    def max_exponent(self) -> int:
        return max(self.terms)

    def evaluate(self, a: complex) -> complex:
        return sum(c * a**e for e, c in self.terms.items())

    def framing_normal_form(self) -> "LaurentPoly":
        """Representative of ``{(-A³)^k · p}`` whose lowest exponent is 0, 1 or 2."""
        if not self.terms:
            return self
        k = -(self.min_exponent() // 3)
        return self * (LaurentPoly({3: -1}) ** k) if k >= 0 else self * (LaurentPoly({-3: -1}) ** -k)

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


A = LaurentPoly({1: 1})
ONE = LaurentPoly({0: 1})
DELTA = LaurentPoly({2: -1, -2: -1})
