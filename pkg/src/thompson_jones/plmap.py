"""Exact piecewise-linear maps of the unit interval and of the circle.

Points are :class:`fractions.Fraction` values; elements of F and T only ever
produce dyadic breakpoints and power-of-two slopes, and :meth:`PLMap.validate`
checks that.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, ValidationError

__all__ = ["PLMap", "parse_dyadic", "is_dyadic", "dyadic_exponent", "digit_sum"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def is_dyadic(x: Fraction) -> bool:
    d = Fraction(x).denominator
    return d & (d - 1) == 0


def dyadic_exponent(x: Fraction) -> int:
    """``e`` such that ``x == k / 2**e`` in lowest terms."""
    x = Fraction(x)
    if not is_dyadic(x):
        raise ValidationError(f"{x} is not a dyadic rational")
    return x.denominator.bit_length() - 1


def digit_sum(x: Fraction) -> int:
    """Number of 1s in the terminating binary expansion of a dyadic in [0, 1)."""
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValidationError(f"{x} is outside [0, 1)")
    if not is_dyadic(x):
        raise ValidationError(f"{x} is not a dyadic rational")
    return bin(x.numerator).count("1")


_DYADIC_RE = re.compile(r"^\s*(-?\d+)\s*/\s*2\s*\^\s*(\d+)\s*$")


def parse_dyadic(text: str) -> Fraction:
    """Parse ``"k/2^e"``, ``"k/m"`` with ``m`` a power of two, or ``"0.75"``."""
    m = _DYADIC_RE.match(text)
    if m:
        return Fraction(int(m.group(1)), 2 ** int(m.group(2)))
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a dyadic rational: {text!r}", text, 0) from None
    if not is_dyadic(value):
        raise ParseError(f"denominator is not a power of two: {text!r}", text, 0)
    return value


@dataclass(frozen=True)
class PLMap:
    """Affine on each ``[breakpoints[i], breakpoints[i+1]]``: ``x ↦ slope*x + offset``.

    ``circle`` maps are read modulo 1 (image pieces may be out of order); the
    pieces are always stored merged, so equal maps compare equal.
    """

    breakpoints: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]
    offsets: tuple[Fraction, ...]
    circle: bool = False

    @classmethod
    def from_pieces(cls, pieces: Sequence[tuple[Fraction, Fraction, Fraction, Fraction]], circle=False):
        """Build from (a, b, image_a, image_b) affine pieces covering [0, 1] in order."""
        bps = [Fraction(pieces[0][0])]
        slopes: list[Fraction] = []
        offsets: list[Fraction] = []
        for a, b, fa, fb in pieces:
            a, b, fa, fb = map(Fraction, (a, b, fa, fb))
            if a != bps[-1] or not a < b:
                raise ValidationError("pieces must tile [0, 1] left to right")
            slope = (fb - fa) / (b - a)
            offset = fa - slope * a
            if slopes and slopes[-1] == slope and offsets[-1] == offset:
                bps[-1] = b
                continue
            slopes.append(slope)
            offsets.append(offset)
            bps.append(b)
        if bps[0] != 0 or bps[-1] != 1:
            raise ValidationError("pieces must cover [0, 1]")
        return cls(tuple(bps), tuple(slopes), tuple(offsets), circle)

    @classmethod
    def identity(cls):
        return cls((_ZERO, _ONE), (_ONE,), (_ZERO,))

    def pieces(self):
        for i, (k, c) in enumerate(zip(self.slopes, self.offsets)):
            a, b = self.breakpoints[i], self.breakpoints[i + 1]
            yield a, b, k * a + c, k * b + c

    def _index(self, x: Fraction) -> int:
        bps = self.breakpoints
        lo, hi = 0, len(bps) - 2
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if bps[mid] <= x:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if self.circle:
            x = x % 1
        elif not 0 <= x <= 1:
            raise ValidationError(f"{x} is outside [0, 1]")
        i = self._index(x)
        y = self.slopes[i] * x + self.offsets[i]
        return y % 1 if self.circle else y

    def is_identity(self) -> bool:
        return self.slopes == (_ONE,) and self.offsets == (_ZERO,)

    def validate(self) -> None:
        """Check the Thompson-group conditions: dyadic data, power-of-2 slopes, bijectivity."""
        for a, b, fa, fb in self.pieces():
            for p in (a, b, fa, fb):
                if not is_dyadic(p):
                    raise ValidationError(f"non-dyadic breakpoint {p}")
        for k in self.slopes:
            if k <= 0 or not (is_dyadic(k) and (k.numerator & (k.numerator - 1)) == 0):
                raise ValidationError(f"slope {k} is not a power of two")
        images = sorted((fa, fb) for _, _, fa, fb in self.pieces())
        if images[0][0] != 0 or images[-1][1] != 1:
            raise ValidationError("map is not onto [0, 1]")
        for (_, hi), (lo, _) in zip(images, images[1:]):
            if hi != lo:
                raise ValidationError("image pieces overlap or leave a hole")
        if not self.circle:
            for (_, _, _, fb), (_, _, fa, _) in zip(self.pieces(), list(self.pieces())[1:]):
                if fb != fa:
                    raise ValidationError("interval map is discontinuous")

    def compose(self, inner: "PLMap") -> "PLMap":
        """``self ∘ inner``."""
        out = []
        for a, b, fa, fb in inner.pieces():
            k = (fb - fa) / (b - a)
            lo, hi = min(fa, fb), max(fa, fb)
            cuts = [bp for bp in self.breakpoints if lo < bp < hi]
            xs = [a] + [a + (c - fa) / k for c in cuts] + [b]
            for x0, x1 in zip(xs, xs[1:]):
                y0, y1 = fa + k * (x0 - a), fa + k * (x1 - a)
                mid = (y0 + y1) / 2
                j = self._index(mid)
                z0 = self.slopes[j] * y0 + self.offsets[j]
                z1 = self.slopes[j] * y1 + self.offsets[j]
                out.append((x0, x1, z0, z1))
        return PLMap.from_pieces(out, circle=self.circle or inner.circle)

    def inverse(self) -> "PLMap":
        pieces = sorted(self.pieces(), key=lambda p: p[2])
        return PLMap.from_pieces([(fa, fb, a, b) for a, b, fa, fb in pieces], circle=self.circle)

    def fixed_intervals(self) -> list[tuple[Fraction, Fraction]]:
        """Maximal intervals on which the map is the identity."""
        return [
            (self.breakpoints[i], self.breakpoints[i + 1])
            for i, (k, c) in enumerate(zip(self.slopes, self.offsets))
            if k == 1 and c == 0
        ]

    def fixed_measure(self) -> Fraction:
        return sum((b - a for a, b in self.fixed_intervals()), _ZERO)

    def __str__(self):
        parts = [
            f"[{a},{b}]->[{fa},{fb}]" for a, b, fa, fb in self.pieces()
        ]
        return " ".join(parts)
