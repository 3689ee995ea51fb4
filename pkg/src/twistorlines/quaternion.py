"""Quaternions as Cayley-Dickson pairs of complex scalars, and points of HP^1.

A quaternion ``a + b*j`` (``a``, ``b`` complex) multiplies by
``(a + bj)(c + dj) = (ac - b*conj(d)) + (ad + b*conj(c)) j``, so that
``j*c = conj(c)*j`` for complex ``c``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .scalars import GR, is_exact, is_zero, scalar_from_json, scalar_to_json

__all__ = ["Quaternion", "HPoint"]


@dataclass(frozen=True)
class Quaternion:
    a: object = GR(0)
    b: object = GR(0)

    @classmethod
    def from_complex(cls, c) -> "Quaternion":
        return cls(c, GR(0) if is_exact(c) else 0j)

    @classmethod
    def j(cls) -> "Quaternion":
        return cls(GR(0), GR(1))

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b)

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            other = Quaternion.from_complex(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return Quaternion(a * c - b * d.conjugate(), a * d + b * c.conjugate())

    def __rmul__(self, other):
        return Quaternion.from_complex(other) * self

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a.conjugate(), -self.b)

    def norm(self):
        """``|a|^2 + |b|^2``, a nonnegative rational in exact mode."""
        n = self.a * self.a.conjugate() + self.b * self.b.conjugate()
        return n.re if is_exact(n) else n.real

    def is_zero(self) -> bool:
        return is_zero(self.a) and is_zero(self.b)

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("quaternion inverse of zero")
        c = self.conjugate()
        return Quaternion(c.a / n, c.b / n)

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))


@dataclass(frozen=True, eq=False)
class HPoint:
    """Point ``[h1, h2]`` of the left quaternionic projective line.

    Two pairs are the same point when they differ by a LEFT scalar
    ``(lam*h1, lam*h2)``.
    """

    h1: Quaternion
    h2: Quaternion

    def __post_init__(self):
        if self.h1.is_zero() and self.h2.is_zero():
            raise ValueError("HPoint needs a nonzero coordinate")

    @classmethod
    def chart(cls, q1, q2) -> "HPoint":
        """The point ``[1, q1 + q2 j]``."""
        return cls(Quaternion(GR(1) if is_exact(q1) else 1 + 0j, GR(0) if is_exact(q1) else 0j),
                   Quaternion(q1, q2))

    @classmethod
    def infinity(cls) -> "HPoint":
        return cls(Quaternion(GR(0), GR(0)), Quaternion(GR(1), GR(0)))

    def is_infinity(self) -> bool:
        return self.h1.is_zero()

    def chart_coordinate(self) -> Quaternion:
        """``q = h1^{-1} h2``; raises for the point at infinity."""
        if self.h1.is_zero():
            raise ValueError("point at infinity has no chart-A coordinate")
        return self.h1.inverse() * self.h2

    def normal_form(self):
        """``("A", q)`` for ``[1, q]``, ``("B", None)`` for ``[0, 1]``."""
        if self.h1.is_zero():
            return ("B", None)
        return ("A", self.chart_coordinate())

    def __eq__(self, other):
        if not isinstance(other, HPoint):
            return NotImplemented
        return self.normal_form() == other.normal_form()

    def __hash__(self):
        return hash(self.normal_form())

    def to_json(self) -> dict:
        q = self.chart_coordinate()
        return {"q1": scalar_to_json(q.a), "q2": scalar_to_json(q.b)}

    @classmethod
    def from_json(cls, obj: dict) -> "HPoint":
        return cls.chart(scalar_from_json(obj["q1"]), scalar_from_json(obj["q2"]))

