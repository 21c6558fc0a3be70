"""Weyl characters as exact Laurent polynomials on the weight lattice."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Mapping
from fractions import Fraction

from .algebra_data import RootSystem, Weight, weyl_orbit
from .errors import InternalError, InvalidParameter


class WeightPolynomial:
    """Finite sum ``sum_n C_n exp(tau . n)`` with integer coefficients.

    Zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Weight, int] | Iterable[tuple[Weight, int]] = ()):
        acc: dict[Weight, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(exp)
            acc[exp] = acc.get(exp, 0) + int(c)
        self.terms = {e: c for e, c in acc.items() if c}

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*e^{e}" for e, c in sorted(self.terms.items(), reverse=True))
        return f"WeightPolynomial({body or '0'})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: WeightPolynomial) -> WeightPolynomial:
        return WeightPolynomial([*self.terms.items(), *other.terms.items()])

    def __sub__(self, other: WeightPolynomial) -> WeightPolynomial:
        return WeightPolynomial([*self.terms.items(), *((e, -c) for e, c in other.terms.items())])

    def __mul__(self, other: WeightPolynomial) -> WeightPolynomial:
        out: dict[Weight, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return WeightPolynomial(out)

    def mass(self) -> int:
        return sum(self.terms.values())

    def evaluate(self, tau: Iterable[float]) -> float:
        tau = tuple(tau)
        return math.fsum(c * math.exp(sum(a * b for a, b in zip(tau, e))) for e, c in self.terms.items())

    def transform(self, matrix) -> WeightPolynomial:
        """Apply an integer matrix to every exponent."""
        return WeightPolynomial(
            (tuple(sum(row[j] * e[j] for j in range(len(e))) for row in matrix), c)
            for e, c in self.terms.items()
        )

    def divide_exact(self, other: WeightPolynomial) -> WeightPolynomial:
        """Exact quotient ``self / other``; raise if a remainder is left."""
        if not other:
            raise InvalidParameter("division by the zero polynomial")
        if not self:
            return WeightPolynomial()
        lead_exp = max(other.terms, key=_order_key)
        lead = other.terms[lead_exp]
        low = _order_key(min(self.terms, key=_order_key))
        low_den = _order_key(min(other.terms, key=_order_key))
        floor = tuple(a - b for a, b in zip(low, low_den))

        rem = dict(self.terms)
        quot: dict[Weight, int] = {}
        while rem:
            top = max(rem, key=_order_key)
            c = rem[top]
            q_exp = tuple(a - b for a, b in zip(top, lead_exp))
            if c % lead or _order_key(q_exp) < floor:
                raise InternalError("Weyl denominator does not divide the numerator")
            q = c // lead
            quot[q_exp] = q
            for e, d in other.terms.items():
                k = tuple(a + b for a, b in zip(q_exp, e))
                v = rem.get(k, 0) - q * d
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return WeightPolynomial(quot)


def _order_key(exp: Weight) -> tuple[int, ...]:
    # linear total order compatible with multiplication
    return (sum(exp), *exp)


def _check_dominant(rs: RootSystem, hw: Iterable[int]) -> Weight:
    hw = tuple(int(x) for x in hw)
    if len(hw) != rs.rank:
        raise InvalidParameter(f"{rs.kind.value} needs {rs.rank} weight components, got {len(hw)}")
    if any(x < 0 for x in hw):
        raise InvalidParameter(f"highest weight {hw} is not dominant")
    return hw


def alternant(rs: RootSystem, weight: Weight) -> WeightPolynomial:
    """``sum_W det(W) exp(W weight)``."""
    return WeightPolynomial((w, s) for w, s in weyl_orbit(rs, weight))


def character(rs: RootSystem, hw: Iterable[int]) -> WeightPolynomial:
    hw = _check_dominant(rs, hw)
    shifted = tuple(a + b for a, b in zip(hw, rs.rho))
    return alternant(rs, shifted).divide_exact(alternant(rs, rs.rho))


def weyl_dimension(rs: RootSystem, hw: Iterable[int]) -> int:
    """Product formula over positive roots, in exact rational arithmetic."""
    hw = _check_dominant(rs, hw)
    w = rs.symmetrizers
    num = Fraction(1)
    for k in rs.positive_roots:
        top = sum(k[i] * w[i] * (hw[i] + 1) for i in range(rs.rank))
        bottom = sum(k[i] * w[i] for i in range(rs.rank))
        num *= Fraction(top, bottom)
    if num.denominator != 1:
        raise InternalError(f"non-integral Weyl dimension {num}")
    return int(num)


def dimension(rs: RootSystem, hw: Iterable[int]) -> int:
    """Dimension from the character mass, cross-checked against the product formula."""
    mass = character(rs, hw).mass()
    prod = weyl_dimension(rs, hw)
    if mass != prod:
        raise InternalError(f"character mass {mass} != product formula {prod}")
    return mass


def reduce_to_a1(char: WeightPolynomial, direction: Iterable[int]) -> dict[int, int]:
    """Exponent histogram after substituting ``tau = s * direction``."""
    direction = tuple(direction)
    hist: Counter[int] = Counter()
    for e, c in char.terms.items():
        hist[sum(a * b for a, b in zip(e, direction))] += c
    return {k: v for k, v in sorted(hist.items(), reverse=True) if v}
