"""Cyclic quotient singularities of class T and their Q-Gorenstein smoothings.

The class T singularity 1/(dn^2)(1, dna-1) is the quotient of the A_{dn-1}
point uv - z^{dn} = 0 by mu_n acting as (u, v, z) -> (xi u, xi^-1 v, xi^a z).
The family uv - z^{dn} = sum_{k<d} t_k z^{kn} is mu_n-invariant, and its
quotient over C^d is a Q-Gorenstein smoothing. The link of 1/m(1,q) is the lens
space L(m, q).
"""

from __future__ import annotations

import logging
import math
import re
from typing import List, Tuple

from pydantic import BaseModel, Field

from bidouble.errors import InvalidInput, NotClassT

logger = logging.getLogger(__name__)

_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


class CyclicQuotient(BaseModel):
    """The singularity 1/m(1,q), first weight normalized to 1."""

    m: int = Field(..., description="Group order")
    q: int = Field(..., description="Second weight, in [1, m-1]")

    model_config = {"frozen": True}

    @classmethod
    def create(cls, m: int, q: int) -> CyclicQuotient:
        """Validated constructor.

        Raises:
            InvalidInput: m < 2, q outside [1, m-1] or gcd(q, m) != 1.
        """
        if m < 2 or not 1 <= q <= m - 1:
            raise InvalidInput(f"1/{m}(1,{q}) needs m >= 2 and 1 <= q <= m-1", "1 <= q <= m-1")
        if math.gcd(q, m) != 1:
            raise InvalidInput(f"gcd({q}, {m}) != 1", "gcd(q, m) = 1")
        return cls(m=m, q=q)

    def __str__(self) -> str:
        return f"1/{self.m}(1,{self.q})"


class ClassTDatum(BaseModel):
    """Parameters (d, n, a) of 1/(dn^2)(1, dna-1) = A_{dn-1}/mu_n."""

    d: int = Field(..., description="Smoothing base dimension")
    n: int = Field(..., description="Order of the quotient group mu_n")
    a: int = Field(..., description="Weight of mu_n on z, 1 <= a <= n, gcd(a, n) = 1")

    model_config = {"frozen": True}

    @classmethod
    def create(cls, d: int, n: int, a: int) -> ClassTDatum:
        if d < 1 or n < 1 or not 1 <= a <= n or math.gcd(a, n) != 1:
            raise InvalidInput(
                f"(d,n,a) = ({d},{n},{a}) needs d, n >= 1, 1 <= a <= n, gcd(a,n) = 1",
                "1 <= a <= n, gcd(a, n) = 1",
            )
        return cls(d=d, n=n, a=a)

    @property
    def order(self) -> int:
        return self.d * self.n * self.n

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.d, self.n, self.a)


class SmoothingFamilyDescriptor(BaseModel):
    """uv - z^{exponent} = sum_k t_k z^{k * modulus}, k = 0..parameter_count-1."""

    exponent: int = Field(..., description="dn")
    modulus: int = Field(..., description="n; right-hand exponents are multiples of it")
    parameter_count: int = Field(..., description="d")
    exponents: List[int] = Field(..., description="Right-hand exponents, ascending")
    group_order: int = Field(..., description="n")
    action_weights: Tuple[int, int, int] = Field(
        ..., description="Weights of mu_n on (u, v, z)"
    )

    model_config = {"frozen": True}

    def render(self, ascii_only: bool = False) -> str:
        if ascii_only:
            power = "z" if self.exponent == 1 else f"z^{self.exponent}"
            terms = [
                f"t_{k}" + ("" if e == 0 else "z" if e == 1 else f"z^{e}")
                for k, e in enumerate(self.exponents)
            ]
            return f"uv - {power} = " + " + ".join(terms)

        power = "z" if self.exponent == 1 else "z" + str(self.exponent).translate(_SUPERSCRIPTS)
        terms = [
            "t" + str(k).translate(_SUBSCRIPTS)
            + ("" if e == 0 else "z" if e == 1 else "z" + str(e).translate(_SUPERSCRIPTS))
            for k, e in enumerate(self.exponents)
        ]
        return f"uv − {power} = " + " + ".join(terms)

    def describe_action(self, ascii_only: bool = False) -> str:
        n = self.group_order
        a = self.action_weights[2]
        if n == 1:
            return "trivial group"
        if n == 2:
            z = "-z" if a % 2 else "z"
            action = f"(-u, -v, {z})"
            return f"mu_2 acting by {action}" if ascii_only else f"μ₂ acting by {action.replace('-', '−')}"
        if ascii_only:
            return f"mu_{n} acting by (xi u, xi^-1 v, xi^{a} z)"
        group = "μ" + str(n).translate(_SUBSCRIPTS)
        return f"{group} acting by (ξu, ξ⁻¹v, ξ{str(a).translate(_SUPERSCRIPTS)}z)"


def inverse_weight(s: CyclicQuotient) -> int:
    """The weight q' with 1/m(1,q) = 1/m(1,q'), q q' = 1 mod m."""
    return pow(s.q, -1, s.m)


def _square_divisors(m: int) -> List[int]:
    return [n for n in range(1, math.isqrt(m) + 1) if m % (n * n) == 0]


def recognize_class_T(s: CyclicQuotient) -> ClassTDatum:
    """Find (d, n, a) with smallest n (then a) presenting `s` as class T.

    Both normalized presentations q and q^-1 mod m are accepted.

    Raises:
        NotClassT: no parameters exist.
    """
    targets = {s.q, inverse_weight(s)}
    for n in _square_divisors(s.m):
        d = s.m // (n * n)
        for a in range(1, n + 1):
            if math.gcd(a, n) != 1:
                continue
            if (d * n * a - 1) % s.m in targets:
                datum = ClassTDatum(d=d, n=n, a=a)
                logger.debug(f"✅ {s} is class T with (d,n,a) = {datum.as_tuple()}")
                return datum
    raise NotClassT(f"{s} is not a class T singularity")


def smoothing_family(t: ClassTDatum) -> SmoothingFamilyDescriptor:
    return SmoothingFamilyDescriptor(
        exponent=t.d * t.n,
        modulus=t.n,
        parameter_count=t.d,
        exponents=[k * t.n for k in range(t.d)],
        group_order=t.n,
        action_weights=(1, -1, t.a),
    )


def link_lens_space(t: ClassTDatum) -> Tuple[int, int]:
    m = t.order
    return (m, (t.d * t.n * t.a - 1) % m)


def _normalized_lens(lens: Tuple[int, int]) -> Tuple[int, int]:
    m, q = lens
    if m < 2:
        raise InvalidInput(f"L({m},{q}) needs m >= 2", "m >= 2")
    q %= m
    if math.gcd(q, m) != 1:
        raise InvalidInput(f"L({m},{q}): gcd(q, m) != 1", "gcd(q, m) = 1")
    return m, q


def lens_equivalent(l1: Tuple[int, int], l2: Tuple[int, int]) -> bool:
    """Homeomorphism of L(m1,q1) and L(m2,q2): m1 = m2 and q2 = +-q1^(+-1) mod m."""
    m1, q1 = _normalized_lens(l1)
    m2, q2 = _normalized_lens(l2)
    if m1 != m2:
        return False
    inverse = pow(q1, -1, m1)
    return q2 in {q1, (-q1) % m1, inverse, (-inverse) % m1}


_QUOTIENT_PATTERN = re.compile(r"^\s*1\s*/\s*(\d+)\s*\(\s*1\s*,\s*(\d+)\s*\)\s*$", re.ASCII)


def parse_cyclic_quotient(text: str) -> CyclicQuotient:
    match = _QUOTIENT_PATTERN.match(text)
    if not match:
        raise InvalidInput(f"Cannot parse {text!r}; expected 1/m(1,q)", "syntax 1/m(1,q)")
    return CyclicQuotient.create(int(match.group(1)), int(match.group(2)))
