"""Exact integer combinatorics for power ideals.

Binomials with the vanishing convention, Hilbert functions of complete
intersections of powers of linear forms and of the almost complete
intersections obtained by adding one more general power.  Everything here is
plain ``int`` arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import IndexOutOfRange


@dataclass(frozen=True)
class ExponentConfig:
    """Number of variables and the sorted generator exponents a_1 <= ... <= a_n."""

    num_vars: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be positive")
        exps = tuple(sorted(int(a) for a in self.exponents))
        if not exps:
            raise ValueError("at least one exponent is required")
        if exps[0] < 1:
            raise ValueError(f"exponents must be >= 1, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def is_almost_complete_intersection(self) -> bool:
        return self.n == self.num_vars + 1

    @property
    def is_uniform(self) -> bool:
        return len(set(self.exponents)) == 1

    def __str__(self):
        return f"r={self.num_vars} ({','.join(map(str, self.exponents))})"


@dataclass(frozen=True)
class HilbertFunction:
    """Dense Hilbert function from degree 0; degrees outside the stored range read as 0."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = list(self.values)
        while vals and vals[-1] == 0:
            vals.pop()
        if any(v < 0 for v in vals):
            raise ValueError("Hilbert function values must be nonnegative")
        object.__setattr__(self, "values", tuple(vals))

    @property
    def socle_degree(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.values):
            return self.values[j]
        return 0

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def total(self) -> int:
        return sum(self.values)

    def is_symmetric(self) -> bool:
        return self.values == self.values[::-1]


class FirstDifference(NamedTuple):
    value: int
    simplified: bool


class GrowthCheck(NamedTuple):
    holds: bool
    left: int
    right: int


def binomial_or_zero(a: int, r: int) -> int:
    """C(a, r) for a >= r >= 0, and 0 whenever a < r (negative a included)."""
    if r < 0 or a < r:
        return 0
    return math.comb(a, r)


def pos_part(m: int) -> int:
    return m if m > 0 else 0


def _multiply_geometric(h: list[int], a: int) -> list[int]:
    # h * (1 + z + ... + z^(a-1)) as a sliding window sum
    out = [0] * (len(h) + a - 1)
    running = 0
    for i in range(len(out)):
        if i < len(h):
            running += h[i]
        if i - a >= 0:
            running -= h[i - a]
        out[i] = running
    return out


def ci_values(exponents: Sequence[int]) -> list[int]:
    """Coefficients of prod (1 + z + ... + z^(a_i - 1))."""
    h = [1]
    for a in exponents:
        if a < 1:
            raise ValueError("exponents must be >= 1")
        h = _multiply_geometric(h, a)
    return h


def ci_hilbert(config: ExponentConfig) -> HilbertFunction:
    """Hilbert function of the complete intersection of r powers of independent linear forms."""
    if config.n != config.num_vars:
        raise ValueError(f"complete intersection needs n = r, got {config}")
    return HilbertFunction(tuple(ci_values(config.exponents)))


def _aci_values(exponents: Sequence[int]) -> tuple[list[int], int]:
    *base, last = exponents
    h = ci_values(base)
    return h, last


def aci_hilbert(config: ExponentConfig) -> HilbertFunction:
    """Hilbert function of R/I for r+1 general powers, via the SLP of the complete intersection."""
    if not config.is_almost_complete_intersection:
        raise ValueError(f"almost complete intersection needs n = r + 1, got {config}")
    h, a = _aci_values(config.exponents)

    def hA(t):
        return h[t] if 0 <= t < len(h) else 0

    return HilbertFunction(tuple(pos_part(hA(j) - hA(j - a)) for j in range(len(h))))


def expected_first_difference(config: ExponentConfig, j: int) -> FirstDifference:
    """dim[R/I]_j - dim[R/I]_{j-1}, signed, plus whether the unclamped shortcut is valid at j."""
    if not config.is_almost_complete_intersection:
        raise ValueError(f"almost complete intersection needs n = r + 1, got {config}")
    h, a = _aci_values(config.exponents)

    def hA(t):
        return h[t] if 0 <= t < len(h) else 0

    value = pos_part(hA(j) - hA(j - a)) - pos_part(hA(j - 1) - hA(j - 1 - a))
    sigma = sum(x - 1 for x in config.exponents[:-1])
    return FirstDifference(value, 2 * j <= a + sigma)


def power_expansion_coeffs(d: int, k: int) -> list[int]:
    """Coefficients of (1 + z + ... + z^d)^k by inclusion-exclusion."""
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    out = []
    for s in range(k * d + 1):
        total = 0
        for i in range(min(k, s // (d + 1)) + 1):
            total += (-1) ** i * math.comb(k, i) * binomial_or_zero(s - i * (d + 1) + k - 1, k - 1)
        out.append(total)
    return out


def coefficient_growth_holds(n: int, d: int) -> GrowthCheck:
    """Compare a_{nd} - a_{nd-1} with a_{nd-d-1} - a_{nd-d-2} for (1 + ... + z^d)^(2n)."""
    if n * d - d - 2 < 0:
        raise IndexOutOfRange(f"index nd-d-2 = {n * d - d - 2} is negative")
    a = power_expansion_coeffs(d, 2 * n)
    left = a[n * d] - a[n * d - 1]
    right = a[n * d - d - 1] - a[n * d - d - 2]
    return GrowthCheck(left <= right, left, right)
