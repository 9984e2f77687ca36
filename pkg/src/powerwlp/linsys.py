"""Linear systems of hypersurfaces with assigned fat base points.

A system L_r(j; m_1, ..., m_n) is the vector space of degree-j forms on P^r
vanishing to order m_i at n general points.  Dimensions are vector-space
dimensions, not projective ones.

The dispatcher :func:`solve_linear_system` chains the exact reductions that
are available (cones, Cremona transformations, Bezout peeling of lines and
conics in the plane) and finishes with a closed formula where one is known.
When nothing applies it answers ``None`` and the caller is expected to fall
back on :mod:`powerwlp.oracle`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from .combinatorics import ExponentConfig, binomial_or_zero, pos_part
from .errors import (
    HypothesesFail,
    NotApplicable,
    NotStandardForm,
    PreconditionViolated,
    TooManyPoints,
)


@dataclass(frozen=True)
class FatPointSystem:
    proj_dim: int
    degree: int
    multiplicities: tuple[int, ...] = ()

    def __post_init__(self):
        if self.proj_dim < 0:
            raise ValueError("projective dimension must be >= 0")
        mults = tuple(sorted((int(m) for m in self.multiplicities), reverse=True))
        if mults and mults[-1] < 0:
            raise ValueError(f"negative multiplicity in {mults}")
        object.__setattr__(self, "multiplicities", mults)

    @property
    def positive(self) -> tuple[int, ...]:
        return tuple(m for m in self.multiplicities if m > 0)

    def padded(self, count: int) -> tuple[int, ...]:
        """Multiplicities (nonincreasing) padded with zeros to at least ``count`` entries."""
        return self.multiplicities + (0,) * max(0, count - len(self.multiplicities))

    def canonical(self) -> FatPointSystem:
        """Same system with zero multiplicities dropped."""
        return FatPointSystem(self.proj_dim, self.degree, self.positive)

    def __str__(self):
        parts = []
        mults = self.multiplicities
        i = 0
        while i < len(mults):
            k = i
            while k < len(mults) and mults[k] == mults[i]:
                k += 1
            parts.append(f"{mults[i]}^{k - i}" if k - i > 1 else str(mults[i]))
            i = k
        return f"L_{self.proj_dim}({self.degree}; {', '.join(parts)})"


class DivisorKind(enum.Enum):
    CONIC5 = "conic5"
    LINE2 = "line2"
    CONE_POINT = "cone_point"


@dataclass(frozen=True)
class CremonaStep:
    m: int
    touched: tuple[int, ...]
    before: FatPointSystem
    after: FatPointSystem

    def describe(self):
        return f"cremona m={self.m}: {self.before} -> {self.after}"


@dataclass(frozen=True)
class PeelStep:
    divisor_kind: DivisorKind
    multiplicity_removed: int
    before: FatPointSystem
    after: FatPointSystem

    def describe(self):
        return (f"{self.divisor_kind.value} x{self.multiplicity_removed}: "
                f"{self.before} -> {self.after}")


@dataclass
class Reduction:
    """Outcome of the dispatcher: the dimension (``None`` if unknown) and the step trace."""

    system: FatPointSystem
    value: int | None
    method: str
    steps: list = field(default_factory=list)
    residual: FatPointSystem | None = None  # where the chain stopped; same dimension as ``system``

    @property
    def known(self) -> bool:
        return self.value is not None


def expected_dimension(sys: FatPointSystem) -> int:
    r, j = sys.proj_dim, sys.degree
    virtual = binomial_or_zero(j + r, r) - sum(binomial_or_zero(m + r - 1, r) for m in sys.multiplicities)
    return pos_part(virtual)


def is_standard_form(sys: FatPointSystem) -> bool:
    r = sys.proj_dim
    top = sys.padded(r + 1)[: r + 1]
    return (r - 1) * sys.degree >= sum(top) and all(m >= 0 for m in sys.multiplicities)


def cremona_transform(sys: FatPointSystem) -> tuple[FatPointSystem, CremonaStep]:
    """Standard Cremona transformation centred at the r+1 largest points.

    Fewer than r+1 points are padded with multiplicity-zero points.
    """
    r = sys.proj_dim
    if r < 2:
        raise NotApplicable("Cremona transformation needs r >= 2")
    mults = list(sys.padded(r + 1))
    m = (r - 1) * sys.degree - sum(mults[: r + 1])
    for i in range(r + 1):
        if mults[i] + m < 0:
            raise PreconditionViolated(i, f"{sys}: multiplicity {mults[i]} + m ({m}) < 0")
    if sys.degree < 0:
        raise PreconditionViolated(-1, f"{sys}: negative degree")
    new = [x + m for x in mults[: r + 1]] + mults[r + 1:]
    after = FatPointSystem(r, sys.degree + m, tuple(new))
    return after, CremonaStep(m, tuple(range(r + 1)), sys, after)


def cone_reduction(sys: FatPointSystem) -> FatPointSystem:
    """Drop a point whose multiplicity equals the degree, projecting from it."""
    if sys.proj_dim < 1:
        raise NotApplicable("no lower-dimensional projection from P^0")
    mults = list(sys.multiplicities)
    try:
        idx = mults.index(sys.degree)
    except ValueError:
        raise NotApplicable(f"{sys}: no point of multiplicity equal to the degree") from None
    if sys.degree <= 0:
        raise NotApplicable(f"{sys}: cone reduction needs positive degree")
    del mults[idx]
    return FatPointSystem(sys.proj_dim - 1, sys.degree, tuple(mults))


def dim_standard_p2(sys: FatPointSystem) -> int:
    if sys.proj_dim != 2:
        raise ValueError("dim_standard_p2 needs a plane system")
    if not is_standard_form(sys):
        raise NotStandardForm(str(sys))
    return expected_dimension(sys)


def nef_hypotheses(sys: FatPointSystem) -> bool:
    if sys.proj_dim != 2 or len(sys.positive) > 6:
        return False
    m = sorted(sys.padded(6))
    return sys.degree >= m[4] + m[5] and 2 * sys.degree >= sum(m[1:6])


def dim_p2_nef(sys: FatPointSystem) -> int:
    """Independent-conditions count for at most six plane points under the nef inequalities."""
    if sys.proj_dim != 2:
        raise ValueError("dim_p2_nef needs a plane system")
    if len(sys.positive) > 6:
        raise TooManyPoints(f"{sys}: more than six points")
    if not nef_hypotheses(sys):
        raise HypothesesFail(f"{sys}: needs j >= m5 + m6 and 2j >= m2 + ... + m6")
    j = sys.degree
    return binomial_or_zero(j + 2, 2) - sum(binomial_or_zero(m + 1, 2) for m in sys.multiplicities)


def dim_dl_p3(sys: FatPointSystem, variant: str = "pairs") -> int:
    """Dimension of a standard-form system through at most six points of P^3.

    ``variant="pairs"`` (default) adds the speciality C(t+1, 3) of the line
    through every pair of points, t = m_i + m_k - j, to the unclamped virtual
    dimension.  ``variant="first"`` is the shorter form that only looks at
    lines through the largest point and clamps the virtual dimension first;
    it agrees with the default whenever at most the pairs through the first
    point are special and the virtual dimension is nonnegative.
    """
    if sys.proj_dim != 3:
        raise ValueError("dim_dl_p3 needs a system in P^3")
    if len(sys.positive) > 6:
        raise TooManyPoints(f"{sys}: more than six points")
    if not is_standard_form(sys):
        raise NotStandardForm(str(sys))
    j = sys.degree
    a = sys.padded(6)
    if variant == "first":
        speciality = sum(binomial_or_zero(a[0] + a[i] - j + 1, 3) for i in range(1, 6))
        return expected_dimension(sys) + speciality
    if variant != "pairs":
        raise ValueError(f"unknown variant {variant!r}")
    virtual = binomial_or_zero(j + 3, 3) - sum(binomial_or_zero(m + 2, 3) for m in a)
    speciality = sum(binomial_or_zero(a[i] + a[k] - j + 1, 3) for i, k in combinations(range(6), 2))
    return pos_part(virtual + speciality)


def peel_base_locus_p2(sys: FatPointSystem, lines_first: bool = False) -> tuple[FatPointSystem, list[PeelStep]]:
    """Strip conics through five points and lines through two points forced by Bezout.

    Each pass removes conics first, then lines (or the reverse with
    ``lines_first``), and the passes repeat until nothing is forced.  Multiplicities never go below zero; a negative
    residual degree means the system is empty.
    """
    if sys.proj_dim != 2:
        raise ValueError("peeling is implemented for plane systems only")
    if len(sys.positive) > 6:
        raise TooManyPoints(f"{sys}: peeling handles at most six points")
    mults = list(sys.multiplicities)
    j = sys.degree
    steps: list[PeelStep] = []

    def remove(kind, subset, drop):
        # Bezout: a curve of degree `drop` through the subset is a component while this is positive
        nonlocal j
        count = 0
        before = FatPointSystem(2, j, tuple(mults))
        while j >= 0 and sum(mults[i] for i in subset) - drop * j > 0:
            j -= drop
            for i in subset:
                mults[i] = max(0, mults[i] - 1)
            count += 1
        if count:
            steps.append(PeelStep(kind, count, before, FatPointSystem(2, j, tuple(mults))))
        return count

    passes = [(DivisorKind.CONIC5, 5, 2), (DivisorKind.LINE2, 2, 1)]
    if lines_first:
        passes.reverse()
    changed = True
    while changed and j >= 0:
        changed = False
        for kind, size, drop in passes:
            for subset in combinations(range(len(mults)), size):
                if remove(kind, subset, drop):
                    changed = True
    return FatPointSystem(2, j, tuple(mults)), steps


def reduce_to_fat_points(config: ExponentConfig, j: int) -> FatPointSystem:
    """The plane-section system whose dimension is dim[R/(I, l)]_j for a general linear form l."""
    r = config.num_vars
    if r < 2:
        raise ValueError("the hyperplane reduction needs at least two variables")
    mults = tuple(j - a + 1 for a in config.exponents if j - a + 1 > 0)
    return FatPointSystem(r - 2, j, mults)


def solve_linear_system(sys: FatPointSystem) -> Reduction:
    """Dimension of ``sys`` via cones, Cremona steps, peeling and closed formulas."""
    steps: list = []
    budget = max(sys.degree, 0) + sys.proj_dim + 2

    def rec(s: FatPointSystem, depth: int):
        if depth > budget:
            raise RuntimeError(f"reduction of {sys} did not terminate")
        r, j = s.proj_dim, s.degree
        if j < 0:
            return 0, "negative degree", s
        if not s.positive:
            return binomial_or_zero(j + r, r), "no conditions", s
        if s.multiplicities[0] > j:
            return 0, "multiplicity exceeds degree", s
        if r <= 1:
            return expected_dimension(s), "binary forms" if r == 1 else "point", s
        if s.multiplicities[0] == j:
            t = cone_reduction(s)
            steps.append(PeelStep(DivisorKind.CONE_POINT, j, s, t))
            return rec(t, depth + 1)
        if r == 2:
            if len(s.positive) <= 6:
                residual, psteps = peel_base_locus_p2(s)
                if psteps:
                    steps.extend(psteps)
                    return rec(residual, depth + 1)
                if nef_hypotheses(s):
                    return dim_p2_nef(s), "plane nef", s
            if is_standard_form(s):
                if len(s.positive) <= 9:
                    return dim_standard_p2(s), "plane standard form", s
                return None, "plane standard form, more than nine points", s
        if not is_standard_form(s):
            try:
                t, step = cremona_transform(s)
            except PreconditionViolated as exc:
                return None, f"cremona not applicable ({exc})", s
            steps.append(step)
            return rec(t, depth + 1)
        if r == 3 and len(s.positive) <= 6:
            return dim_dl_p3(s), "P^3 standard form", s
        return None, f"standard form in P^{r} with {len(s.positive)} points", s

    value, method, last = rec(sys, 0)
    return Reduction(sys, value, method, steps, last)


def dim_linear_system(sys: FatPointSystem) -> int | None:
    """Symbolic dimension, or ``None`` when no available method applies."""
    return solve_linear_system(sys).value


def cremona_chain(sys: FatPointSystem, max_steps: int | None = None) -> tuple[FatPointSystem, list[CremonaStep]]:
    """Apply Cremona transformations until the system reaches standard form."""
    steps = []
    cur = sys
    while not is_standard_form(cur) and cur.degree >= 0:
        if max_steps is not None and len(steps) >= max_steps:
            break
        cur, step = cremona_transform(cur)
        steps.append(step)
    return cur, steps

