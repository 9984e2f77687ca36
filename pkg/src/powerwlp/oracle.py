"""Brute-force verification over a large prime field.

General linear forms are replaced by random ones over F_p.  Graded pieces
are computed as cokernels of explicit matrices, so nothing here depends on
the symbolic machinery in :mod:`powerwlp.linsys` or on Hilbert function
formulas.

Two matrix constructions are available.  ``method="raw"`` works in the full
monomial basis of R_j.  ``method="ci"`` (the default) first changes
coordinates so that r of the forms become variables; their powers then
generate a monomial complete intersection whose standard monomials form the
basis, and only the remaining powers enter the matrix.  Both compute the
same number for the same forms; the second is much smaller.

A maximal-rank answer on one random instance certifies maximal rank for
general forms in characteristic zero (ranks only drop under reduction mod p).
A rank deficiency is only evidence, so deficient degrees are re-sampled.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .combinatorics import ExponentConfig, pos_part
from .errors import DegenerateSample, HypothesesFail
from .linsys import FatPointSystem
from .modp import fits_int64, inverse_mod_p, is_prime, rank_mod_p

DEFAULT_PRIME = 2**31 - 1
SECOND_PRIME = 2**31 - 19


@dataclass(frozen=True)
class PrimeFieldConfig:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    retries: int = 3
    second_prime: int | None = SECOND_PRIME

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.prime == SECOND_PRIME and self.second_prime == SECOND_PRIME:
            # the default re-test prime was picked as the main one; swap roles
            object.__setattr__(self, "second_prime", DEFAULT_PRIME)
        if self.second_prime is not None and (
            not is_prime(self.second_prime) or self.second_prime == self.prime
        ):
            raise ValueError(f"second prime {self.second_prime} must be a different prime")
        if self.retries < 0:
            raise ValueError("retries must be >= 0")

    def with_seed(self, seed: int) -> PrimeFieldConfig:
        return PrimeFieldConfig(self.prime, seed, self.retries, self.second_prime)

    def attempts(self):
        """(prime, seed) pairs for re-testing a rank deficiency."""
        out = [(self.prime, f"{self.seed}/retry{t}") for t in range(1, self.retries + 1)]
        if self.second_prime is not None:
            out.append((self.second_prime, f"{self.seed}/second"))
        return out


def _prime(field_or_prime) -> int:
    if isinstance(field_or_prime, PrimeFieldConfig):
        return field_or_prime.prime
    return int(field_or_prime)


@dataclass(frozen=True)
class RankReport:
    degree: int
    dim_rj: int
    dim_rj_minus: int
    dim_quotient_ell: int
    power_k: int = 1

    @property
    def expected(self) -> int:
        return pos_part(self.dim_rj - self.dim_rj_minus)

    @property
    def maximal_rank(self) -> bool:
        return self.dim_quotient_ell == self.expected

    @property
    def map_rank(self) -> int:
        """Rank of multiplication by l^k from degree j-k to degree j."""
        return self.dim_rj - self.dim_quotient_ell

    def as_dict(self):
        return {
            "degree": self.degree,
            "dim_rj": self.dim_rj,
            "dim_rj_minus": self.dim_rj_minus,
            "dim_quotient_ell": self.dim_quotient_ell,
            "expected": self.expected,
            "map_rank": self.map_rank,
            "maximal_rank": self.maximal_rank,
            "power_k": self.power_k,
        }


@dataclass
class WlpCheck:
    config: ExponentConfig
    power_k: int
    reports: list[RankReport] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(rep.maximal_rank for rep in self.reports)

    @property
    def failing_degrees(self) -> list[int]:
        return [rep.degree for rep in self.reports if not rep.maximal_rank]

    def report(self, j: int) -> RankReport:
        for rep in self.reports:
            if rep.degree == j:
                return rep
        raise KeyError(j)

    def __iter__(self):
        return iter(self.reports)

    def __len__(self):
        return len(self.reports)


# ---------------------------------------------------------------- sampling


def _rng(field_: PrimeFieldConfig | None, seed) -> random.Random:
    return random.Random(f"powerwlp:{seed}")


def _all_subsets_independent(forms, num_vars, p) -> bool:
    size = min(num_vars, len(forms))
    return all(rank_mod_p([forms[i] for i in idx], p) == size
               for idx in combinations(range(len(forms)), size))


def sample_linear_forms(num_vars: int, count: int, field: PrimeFieldConfig,
                        seed=None, max_tries: int = 8) -> list[tuple[int, ...]]:
    """``count`` random linear forms in ``num_vars`` variables, any ``num_vars`` of them independent."""
    if num_vars < 1 or count < 1:
        raise ValueError("need num_vars >= 1 and count >= 1")
    p = field.prime
    rng = _rng(field, field.seed if seed is None else seed)
    for _ in range(max_tries):
        forms = [tuple(rng.randrange(p) for _ in range(num_vars)) for _ in range(count)]
        if _all_subsets_independent(forms, num_vars, p):
            return forms
    raise DegenerateSample(f"no independent sample of {count} forms in {num_vars} variables")


# ---------------------------------------------------------- monomial bases


@lru_cache(maxsize=512)
def _bounded_monomials(bounds: tuple[int, ...], j: int) -> np.ndarray:
    """Exponent vectors of total degree j with e_i < bounds[i], in lex order (x_1 first)."""
    out: list[tuple[int, ...]] = []
    n = len(bounds)
    # suffix capacity lets the recursion prune dead branches
    cap = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        cap[i] = cap[i + 1] + bounds[i] - 1

    def rec(i, left, prefix):
        if i == n - 1:
            if left < bounds[i]:
                out.append(prefix + (left,))
            return
        for e in range(min(left, bounds[i] - 1), -1, -1):
            if left - e <= cap[i + 1]:
                rec(i + 1, left - e, prefix + (e,))

    if j >= 0 and n and j <= cap[0]:
        rec(0, j, ())
    arr = np.array(out, dtype=np.int64).reshape(len(out), n)
    arr.flags.writeable = False
    return arr


def _encode(exps: np.ndarray, radix: tuple[int, ...]) -> np.ndarray:
    key = np.zeros(exps.shape[:-1], dtype=np.int64)
    for i, b in enumerate(radix):
        key = key * b + exps[..., i]
    return key


def _power_terms(form: Sequence[int], a: int, bounds: tuple[int, ...], p: int):
    """Exponents and coefficients (mod p) of form^a, keeping only terms below ``bounds``."""
    exps = _bounded_monomials(tuple(min(b, a + 1) for b in bounds), a)
    fact = [1] * (a + 1)
    for i in range(1, a + 1):
        fact[i] = fact[i - 1] * i % p
    inv_fact = [pow(f, p - 2, p) for f in fact]
    powers = [[pow(int(c), e, p) for e in range(a + 1)] for c in form]
    coeffs = np.empty(len(exps), dtype=object)
    for t, alpha in enumerate(exps.tolist()):
        c = fact[a]
        for i, e in enumerate(alpha):
            c = c * inv_fact[e] % p * powers[i][e] % p
        coeffs[t] = c
    return exps, coeffs


def _ideal_matrix(bounds: tuple[int, ...], gens, j: int, p: int):
    """Columns: (monomial) * form^a for each generator, in the standard-monomial basis of degree j."""
    basis = _bounded_monomials(bounds, j)
    radix = tuple(b if b <= j else j + 1 for b in bounds)
    keys = _encode(basis, radix)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    blocks = []
    for form, a in gens:
        if a > j:
            continue
        shifts = _bounded_monomials(bounds, j - a)
        if len(shifts) == 0:
            continue
        texps, tcoeffs = _power_terms(form, a, bounds, p)
        prod = shifts[:, None, :] + texps[None, :, :]
        ok = np.all(prod < np.array(bounds), axis=2)
        col_idx, term_idx = np.nonzero(ok)
        row_keys = _encode(prod[col_idx, term_idx], radix)
        rows = order[np.searchsorted(sorted_keys, row_keys)]
        use_obj = not fits_int64(p)
        block = np.zeros((len(basis), len(shifts)), dtype=object if use_obj else np.int64)
        vals = tcoeffs[term_idx]
        block[rows, col_idx] = vals if use_obj else vals.astype(np.int64)
        blocks.append(block)
    if not blocks:
        return basis, None
    return basis, np.hstack(blocks)


def _coordinate_change(forms, exponents, num_vars, p):
    """Pick up to ``num_vars`` independent forms (smallest exponents first) as new coordinates."""
    order = sorted(range(len(forms)), key=lambda i: exponents[i])
    chosen: list[int] = []
    for i in order:
        if len(chosen) == num_vars:
            break
        if rank_mod_p([forms[k] for k in chosen + [i]], p) == len(chosen) + 1:
            chosen.append(i)
    rows = [list(forms[i]) for i in chosen]
    for e in range(num_vars):
        if len(rows) == num_vars:
            break
        unit = [int(k == e) for k in range(num_vars)]
        if rank_mod_p(rows + [unit], p) == len(rows) + 1:
            rows.append(unit)
    inv = inverse_mod_p(rows, p)
    return chosen, inv


def quotient_dim(forms: Sequence[Sequence[int]], exponents: Sequence[int], j: int,
                 field=DEFAULT_PRIME, method: str = "ci") -> int:
    """dim [R / <form_i^{a_i}>]_j over F_p for explicit forms."""
    if len(forms) != len(exponents):
        raise ValueError("one exponent per form is required")
    if j < 0:
        return 0
    p = _prime(field)
    num_vars = len(forms[0]) if forms else 0
    if num_vars == 0:
        raise ValueError("need at least one form")
    big = j + 1
    if method == "raw":
        bounds = (big,) * num_vars
        gens = [(tuple(f), a) for f, a in zip(forms, exponents)]
    elif method == "ci":
        chosen, inv = _coordinate_change(forms, exponents, num_vars, p)
        bounds = tuple(min(exponents[i], big) for i in chosen) + (big,) * (num_vars - len(chosen))
        gens = []
        for i, (f, a) in enumerate(zip(forms, exponents)):
            if i in chosen:
                continue
            # a form c.x becomes (c B^{-1}).y in the coordinates y = B x
            new = tuple(sum(int(f[k]) * inv[k][col] for k in range(num_vars)) % p
                        for col in range(num_vars))
            gens.append((new, a))
    else:
        raise ValueError(f"unknown method {method!r}")
    basis, M = _ideal_matrix(bounds, gens, j, p)
    if M is None:
        return len(basis)
    return len(basis) - rank_mod_p(M, p)


# ------------------------------------------------------- power ideal runs


def random_instance(config: ExponentConfig, field: PrimeFieldConfig, seed=None):
    """Forms L_1..L_n for the generators plus one extra general form l."""
    forms = sample_linear_forms(config.num_vars, config.n + 1, field, seed=seed)
    return forms[:-1], forms[-1]


def generic_quotient_dim(config: ExponentConfig, j: int, field: PrimeFieldConfig,
                         power_k: int | None = None, method: str = "ci") -> int:
    """dim[R/I]_j, or dim[R/(I, l^k)]_j when ``power_k`` is given, on the field's seeded instance."""
    forms, ell = random_instance(config, field)
    exps = list(config.exponents)
    if power_k is None:
        return quotient_dim(forms, exps, j, field.prime, method)
    return quotient_dim(forms + [ell], exps + [power_k], j, field.prime, method)


def _degree_values(forms, ell, exps, j, k, p, cache):
    def dim_r(t):
        if t < 0:
            return 0
        if t not in cache:
            cache[t] = quotient_dim(forms, exps, t, p)
        return cache[t]

    return dim_r(j), dim_r(j - k), quotient_dim(forms + [ell], exps + [k], j, p)


def wlp_check(config: ExponentConfig, field: PrimeFieldConfig | None = None,
              power_k: int = 1, degrees: Sequence[int] | None = None) -> WlpCheck:
    """Rank of multiplication by l^k into every degree until R/I vanishes.

    Degrees where the first instance is deficient are re-sampled with fresh
    seeds and a second prime; the smallest dimensions seen are kept.
    """
    field = field or PrimeFieldConfig()
    if power_k < 1:
        raise ValueError("power_k must be positive")
    exps = list(config.exponents)
    forms, ell = random_instance(config, field)
    cache: dict[int, int] = {}
    p = field.prime
    bound = sum(a - 1 for a in exps[: config.num_vars]) + 1
    result = WlpCheck(config, power_k)
    todo = range(1, bound + 1) if degrees is None else degrees
    for j in todo:
        dj, dmin, dell = _degree_values(forms, ell, exps, j, power_k, p, cache)
        rep = RankReport(j, dj, dmin, dell, power_k)
        if not rep.maximal_rank:
            rep = _retest(config, field, j, power_k, rep)
        result.reports.append(rep)
        if degrees is None and dj == 0:
            break
    return result


def _retest(config, field, j, k, rep):
    exps = list(config.exponents)
    best = rep
    for prime, seed in field.attempts():
        sub = PrimeFieldConfig(prime, 0, 0, None)
        forms, ell = random_instance(config, sub, seed=seed)
        dj, dmin, dell = _degree_values(forms, ell, exps, j, k, prime, {})
        best = RankReport(j, min(best.dim_rj, dj), min(best.dim_rj_minus, dmin),
                          min(best.dim_quotient_ell, dell), k)
        if best.maximal_rank:
            break
    return best


# ------------------------------------------------ ell-squared table check


@dataclass(frozen=True)
class EllSquaredRow:
    exponents: tuple[int, ...]
    p: int
    b: int
    value: int
    table_value: int
    expected: int

    @property
    def matches(self) -> bool:
        return self.value == self.table_value


_TABLE = {1: 0, 2: 1, 3: 3}


def ell_squared_parameters(exponents: Sequence[int]) -> tuple[int, int]:
    s = sum(exponents)
    p = (s - 4) // 3
    return p, s - 3 * (p + 1)


def max_rank_ell_squared_table(exponents: Sequence[int], field: PrimeFieldConfig | None = None,
                               strict: bool = True) -> EllSquaredRow:
    """dim[A/l^2 A]_{p+1} for A = k[x,y,z]/(l_2^{a_2}, ..., l_5^{a_5}) against the 0/1/3 table."""
    field = field or PrimeFieldConfig()
    exps = tuple(sorted(exponents))
    if len(exps) != 4 or exps[0] < 2:
        raise ValueError("need four exponents, all >= 2")
    if strict and 2 * exps[3] > exps[0] + exps[1] + exps[2] - 3:
        raise HypothesesFail(f"{exps}: need a_5 <= (a_2 + a_3 + a_4 - 3) / 2")
    p, b = ell_squared_parameters(exps)
    config = ExponentConfig(3, exps)
    forms, ell = random_instance(config, field)
    value = quotient_dim(forms + [ell], list(exps) + [2], p + 1, field.prime)
    h_top = quotient_dim(forms, list(exps), p + 1, field.prime)
    h_low = quotient_dim(forms, list(exps), p - 1, field.prime)
    return EllSquaredRow(exps, p, b, value, _TABLE[b], pos_part(h_top - h_low))


# ------------------------------------------------- interpolation oracle


def fat_point_dim_bruteforce(sys: FatPointSystem, field: PrimeFieldConfig | None = None) -> int:
    """Degree-j forms on P^r whose Hasse derivatives of order m_i - 1 vanish at random points."""
    field = field or PrimeFieldConfig()
    p = field.prime
    r, j = sys.proj_dim, sys.degree
    if j < 0:
        return 0
    if p <= j:
        raise ValueError(f"prime {p} must exceed the degree {j}")
    mults = sys.positive
    basis = _bounded_monomials((j + 1,) * (r + 1), j)
    if not mults:
        return len(basis)
    points = sample_linear_forms(r + 1, len(mults), field)
    binom = [[math.comb(b, a) % p for a in range(j + 1)] for b in range(j + 1)]
    blocks = []
    for P, m in zip(points, mults):
        order = min(m, j + 1) - 1
        # table[i][b][a] = C(b, a) * P_i^(b - a)
        tables = []
        for c in P:
            pw = [pow(int(c), e, p) for e in range(j + 1)]
            t = np.zeros((j + 1, j + 1), dtype=object)
            for b_ in range(j + 1):
                for a_ in range(b_ + 1):
                    t[b_, a_] = binom[b_][a_] * pw[b_ - a_] % p
            tables.append(t)
        alphas = _bounded_monomials((order + 1,) * (r + 1), order)
        rows = np.ones((len(alphas), len(basis)), dtype=object)
        for i in range(r + 1):
            rows = rows * tables[i][basis[:, i][None, :], alphas[:, i][:, None]] % p
        blocks.append(rows)
    M = np.vstack(blocks)
    if fits_int64(p):
        M = M.astype(np.int64)
    return len(basis) - rank_mod_p(M, p)
