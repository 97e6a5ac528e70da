"""Exact integer arithmetic in the span of the pairs p_k = z^k + z^(n-k).

This is the brute-force referee for every symbolic identity in the engine:
products are expanded pair by pair with the two-pair rule

    p_k * p_m = p_|k-m| + p_min(k+m, n-(k+m))      (k != m)
    p_k * p_k = p_min(2k, n-2k) + 2

with no shortcuts, so results are independent of the fast symbolic path.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .invariant_sets import InvariantSetTable
from .period_algebra import SetCombination
from .residues import FermatParams, pair_of

# Largest |coefficient| budget for the int64 kernel path; beyond this the
# pure-Python big-integer path is used so results stay exact.
_INT64_SAFE = 1 << 52


class NotSetUniform(ValueError):
    """A vector claimed to be a sum of invariant sets has unequal coefficients
    inside some set."""


@dataclass(frozen=True)
class PeriodVector:
    """constant + sum_k coeffs[k] * p_k, with 1-based coeffs (slot 0 unused)."""

    n: int
    constant: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        assert self.coeffs.shape == ((self.n - 1) // 2 + 1,)
        self.coeffs.setflags(write=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodVector):
            return NotImplemented
        return (
            self.n == other.n
            and self.constant == other.constant
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __add__(self, other: "PeriodVector") -> "PeriodVector":
        self._check(other)
        return PeriodVector(self.n, self.constant + other.constant, self.coeffs + other.coeffs)

    def __sub__(self, other: "PeriodVector") -> "PeriodVector":
        self._check(other)
        return PeriodVector(self.n, self.constant - other.constant, self.coeffs - other.coeffs)

    def scaled(self, c: int) -> "PeriodVector":
        return PeriodVector(self.n, c * self.constant, c * self.coeffs)

    def _check(self, other: "PeriodVector") -> None:
        if self.n != other.n:
            raise ValueError(f"mixed moduli {self.n} and {other.n}")

    def nonzero_pairs(self) -> np.ndarray:
        return np.nonzero(self.coeffs)[0]


def pv_zero(params: FermatParams) -> PeriodVector:
    return PeriodVector(params.n, 0, np.zeros(params.npairs + 1, dtype=np.int64))


def pv_from_pairs(pairs, params: FermatParams, constant: int = 0) -> PeriodVector:
    """Indicator vector of the given pair numbers."""
    coeffs = np.zeros(params.npairs + 1, dtype=np.int64)
    for p in pairs:
        if not 1 <= p <= params.npairs:
            raise ValueError(f"pair number {p} out of range [1, {params.npairs}]")
        coeffs[p] += 1
    return PeriodVector(params.n, constant, coeffs)


def pv_s(params: FermatParams) -> PeriodVector:
    """The full sum S = p_1 + ... + p_npairs (value -1)."""
    coeffs = np.ones(params.npairs + 1, dtype=np.int64)
    coeffs[0] = 0
    return PeriodVector(params.n, 0, coeffs)


def pair_product(k: int, m: int, n: int) -> PeriodVector:
    """Product of two single pairs as a PeriodVector."""
    npairs = (n - 1) // 2
    if not (1 <= k <= npairs and 1 <= m <= npairs):
        raise ValueError(f"pair numbers ({k}, {m}) out of range [1, {npairs}]")
    coeffs = np.zeros(npairs + 1, dtype=np.int64)
    if k == m:
        coeffs[pair_of((2 * k) % n, n)] += 1
        return PeriodVector(n, 2, coeffs)
    coeffs[abs(k - m)] += 1
    coeffs[min(k + m, n - (k + m))] += 1
    return PeriodVector(n, 0, coeffs)


def pv_mul(a: PeriodVector, b: PeriodVector, force_pure: bool = False) -> PeriodVector:
    """Bilinear product, expanded over every nonzero pair of both factors."""
    a._check(b)
    n = a.n
    ai = a.nonzero_pairs()
    bi = b.nonzero_pairs()
    # Exact masses (object dtype so the bound itself cannot wrap).
    mass_a = int(np.abs(a.coeffs[ai]).astype(object).sum()) if ai.size else 0
    mass_b = int(np.abs(b.coeffs[bi]).astype(object).sum()) if bi.size else 0
    if (
        2 * mass_a * mass_b < _INT64_SAFE
        and a.coeffs.dtype == np.int64
        and b.coeffs.dtype == np.int64
    ):
        out = np.zeros_like(a.coeffs)
        const = kernels.pair_mul_accumulate(
            ai.astype(np.int64),
            a.coeffs[ai],
            bi.astype(np.int64),
            b.coeffs[bi],
            n,
            out,
            force_pure=force_pure,
        )
    else:
        const, out = _pair_mul_bigint(a, b, ai, bi, n)
    coeffs = out + a.constant * b.coeffs + b.constant * a.coeffs
    return PeriodVector(n, const + a.constant * b.constant, coeffs)


def _pair_mul_bigint(a, b, ai, bi, n):
    # Arbitrary-width path for pathological coefficient sizes: plain Python
    # integers, upgraded to an object-dtype array when int64 cannot hold the
    # result (the fast kernels must never wrap silently).
    acc: dict[int, int] = {}
    const = 0
    half = (n - 1) // 2
    for k in ai:
        av = int(a.coeffs[k])
        for m in bi:
            v = av * int(b.coeffs[m])
            if k == m:
                s = 2 * k
                s = s if s <= half else n - s
                acc[s] = acc.get(s, 0) + v
                const += 2 * v
            else:
                d = abs(int(k) - int(m))
                acc[d] = acc.get(d, 0) + v
                s = int(k) + int(m)
                s = s if s <= half else n - s
                acc[s] = acc.get(s, 0) + v
    big = any(abs(v) >= _INT64_SAFE for v in acc.values())
    out = np.zeros(half + 1, dtype=object if big else np.int64)
    for p, v in acc.items():
        out[p] += v
    return const, out


def decompose_into_sets(v: PeriodVector, table: InvariantSetTable) -> SetCombination:
    """Rewrite v as constant + sum of whole invariant sets.

    Raises NotSetUniform when some set carries unequal pair coefficients,
    which signals a violated decomposition claim.
    """
    params = table.params
    if v.n != params.n:
        raise ValueError("table and vector moduli differ")
    coeffs = []
    for k, row in enumerate(table.sets, start=1):
        vals = {int(v.coeffs[p]) for p in row}
        if len(vals) != 1:
            raise NotSetUniform(f"set {k} has mixed pair coefficients {sorted(vals)}")
        coeffs.append(vals.pop())
    return SetCombination(ng=params.ng, constant=v.constant, coeffs=tuple(coeffs))


def combination_to_pv(c: SetCombination, table: InvariantSetTable) -> PeriodVector:
    """Expand a set combination back to the pair basis."""
    coeffs = np.zeros(table.params.npairs + 1, dtype=np.int64)
    for k, ck in enumerate(c.coeffs, start=1):
        if ck:
            for p in table.sets[k - 1]:
                coeffs[p] += ck
    return PeriodVector(table.params.n, c.constant, coeffs)
