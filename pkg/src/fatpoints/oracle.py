"""Ground-truth dimensions via interpolation-matrix rank over a prime field.

The conditions "multiplicity at least m at p" are the vanishing of all partial
derivatives of order below m.  Rows of the matrix are these conditions at
pseudo-random points of the affine plane over F_p, columns are the monomials
of degree at most d; the projective dimension of the system is
``cols - 1 - rank``.  Random point positions can only raise the dimension
(semicontinuity), so the minimum over independent trials is reported, and a
trial that reaches the expected dimension certifies regularity in
characteristic zero as well.

Matrices are reproducible from ``(system, seed, prime)``: the point stream is
seeded deterministically and the column order is fixed graded-lex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .core import LinearSystem, expected_dim

__all__ = [
    "DEFAULT_PRIME",
    "PrimeFieldMatrix",
    "build_matrix",
    "rank_ff",
    "dimension_char_p",
    "certify_regular",
    "trial_dimensions",
    "oracle_report",
]

# Large enough that every falling-factorial coefficient of a derivative of
# order < 7 is a unit, small enough that products of two residues fit well
# inside int64.
DEFAULT_PRIME = 32003


@dataclass(frozen=True)
class PrimeFieldMatrix:
    prime: int
    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self):
        if self.data.shape != (self.rows, self.cols):
            raise ValueError("shape mismatch")
        if self.data.size and (self.data.min() < 0 or self.data.max() >= self.prime):
            raise ValueError("entries not reduced mod p")


def monomial_exponents(degree: int) -> np.ndarray:
    """Exponent pairs (a, b) with a + b <= degree, graded, x before y."""
    exps = [(a, t - a) for t in range(degree + 1) for a in range(t, -1, -1)]
    return np.array(exps, dtype=np.int64).reshape(-1, 2)


def condition_count(L: LinearSystem) -> int:
    return sum(m * (m + 1) // 2 for m in L.mults)


def monomial_count(L: LinearSystem) -> int:
    return (L.degree + 1) * (L.degree + 2) // 2


def _falling(values: np.ndarray, k: int, prime: int) -> np.ndarray:
    """values * (values-1) * ... * (values-k+1) mod prime, elementwise.

    Reduced inside the loop so that orders beyond ~20 cannot overflow int64.
    A value below k passes through the factor 0, so the result is exactly 0
    there; factors are at most the degree, hence never divisible by the prime.
    """
    out = np.ones_like(values)
    for t in range(k):
        out = out * np.maximum(values - t, 0) % prime
    return out


def build_matrix(L: LinearSystem, points, prime: int = DEFAULT_PRIME) -> PrimeFieldMatrix:
    """Condition rows (derivatives of order < mi at the i-th point) times monomials.

    ``points`` holds one affine pair per positive multiplicity of ``L``, in
    slot order.  Requires ``prime > degree`` and pairwise distinct points.
    """
    d = L.degree
    if prime <= d:
        raise ValueError(f"prime {prime} must exceed the degree {d}")
    positive = [m for m in L.mults if m > 0]
    if max(positive, default=1) > 1 and prime <= 720:
        raise ValueError("prime too small for derivative coefficients of order < 7")
    points = [(int(x) % prime, int(y) % prime) for x, y in points]
    if len(points) != len(positive):
        raise ValueError(
            f"need {len(positive)} points (one per positive multiplicity), got {len(points)}")
    if len(set(points)) != len(points):
        raise ValueError("duplicate points")

    exps = monomial_exponents(d)
    ax, ay = exps[:, 0], exps[:, 1]
    cols = len(exps)
    rows = condition_count(L)
    data = np.zeros((rows, cols), dtype=np.int64)

    row = 0
    for (x, y), m in zip(points, positive):
        # power tables for this point
        px = np.ones(d + 1, dtype=np.int64)
        py = np.ones(d + 1, dtype=np.int64)
        for t in range(1, d + 1):
            px[t] = px[t - 1] * x % prime
            py[t] = py[t - 1] * y % prime
        for order in range(m):
            for r in range(order, -1, -1):
                s = order - r
                coeff = _falling(ax, r, prime) * _falling(ay, s, prime) % prime
                vx = px[np.maximum(ax - r, 0)]
                vy = py[np.maximum(ay - s, 0)]
                vals = coeff * vx % prime * vy % prime
                vals[(ax < r) | (ay < s)] = 0
                data[row] = vals
                row += 1
    assert row == rows
    return PrimeFieldMatrix(prime, rows, cols, data)


def rank_ff(M: PrimeFieldMatrix) -> int:
    """Rank over F_p by row elimination, pivoting on the first nonzero entry."""
    p = M.prime
    A = M.data.copy()
    rows, cols = A.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if nz.size == 0:
            continue
        r = rank + int(nz[0])
        if r != rank:
            A[[rank, r]] = A[[r, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = A[rank] * inv % p
        below = np.nonzero(A[rank + 1:, col])[0]
        if below.size:
            idx = rank + 1 + below
            A[idx] = (A[idx] - A[idx, col][:, None] * A[rank][None, :]) % p
        rank += 1
    return rank


def _sample_points(npoints: int, rng: random.Random, prime: int) -> list[tuple[int, int]]:
    seen: set[tuple[int, int]] = set()
    out = []
    while len(out) < npoints:
        pt = (rng.randint(1, prime - 1), rng.randint(1, prime - 1))
        if pt in seen:
            continue  # collision: resample
        seen.add(pt)
        out.append(pt)
    return out


_dim_cache: dict[tuple, tuple[int, ...]] = {}


def trial_dimensions(L: LinearSystem, seed: int = 0, prime: int = DEFAULT_PRIME,
                     trials: int = 3) -> tuple[int, ...]:
    """Per-trial dimensions ``cols - 1 - rank`` at independently seeded points."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    key = (L.degree, tuple(sorted((m for m in L.mults if m > 0), reverse=True)),
           seed, prime, trials)
    cached = _dim_cache.get(key)
    if cached is not None:
        return cached
    npoints = sum(1 for m in L.mults if m > 0)
    cols = monomial_count(L)
    dims = []
    for t in range(trials):
        rng = random.Random(f"fatpoints:{seed}:{t}")
        points = _sample_points(npoints, rng, prime)
        M = build_matrix(L, points, prime)
        dims.append(cols - 1 - rank_ff(M))
    result = tuple(dims)
    _dim_cache[key] = result
    return result


def dimension_char_p(L: LinearSystem, seed: int = 0, prime: int = DEFAULT_PRIME,
                     trials: int = 3) -> int:
    """Minimum projective dimension over the trials (special positions only raise it)."""
    return min(trial_dimensions(L, seed, prime, trials))


def certify_regular(L: LinearSystem, seed: int = 0, prime: int = DEFAULT_PRIME,
                    trials: int = 3) -> bool:
    """True when some trial reaches the expected dimension.

    Maximal rank at special points in characteristic p implies maximal rank at
    general points in characteristic zero, so a True answer is a proof of
    non-speciality; False is inconclusive.
    """
    e = expected_dim(L)
    return any(dim == e for dim in trial_dimensions(L, seed, prime, trials))


def oracle_report(L: LinearSystem, seed: int = 0, prime: int = DEFAULT_PRIME,
                  trials: int = 3) -> dict:
    dims = trial_dimensions(L, seed, prime, trials)
    ell = min(dims)
    cols = monomial_count(L)
    return {
        "system": str(L),
        "prime": prime,
        "seed": seed,
        "trials": trials,
        "rank": cols - 1 - ell,
        "ell": ell,
        "certified_regular": expected_dim(L) in dims,
    }
