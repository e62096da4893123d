"""Minimal y-seed mutation engine with c-vector tracking.

The pinned exchange convention: mutation at k sends y_k to 1/y_k and
``y_j -> y_j y_k^{[b_kj]_+} (1 + y_k)^{-b_kj}`` for j != k; the exchange
matrix mutates by the usual rule, and c-vectors by
``c_j -> c_j + [eps b_kj]_+ c_k`` with eps the tropical sign of column k.
The rank-1 and pentagon cycle tests are sensitive to any sign error in
this convention, so it never needs to be hard-coded elsewhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .dilog import PI2_OVER_6, rogers_dilog

#: Node counts up to which periodicity detection searches all permutations.
_PERMUTATION_SEARCH_LIMIT = 6

# Wild exchange matrices grow doubly exponentially under mutation, so the
# exact coefficient can leave the binary64 range; log values are clamped
# here, which keeps coefficients positive and finite. Tame cycles never
# come near the clamp.
_LOG_CLAMP = 700.0


def _float_saturated(value: int) -> float:
    try:
        return float(value)
    except OverflowError:
        return math.inf if value > 0 else -math.inf


def _clamped_exp(log_value: float) -> float:
    return math.exp(min(max(log_value, -_LOG_CLAMP), _LOG_CLAMP))


def _coefficient_update(y_j: float, y_k: float, b_kj: int) -> float:
    # y_j * y_k^[b_kj]_+ * (1 + y_k)^(-b_kj), evaluated in log space.
    if b_kj == 0:
        return y_j
    if b_kj > 0:
        delta = -_float_saturated(b_kj) * math.log1p(1.0 / y_k)
    else:
        delta = _float_saturated(-b_kj) * math.log1p(y_k)
    return _clamped_exp(math.log(y_j) + delta)


class SignCoherenceError(RuntimeError):
    """A c-vector column mixed signs: the mutation convention is broken."""


@dataclass(frozen=True)
class ClusterSeed:
    """Exchange matrix, positive coefficients, and c-vector columns."""

    b: tuple[tuple[int, ...], ...]
    y: tuple[float, ...]
    c: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.y)


def initial_seed(b, y) -> ClusterSeed:
    """Seed with identity c-matrix; validates skew-symmetry and positivity."""
    bm = tuple(tuple(int(v) for v in row) for row in b)
    n = len(bm)
    if any(len(row) != n for row in bm):
        raise ValueError("exchange matrix must be square")
    for i in range(n):
        for j in range(n):
            if bm[i][j] != -bm[j][i]:
                raise ValueError(f"exchange matrix is not skew-symmetric at ({i + 1}, {j + 1})")
    yv = tuple(float(v) for v in y)
    if len(yv) != n:
        raise ValueError(f"need {n} coefficients, got {len(yv)}")
    if any(v <= 0.0 for v in yv):
        raise ValueError("coefficients must be strictly positive")
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return ClusterSeed(b=bm, y=yv, c=ident)


def tropical_sign(seed: ClusterSeed, k: int) -> int:
    """+1 or -1 from the sign-coherent c-vector column of node k (1-based)."""
    if not 1 <= k <= seed.n:
        raise ValueError(f"node index {k} out of range 1..{seed.n}")
    column = [seed.c[i][k - 1] for i in range(seed.n)]
    if all(v >= 0 for v in column) and any(v > 0 for v in column):
        return 1
    if all(v <= 0 for v in column) and any(v < 0 for v in column):
        return -1
    raise SignCoherenceError(f"c-vector column {k} is not sign-coherent: {column}")


def mutate(seed: ClusterSeed, k: int) -> ClusterSeed:
    """Mutation at node k (1-based); an involution on (b, y, c)."""
    if not 1 <= k <= seed.n:
        raise ValueError(f"node index {k} out of range 1..{seed.n}")
    n = seed.n
    kk = k - 1
    eps = tropical_sign(seed, k)

    def sign(v: int) -> int:
        return (v > 0) - (v < 0)

    b = [
        [
            -seed.b[i][j]
            if i == kk or j == kk
            else seed.b[i][j] + sign(seed.b[i][kk]) * max(seed.b[i][kk] * seed.b[kk][j], 0)
            for j in range(n)
        ]
        for i in range(n)
    ]

    c = [list(row) for row in seed.c]
    for i in range(n):
        c[i][kk] = -seed.c[i][kk]
        for j in range(n):
            if j != kk:
                c[i][j] = seed.c[i][j] + max(eps * seed.b[kk][j], 0) * seed.c[i][kk]

    yk = seed.y[kk]
    y = list(seed.y)
    y[kk] = 1.0 / yk if 1e-304 < yk < 1e304 else _clamped_exp(-math.log(yk))
    for j in range(n):
        if j != kk:
            y[j] = _coefficient_update(seed.y[j], yk, seed.b[kk][j])

    return ClusterSeed(
        b=tuple(tuple(row) for row in b),
        y=tuple(y),
        c=tuple(tuple(row) for row in c),
    )


@dataclass(frozen=True)
class CycleReport:
    """Outcome of one mutation sequence: periodicity up to node relabeling,
    the tropical sign count, and the normalized dilogarithm sum."""

    is_periodic: bool
    period: int
    n_minus: int
    normalized_sum: float
    signs: tuple[int, ...]
    permutation: tuple[int, ...] | None


def _matches_permutation(seed: ClusterSeed, b0, y0, perm: tuple[int, ...],
                         rel_tol: float) -> bool:
    n = seed.n
    for i in range(n):
        for j in range(n):
            if seed.b[i][j] != b0[perm[i]][perm[j]]:
                return False
            if seed.c[i][j] != int(i == perm[j]):
                return False
    return all(abs(seed.y[j] - y0[perm[j]]) <= rel_tol * abs(y0[perm[j]]) for j in range(n))


def _candidate_permutations(seed: ClusterSeed):
    n = seed.n
    if n <= _PERMUTATION_SEARCH_LIMIT:
        yield from itertools.permutations(range(n))
        return
    # Larger ranks: a closing cycle must turn c into a permutation matrix,
    # which pins the only possible relabeling.
    perm = []
    for j in range(n):
        col = [seed.c[i][j] for i in range(n)]
        ones = [i for i, v in enumerate(col) if v == 1]
        if len(ones) != 1 or any(v not in (0, 1) for v in col):
            return
        perm.append(ones[0])
    if sorted(perm) == list(range(n)):
        yield tuple(perm)


def run_mutation_cycle(b0, sequence, y0, rel_tol: float = 1e-10) -> CycleReport:
    """Apply the mutation sequence, recording each pre-mutation coefficient
    and its tropical sign.

    When the final seed equals the initial one up to a node permutation,
    the normalized dilogarithm sum of the recorded coefficients equals the
    number of minus signs; that equality is the caller's to assert.
    """
    seq = [int(k) for k in sequence]
    if not seq:
        raise ValueError("mutation sequence must be nonempty")
    seed = initial_seed(b0, y0)
    start_b, start_y = seed.b, seed.y
    signs: list[int] = []
    total = 0.0
    for k in seq:
        value = seed.y[k - 1]
        signs.append(tropical_sign(seed, k))
        total += rogers_dilog(value / (1.0 + value))
        seed = mutate(seed, k)

    permutation = None
    for perm in _candidate_permutations(seed):
        if _matches_permutation(seed, start_b, start_y, perm, rel_tol):
            permutation = tuple(p + 1 for p in perm)
            break

    return CycleReport(
        is_periodic=permutation is not None,
        period=len(seq),
        n_minus=sum(1 for s in signs if s < 0),
        normalized_sum=total / PI2_OVER_6,
        signs=tuple(signs),
        permutation=permutation,
    )


def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse an integer matrix: one row per line, space-separated entries."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        try:
            rows.append(tuple(int(tok) for tok in stripped.split()))
        except ValueError as exc:
            raise ValueError(f"bad matrix row {lineno}: {line!r}") from exc
    if not rows:
        raise ValueError("matrix text contains no rows")
    if any(len(row) != len(rows[0]) for row in rows):
        raise ValueError("matrix rows have unequal lengths")
    return tuple(rows)
