"""Finite-type combinatorial data: Cartan matrices, symmetrizers, weight Gram
matrices, affine Langlands duals, and diagram-folding orbit maps.

Everything here is exact. Cartan data is integer, Gram matrices are
``fractions.Fraction``, and all values are immutable tuples that are safe to
share across threads. Node numbering follows the Bourbaki convention; the
Cartan matrix is row-normalized, ``c[i][j] = 2 (a_i, a_j) / (a_i, a_i)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

FAMILIES = "ABCDEFGT"

#: Rank cap. Exact arithmetic stays fast well past desk scale; raise if needed.
MAX_RANK = 64

_LABEL_RE = re.compile(r"^\s*([A-Za-z])\s*([0-9]+)\s*$")

_COXETER_EXCEPTIONAL = {("E", 6): 12, ("E", 7): 18, ("E", 8): 30, ("F", 4): 12, ("G", 2): 6}


@dataclass(frozen=True)
class TypeLabel:
    """Family letter plus rank, e.g. A7, E8, T3.

    T is the tadpole family: an A-chain whose last Cartan diagonal entry
    is 1 instead of 2.
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        fam, n = self.family, self.rank
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}; expected one of {','.join(FAMILIES)}")
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"rank must be a positive integer, got {n!r}")
        if n > MAX_RANK:
            raise ValueError(f"rank {n} exceeds the supported cap {MAX_RANK}")
        if fam in ("B", "C") and n < 2:
            raise ValueError(f"{fam}{n} is not supported: {fam} requires rank >= 2")
        if fam == "D" and n < 4:
            # D3 would alias A3; it is rejected rather than silently relabeled.
            raise ValueError(f"D{n} is not supported: D requires rank >= 4")
        if fam == "E" and n not in (6, 7, 8):
            raise ValueError(f"E{n} is not supported: E requires rank in 6..8")
        if fam == "F" and n != 4:
            raise ValueError(f"F{n} is not supported: F requires rank 4")
        if fam == "G" and n != 2:
            raise ValueError(f"G{n} is not supported: G requires rank 2")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def is_simply_laced(self) -> bool:
        return self.family in ("A", "D", "E")

    @property
    def is_foldable(self) -> bool:
        """True for the families obtained by folding a simply-laced diagram."""
        return self.family in ("B", "C", "F", "G", "T")


def parse_label(text: str) -> TypeLabel:
    """Parse a label like ``"A7"``, ``"e8"`` or ``"T3"`` (case-insensitive)."""
    m = _LABEL_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse type label {text!r}; expected e.g. 'A7', 'E8', 'T3'")
    return TypeLabel(m.group(1).upper(), int(m.group(2)))


@dataclass(frozen=True)
class RootSystem:
    """Cartan matrix, symmetrizers and Coxeter number for one type label.

    ``cartan[i][j]`` is row-normalized by the length of root i; ``nu[i]`` is
    the half squared length of root i with short roots normalized to length
    squared 2, so ``cartan[i][j] * Fraction(1, nu[j])`` is symmetric.
    ``coxeter`` is None for the tadpole family.
    """

    label: TypeLabel
    cartan: tuple[tuple[int, ...], ...]
    nu: tuple[int, ...]
    coxeter: int | None

    @property
    def rank(self) -> int:
        return self.label.rank

    @property
    def is_simply_laced(self) -> bool:
        return self.label.is_simply_laced


def _edges(label: TypeLabel) -> list[tuple[int, int]]:
    """Dynkin diagram edges as 1-based node pairs, Bourbaki numbering."""
    n = label.rank
    if label.family == "D":
        chain = [(i, i + 1) for i in range(1, n - 1)]
        return chain + [(n - 2, n)]
    if label.family == "E":
        chain = [(1, 3), (3, 4), (4, 5), (5, 6)]
        chain += [(i, i + 1) for i in range(6, n)]
        return chain + [(2, 4)]
    return [(i, i + 1) for i in range(1, n)]


def _symmetrizers(label: TypeLabel) -> tuple[int, ...]:
    n = label.rank
    if label.family == "B":
        return (2,) * (n - 1) + (1,)
    if label.family == "C":
        return (1,) * (n - 1) + (2,)
    if label.family == "F":
        return (2, 2, 1, 1)
    if label.family == "G":
        return (1, 3)
    return (1,) * n


def _coxeter_number(label: TypeLabel) -> int | None:
    fam, n = label.family, label.rank
    if fam == "A":
        return n + 1
    if fam in ("B", "C"):
        return 2 * n
    if fam == "D":
        return 2 * n - 2
    if fam == "T":
        return None
    return _COXETER_EXCEPTIONAL[(fam, n)]


def build_root_system(label: TypeLabel) -> RootSystem:
    """Construct the Cartan matrix, symmetrizers and Coxeter number.

    For adjacent nodes the normalized pairing is ``(a_i, a_j) = -max(nu_i,
    nu_j)``, which fixes every off-diagonal entry; the tadpole family takes
    the A-chain matrix with its last diagonal entry lowered to 1.
    """
    n = label.rank
    nu = _symmetrizers(label)
    cartan = [[0] * n for _ in range(n)]
    for i in range(n):
        cartan[i][i] = 2
    if label.family == "T":
        cartan[n - 1][n - 1] = 1
    for i, j in _edges(label):
        bond = max(nu[i - 1], nu[j - 1])
        cartan[i - 1][j - 1] = -bond // nu[i - 1]
        cartan[j - 1][i - 1] = -bond // nu[j - 1]
    return RootSystem(
        label=label,
        cartan=tuple(tuple(row) for row in cartan),
        nu=nu,
        coxeter=_coxeter_number(label),
    )


def invert_rational(matrix: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse by Gauss-Jordan elimination over Fraction entries."""
    n = len(matrix)
    work = [[Fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in work):
        raise ValueError("matrix must be square")
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = work[col][col]
        work[col] = [x / scale for x in work[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
                inv[r] = [a - factor * b for a, b in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def _normalize_variant(variant: str) -> str:
    v = variant.lower().replace("_", "")
    if v in ("a", "aflat"):
        return v
    raise ValueError(f"unknown Gram variant {variant!r}; expected 'a' or 'aflat'")


def weight_gram(rs: RootSystem, variant: str) -> tuple[tuple[Fraction, ...], ...]:
    """Exact weight Gram matrix: variant ``"aflat"`` inverts the column-scaled
    Cartan matrix ``(c[i][j] / nu[j])``; variant ``"a"`` is twice that.

    For the tadpole family all ``nu`` are 1, so the flat matrix is the plain
    Cartan inverse, which comes out as ``min(i, j)`` entrywise.
    """
    v = _normalize_variant(variant)
    scaled = [
        [Fraction(rs.cartan[i][j], rs.nu[j]) for j in range(rs.rank)]
        for i in range(rs.rank)
    ]
    flat = invert_rational(scaled)
    if v == "aflat":
        return flat
    return tuple(tuple(2 * x for x in row) for row in flat)


@dataclass(frozen=True)
class DualType:
    """Affine Langlands-dual bookkeeping: the underlying simply-laced type
    S_m of the dual, its rank m and Coxeter number, and the twist order."""

    affine: str
    family: str
    rank: int
    coxeter: int
    twist: int

    @property
    def simply_laced_label(self) -> TypeLabel:
        return TypeLabel(self.family, self.rank)


def langlands_dual(label: TypeLabel) -> DualType:
    """Dual affine type of the untwisted affinization of ``label``.

    Simply-laced types are self-dual; B, C, F, G dualize to twisted types
    over A/D/E diagrams; the tadpole T_n pairs with the self-dual twisted
    A-type of rank 2n.
    """
    fam, n = label.family, label.rank
    if fam == "A":
        dual = ("A", n, 1)
    elif fam == "B":
        dual = ("A", 2 * n - 1, 2)
    elif fam == "C":
        dual = ("D", n + 1, 2)
    elif fam == "D":
        dual = ("D", n, 1)
    elif fam == "E":
        dual = ("E", n, 1)
    elif fam == "F":
        dual = ("E", 6, 2)
    elif fam == "G":
        dual = ("D", 4, 3)
    else:  # tadpole
        dual = ("A", 2 * n, 2)
    dfam, m, twist = dual
    if dfam == "A":
        hstar = m + 1
    elif dfam == "D":
        hstar = 2 * m - 2
    else:
        hstar = _COXETER_EXCEPTIONAL[("E", m)]
    return DualType(affine=f"{dfam}{m}^({twist})", family=dfam, rank=m, coxeter=hstar, twist=twist)


@dataclass(frozen=True)
class FoldingData:
    """A simply-laced source diagram together with the orbit map of the
    diagram automorphism whose quotient is the folded target."""

    source: TypeLabel
    orbit_map: tuple[int, ...]
    automorphism_order: int

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Source nodes grouped by target node, 1-based, ascending."""
        n_target = max(self.orbit_map)
        groups: list[list[int]] = [[] for _ in range(n_target)]
        for src, tgt in enumerate(self.orbit_map, start=1):
            groups[tgt - 1].append(src)
        return tuple(tuple(g) for g in groups)


def folding(label: TypeLabel) -> FoldingData:
    """Orbit data identifying ``label`` as a folded simply-laced diagram.

    B_n folds A_{2n-1} end-to-end, C_n folds the D_{n+1} fork, F_4 folds
    E_6, G_2 folds D_4 by its triality 3-cycle, and T_n folds A_{2n} with
    no fixed node. C_2 is rejected because its source would be D_3, which
    is outside the supported D ranks.
    """
    fam, n = label.family, label.rank
    if not label.is_foldable:
        raise ValueError(f"{label} is simply laced; only B, C, F, G, T arise by folding")
    if fam == "B":
        source = TypeLabel("A", 2 * n - 1)
        orbit_map = tuple(min(i, 2 * n - i) for i in range(1, 2 * n))
        order = 2
    elif fam == "C":
        if n == 2:
            raise ValueError("C2 has no supported folding: its source would be D3")
        source = TypeLabel("D", n + 1)
        orbit_map = tuple(min(i, n) for i in range(1, n + 2))
        order = 2
    elif fam == "F":
        source = TypeLabel("E", 6)
        orbit_map = (1, 4, 2, 3, 2, 1)
        order = 2
    elif fam == "G":
        source = TypeLabel("D", 4)
        orbit_map = (2, 1, 2, 2)
        order = 3
    else:  # tadpole
        source = TypeLabel("A", 2 * n)
        orbit_map = tuple(min(i, 2 * n + 1 - i) for i in range(1, 2 * n + 1))
        order = 2
    return FoldingData(source=source, orbit_map=orbit_map, automorphism_order=order)


def folded_cartan(fd: FoldingData) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of the folded target, computed from the source.

    Entry (i, j) sums the source row of any representative of orbit i over
    the whole orbit of j; representative independence is checked and is
    exactly the automorphism invariance of the source matrix.
    """
    src = build_root_system(fd.source)
    orbits = fd.orbits()
    n = len(orbits)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sums = {
                sum(src.cartan[rep - 1][s - 1] for s in orbits[j])
                for rep in orbits[i]
            }
            if len(sums) != 1:
                raise ValueError(f"orbit map is not automorphism-invariant at ({i + 1}, {j + 1})")
            out[i][j] = sums.pop()
    return tuple(tuple(row) for row in out)


def default_labels(max_rank: int = 8) -> list[TypeLabel]:
    """The desk-scale sweep: every family at ranks up to ``max_rank``."""
    labels = [TypeLabel("A", n) for n in range(1, max_rank + 1)]
    labels += [TypeLabel("B", n) for n in range(2, max_rank + 1)]
    labels += [TypeLabel("C", n) for n in range(2, max_rank + 1)]
    labels += [TypeLabel("D", n) for n in range(4, max_rank + 1)]
    labels += [TypeLabel("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        labels.append(TypeLabel("F", 4))
    if max_rank >= 2:
        labels.append(TypeLabel("G", 2))
    labels += [TypeLabel("T", n) for n in range(1, max_rank + 1)]
    return labels
