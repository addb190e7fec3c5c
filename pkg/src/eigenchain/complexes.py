"""Bounded complexes of free modules and degree-homogeneous maps.

The internal convention is cochain: the differential at degree ``n`` maps
the rank-``r_n`` module to the rank-``r_{n+1}`` module.  Chain-convention
data (differentials lowering degree) is converted on ingestion by
negating degrees, which turns lowering into raising without touching any
matrix; rendering converts back the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ConventionMismatch, RingMismatch, ValidationError
from .matrix import Matrix, block_diag
from .rings import Ring

COCHAIN = "cochain"
CHAIN = "chain"


@dataclass
class ChainComplex:
    """Graded family of free-module ranks plus differential matrices.

    ``ranks`` maps degree to a positive rank (zero ranks are pruned);
    ``diffs`` maps degree ``n`` to the matrix of the differential leaving
    degree ``n``.  Matrices equal to zero are pruned; ``diff(n)`` returns
    an explicit zero matrix of the right shape for any degree.
    """

    ring: Ring
    convention: str
    ranks: dict[int, int]
    diffs: dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.convention not in (COCHAIN, CHAIN):
            raise ConventionMismatch(f"unknown convention {self.convention!r}")
        self.ranks = {n: r for n, r in self.ranks.items() if r != 0}
        for n, r in self.ranks.items():
            if r < 0:
                raise ValidationError(f"negative rank {r} at degree {n}")
        step = 1 if self.convention == COCHAIN else -1
        kept = {}
        for n, m in self.diffs.items():
            if m.ring != self.ring:
                raise RingMismatch(f"differential at degree {n} lives over {m.ring}")
            expected = (self.rank(n + step), self.rank(n))
            if (m.rows, m.cols) != expected:
                raise ValidationError(
                    f"differential at degree {n} is {m.rows}x{m.cols}, expected {expected[0]}x{expected[1]}"
                )
            if not m.is_zero():
                kept[n] = m
        self.diffs = kept

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def diff(self, n: int) -> Matrix:
        step = 1 if self.convention == COCHAIN else -1
        if n in self.diffs:
            return self.diffs[n]
        return Matrix.zeros(self.ring, self.rank(n + step), self.rank(n))

    def degrees(self) -> list[int]:
        return sorted(self.ranks)

    @property
    def lo(self) -> Optional[int]:
        return min(self.ranks) if self.ranks else None

    @property
    def hi(self) -> Optional[int]:
        return max(self.ranks) if self.ranks else None

    def total_dim(self) -> int:
        return sum(self.ranks.values())

    def is_scalar(self) -> bool:
        """Zero differentials everywhere."""
        return not self.diffs

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.convention == other.convention
            and self.ranks == other.ranks
            and self.diffs == other.diffs
        )


@dataclass(frozen=True)
class ComplexReport:
    """Outcome of the d∘d = 0 check; ``entry`` is the first nonzero (i, j)."""

    ok: bool
    degree: Optional[int] = None
    entry: Optional[tuple[int, int]] = None
    message: str = ""


def validate_complex(x: ChainComplex) -> ComplexReport:
    """Check that consecutive differentials compose to zero."""
    step = 1 if x.convention == COCHAIN else -1
    for n in x.degrees():
        first = x.diff(n)
        second = x.diff(n + step)
        if first.rows == 0 or second.rows == 0 or first.cols == 0:
            continue
        comp = second @ first
        for i, row in enumerate(comp.data):
            for j, v in enumerate(row):
                if v != 0:
                    return ComplexReport(
                        False,
                        degree=n,
                        entry=(i, j),
                        message=f"d∘d != 0 leaving degree {n}: entry {(i, j)} is {x.ring.render(v)}",
                    )
    return ComplexReport(True)


@dataclass
class GradedMap:
    """Degree-homogeneous family of matrices between two complexes.

    The block at degree ``n`` maps the source's degree-``n`` module to the
    target's degree ``n + degree_shift`` module (in the shared internal
    cochain indexing).  Zero blocks are pruned; ``block(n)`` materializes
    them on demand.
    """

    source: ChainComplex
    target: ChainComplex
    degree_shift: int
    blocks: dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise RingMismatch("graded map between complexes over different rings")
        if self.source.convention != self.target.convention:
            raise ConventionMismatch("graded map between mixed conventions")
        kept = {}
        for n, m in self.blocks.items():
            if m.ring != self.source.ring:
                raise RingMismatch(f"block at degree {n} lives over {m.ring}")
            expected = (self.target.rank(n + self.degree_shift), self.source.rank(n))
            if (m.rows, m.cols) != expected:
                raise ValidationError(
                    f"block at degree {n} is {m.rows}x{m.cols}, expected {expected[0]}x{expected[1]}"
                )
            if not m.is_zero():
                kept[n] = m
        self.blocks = kept

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def block(self, n: int) -> Matrix:
        if n in self.blocks:
            return self.blocks[n]
        return Matrix.zeros(self.ring, self.target.rank(n + self.degree_shift), self.source.rank(n))

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.degree_shift == other.degree_shift
            and self.blocks == other.blocks
        )


@dataclass(frozen=True)
class MapReport:
    """Outcome of the chain-map square check."""

    ok: bool
    degree: Optional[int] = None
    entry: Optional[tuple[int, int]] = None
    message: str = ""


def validate_chain_map(f: GradedMap) -> MapReport:
    """Check ``d_target ∘ f_n == f_{n+1} ∘ d_source`` at every degree."""
    if f.degree_shift != 0:
        raise ValidationError("chain-map check applies to shift-0 maps")
    x, y = f.source, f.target
    step = 1 if x.convention == COCHAIN else -1
    degrees = sorted(set(x.ranks) | set(y.ranks))
    for n in degrees:
        lhs = y.diff(n) @ f.block(n)
        rhs = f.block(n + step) @ x.diff(n)
        if lhs != rhs:
            diffm = lhs - rhs
            for i, row in enumerate(diffm.data):
                for j, v in enumerate(row):
                    if v != 0:
                        return MapReport(
                            False,
                            degree=n,
                            entry=(i, j),
                            message=f"square at degree {n} fails at entry {(i, j)}",
                        )
    return MapReport(True)


def zero_map(source: ChainComplex, target: ChainComplex, degree_shift: int = 0) -> GradedMap:
    return GradedMap(source, target, degree_shift, {})


def identity_map(x: ChainComplex) -> GradedMap:
    blocks = {n: Matrix.identity(x.ring, r) for n, r in x.ranks.items()}
    return GradedMap(x, x, 0, blocks)


def scalar_object(ring: Ring, ranks: dict[int, int], convention: str = COCHAIN) -> ChainComplex:
    """Complex with the given ranks and all-zero differentials."""
    return ChainComplex(ring, convention, dict(ranks), {})


def shift(x: ChainComplex, k: int) -> ChainComplex:
    """Reindex degrees: the result at degree ``n`` is ``x`` at ``n + k``.

    Differentials are reused unchanged (no sign is introduced); the cone
    construction in this package uses unsigned blocks throughout.
    """
    ranks = {n - k: r for n, r in x.ranks.items()}
    diffs = {n - k: m for n, m in x.diffs.items()}
    return ChainComplex(x.ring, x.convention, ranks, diffs)


def direct_sum(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """Degreewise direct sum with block-diagonal differentials (x first)."""
    if x.ring != y.ring:
        raise RingMismatch("direct sum over different rings")
    if x.convention != y.convention:
        raise ConventionMismatch("direct sum of mixed conventions")
    degrees = sorted(set(x.ranks) | set(y.ranks))
    ranks = {n: x.rank(n) + y.rank(n) for n in degrees}
    diffs = {}
    for n in degrees:
        d = block_diag([x.diff(n), y.diff(n)])
        if not d.is_zero():
            diffs[n] = d
    return ChainComplex(x.ring, x.convention, ranks, diffs)


def convert_convention(x: ChainComplex, to: str) -> ChainComplex:
    """Convert between chain and cochain presentations by negating degrees."""
    if to not in (COCHAIN, CHAIN):
        raise ConventionMismatch(f"unknown convention {to!r}")
    if x.convention == to:
        return x
    ranks = {-n: r for n, r in x.ranks.items()}
    diffs = {-n: m for n, m in x.diffs.items()}
    return ChainComplex(x.ring, to, ranks, diffs)
