"""Seeded random generators for property suites.

Complexes are built differential by differential: each new matrix is a
random combination of rows annihilating the image of the previous one,
so d∘d = 0 holds by construction while homology stays varied.  The
eigenmap variants deliberately break each certificate hypothesis in turn.
"""

from __future__ import annotations

import random

from .complexes import COCHAIN, ChainComplex, GradedMap, scalar_object
from .decompose import canonical_alpha
from .errors import TorsionHomology
from .linalg import kernel_basis
from .matrix import Matrix, hstack
from .rings import Ring


def _random_entry(ring: Ring, rng: random.Random):
    if ring.is_field and ring.needs_reduction:
        return rng.randrange(ring.p)
    return rng.randint(-2, 2)


def _random_matrix(ring: Ring, rng: random.Random, rows: int, cols: int) -> Matrix:
    return Matrix(ring, [[_random_entry(ring, rng) for _ in range(cols)] for _ in range(rows)])


def random_complex(
    ring: Ring,
    rng: random.Random,
    max_len: int = 6,
    max_rank: int = 4,
    total_cap: int | None = None,
) -> ChainComplex:
    """A valid bounded complex with random ranks and differentials."""
    length = rng.randint(1, max_len)
    lo = rng.randint(-3, 3)
    ranks = {}
    budget = total_cap if total_cap is not None else max_len * max_rank
    for i in range(length):
        r = rng.randint(0, min(max_rank, budget))
        budget -= r
        if r:
            ranks[lo + i] = r
    x = ChainComplex(ring, COCHAIN, ranks)
    diffs = {}
    for n in sorted(ranks):
        src, tgt = x.rank(n), x.rank(n + 1)
        if not (src and tgt):
            continue
        incoming = diffs.get(n - 1)
        if incoming is None:
            d = _random_matrix(ring, rng, tgt, src)
        else:
            # Rows must kill the incoming image: combine kernel rows of d^T.
            ker = kernel_basis(incoming.transpose())
            if ker.dim == 0:
                continue
            mix = _random_matrix(ring, rng, tgt, ker.dim)
            d = mix @ ker.vectors.transpose()
        if not d.is_zero():
            diffs[n] = d
    return ChainComplex(ring, COCHAIN, ranks, diffs)


def canonical_pair(f: ChainComplex):
    """Canonical (scalar object, eigenmap); None when homology has torsion."""
    try:
        return canonical_alpha(f)
    except TorsionHomology:
        return None


def _random_cycle(f: ChainComplex, n: int, rng: random.Random) -> Matrix:
    ker = kernel_basis(f.diff(n))
    if ker.dim == 0:
        return Matrix.zeros(f.ring, f.rank(n), 1)
    mix = Matrix(f.ring, [[_random_entry(f.ring, rng)] for _ in range(ker.dim)])
    return ker.vectors @ mix


def alpha_variants(f: ChainComplex, rng: random.Random):
    """Labeled (scalar, eigenmap) pairs probing every verdict path.

    Yields the canonical pair plus perturbations: padded or truncated
    scalar ranks, zeroed and duplicated columns (non-injective), columns
    replaced by boundaries (image leaves the complement), columns shifted
    by boundaries (still a homology iso, complement missed on purpose),
    and fully random cycle-valued maps.
    """
    pair = canonical_pair(f)
    if pair is None:
        return
    lam, alpha = pair
    yield "canonical", lam, alpha
    degrees = [n for n in lam.degrees() if lam.rank(n) > 0]

    if degrees:
        n0 = rng.choice(degrees)
        # Extra scalar generator mapping to zero: rank mismatch.
        ranks = dict(lam.ranks)
        ranks[n0] = ranks[n0] + 1
        lam_pad = scalar_object(f.ring, ranks)
        blocks = {n: alpha.block(n) for n in lam.degrees()}
        blocks[n0] = hstack([alpha.block(n0), Matrix.zeros(f.ring, f.rank(n0), 1)])
        yield "rank_padded", lam_pad, GradedMap(lam_pad, f, 0, blocks)

        # Dropped scalar generator: rank mismatch the other way.
        ranks = dict(lam.ranks)
        ranks[n0] = ranks[n0] - 1
        lam_cut = scalar_object(f.ring, ranks)
        blocks = {n: alpha.block(n) for n in lam.degrees() if lam_cut.rank(n)}
        if lam.rank(n0) > 1:
            blocks[n0] = alpha.block(n0).cols_at(list(range(lam.rank(n0) - 1)))
        else:
            blocks.pop(n0, None)
        yield "rank_dropped", lam_cut, GradedMap(lam_cut, f, 0, blocks)

        # Zeroed column: non-injective.
        blocks = {n: alpha.block(n) for n in lam.degrees()}
        cols = blocks[n0].grid()
        for row in cols:
            row[0] = f.ring.normalize(0)
        blocks[n0] = Matrix(f.ring, cols, cols=lam.rank(n0))
        yield "zero_column", lam, GradedMap(lam, f, 0, blocks)

        if lam.rank(n0) >= 2:
            # Duplicated column: non-injective with full support.
            m = alpha.block(n0)
            dup = hstack([m.col(0)] * 2 + [m.col(j) for j in range(2, m.cols)])
            blocks = {n: alpha.block(n) for n in lam.degrees()}
            blocks[n0] = dup
            yield "duplicate_column", lam, GradedMap(lam, f, 0, blocks)

        # Column replaced by a boundary: leaves the complement, kills homology.
        d_in = f.diff(n0 - 1)
        if d_in.cols:
            w = Matrix(f.ring, [[_random_entry(f.ring, rng)] for _ in range(d_in.cols)])
            boundary = d_in @ w
            m = alpha.block(n0)
            blocks = {n: alpha.block(n) for n in lam.degrees()}
            blocks[n0] = hstack([boundary] + [m.col(j) for j in range(1, m.cols)])
            yield "boundary_column", lam, GradedMap(lam, f, 0, blocks)

            # Column shifted by a boundary: same homology class, off the complement.
            shifted = hstack([m.col(0) + boundary] + [m.col(j) for j in range(1, m.cols)])
            blocks = {n: alpha.block(n) for n in lam.degrees()}
            blocks[n0] = shifted
            yield "boundary_shifted", lam, GradedMap(lam, f, 0, blocks)

        # Random cycle-valued map with canonical ranks.
        blocks = {}
        for n in lam.degrees():
            cols = [_random_cycle(f, n, rng) for _ in range(lam.rank(n))]
            blocks[n] = hstack(cols) if cols else Matrix.zeros(f.ring, f.rank(n), 0)
        yield "random_cycles", lam, GradedMap(lam, f, 0, blocks)
