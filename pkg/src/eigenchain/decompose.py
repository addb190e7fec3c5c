"""Per-degree splittings of a complex and the homology built from them.

At each degree the module splits as (complement) ⊕ (image of the incoming
differential), and the complement splits further into the cycles it
contains plus a transversal that the differential carries isomorphically
onto the outgoing image.  Homology ranks, torsion, canonical cycle
representatives, and the canonical eigenmap all read off these pieces.

Over Z the first split exists exactly when the incoming image is a pure
(saturated) submodule, which is also exactly when homology at that degree
is torsion-free; :class:`~eigenchain.errors.NotSaturated` reports the
offending invariant factors otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import COCHAIN, ChainComplex, GradedMap, scalar_object, validate_complex
from .errors import ConventionMismatch, NotSaturated, TorsionHomology, ValidationError
from .linalg import (
    SubspaceBasis,
    complement_basis,
    image_basis,
    inverse,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_matrix,
)
from .matrix import Matrix, hstack


def _require_cochain(f: ChainComplex):
    if f.convention != COCHAIN:
        raise ConventionMismatch("core operations expect the cochain presentation; convert first")


@dataclass(frozen=True)
class DegreeDecomposition:
    """The two-level split of one degree.

    ``incoming_image`` and ``complement`` live in ambient coordinates;
    ``complement_cycles`` (cycles inside the complement) and
    ``complement_transversal`` live in complement coordinates.
    ``restricted_diff`` is the differential restricted to the complement,
    written from complement coordinates to the basis of the outgoing
    image.  ``to_block_coords`` inverts ``[complement | incoming_image]``,
    i.e. converts ambient coordinates to block coordinates.
    """

    degree: int
    incoming_image: SubspaceBasis
    complement: SubspaceBasis
    complement_cycles: SubspaceBasis
    complement_transversal: SubspaceBasis
    restricted_diff: Matrix
    to_block_coords: Matrix

    @property
    def cycles_in_ambient(self) -> Matrix:
        return self.complement.vectors @ self.complement_cycles.vectors

    @property
    def transversal_in_ambient(self) -> Matrix:
        return self.complement.vectors @ self.complement_transversal.vectors


class Decomposition(dict):
    """Degree-indexed decompositions with empty defaults off-support."""

    def __init__(self, source: ChainComplex, parts: dict[int, DegreeDecomposition]):
        super().__init__(parts)
        self.source = source

    def at(self, n: int) -> DegreeDecomposition:
        if n in self:
            return self[n]
        if self.source.rank(n) != 0:
            raise KeyError(f"no decomposition at degree {n}")
        ring = self.source.ring
        empty = Matrix.zeros(ring, 0, 0)
        return DegreeDecomposition(
            degree=n,
            incoming_image=SubspaceBasis(0, empty),
            complement=SubspaceBasis(0, empty),
            complement_cycles=SubspaceBasis(0, empty),
            complement_transversal=SubspaceBasis(0, empty),
            restricted_diff=empty,
            to_block_coords=empty,
        )


def _decompose_degree(
    f: ChainComplex,
    n: int,
    incoming: SubspaceBasis,
    outgoing: SubspaceBasis,
) -> DegreeDecomposition:
    ring = f.ring
    ambient = f.rank(n)
    if not ring.is_field:
        # Purity of the incoming image in the ambient module.
        factors = smith_normal_form(f.diff(n - 1)).invariant_factors if incoming.dim else ()
        bad = [d for d in factors if d not in (0, 1)]
        if bad:
            raise NotSaturated(bad, degree=n)
    try:
        comp = complement_basis(incoming)
    except NotSaturated as exc:
        raise NotSaturated(exc.factors, degree=n) from None
    # Differential restricted to the complement, in outgoing-image coordinates.
    mapped = f.diff(n) @ comp.vectors
    delta = solve_matrix(outgoing.vectors, mapped)
    if delta is None:
        raise ValidationError(f"image basis at degree {n + 1} does not span the differential image")
    cycles = kernel_basis(delta)
    transversal = complement_basis(cycles)
    full = hstack([comp.vectors, incoming.vectors])
    to_blocks = inverse(full) if ambient else Matrix.zeros(ring, 0, 0)
    return DegreeDecomposition(
        degree=n,
        incoming_image=incoming,
        complement=comp,
        complement_cycles=cycles,
        complement_transversal=transversal,
        restricted_diff=delta,
        to_block_coords=to_blocks,
    )


def decompose(f: ChainComplex) -> Decomposition:
    """Split every supported degree; deterministic bases throughout."""
    _require_cochain(f)
    report = validate_complex(f)
    if not report.ok:
        raise ValidationError(report.message)
    images = {n: image_basis(f.diff(n - 1)) for n in f.degrees()}
    parts = {}
    for n in f.degrees():
        outgoing = images.get(n + 1, SubspaceBasis(f.rank(n + 1), Matrix.zeros(f.ring, f.rank(n + 1), 0)))
        parts[n] = _decompose_degree(f, n, images[n], outgoing)
    return Decomposition(f, parts)


@dataclass(frozen=True)
class DegreeHomology:
    """Free rank, torsion invariant factors (Z only), and cycle reps."""

    degree: int
    betti: int
    torsion: tuple[int, ...]
    representatives: SubspaceBasis


@dataclass
class HomologyResult:
    by_degree: dict[int, DegreeHomology]

    def betti_numbers(self) -> dict[int, int]:
        return {n: h.betti for n, h in self.by_degree.items() if h.betti}

    def torsion_by_degree(self) -> dict[int, tuple[int, ...]]:
        return {n: h.torsion for n, h in self.by_degree.items() if h.torsion}

    def is_zero(self) -> bool:
        return all(h.betti == 0 and not h.torsion for h in self.by_degree.values())


def _torsion_factors(f: ChainComplex, n: int) -> tuple[int, ...]:
    if f.ring.is_field:
        return ()
    d_in = f.diff(n - 1)
    if d_in.cols == 0 or d_in.rows == 0:
        return ()
    factors = smith_normal_form(d_in).invariant_factors
    return tuple(d for d in factors if d > 1)


def _fallback_representatives(f: ChainComplex, n: int) -> SubspaceBasis:
    # Free-part generators of ker/im when the degree carries torsion:
    # write the image generators in kernel coordinates and read the free
    # summand off the Smith transform of that coordinate matrix.
    ker = kernel_basis(f.diff(n))
    img = image_basis(f.diff(n - 1))
    coords = solve_matrix(ker.vectors, img.vectors)
    if coords is None:
        raise ValidationError(f"image at degree {n} is not contained in the kernel")
    snf = smith_normal_form(coords)
    nonzero = sum(1 for d in snf.invariant_factors if d != 0)
    free_cols = snf.u_inv.cols_at(list(range(nonzero, ker.dim)))
    return SubspaceBasis(f.rank(n), ker.vectors @ free_cols)


def homology(f: ChainComplex) -> HomologyResult:
    """Exact ranks, torsion, and representative cycles per degree.

    Representatives are the cycles inside the chosen complement whenever
    the degree splits (always over a field); degrees with torsion fall
    back to free-part generators of kernel modulo image.
    """
    _require_cochain(f)
    report = validate_complex(f)
    if not report.ok:
        raise ValidationError(report.message)
    out = {}
    for n in f.degrees():
        betti = f.rank(n) - rank(f.diff(n)) - rank(f.diff(n - 1))
        torsion = _torsion_factors(f, n)
        if torsion:
            reps = _fallback_representatives(f, n)
        else:
            incoming = image_basis(f.diff(n - 1))
            outgoing = image_basis(f.diff(n))
            part = _decompose_degree(f, n, incoming, outgoing)
            reps = SubspaceBasis(f.rank(n), part.cycles_in_ambient)
        if reps.dim != betti:
            raise ValidationError(f"representative count {reps.dim} != rank {betti} at degree {n}")
        out[n] = DegreeHomology(n, betti, torsion, reps)
    return HomologyResult(out)


def canonical_alpha(f: ChainComplex) -> tuple[ChainComplex, GradedMap]:
    """The canonical eigen pair: homology ranks with representative cycles.

    The scalar object has the homology ranks and zero differentials; the
    map sends each standard generator to the matching representative
    cycle, so its image is exactly the cycles inside the complement.
    Raises :class:`TorsionHomology` over Z when homology has torsion (no
    free scalar object can match it).
    """
    _require_cochain(f)
    try:
        dec = decompose(f)
    except NotSaturated as exc:
        raise TorsionHomology(exc.degree, exc.factors) from None
    ranks = {}
    blocks = {}
    for n in f.degrees():
        part = dec[n]
        betti = part.complement_cycles.dim
        if betti:
            ranks[n] = betti
            blocks[n] = part.cycles_in_ambient
    lam = scalar_object(f.ring, ranks)
    alpha = GradedMap(lam, f, 0, blocks)
    return lam, alpha
