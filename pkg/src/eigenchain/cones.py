"""Mapping cones, explicit null-homotopies, and contractibility.

The cone of a map ``alpha`` from a zero-differential complex into ``F``
has degree-``n`` term ``lambda_{n+1} ⊕ F_n`` and the unsigned block
differential ``(a, x) -> (0, alpha(a) + d(x))``.  A null-homotopy here is
a degree-(-1) family ``psi`` certified against ``d∘psi + psi∘d = -id``,
i.e. a homotopy from the zero map to the identity; that sign convention
is fixed so the constructed witnesses match the decomposition blocks
literally, and :func:`verify_homotopy` takes ``f`` and ``g`` explicitly
so the opposite convention remains expressible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import (
    COCHAIN,
    ChainComplex,
    GradedMap,
    scalar_object,
    validate_chain_map,
    validate_complex,
    zero_map,
)
from .decompose import Decomposition, decompose, homology
from .errors import HypothesisFailure, NotScalarSource, ValidationError
from .linalg import inverse, kernel_basis, rank, solve_matrix
from .matrix import Matrix, block_diag, hstack, vstack


@dataclass(frozen=True)
class ConeLayout:
    """Block sizes of one cone degree: scalar part, complement, image."""

    lambda_rank: int
    complement_rank: int
    image_rank: int

    @property
    def offsets(self) -> tuple[int, int, int]:
        return (0, self.lambda_rank, self.lambda_rank + self.complement_rank)

    @property
    def total(self) -> int:
        return self.lambda_rank + self.complement_rank + self.image_rank


@dataclass
class ConeComplex:
    """A mapping cone with its per-degree block layout."""

    underlying: ChainComplex
    layout: dict[int, ConeLayout]
    source_alpha: GradedMap

    @property
    def ring(self):
        return self.underlying.ring


@dataclass
class Homotopy:
    """Degree-(-1) family on one complex: block ``n`` maps degree n to n-1."""

    on: ChainComplex
    blocks: dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        kept = {}
        for n, m in self.blocks.items():
            expected = (self.on.rank(n - 1), self.on.rank(n))
            if (m.rows, m.cols) != expected:
                raise ValidationError(
                    f"homotopy block at degree {n} is {m.rows}x{m.cols}, expected {expected[0]}x{expected[1]}"
                )
            if not m.is_zero():
                kept[n] = m
        self.blocks = kept

    def block(self, n: int) -> Matrix:
        if n in self.blocks:
            return self.blocks[n]
        return Matrix.zeros(self.on.ring, self.on.rank(n - 1), self.on.rank(n))


def mapping_cone(alpha: GradedMap) -> ConeComplex:
    """Cone of a chain map whose source has zero differentials."""
    lam, f = alpha.source, alpha.target
    if lam.convention != COCHAIN or f.convention != COCHAIN:
        raise ValidationError("mapping cone expects cochain presentation")
    if not lam.is_scalar():
        raise NotScalarSource("cone source must have zero differentials")
    if alpha.degree_shift != 0:
        raise ValidationError("cone expects a degree-0 chain map")
    check = validate_chain_map(alpha)
    if not check.ok:
        raise ValidationError(f"not a chain map: {check.message}")
    ring = f.ring
    degrees = sorted({n for n in f.ranks} | {n - 1 for n in lam.ranks})
    ranks = {}
    layout = {}
    for n in degrees:
        lam_rank = lam.rank(n + 1)
        f_rank = f.rank(n)
        ranks[n] = lam_rank + f_rank
        im_rank = rank(f.diff(n - 1))
        layout[n] = ConeLayout(lam_rank, f_rank - im_rank, im_rank)
    diffs = {}
    for n in degrees:
        rows = ranks.get(n + 1, lam.rank(n + 2) + f.rank(n + 1))
        cols = ranks[n]
        if rows == 0 or cols == 0:
            continue
        top = Matrix.zeros(ring, lam.rank(n + 2), cols)
        bottom = hstack([alpha.block(n + 1), f.diff(n)])
        d = vstack([top, bottom])
        if not d.is_zero():
            diffs[n] = d
    cone = ChainComplex(ring, COCHAIN, ranks, diffs)
    report = validate_complex(cone)
    if not report.ok:
        raise ValidationError(f"cone is not a complex: {report.message}")
    return ConeComplex(cone, layout, alpha)


def adapted_cone_differential(cone: ConeComplex, dec: Decomposition, n: int) -> Matrix:
    """The cone differential at degree ``n`` in block coordinates.

    For a valid cone this is ``[[0,0,0],[alpha,0,0],[0,delta,0]]`` with
    respect to the (scalar | complement | image) blocks on both sides.
    """
    z = cone.underlying
    d = z.diff(n)
    lam_src = cone.layout[n].lambda_rank if n in cone.layout else 0
    lam_tgt = cone.layout[n + 1].lambda_rank if (n + 1) in cone.layout else 0
    src_part = dec.at(n)
    tgt_part = dec.at(n + 1)
    ring = z.ring
    src_change = block_diag([
        Matrix.identity(ring, lam_src),
        hstack([src_part.complement.vectors, src_part.incoming_image.vectors]),
    ])
    tgt_change_inv = block_diag([
        Matrix.identity(ring, lam_tgt),
        tgt_part.to_block_coords,
    ])
    return tgt_change_inv @ d @ src_change


@dataclass(frozen=True)
class HomotopyReport:
    """Result of checking ``f - g == d∘psi + psi∘d`` degree by degree."""

    ok: bool
    degree: Optional[int] = None
    entry: Optional[tuple[int, int]] = None
    composites: dict[int, Matrix] = field(default_factory=dict)
    message: str = ""


def verify_homotopy(x: ChainComplex, f: GradedMap, g: GradedMap, psi: Homotopy) -> HomotopyReport:
    """Exact degreewise check of the homotopy identity.

    ``composites`` records ``d∘psi + psi∘d`` at every supported degree so
    callers can inspect the witnessed products.
    """
    if psi.on != x:
        raise ValidationError("homotopy is attached to a different complex")
    for m in (f, g):
        if m.source != x or m.target != x or m.degree_shift != 0:
            raise ValidationError("verify_homotopy compares degree-0 endomorphisms")
    composites = {}
    failure = None
    for n in x.degrees():
        lhs = x.diff(n - 1) @ psi.block(n) + psi.block(n + 1) @ x.diff(n)
        composites[n] = lhs
        target = f.block(n) - g.block(n)
        if failure is None and lhs != target:
            delta = lhs - target
            spot = next(
                (i, j)
                for i, row in enumerate(delta.data)
                for j, v in enumerate(row)
                if v != 0
            )
            failure = (n, spot)
    if failure is None:
        return HomotopyReport(True, composites=composites)
    n, spot = failure
    return HomotopyReport(
        False,
        degree=n,
        entry=spot,
        composites=composites,
        message=f"homotopy identity fails at degree {n}, entry {spot}",
    )


def _check_cone_hypotheses(cone: ConeComplex, dec: Decomposition):
    """The conditions under which the explicit null-homotopy exists.

    Per degree: the scalar rank matches the homology rank, the map is
    injective, lands in the chosen complement, and hits every cycle in it
    (automatic over a field once ranks match; a genuine extra condition
    over Z).  Raises :class:`HypothesisFailure` with the reason.
    """
    alpha = cone.source_alpha
    lam, f = alpha.source, alpha.target
    for n in sorted(set(lam.ranks) | set(f.ranks)):
        part = dec.at(n)
        betti = part.complement_cycles.dim
        if lam.rank(n) != betti:
            raise HypothesisFailure("scalar rank differs from homology rank", degree=n)
        a_n = alpha.block(n)
        if a_n.cols:
            if kernel_basis(a_n).dim != 0:
                raise HypothesisFailure("eigenmap is not injective", degree=n)
            in_g = solve_matrix(part.complement.vectors, a_n)
            if in_g is None:
                raise HypothesisFailure("eigenmap image leaves the complement", degree=n)
            cycles_ambient = part.cycles_in_ambient
            if solve_matrix(a_n, cycles_ambient) is None:
                raise HypothesisFailure("eigenmap does not span the complement cycles", degree=n)


def construct_null_homotopy(cone: ConeComplex, dec: Decomposition) -> Homotopy:
    """Build the explicit null-homotopy of a cone from the decomposition.

    On the complement the witness inverts the eigenmap on cycles and kills
    the transversal; on the image it inverts the restricted differential
    back through the transversal.  Both inverses are exact solves against
    the stored bases.
    """
    _check_cone_hypotheses(cone, dec)
    alpha = cone.source_alpha
    lam, f = alpha.source, alpha.target
    z = cone.underlying
    ring = z.ring
    blocks = {}
    for n in z.degrees():
        if z.rank(n - 1) == 0:
            continue
        lam_src = lam.rank(n + 1)
        f_src = f.rank(n)
        lam_tgt = lam.rank(n)
        f_tgt = f.rank(n - 1)
        part = dec.at(n)
        prev = dec.at(n - 1)
        # Split ambient vectors of F_n into (cycles | transversal | image) coords.
        if f_src:
            basis = hstack([
                part.cycles_in_ambient,
                part.transversal_in_ambient,
                part.incoming_image.vectors,
            ])
            to_coords = inverse(basis)
            zdim = part.complement_cycles.dim
            kdim = part.complement_transversal.dim
            cycle_coords = to_coords.submatrix(range(zdim), range(f_src))
            image_coords = to_coords.submatrix(range(zdim + kdim, f_src), range(f_src))
        else:
            cycle_coords = Matrix.zeros(ring, 0, 0)
            image_coords = Matrix.zeros(ring, 0, 0)
        # Scalar-part output: invert the eigenmap on the cycle component.
        if lam_tgt and f_src:
            alpha_inv = solve_matrix(alpha.block(n), part.cycles_in_ambient)
            if alpha_inv is None:
                raise HypothesisFailure("eigenmap does not span the complement cycles", degree=n)
            top_f = -(alpha_inv @ cycle_coords)
        else:
            top_f = Matrix.zeros(ring, lam_tgt, f_src)
        # F-part output: invert the restricted differential through the transversal.
        if f_tgt and part.incoming_image.dim:
            delta_on_transversal = prev.restricted_diff @ prev.complement_transversal.vectors
            delta_inv = inverse(delta_on_transversal)
            bottom_f = -(prev.transversal_in_ambient @ (delta_inv @ image_coords))
        else:
            bottom_f = Matrix.zeros(ring, f_tgt, f_src)
        top = hstack([Matrix.zeros(ring, lam_tgt, lam_src), top_f])
        bottom = hstack([Matrix.zeros(ring, f_tgt, lam_src), bottom_f])
        block = vstack([top, bottom])
        if not block.is_zero():
            blocks[n] = block
    return Homotopy(z, blocks)


def is_contractible(x: ChainComplex) -> tuple[bool, Optional[Homotopy]]:
    """Decide null-homotopy existence and produce a witness when it exists.

    For bounded complexes of free modules this holds exactly when all
    homology vanishes (including torsion over Z); the witness is built by
    splitting, reusing the cone construction with an empty scalar part.
    """
    h = homology(x)
    if not h.is_zero():
        return False, None
    lam = scalar_object(x.ring, {})
    cone = mapping_cone(zero_map(lam, x))
    dec = decompose(x)
    witness = construct_null_homotopy(cone, dec)
    return True, Homotopy(x, dict(witness.blocks))
