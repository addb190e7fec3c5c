"""Eigenvalue certificates and the homotopy block analyzer.

A certificate records, for a triple (complex F, zero-differential complex
lambda, chain map alpha), whether the mapping cone of alpha is
null-homotopic.  A positive verdict always ships a witness homotopy that
re-verifies from scratch; a negative verdict names the first violated
hypothesis per degree and is double-checked against the contractibility
criterion, so a complement-dependent hypothesis failure can never mask a
valid pair: if the cone contracts anyway, the verdict is positive with
the contraction as witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import ChainComplex, GradedMap, identity_map, validate_chain_map, zero_map
from .cones import (
    ConeComplex,
    Homotopy,
    construct_null_homotopy,
    is_contractible,
    mapping_cone,
    verify_homotopy,
)
from .decompose import Decomposition, canonical_alpha, decompose, homology
from .errors import LayoutMismatch, NotSaturated, TorsionHomology, ValidationError
from .linalg import (
    SubspaceBasis,
    complement_basis,
    image_basis,
    intersect,
    inverse,
    kernel_basis,
    solve_matrix,
    spans_equal,
)
from .matrix import Matrix, block_diag, hstack

EIGENVALUE = "Eigenvalue"
NOT_EIGENVALUE = "NotEigenvalue"

RANK_MISMATCH = "RankMismatch"
TORSION = "Torsion"
ALPHA_NOT_INJECTIVE = "AlphaNotInjective"
ALPHA_NOT_INTO_G = "AlphaNotIntoG"
ALPHA_NOT_SURJECTIVE = "AlphaNotSurjective"
NOT_SATURATED = "NotSaturated"


@dataclass(frozen=True)
class FailureReason:
    kind: str
    degree: Optional[int] = None
    factors: tuple[int, ...] = ()

    def describe(self) -> str:
        where = f" at degree {self.degree}" if self.degree is not None else ""
        extra = f" (invariant factors {list(self.factors)})" if self.factors else ""
        return f"{self.kind}{where}{extra}"


@dataclass
class EigenCertificate:
    """Verdict plus either a verified witness or structured failure reasons."""

    verdict: str
    ring: object
    eigenobject: str
    lambda_ranks: dict[int, int]
    homology_betti: dict[int, int]
    homology_torsion: dict[int, tuple[int, ...]]
    alpha_injective: dict[int, bool]
    witness: Optional[Homotopy] = None
    cone: Optional[ConeComplex] = None
    failure_reason: Optional[FailureReason] = None
    failure_reasons: list[FailureReason] = field(default_factory=list)

    def is_eigenvalue(self) -> bool:
        return self.verdict == EIGENVALUE


def _alpha_injectivity(lam: ChainComplex, alpha: GradedMap) -> dict[int, bool]:
    return {n: kernel_basis(alpha.block(n)).dim == 0 for n in lam.degrees()}


def _hypothesis_failures(
    lam: ChainComplex, alpha: GradedMap, dec: Decomposition
) -> list[FailureReason]:
    """First violated hypothesis at each degree, ascending."""
    f = alpha.target
    failures = []
    for n in sorted(set(lam.ranks) | set(f.ranks)):
        part = dec.at(n)
        betti = part.complement_cycles.dim
        if lam.rank(n) != betti:
            failures.append(FailureReason(RANK_MISMATCH, degree=n))
            continue
        a_n = alpha.block(n)
        if a_n.cols == 0:
            continue
        if kernel_basis(a_n).dim != 0:
            failures.append(FailureReason(ALPHA_NOT_INJECTIVE, degree=n))
            continue
        if solve_matrix(part.complement.vectors, a_n) is None:
            failures.append(FailureReason(ALPHA_NOT_INTO_G, degree=n))
            continue
        if solve_matrix(a_n, part.cycles_in_ambient) is None:
            failures.append(FailureReason(ALPHA_NOT_SURJECTIVE, degree=n))
    return failures


def decide_eigenvalue(f: ChainComplex, lam: ChainComplex, alpha: GradedMap) -> EigenCertificate:
    """Certify whether (lam, alpha) realizes the homology of ``f``.

    Positive exactly when the cone of ``alpha`` is null-homotopic.  The
    fast path checks the per-degree hypotheses (rank match, injectivity,
    image inside the chosen complement and spanning its cycles) and then
    constructs the explicit witness; if some hypothesis fails, the
    contractibility criterion arbitrates before a negative verdict is
    issued.
    """
    if alpha.source != lam or alpha.target != f:
        raise ValidationError("alpha does not map the given scalar object into the given complex")
    check = validate_chain_map(alpha)
    if not check.ok:
        raise ValidationError(f"alpha is not a chain map: {check.message}")
    cone = mapping_cone(alpha)
    hom = homology(f)
    betti = {n: h.betti for n, h in hom.by_degree.items()}
    torsion = {n: h.torsion for n, h in hom.by_degree.items() if h.torsion}
    injective = _alpha_injectivity(lam, alpha)
    base = dict(
        ring=f.ring,
        eigenobject="R",
        lambda_ranks=dict(lam.ranks),
        homology_betti=betti,
        homology_torsion=torsion,
        alpha_injective=injective,
    )

    failures: list[FailureReason]
    dec = None
    try:
        dec = decompose(f)
    except NotSaturated as exc:
        failures = [FailureReason(NOT_SATURATED, degree=exc.degree, factors=tuple(exc.factors))]
    else:
        failures = _hypothesis_failures(lam, alpha, dec)

    if not failures:
        witness = construct_null_homotopy(cone, dec)
        report = verify_homotopy(
            cone.underlying,
            zero_map(cone.underlying, cone.underlying),
            identity_map(cone.underlying),
            witness,
        )
        if not report.ok:
            raise ValidationError(f"constructed witness failed verification: {report.message}")
        return EigenCertificate(verdict=EIGENVALUE, witness=witness, cone=cone, **base)

    # Hypotheses are stated relative to our complement choice; arbitration
    # by the contractibility criterion keeps the verdict choice-free.
    contractible, witness = is_contractible(cone.underlying)
    if contractible:
        report = verify_homotopy(
            cone.underlying,
            zero_map(cone.underlying, cone.underlying),
            identity_map(cone.underlying),
            witness,
        )
        if not report.ok:
            raise ValidationError(f"contraction witness failed verification: {report.message}")
        return EigenCertificate(verdict=EIGENVALUE, witness=witness, cone=cone, **base)
    return EigenCertificate(
        verdict=NOT_EIGENVALUE,
        witness=None,
        cone=cone,
        failure_reason=failures[0],
        failure_reasons=failures,
        **base,
    )


def certify_homology_eigenvalue(f: ChainComplex) -> EigenCertificate:
    """Certify the canonical pair built from the homology of ``f``.

    Positive whenever the required splittings exist; over Z torsion in
    homology makes a free scalar object impossible and yields a negative
    certificate carrying the torsion degrees and invariant factors.
    """
    try:
        lam, alpha = canonical_alpha(f)
    except TorsionHomology as exc:
        hom = homology(f)
        return EigenCertificate(
            verdict=NOT_EIGENVALUE,
            ring=f.ring,
            eigenobject="R",
            lambda_ranks={},
            homology_betti={n: h.betti for n, h in hom.by_degree.items()},
            homology_torsion={n: h.torsion for n, h in hom.by_degree.items() if h.torsion},
            alpha_injective={},
            failure_reason=FailureReason(TORSION, degree=exc.degree, factors=tuple(exc.factors)),
            failure_reasons=[FailureReason(TORSION, degree=exc.degree, factors=tuple(exc.factors))],
        )
    return decide_eigenvalue(f, lam, alpha)


@dataclass
class DegreeBlockReport:
    """Extracted homotopy blocks and the identities they must satisfy.

    All booleans are recomputed from exact matrix identities on every call.
    ``lambda_from_complement`` is the block mapping the complement to the
    scalar part; ``complement_from_image`` maps the image block back into
    the complement.  The four ranks split the complement against the
    eigenmap image: cycles/transversal crossed with inside/outside.
    """

    degree: int
    lambda_from_complement: Matrix
    complement_from_image: Matrix
    left_inverse_ok: bool  # psi_12 ∘ alpha = -id on the scalar block
    complement_identity_ok: bool  # alpha ∘ psi_12 + psi_23 ∘ delta = -id on the complement
    right_inverse_ok: bool  # delta ∘ psi_23 = -id on the image block
    residual_is_cycle_valued: bool  # delta ∘ (psi_23 + delta_transversal^{-1}) = 0
    rank_cycles_outside_image: int
    rank_transversal_outside_image: int
    rank_cycles_inside_image: int
    rank_transversal_inside_image: int
    image_equals_cycles: bool
    no_cycles_outside_image: bool
    no_transversal_overlap: bool

    def equations_hold(self) -> bool:
        return self.left_inverse_ok and self.complement_identity_ok and self.right_inverse_ok

    def conclusions_hold(self) -> bool:
        return self.image_equals_cycles and self.no_cycles_outside_image and self.no_transversal_overlap


@dataclass
class BlockAnalysis:
    by_degree: dict[int, DegreeBlockReport]

    def all_equations_hold(self) -> bool:
        return all(r.equations_hold() for r in self.by_degree.values())

    def all_conclusions_hold(self) -> bool:
        return all(r.conclusions_hold() for r in self.by_degree.values())


def _adapted_block(cone: ConeComplex, dec: Decomposition, psi: Homotopy, n: int) -> Matrix:
    """psi^n rewritten in (scalar | complement | image) coordinates."""
    ring = cone.ring
    lam_src = cone.layout[n].lambda_rank if n in cone.layout else 0
    lam_tgt = cone.layout[n - 1].lambda_rank if (n - 1) in cone.layout else 0
    src_part = dec.at(n)
    tgt_part = dec.at(n - 1)
    src_change = block_diag([
        Matrix.identity(ring, lam_src),
        hstack([src_part.complement.vectors, src_part.incoming_image.vectors]),
    ])
    tgt_change_inv = block_diag([Matrix.identity(ring, lam_tgt), tgt_part.to_block_coords])
    return tgt_change_inv @ psi.block(n) @ src_change


def analyze_homotopy_blocks(cone: ConeComplex, psi: Homotopy, dec: Decomposition) -> BlockAnalysis:
    """Check the blockwise consequences of the homotopy identity.

    Extracts the two off-diagonal blocks of every homotopy degree in the
    cone's layout coordinates, tests the three diagonal-block equations of
    ``d∘psi + psi∘d = -id``, the cycle-valuedness of the residual against
    the canonical right inverse, and the lattice of intersections between
    the eigenmap image and the cycle/transversal split of the complement.
    For any verified null-homotopy the equations hold and the image equals
    the cycles, with both off-split intersections trivial.
    """
    if psi.on != cone.underlying:
        raise LayoutMismatch("homotopy is not attached to this cone")
    alpha = cone.source_alpha
    lam, f = alpha.source, alpha.target
    ring = cone.ring

    def lam_rank(n):
        return cone.layout[n].lambda_rank if n in cone.layout else 0

    def g_rank(n):
        return cone.layout[n].complement_rank if n in cone.layout else 0

    def im_rank(n):
        return cone.layout[n].image_rank if n in cone.layout else 0

    bar_alpha = {}
    for n in sorted(set(lam.ranks) | set(f.ranks)):
        sol = solve_matrix(dec.at(n).complement.vectors, alpha.block(n))
        if sol is None:
            raise LayoutMismatch(f"eigenmap image leaves the complement block at degree {n}")
        bar_alpha[n] = sol

    def bar_alpha_at(n):
        if n in bar_alpha:
            return bar_alpha[n]
        return Matrix.zeros(ring, dec.at(n).complement.dim, lam.rank(n))

    psi12 = {}
    psi23 = {}
    for n in cone.layout:
        ad = _adapted_block(cone, dec, psi, n)
        lam_tgt = lam_rank(n - 1)
        g_tgt = g_rank(n - 1)
        lam_src = lam_rank(n)
        g_src = g_rank(n)
        psi12[n] = ad.submatrix(range(lam_tgt), range(lam_src, lam_src + g_src))
        psi23[n] = ad.submatrix(
            range(lam_tgt, lam_tgt + g_tgt),
            range(lam_src + g_src, lam_src + g_src + im_rank(n)),
        )

    def psi12_at(n):
        if n in psi12:
            return psi12[n]
        return Matrix.zeros(ring, lam_rank(n - 1), g_rank(n))

    def psi23_at(n):
        if n in psi23:
            return psi23[n]
        return Matrix.zeros(ring, g_rank(n - 1), im_rank(n))

    reports = {}
    for n in sorted(cone.layout):
        part = dec.at(n)
        delta_n = part.restricted_diff
        prev = dec.at(n - 1)
        # Equation on the scalar block of this cone degree.
        lhs1 = psi12_at(n + 1) @ bar_alpha_at(n + 1)
        eq1 = lhs1 == -Matrix.identity(ring, lam_rank(n))
        # Equation on the complement block.
        lhs2 = bar_alpha_at(n) @ psi12_at(n) + psi23_at(n + 1) @ delta_n
        eq2 = lhs2 == -Matrix.identity(ring, g_rank(n))
        # Equation on the image block.
        delta_prev = prev.restricted_diff
        lhs3 = delta_prev @ psi23_at(n)
        eq3 = lhs3 == -Matrix.identity(ring, im_rank(n))
        # Residual against the canonical right inverse through the transversal.
        if im_rank(n):
            delta_on_transversal = delta_prev @ prev.complement_transversal.vectors
            right_inv = prev.complement_transversal.vectors @ inverse(delta_on_transversal)
            residual = psi23_at(n) + right_inv
            residual_ok = (delta_prev @ residual).is_zero()
        else:
            residual_ok = True
        # Intersection lattice inside the complement.
        g_dim = part.complement.dim
        im_alpha = image_basis(bar_alpha_at(n))
        cycles = part.complement_cycles
        transversal = part.complement_transversal
        if g_dim and im_alpha.dim:
            outside = complement_basis(im_alpha)
        else:
            outside = SubspaceBasis(g_dim, Matrix.identity(ring, g_dim))
        rank_a = intersect(cycles, outside).dim
        rank_b = intersect(transversal, outside).dim
        rank_c = intersect(cycles, im_alpha).dim
        rank_d = intersect(transversal, im_alpha).dim
        reports[n] = DegreeBlockReport(
            degree=n,
            lambda_from_complement=psi12_at(n),
            complement_from_image=psi23_at(n),
            left_inverse_ok=eq1,
            complement_identity_ok=eq2,
            right_inverse_ok=eq3,
            residual_is_cycle_valued=residual_ok,
            rank_cycles_outside_image=rank_a,
            rank_transversal_outside_image=rank_b,
            rank_cycles_inside_image=rank_c,
            rank_transversal_inside_image=rank_d,
            image_equals_cycles=spans_equal(im_alpha, cycles),
            no_cycles_outside_image=rank_a == 0,
            no_transversal_overlap=rank_d == 0,
        )
    return BlockAnalysis(reports)
