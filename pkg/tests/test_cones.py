"""Mapping cones, explicit witnesses, and contractibility."""

import random

import pytest

from eigenchain import (
    GF,
    QQ,
    ZZ,
    ChainComplex,
    GradedMap,
    Matrix,
    canonical_alpha,
    construct_null_homotopy,
    decompose,
    identity_map,
    is_contractible,
    mapping_cone,
    scalar_object,
    validate_complex,
    verify_homotopy,
    zero_map,
)
from eigenchain.cones import Homotopy, adapted_cone_differential
from eigenchain.errors import HypothesisFailure, NotScalarSource, ValidationError
from eigenchain.randgen import random_complex

F2 = GF(2)


def null_check(z, psi):
    return verify_homotopy(z, zero_map(z, z), identity_map(z), psi)


class TestMappingCone:
    def test_circle_cone_matrices(self, circle_with_pair):
        f, lam, alpha = circle_with_pair
        cone = mapping_cone(alpha)
        assert cone.underlying.ranks == {-2: 1, -1: 4, 0: 3}
        assert cone.underlying.diff(-2) == Matrix(ZZ, [[0], [1], [1], [1]])
        assert cone.underlying.diff(-1) == Matrix(
            ZZ, [[1, 0, 0, 0], [0, 1, 0, -1], [0, 0, 1, -1]]
        )
        assert validate_complex(cone.underlying).ok

    def test_cone_of_zero_map_is_the_target(self, circle):
        lam = scalar_object(ZZ, {})
        cone = mapping_cone(zero_map(lam, circle))
        assert cone.underlying == circle

    def test_cone_of_identity_scalar(self):
        lam = scalar_object(QQ, {0: 1})
        alpha = GradedMap(lam, lam, 0, {0: Matrix.identity(QQ, 1)})
        cone = mapping_cone(alpha)
        assert cone.underlying.ranks == {-1: 1, 0: 1}
        assert cone.underlying.diff(-1) == Matrix(QQ, [[1]])
        dec = decompose(lam)
        psi = construct_null_homotopy(cone, dec)
        # The single homotopy block inverts the map, negated.
        assert psi.block(0) == Matrix(QQ, [[-1]])
        assert null_check(cone.underlying, psi).ok

    def test_nonscalar_source_rejected(self, circle):
        alpha = zero_map(circle, circle)
        with pytest.raises(NotScalarSource):
            mapping_cone(alpha)

    def test_layout_sizes(self, circle_with_pair):
        f, lam, alpha = circle_with_pair
        cone = mapping_cone(alpha)
        assert (cone.layout[-1].lambda_rank, cone.layout[-1].complement_rank, cone.layout[-1].image_rank) == (1, 3, 0)
        assert (cone.layout[0].lambda_rank, cone.layout[0].complement_rank, cone.layout[0].image_rank) == (0, 1, 2)

    def test_adapted_differential_has_the_block_shape(self, circle_with_pair):
        f, lam, alpha = circle_with_pair
        cone = mapping_cone(alpha)
        dec = decompose(f)
        ad = adapted_cone_differential(cone, dec, -1)
        # Rows: lambda 0 | complement 1 | image 2; cols: lambda 1 | complement 3.
        assert ad.data[0][0] == 1  # alpha block lands in the complement rows
        top_row_zero = all(v == 0 for v in ad.data[0][1:])
        assert top_row_zero


class TestNullHomotopy:
    def test_circle_witness_matches_the_worked_matrices(self, circle_with_pair):
        f, lam, alpha = circle_with_pair
        cone = mapping_cone(alpha)
        dec = decompose(f)
        psi = construct_null_homotopy(cone, dec)
        assert psi.block(-1) == Matrix(ZZ, [[0, 0, 0, -1]])
        assert psi.block(0) == Matrix(
            ZZ, [[-1, 0, 0], [0, -1, 0], [0, 0, -1], [0, 0, 0]]
        )

    def test_circle_composites(self, circle_with_pair):
        f, lam, alpha = circle_with_pair
        cone = mapping_cone(alpha)
        psi = construct_null_homotopy(cone, decompose(f))
        report = null_check(cone.underlying, psi)
        assert report.ok
        assert report.composites[-2] == Matrix(ZZ, [[-1]])
        assert report.composites[-1] == -Matrix.identity(ZZ, 4)
        assert report.composites[0] == -Matrix.identity(ZZ, 3)

    def test_rank_mismatch_is_a_hypothesis_failure(self, circle):
        lam = scalar_object(ZZ, {-1: 1, 0: 2})
        alpha = GradedMap(
            lam,
            circle,
            0,
            {-1: Matrix(ZZ, [[1], [1], [1]]), 0: Matrix(ZZ, [[1, 0], [0, 0], [0, 0]])},
        )
        cone = mapping_cone(alpha)
        with pytest.raises(HypothesisFailure):
            construct_null_homotopy(cone, decompose(circle))

    def test_forward_direction_on_random_complexes(self):
        rng = random.Random(2)
        for ring in (QQ, F2):
            for _ in range(25):
                f = random_complex(ring, rng, max_len=6, max_rank=4, total_cap=24)
                lam, alpha = canonical_alpha(f)
                cone = mapping_cone(alpha)
                psi = construct_null_homotopy(cone, decompose(f))
                assert null_check(cone.underlying, psi).ok


class TestVerifyHomotopy:
    def test_equal_maps_with_zero_homotopy(self, circle):
        f = identity_map(circle)
        assert verify_homotopy(circle, f, f, Homotopy(circle, {})).ok

    def test_sign_flip_is_caught(self, circle_with_pair):
        f, lam, alpha = circle_with_pair
        cone = mapping_cone(alpha)
        psi = construct_null_homotopy(cone, decompose(f))
        blocks = dict(psi.blocks)
        blocks[-1] = Matrix(ZZ, [[0, 0, 0, 1]])
        tampered = Homotopy(cone.underlying, blocks)
        report = null_check(cone.underlying, tampered)
        assert not report.ok
        assert report.degree == -2
        assert report.composites[-2] == Matrix(ZZ, [[1]])

    def test_wrong_shape_rejected(self, circle):
        with pytest.raises(ValidationError):
            Homotopy(circle, {0: Matrix.identity(ZZ, 2)})


class TestContractibility:
    def test_circle_cone_is_contractible(self, circle_with_pair):
        f, lam, alpha = circle_with_pair
        cone = mapping_cone(alpha)
        flag, psi = is_contractible(cone.underlying)
        assert flag
        assert null_check(cone.underlying, psi).ok

    def test_lone_scalar_is_not(self):
        flag, psi = is_contractible(scalar_object(ZZ, {0: 1}))
        assert not flag and psi is None

    def test_torsion_obstructs_contraction(self):
        x = ChainComplex(ZZ, "cochain", {0: 1, 1: 1}, {0: Matrix(ZZ, [[2]])})
        assert not is_contractible(x)[0]

    def test_empty_complex_contracts(self):
        flag, psi = is_contractible(scalar_object(QQ, {}))
        assert flag and psi.blocks == {}

    def test_witnesses_verify_on_random_exact_complexes(self):
        rng = random.Random(77)
        found = 0
        for _ in range(60):
            f = random_complex(QQ, rng, max_len=4, max_rank=4)
            flag, psi = is_contractible(f)
            if flag:
                found += 1
                assert null_check(f, psi).ok
        assert found >= 3  # seeded corpus is known to contain exact complexes

    def test_rank_mismatch_makes_cones_non_contractible(self):
        rng = random.Random(19)
        checked = 0
        for _ in range(20):
            f = random_complex(F2, rng, max_len=4, max_rank=3)
            pair = canonical_alpha(f)
            lam, alpha = pair
            degrees = [n for n in lam.degrees()]
            if not degrees:
                continue
            n0 = degrees[0]
            ranks = dict(lam.ranks)
            ranks[n0] += 1
            lam_bad = scalar_object(F2, ranks)
            blocks = {n: alpha.block(n) for n in lam.degrees()}
            from eigenchain import hstack

            blocks[n0] = hstack([alpha.block(n0), Matrix.zeros(F2, f.rank(n0), 1)])
            bad = GradedMap(lam_bad, f, 0, blocks)
            cone = mapping_cone(bad)
            assert not is_contractible(cone.underlying)[0]
            checked += 1
        assert checked >= 5
