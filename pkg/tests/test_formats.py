"""JSON round-trips, the simplicial builder, and the bundled fixtures."""

import json

import pytest

from eigenchain import QQ, ZZ, ChainComplex, Matrix, homology
from eigenchain.certify import certify_homology_eigenvalue, decide_eigenvalue
from eigenchain.errors import BadIndex, ParseError, ValidationError
from eigenchain.formats import (
    ComplexDoc,
    bundled_path,
    canonical_dumps,
    certificate_to_payload,
    complex_from_payload,
    complex_to_payload,
    graded_map_from_payload,
    graded_map_to_payload,
    homotopy_from_payload,
    homotopy_to_payload,
    load_complex,
    load_document,
    reverify_certificate,
)
from eigenchain.simplicial import close_simplicial, simplicial_to_chain


class TestComplexFiles:
    def test_bundled_circle_round_trips_byte_identically(self):
        for name in ("s1_complex.json", "s1_lambda.json"):
            path = bundled_path(name)
            original = path.read_text(encoding="utf-8")
            doc = load_complex(path)
            assert canonical_dumps(complex_to_payload(doc)) == original

    def test_bundled_circle_parses_to_the_worked_complex(self, circle):
        doc = load_complex(bundled_path("s1_complex.json"))
        assert doc.convention == "chain"
        assert doc.complex == circle

    def test_chain_degrees_are_negated_internally(self):
        doc = load_complex(bundled_path("s1_complex.json"))
        assert doc.complex.ranks == {-1: 3, 0: 3}
        assert doc.user_degree(-1) == 1

    def test_invalid_composition_is_reported_with_its_degree(self, tmp_path):
        payload = {
            "ring": "Q",
            "convention": "cochain",
            "degrees": [{"degree": 0, "rank": 1}, {"degree": 1, "rank": 1}, {"degree": 2, "rank": 1}],
            "diffs": [
                {"from_degree": 0, "entries": [["1"]]},
                {"from_degree": 1, "entries": [["1"]]},
            ],
        }
        p = tmp_path / "bad.json"
        p.write_text(canonical_dumps(payload))
        with pytest.raises(ValidationError) as info:
            load_complex(p)
        assert "degree 0" in str(info.value)

    def test_syntax_errors_carry_positions(self, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text('{"degrees": [,]}')
        with pytest.raises(ParseError) as info:
            load_complex(p)
        assert "line 1" in str(info.value)

    def test_scalars_are_strings_never_floats(self):
        doc = load_complex(bundled_path("s1_complex.json"))
        payload = complex_to_payload(doc)
        for diff in payload["diffs"]:
            for row in diff["entries"]:
                assert all(isinstance(v, str) for v in row)

    def test_rational_entries_round_trip(self):
        x = ChainComplex(QQ, "cochain", {0: 2, 1: 1}, {0: Matrix(QQ, [["1/2", "-3/7"]])})
        doc = ComplexDoc(x, "cochain")
        again = complex_from_payload(complex_to_payload(doc))
        assert again.complex == x


class TestMapAndHomotopyFiles:
    def test_bundled_alpha_round_trips(self):
        f_doc = load_complex(bundled_path("s1_complex.json"))
        lam_doc = load_complex(bundled_path("s1_lambda.json"))
        payload = json.loads(bundled_path("s1_alpha.json").read_text())
        alpha = graded_map_from_payload(payload, lam_doc, f_doc)
        assert alpha.block(-1) == Matrix(ZZ, [[1], [1], [1]])
        assert canonical_dumps(graded_map_to_payload(alpha, "chain")) == bundled_path(
            "s1_alpha.json"
        ).read_text(encoding="utf-8")

    def test_bundled_homotopy_round_trips(self, circle_with_pair):
        from eigenchain import mapping_cone

        f, lam, alpha = circle_with_pair
        cone = mapping_cone(alpha)
        cone_doc = ComplexDoc(cone.underlying, "chain")
        payload = json.loads(bundled_path("s1_psi.json").read_text())
        psi = homotopy_from_payload(payload, cone_doc)
        assert psi.block(-1) == Matrix(ZZ, [[0, 0, 0, -1]])
        assert canonical_dumps(homotopy_to_payload(psi, "chain")) == bundled_path(
            "s1_psi.json"
        ).read_text(encoding="utf-8")


class TestCertificateFiles:
    def test_positive_certificate_reverifies_from_disk_data_alone(self, circle):
        cert = certify_homology_eigenvalue(circle)
        payload = certificate_to_payload(cert, "chain")
        assert payload["verdict"] == "Eigenvalue"
        assert payload["lambda_ranks"] == [
            {"degree": 0, "rank": 1},
            {"degree": 1, "rank": 1},
        ]
        round_tripped = json.loads(canonical_dumps(payload))
        assert reverify_certificate(round_tripped)
        assert canonical_dumps(round_tripped) == canonical_dumps(payload)

    def test_failure_certificate_is_serializable(self):
        f = ChainComplex(ZZ, "cochain", {0: 1, 1: 1}, {0: Matrix(ZZ, [[2]])})
        cert = certify_homology_eigenvalue(f)
        payload = certificate_to_payload(cert, "cochain")
        assert payload["verdict"] == "NotEigenvalue"
        assert payload["failure_reason"] == {"kind": "Torsion", "degree": 1, "factors": [2]}
        assert payload["witness"] is None

    def test_chain_convention_failure_picks_the_smallest_user_degree(self, circle):
        from eigenchain import GradedMap, scalar_object

        lam = scalar_object(ZZ, {-1: 2, 0: 2})
        alpha = GradedMap(
            lam,
            circle,
            0,
            {
                -1: Matrix(ZZ, [[1, 0], [1, 0], [1, 0]]),
                0: Matrix(ZZ, [[1, 0], [0, 0], [0, 0]]),
            },
        )
        cert = decide_eigenvalue(circle, lam, alpha)
        payload = certificate_to_payload(cert, "chain")
        # Both chain degrees 0 and 1 fail; degree 0 is reported.
        assert payload["failure_reason"]["degree"] == 0


class TestSimplicial:
    def test_triangle_edges_have_the_standard_boundary(self):
        chain, data = simplicial_to_chain(["A", "B", "C"], [[0, 1], [1, 2], [0, 2]], ZZ)
        assert chain.convention == "chain"
        assert chain.ranks == {0: 3, 1: 3}
        # Edge order is lexicographic: [AB], [AC], [BC].
        expected = Matrix(ZZ, [[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
        assert chain.diff(1) == expected
        assert data.basis_labels()[1] == ["[AB]", "[AC]", "[BC]"]

    def test_circle_homology_from_the_simplicial_file(self):
        doc = load_complex(bundled_path("s1_simplicial.json"))
        hom = homology(doc.complex)
        assert {doc.user_degree(n): h.betti for n, h in hom.by_degree.items()} == {0: 1, 1: 1}
        assert not hom.torsion_by_degree()

    def test_single_vertex(self):
        chain, _ = simplicial_to_chain(1, [[0]], ZZ)
        from eigenchain import convert_convention

        hom = homology(convert_convention(chain, "cochain"))
        assert {n: h.betti for n, h in hom.by_degree.items()} == {0: 1}

    def test_filled_triangle_kills_the_loop(self):
        chain, _ = simplicial_to_chain(3, [[0, 1, 2]], ZZ)
        from eigenchain import convert_convention

        hom = homology(convert_convention(chain, "cochain"))
        betti = {-n: h.betti for n, h in hom.by_degree.items()}
        assert betti == {0: 1, 1: 0, 2: 0}

    def test_boundary_of_boundary_is_zero_on_larger_complexes(self):
        chain, _ = simplicial_to_chain(5, [[0, 1, 2, 3], [1, 2, 3, 4]], ZZ)
        from eigenchain import validate_complex

        assert validate_complex(chain).ok

    def test_bad_vertex_index(self):
        with pytest.raises(BadIndex):
            close_simplicial(2, [[0, 5]])

    def test_closure_is_computed(self):
        data = close_simplicial(3, [[0, 1, 2]])
        assert len(data.simplices[0]) == 3
        assert len(data.simplices[1]) == 3
        assert len(data.simplices[2]) == 1


class TestDetection:
    def test_kind_detection(self, tmp_path):
        cases = {
            "simplicial": {"vertices": 1, "facets": [[0]]},
            "certificate": {"verdict": "Eigenvalue"},
            "complex": {"degrees": [], "ring": "Z", "convention": "chain", "diffs": []},
            "graded_map": {"degree_shift": 0, "blocks": [], "ring": "Z"},
            "homotopy": {"blocks": [], "ring": "Z"},
        }
        for expected, payload in cases.items():
            p = tmp_path / f"{expected}.json"
            p.write_text(canonical_dumps(payload))
            kind, _ = load_document(p)
            assert kind == expected
