"""Command-line front end.

Subcommands: ``homology``, ``decompose``, ``cone``, ``certify``,
``verify-homotopy``, ``proptest``.  Exit codes: 0 on success or an
Eigenvalue verdict, 1 on NotEigenvalue or a failed verification or a
property-suite disagreement, 2 on structural errors, 64 on usage errors.
Inputs are the JSON formats of :mod:`eigenchain.formats`; simplicial
files are accepted wherever a complex is expected.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .certify import certify_homology_eigenvalue, decide_eigenvalue
from .complexes import identity_map, validate_complex, zero_map
from .cones import is_contractible, mapping_cone, verify_homotopy
from .decompose import decompose, homology
from .errors import EigenchainError
from .formats import (
    ComplexDoc,
    certificate_to_payload,
    cone_to_payload,
    graded_map_from_payload,
    homotopy_from_payload,
    load_complex,
    load_document,
    write_payload,
)
from .oracle import brute_homology_f2, homotopy_system_solvable
from .randgen import alpha_variants, random_complex
from .rings import GF, QQ, ZZ, Ring

USAGE_EXIT = 64
STRUCTURAL_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _ring_flag(text: str) -> Ring:
    t = text.strip().lower()
    if t == "q":
        return QQ
    if t == "z":
        return ZZ
    if t.startswith("f") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise argparse.ArgumentTypeError(f"unknown ring {text!r} (use Q, Z, or F<p>)")


def _group_label(ring, betti: int, torsion) -> str:
    parts = []
    if betti:
        parts.append(f"{ring}^{betti}" if betti > 1 else f"{ring}")
    for t in torsion:
        parts.append(f"Z/{t}")
    return " + ".join(parts) if parts else "0"


def _homology_lines(doc: ComplexDoc) -> list[str]:
    hom = homology(doc.complex)
    sym = "H_" if doc.convention == "chain" else "H^"
    lines = []
    degrees = sorted(hom.by_degree, key=doc.user_degree)
    for n in degrees:
        h = hom.by_degree[n]
        lines.append(f"{sym}{doc.user_degree(n)}: {_group_label(doc.complex.ring, h.betti, h.torsion)}")
    return lines


def _cmd_homology(args) -> int:
    doc = load_complex(args.complex, ring=args.ring)
    for line in _homology_lines(doc):
        print(line)
    return 0


def _cmd_decompose(args) -> int:
    doc = load_complex(args.complex, ring=args.ring)
    dec = decompose(doc.complex)
    for n in sorted(dec, key=doc.user_degree):
        part = dec[n]
        print(
            f"degree {doc.user_degree(n)}: rank {doc.complex.rank(n)} = "
            f"complement {part.complement.dim} "
            f"(cycles {part.complement_cycles.dim} + transversal {part.complement_transversal.dim}) "
            f"+ image {part.incoming_image.dim}"
        )
    return 0


def _load_pair(args, f_doc: ComplexDoc):
    lam_doc = load_complex(args.lambda_path)
    kind, payload = load_document(args.alpha_path)
    if kind != "graded_map":
        raise EigenchainError(f"{args.alpha_path}: expected a graded map file")
    alpha = graded_map_from_payload(payload, lam_doc, f_doc)
    return lam_doc, alpha


def _cmd_cone(args) -> int:
    f_doc = load_complex(args.complex, ring=args.ring)
    lam_doc, alpha = _load_pair(args, f_doc)
    cone = mapping_cone(alpha)
    out = args.output or str(Path(args.complex).with_suffix("")) + ".cone.json"
    write_payload(out, cone_to_payload(cone, f_doc.convention))
    print(f"cone written to {out}")
    return 0


def _cmd_certify(args) -> int:
    if (args.lambda_path is None) != (args.alpha_path is None):
        print("error: --lambda and --alpha must be given together", file=sys.stderr)
        return USAGE_EXIT
    f_doc = load_complex(args.complex, ring=args.ring)
    if args.lambda_path:
        lam_doc, alpha = _load_pair(args, f_doc)
        cert = decide_eigenvalue(f_doc.complex, lam_doc.complex, alpha)
    else:
        cert = certify_homology_eigenvalue(f_doc.complex)
    payload = certificate_to_payload(cert, f_doc.convention)
    out = args.output or str(Path(args.complex).with_suffix("")) + ".cert.json"
    write_payload(out, payload)
    print(f"verdict: {cert.verdict}")
    if cert.is_eigenvalue():
        ranks = ", ".join(
            f"degree {d['degree']}: rank {d['rank']}" for d in payload["lambda_ranks"]
        ) or "zero object"
        print(f"scalar object: {ranks}")
    else:
        fr = payload["failure_reason"]
        extra = f" (invariant factors {fr['factors']})" if fr["factors"] else ""
        print(f"reason: {fr['kind']} at degree {fr['degree']}{extra}")
    print(f"certificate written to {out}")
    return 0 if cert.is_eigenvalue() else 1


def _cmd_verify_homotopy(args) -> int:
    doc = load_complex(args.complex)
    x = doc.complex
    kind, payload = load_document(args.homotopy)
    if kind not in ("homotopy", "graded_map"):
        raise EigenchainError(f"{args.homotopy}: expected a homotopy file")
    psi = homotopy_from_payload(payload, doc)
    if args.f_path:
        kind, fp = load_document(args.f_path)
        f = graded_map_from_payload(fp, doc, doc)
    else:
        f = zero_map(x, x)
    if args.g_path:
        kind, gp = load_document(args.g_path)
        g = graded_map_from_payload(gp, doc, doc)
    else:
        g = identity_map(x)
    report = verify_homotopy(x, f, g, psi)
    if report.ok:
        print("ok")
        return 0
    print(f"FAILED: degree {doc.user_degree(report.degree)}, entry {report.entry}")
    return 1


def _cmd_proptest(args) -> int:
    if not args.ring.is_field:
        print("proptest runs over field rings only (Q or F<p>)", file=sys.stderr)
        return USAGE_EXIT
    rng = random.Random(args.seed)
    disagreements = 0
    certified = 0
    oracle_checked = 0
    homology_checked = 0
    is_f2 = args.ring == GF(2)
    for trial in range(args.trials):
        f = random_complex(args.ring, rng, max_len=4, max_rank=3, total_cap=args.max_dim)
        if validate_complex(f).ok is False:
            raise AssertionError("generator produced an invalid complex")
        if is_f2 and f.total_dim() <= args.max_dim:
            brute = brute_homology_f2(f, max_total_dim=args.max_dim).ranks
            main = {n: h.betti for n, h in homology(f).by_degree.items()}
            homology_checked += 1
            if brute != main:
                disagreements += 1
                print(f"[trial {trial}] homology oracle disagreement: {main} vs {brute}")
        for tag, lam, alpha in alpha_variants(f, rng):
            cert = decide_eigenvalue(f, lam, alpha)
            certified += 1
            cone = mapping_cone(alpha)
            oracle = homotopy_system_solvable(
                cone.underlying,
                zero_map(cone.underlying, cone.underlying),
                identity_map(cone.underlying),
            )
            oracle_checked += 1
            if cert.is_eigenvalue() != oracle.solvable:
                disagreements += 1
                print(
                    f"[trial {trial}] verdict/oracle disagreement on variant {tag}: "
                    f"{cert.verdict} vs solvable={oracle.solvable}"
                )
            if not cert.is_eigenvalue():
                contractible, _ = is_contractible(cone.underlying)
                if contractible:
                    disagreements += 1
                    print(f"[trial {trial}] NotEigenvalue but contractible cone on {tag}")
    print(
        f"proptest: {args.trials} complexes, {certified} certificates, "
        f"{oracle_checked} homotopy-oracle checks, {homology_checked} homology-oracle checks, "
        f"{disagreements} disagreements"
    )
    return 0 if disagreements == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eigenchain", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="per-degree homology ranks and torsion")
    p.add_argument("complex")
    p.add_argument("--ring", type=_ring_flag, default=None, help="ring for simplicial input (default Z)")
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("decompose", help="per-degree complement/cycle/transversal/image ranks")
    p.add_argument("complex")
    p.add_argument("--ring", type=_ring_flag, default=None)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("cone", help="write the mapping cone of a scalar-sourced map")
    p.add_argument("complex")
    p.add_argument("lambda_path", metavar="lambda")
    p.add_argument("alpha_path", metavar="alpha")
    p.add_argument("--ring", type=_ring_flag, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_cone)

    p = sub.add_parser("certify", help="write an eigenvalue certificate")
    p.add_argument("complex")
    p.add_argument("--lambda", dest="lambda_path", default=None)
    p.add_argument("--alpha", dest="alpha_path", default=None)
    p.add_argument("--ring", type=_ring_flag, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("verify-homotopy", help="check f - g = d∘psi + psi∘d exactly")
    p.add_argument("complex")
    p.add_argument("homotopy")
    p.add_argument("--f", dest="f_path", default=None)
    p.add_argument("--g", dest="g_path", default=None)
    p.set_defaults(func=_cmd_verify_homotopy)

    p = sub.add_parser("proptest", help="seeded oracle-equivalence suites")
    p.add_argument("--ring", type=_ring_flag, default=GF(2))
    p.add_argument("--max-dim", type=int, default=8)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_proptest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_EXIT
    try:
        return args.func(args)
    except EigenchainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return STRUCTURAL_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return STRUCTURAL_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
