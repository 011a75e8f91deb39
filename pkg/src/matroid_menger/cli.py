"""Command line entry point.

Exit codes: 0 success or verified, 1 verification failure, 2 input error,
3 guard exceeded. Errors are printed to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .documents import (
    certificate_to_document,
    dump_json,
    instance_hash,
    parse_certificate,
    parse_instance,
    report_to_dict,
)
from .errors import GuardExceeded, InstanceError, UnsupportedMatroidError
from .generate import KINDS, generate_instance
from .matroid import AXIOM_GROUND_LIMIT, axiom_spot_check
from .oracle import check_duality
from .solver import VerificationReport, solve, verify_certificate
from .waves import ProofLimits, proof_solve

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}", path) from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.command == "solve":
        cert = solve(inst.digraph, inst.matroid)
    else:
        limits = ProofLimits(args.max_vertices, args.max_edges)
        cert = proof_solve(inst.digraph, inst.matroid, limits)
    report = verify_certificate(inst.digraph, inst.matroid, cert)
    _emit(dump_json(certificate_to_document(inst, cert, args.command, report)), args.out)
    return EXIT_OK if report else EXIT_FAILED


def _cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    cert, meta = parse_certificate(_read(args.certificate), inst)
    claimed = meta.get("instance_sha256")
    if claimed is not None and claimed != instance_hash(inst.document):
        report = VerificationReport(False, "instance-hash", "certificate was issued for a different instance")
    else:
        report = verify_certificate(inst.digraph, inst.matroid, cert)
    sys.stdout.write(dump_json(report_to_dict(report)))
    return EXIT_OK if report else EXIT_FAILED


def _oracle_one(path: str) -> dict:
    inst = parse_instance(_read(path))
    rep = check_duality(inst.digraph, inst.matroid)
    D = inst.digraph
    return {
        "instance": path,
        "max_paths": rep.max_paths,
        "min_cut_rank": rep.min_cut_rank,
        "argmax": [list(p) for p in rep.argmax],
        "argmin": sorted(D.name(v) for v in rep.argmin),
        "duality_holds": rep.duality_holds,
    }


def _cmd_oracle(args) -> int:
    if len(args.instances) > 1 and not args.batch:
        raise InstanceError("pass --batch to run the oracle on several instances", "$")
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_oracle_one, args.instances))
    else:
        results = [_oracle_one(p) for p in args.instances]
    sys.stdout.write(dump_json(results if args.batch else results[0]))
    return EXIT_OK if all(r["duality_holds"] for r in results) else EXIT_FAILED


def _cmd_gen(args) -> int:
    kinds = [k.strip() for k in args.matroids.split(",") if k.strip()]
    try:
        doc = generate_instance(args.seed, args.vertices, args.edges, kinds)
    except ValueError as exc:
        raise InstanceError(str(exc), "--matroids") from exc
    _emit(dump_json(doc), args.out)
    return EXIT_OK


def _cmd_axioms(args) -> int:
    inst = parse_instance(_read(args.instance))
    D = inst.full_digraph
    results, ok = {}, True
    for v, m in sorted(inst.full_matroid.blocks.items()):
        if len(m.ground) > AXIOM_GROUND_LIMIT:
            results[D.name(v)] = {"ok": None, "skipped": f"ground larger than {AXIOM_GROUND_LIMIT}"}
            continue
        rep = axiom_spot_check(m)
        ok = ok and rep.ok
        results[D.name(v)] = {"ok": rep.ok, "axiom": rep.axiom, "witness": [sorted(w) for w in rep.witness]}
    sys.stdout.write(dump_json(results))
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matroid-menger",
        description="Matroid-constrained edge-disjoint s->t paths with checkable certificates.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve with the augmenting-walk engine")
    p.add_argument("instance")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("proof-solve", help="solve with the wave/arborescence engine")
    p.add_argument("instance")
    p.add_argument("--out")
    p.add_argument("--max-vertices", type=int, default=ProofLimits.max_vertices)
    p.add_argument("--max-edges", type=int, default=ProofLimits.max_edges)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="brute-force max path count and min cut rank")
    p.add_argument("instances", nargs="+")
    p.add_argument("--batch", action="store_true", help="accept several instances, print a JSON list")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="emit a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--edges", type=int, default=8)
    p.add_argument("--matroids", default=",".join(KINDS), help=f"comma list from {','.join(KINDS)}")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("axioms", help="exhaustively check each vertex matroid's axioms")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_axioms)
    return parser


def _error(kind: str, exc: Exception, location: Optional[str] = None) -> None:
    body = {"error": kind, "message": getattr(exc, "message", str(exc))}
    if location:
        body["location"] = location
    sys.stderr.write(json.dumps(body) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InstanceError as exc:
        _error("input", exc, exc.location)
        return EXIT_INPUT
    except UnsupportedMatroidError as exc:
        _error("input", exc)
        return EXIT_INPUT
    except GuardExceeded as exc:
        _error("guard", exc)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
