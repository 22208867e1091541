"""Command line front end.

Exit codes:
    decide  0 FULL_RANK, 1 NOT_FULL_RANK, 2 input error
    verify  0 certificate replays, 1 replay failed, 2 unreadable input
    oracle  0 consistent, 2 input error, 3 search contradicts the decision
    reduce, random  0 ok, 2 input error
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .certificate import CertificateFormatError, certificate_doc, dumps, load_certificate, verify_certificate
from .corpus import random_corpus
from .decide import Verdict, decide_full_rank
from .errors import InternalConsistencyError, TorusRankError
from .exactmat import Mat
from .matrixio import MatrixFormatError, format_json, format_text, read_matrix, rows_as_strings
from .oracle import brute_min_upper
from .reduce import TypeTag, classify, to_type_h, to_type_hn

log = logging.getLogger("torusrank")

EXIT_INPUT = 2
EXIT_CONTRADICTION = 3


class InputError(Exception):
    pass


def _load(path) -> Mat:
    try:
        return read_matrix(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (MatrixFormatError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _human_decision(doc: dict) -> str:
    lines = [
        f"verdict: {doc['verdict']}",
        f"d = gcd(A - a11*I) = {doc['d']}",
        doc["rank_statement"],
    ]
    if doc["certificate_kind"] == "mod_d":
        lines.append(f"certificate: {doc['note']}")
    else:
        lines.append("certificate: generating orbit set of size n-1")
        for v in doc["witness_vectors"]:
            lines.append("  [" + " ".join(v) + "]")
        trace = doc.get("trace")
        if trace:
            lines.append(f"witness case {trace['case_label']} with s = {trace['s']}, t = {trace['t']}")
    if doc.get("verification_skipped"):
        lines.append("WARNING: witness replay skipped (--no-verify); not a checked certificate")
    else:
        lines.append(f"verified: {str(doc['verified']).lower()}")
    return "\n".join(lines) + "\n"


def cmd_decide(args) -> int:
    a = _load(args.matrix)
    try:
        decision = decide_full_rank(a, verify=not args.no_verify)
    except InternalConsistencyError:
        raise
    except TorusRankError as exc:
        raise InputError(str(exc)) from None
    doc = certificate_doc(a, decision)
    sys.stdout.write(dumps(doc) if args.json else _human_decision(doc))
    return 0 if decision.verdict is Verdict.FULL_RANK else 1


def cmd_reduce(args) -> int:
    a = _load(args.matrix)
    try:
        tag = classify(a)
        if args.target == "h":
            reduced, chain = to_type_h(a)
        else:
            if tag not in (TypeTag.H0, TypeTag.HN):
                raise InputError(f"--target hn needs a type-H0 input, got type {tag.value}")
            reduced, chain = to_type_hn(a)
    except InternalConsistencyError:
        raise
    except TorusRankError as exc:
        raise InputError(str(exc)) from None
    if chain.p @ a @ chain.p_inv != reduced:
        raise InternalConsistencyError("reduce replay failed")
    doc = {
        "input_matrix": rows_as_strings(a),
        "input_type": tag.value,
        "target": args.target,
        "reduced_matrix": rows_as_strings(reduced),
        "reduced_type": classify(reduced).value,
        "conjugator_chain": {"P": rows_as_strings(chain.p), "P_inv": rows_as_strings(chain.p_inv)},
        "replayed": True,
    }
    if args.json:
        sys.stdout.write(dumps(doc))
    else:
        sys.stdout.write(
            f"type {doc['input_type']} -> {doc['reduced_type']}\n"
            f"reduced = P A P^-1:\n{reduced}\nP:\n{chain.p}\nP^-1:\n{chain.p_inv}\n"
        )
    return 0


def cmd_verify(args) -> int:
    a = _load(args.matrix)
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            doc = load_certificate(fh.read())
        failures = verify_certificate(a, doc)
    except OSError as exc:
        raise InputError(f"cannot read {args.certificate}: {exc.strerror}") from None
    except CertificateFormatError as exc:
        raise InputError(f"{args.certificate}: {exc}") from None
    if failures:
        for f in failures:
            print(f"FAIL: {f}")
        return 1
    print(f"OK: {doc['verdict']} certificate replays")
    return 0


def cmd_random(args) -> int:
    if args.n < 1 or args.ops < 0 or args.count < 0:
        raise InputError("need n >= 1, ops >= 0, count >= 0")
    mats = random_corpus(args.n, args.ops, args.seed, args.count)
    fmt = format_json if args.json else format_text
    ext = "json" if args.json else "txt"
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for i, m in enumerate(mats):
            with open(os.path.join(args.out, f"random_{args.seed}_{i:04d}.{ext}"), "w", encoding="utf-8") as fh:
                fh.write(fmt(m))
    else:
        sys.stdout.write("\n".join(fmt(m) for m in mats))
    return 0


def cmd_oracle(args) -> int:
    a = _load(args.matrix)
    n = a.rows
    try:
        decision = decide_full_rank(a)
    except InternalConsistencyError:
        raise
    except TorusRankError as exc:
        raise InputError(str(exc)) from None
    found = brute_min_upper(a, args.bound, args.max_size)
    contradiction = (
        found is not None and decision.verdict is Verdict.FULL_RANK and found[0] < n
    )
    report = {
        "verdict": decision.verdict.value,
        "d": str(decision.d),
        "search": {
            "entry_bound": args.bound,
            "max_size": args.max_size,
            "found_size": None if found is None else found[0],
            "orbit_set": None if found is None else [[str(x) for x in v] for v in found[1]],
        },
        "rank_two": bool(found and found[0] == 1),
        "consistent": not contradiction,
    }
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        if found is None:
            print(f"no generating orbit set of size <= {args.max_size} in [-{args.bound}, {args.bound}]^{n} "
                  "(inconclusive about m_A)")
        else:
            print(f"m_A <= {found[0]}: " + "; ".join("[" + " ".join(v) + "]" for v in report["search"]["orbit_set"]))
            if found[0] == 1:
                print("a single orbit generates: the mapping torus has rank 2")
        print(f"decision: {decision.verdict.value} (d = {decision.d})")
    if contradiction:
        print("CONTRADICTION: search found a small generating set for a FULL_RANK matrix", file=sys.stderr)
        return EXIT_CONTRADICTION
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusrank",
        description="Certified decision of whether Z^n x|_A Z has full rank n+1.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide full rank and emit a certificate")
    p.add_argument("matrix")
    p.add_argument("--json", action="store_true", help="machine-readable certificate")
    p.add_argument("--no-verify", action="store_true",
                   help="skip witness replay (benchmarking only; output is marked unverified)")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("reduce", help="conjugate to type H or H_n")
    p.add_argument("matrix")
    p.add_argument("--target", choices=("h", "hn"), default="h")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="replay a certificate against a matrix")
    p.add_argument("matrix")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="generate random matrices in GL_n(Z)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ops", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", help="directory for one file per matrix (default: stdout)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("oracle", help="bounded brute-force search cross-checked against decide")
    p.add_argument("matrix")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"torusrank: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # bad environment configuration such as TORUSRANK_FACTOR_CAP
        print(f"torusrank: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
