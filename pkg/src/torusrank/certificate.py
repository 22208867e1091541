"""JSON certificates for full-rank decisions and their independent replay."""

from __future__ import annotations

import json

from .decide import Decision, ModDObstruction, Verdict, check_obstruction, witness_hash
from .errors import TorusRankError
from .exactmat import Mat, det
from .matrixio import MatrixFormatError, rows_as_strings, rows_from_strings
from .oracle import is_generating

FORMAT = "torusrank-certificate/1"


class CertificateFormatError(ValueError):
    """The certificate is not well-formed JSON of the expected shape."""


def certificate_doc(a: Mat, decision: Decision) -> dict:
    doc = {
        "format": FORMAT,
        "n": str(decision.n),
        "input_matrix": rows_as_strings(a),
        "verdict": decision.verdict.value,
        "d": str(decision.d),
        "rank_statement": decision.rank_statement,
    }
    cert = decision.certificate
    if isinstance(cert, ModDObstruction):
        doc["certificate_kind"] = "mod_d"
        doc["note"] = cert.note
        doc["verified"] = check_obstruction(a, decision.d) or decision.n == 1
        return doc
    doc["certificate_kind"] = "orbit_witness"
    doc["witness_vectors"] = [[str(x) for x in v] for v in cert.orbit_set]
    doc["witness_hash"] = cert.witness_hash
    if cert.chain is not None:
        doc["conjugator_chain"] = {
            "P": rows_as_strings(cert.chain.p),
            "P_inv": rows_as_strings(cert.chain.p_inv),
        }
    if cert.reduced is not None:
        doc["reduced_matrix"] = rows_as_strings(cert.reduced)
    if cert.trace is not None:
        doc["trace"] = cert.trace.to_json()
    doc["verified"] = cert.verified
    if not cert.verified:
        doc["verification_skipped"] = True
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_certificate(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    for key in ("input_matrix", "verdict", "d", "certificate_kind"):
        if key not in doc:
            raise CertificateFormatError(f"missing key {key!r}")
    return doc


def _int(doc: dict, key: str) -> int:
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, (int, str)):
        raise CertificateFormatError(f"{key!r} must be an integer string")
    try:
        return int(val)
    except ValueError:
        raise CertificateFormatError(f"{key!r} must be an integer string") from None


def verify_certificate(a: Mat, doc: dict) -> list[str]:
    """Replay every claim in ``doc`` against ``a``; return the failures (empty means valid).

    Raises :class:`CertificateFormatError` when fields have the wrong shape.
    """
    failures = []
    try:
        claimed = rows_from_strings(doc["input_matrix"])
    except MatrixFormatError as exc:
        raise CertificateFormatError(f"input_matrix: {exc}") from None
    if claimed != a:
        failures.append("input_matrix does not match the matrix file")
        return failures
    if not a.is_square or abs(det(a)) != 1:
        failures.append("matrix is not in GL_n(Z)")
        return failures
    n = a.rows
    d = _int(doc, "d")
    verdict = doc["verdict"]
    kind = doc["certificate_kind"]

    if verdict == Verdict.FULL_RANK.value:
        if kind != "mod_d":
            failures.append("FULL_RANK needs a mod_d certificate")
        elif n == 1:
            pass
        elif n < 3:
            failures.append("the criterion needs n >= 3")
        elif not check_obstruction(a, d):
            failures.append(f"A is not congruent to a11*I modulo d = {d}, or d = 1")
        return failures

    if verdict != Verdict.NOT_FULL_RANK.value:
        failures.append(f"unknown verdict {verdict!r}")
        return failures
    if kind != "orbit_witness":
        failures.append("NOT_FULL_RANK needs an orbit_witness certificate")
        return failures
    raw = doc.get("witness_vectors")
    if not isinstance(raw, list) or not raw:
        raise CertificateFormatError("witness_vectors must be a nonempty list")
    try:
        vectors = [tuple(int(x) for x in v) for v in raw]
    except (TypeError, ValueError):
        raise CertificateFormatError("witness_vectors must hold integer strings") from None
    if len(vectors) != n - 1:
        failures.append(f"witness has {len(vectors)} vectors, expected {n - 1}")
    if any(len(v) != n for v in vectors):
        failures.append("witness vector of the wrong dimension")
        return failures
    if doc.get("witness_hash") != witness_hash(a, vectors):
        failures.append("witness_hash does not match the witness vectors")
    try:
        if not is_generating(a, vectors):
            failures.append("witness vectors do not generate Z^n under A")
    except TorusRankError as exc:
        failures.append(f"generation replay failed: {exc}")
    chain = doc.get("conjugator_chain")
    if chain is not None:
        try:
            p = rows_from_strings(chain["P"])
            p_inv = rows_from_strings(chain["P_inv"])
        except (KeyError, TypeError, MatrixFormatError) as exc:
            raise CertificateFormatError(f"conjugator_chain: {exc}") from None
        if p.shape != a.shape or p_inv.shape != a.shape or p @ p_inv != Mat.identity(n):
            failures.append("conjugator_chain: P @ P_inv != I")
        elif "reduced_matrix" in doc:
            try:
                reduced = rows_from_strings(doc["reduced_matrix"])
            except MatrixFormatError as exc:
                raise CertificateFormatError(f"reduced_matrix: {exc}") from None
            if (p @ a @ p_inv).shift(a[0, 0]) != reduced:
                failures.append("P @ A @ P_inv - a11*I does not equal reduced_matrix")
    return failures
