"""Text serialization of search certificates.

Format (version 1)::

    poset-ramsey-cert v1
    kind: good-coloring
    mode: strong
    t: 1
    k: 2
    host_n: 3
    targets: diamond:2,diamond:2
    colors: 11121222

``colors`` is a digit string when ``k <= 9`` and comma separated otherwise.
Exhaustion certificates carry ``nodes``, ``group`` and ``elapsed_ms``
instead of ``colors``.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import TextIO

from .coloring import ChainColoring
from .errors import CertificateParseError, ParameterError, VerificationError
from .lattice import chain_count_formula, parse_targets
from .search import Certificate, RamseyInstance, is_ramsey_at, verify_coloring

HEADER = "poset-ramsey-cert v1"


def format_colors(colors, k: int) -> str:
    if k <= 9:
        return "".join(str(c) for c in colors)
    return ",".join(str(c) for c in colors)


def certificate_text(cert: Certificate) -> str:
    inst = cert.instance
    lines = [
        HEADER,
        f"kind: {cert.kind}",
        f"mode: {inst.mode}",
        f"t: {inst.t}",
        f"k: {inst.k}",
        f"host_n: {cert.host_n}",
        f"targets: {inst.targets_text()}",
    ]
    if cert.kind == "good-coloring":
        lines.append(f"colors: {format_colors(cert.coloring.colors, inst.k)}")
    else:
        lines += [f"nodes: {cert.nodes}", f"group: {cert.group}", f"elapsed_ms: {cert.elapsed_ms}"]
    return "\n".join(lines) + "\n"


def emit_certificate(cert: Certificate, dest: str | Path | TextIO | None = None) -> str:
    """Serialize ``cert`` (re-verifying a good coloring first) and optionally write it."""
    if cert.kind == "good-coloring":
        verdict = verify_coloring(cert.instance, cert.host_n, cert.coloring)
        if not verdict.good:
            raise VerificationError(f"refusing to emit a bad coloring: {verdict}")
    text = certificate_text(cert)
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text)
    elif dest is not None:
        dest.write(text)
    return text


def _int_field(fields, key):
    try:
        return int(fields[key])
    except KeyError:
        raise CertificateParseError(f"missing field {key!r}") from None
    except ValueError:
        raise CertificateParseError(f"field {key!r} is not an integer") from None


def parse_certificate(text: str) -> Certificate:
    """Parse without any re-verification beyond shape checks."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0] != HEADER:
        raise CertificateParseError(f"expected header {HEADER!r}")
    fields = {}
    for ln in lines[1:]:
        key, sep, value = ln.partition(":")
        if not sep:
            raise CertificateParseError(f"malformed line {ln!r}")
        fields[key.strip()] = value.strip()
    kind = fields.get("kind")
    if kind not in ("good-coloring", "exhaustion"):
        raise CertificateParseError(f"unknown kind {kind!r}")
    t, k, host_n = _int_field(fields, "t"), _int_field(fields, "k"), _int_field(fields, "host_n")
    try:
        targets = parse_targets(fields.get("targets", ""))
        instance = RamseyInstance(tuple(targets), t, fields.get("mode", ""))
    except ParameterError as exc:
        raise CertificateParseError(str(exc)) from None
    if instance.k != k:
        raise CertificateParseError(f"k={k} but {instance.k} targets listed")
    if kind == "exhaustion":
        return Certificate(kind, instance, host_n, None, _int_field(fields, "nodes"),
                           fields.get("group", ""), _int_field(fields, "elapsed_ms"))
    raw = fields.get("colors")
    if raw is None:
        raise CertificateParseError("missing field 'colors'")
    try:
        colors = tuple(int(c) for c in (raw if k <= 9 and "," not in raw else raw.split(",")))
    except ValueError:
        raise CertificateParseError("colors must be base-10 integers") from None
    expected = chain_count_formula(host_n, t)
    if len(colors) != expected:
        raise CertificateParseError(f"colors has {len(colors)} entries, expected {expected}")
    try:
        coloring = ChainColoring(host_n, t, k, colors)
    except ParameterError as exc:
        raise CertificateParseError(str(exc)) from None
    return Certificate(kind, instance, host_n, coloring)


def load_certificate(source: str | Path | TextIO, rerun_exhaustion: bool = False) -> Certificate:
    """Parse and re-verify a certificate.

    ``source`` is a path, an open stream, or the certificate text itself.
    Good colorings are always re-verified.  Exhaustion records are re-run
    only with ``rerun_exhaustion`` since that repeats the whole search.
    """
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith(HEADER)):
        text = Path(source).read_text()
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
    cert = parse_certificate(text)
    if cert.kind == "good-coloring":
        verdict = verify_coloring(cert.instance, cert.host_n, cert.coloring)
        if not verdict.good:
            raise VerificationError(f"coloring is not good: {verdict}", verdict)
    elif rerun_exhaustion:
        again = is_ramsey_at(cert.instance, cert.host_n)
        if not again.is_ramsey:
            raise VerificationError(f"re-run search found {again.status}")
    return cert


def roundtrip(cert: Certificate) -> Certificate:
    return load_certificate(io.StringIO(emit_certificate(cert)))
