"""The ``.sc`` text format and JSON certificates.

``.sc`` files hold one facet per line as whitespace-separated vertex names.
``#`` starts a comment.  Comment lines of the form ``#@ key: value`` are
metadata; the ``vertices`` key fixes the vertex order (otherwise vertices
are numbered by first appearance).
"""

from __future__ import annotations

import hashlib
import json
import math
from importlib import resources
from pathlib import Path
from typing import Any

from .complex import Complex, SimplicialMap, Subcomplex, antichain, bits, normalize
from .contiguity import ContiguityChain
from .errors import EmptyInput, ParseError, TcxError
from .invariants import BoundResult, CoverCertificate, CoverElement, SuiteReport
from .product import power

CERT_FORMAT = "tcx-certificate/1"


def parse_text(text: str, path: str | None = None) -> tuple[Complex, dict[str, str]]:
    facets: list[list[str]] = []
    meta: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#@"):
            key, sep, value = raw.lstrip()[2:].partition(":")
            if not sep or not key.strip():
                raise ParseError("metadata lines read '#@ key: value'", lineno, path)
            meta[key.strip()] = value.strip()
            continue
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        for tok in tokens:
            if any(c in tok for c in "{}"):
                raise ParseError(f"bad vertex name {tok!r}", lineno, path)
        facets.append(tokens)
    if not facets:
        raise EmptyInput(f"{path or 'input'}: no facets")
    K = normalize(facets)
    order = meta.get("vertices")
    if order is not None:
        names = order.split()
        if sorted(names) != sorted(K.labels):
            raise ParseError("'vertices' metadata does not list exactly the vertices used", None, path)
        pos = {name: i for i, name in enumerate(names)}
        K = Complex.from_masks(names, [sum(1 << pos[K.labels[v]] for v in bits(f)) for f in K.facets])
    return K, meta


def read_sc(path: str | Path) -> tuple[Complex, dict[str, str]]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, str(path)) from None
    return parse_text(text, str(path))


def parse(path: str | Path) -> Complex:
    return read_sc(path)[0]


def serialize(K: Complex, comment: str | None = None) -> str:
    """Text form of ``K``; facets in sorted order, vertex order kept in a header."""
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append("#@ vertices: " + " ".join(K.labels))
    for fv in sorted(K.facet_vertices):
        lines.append(" ".join(K.labels[v] for v in fv))
    return "\n".join(lines) + "\n"


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture such as ``"figure1.sc"``."""
    return Path(str(resources.files("tcx") / "fixtures" / name))


def load_fixture(name: str) -> Complex:
    if not name.endswith(".sc"):
        name += ".sc"
    return parse(fixture_path(name))


def digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# --------------------------------------------------------------------------
# JSON


def _num(x: float) -> float | int | None:
    if x == math.inf:
        return None
    return int(x)


def bound_to_json(r: BoundResult) -> dict[str, Any]:
    return {
        "name": r.name,
        "lower": _num(r.lower),
        "upper": _num(r.upper),
        "status": r.status,
        "refutation": r.refutation,
        "budget": r.budget_report,
        "warnings": list(r.warnings),
    }


def chain_to_json(chain: ContiguityChain) -> list[dict[str, str]]:
    return [m.as_names() for m in chain]


def certificate_to_json(cert: CoverCertificate) -> dict[str, Any]:
    ambient = cert.ambient
    return {
        "format": CERT_FORMAT,
        "invariant": cert.mode,
        "n": cert.n,
        "complex": [cert.base.names(f) for f in cert.base.facets],
        "size": len(cert.elements),
        "elements": [
            {
                "generators": [ambient.names(g) for g in el.generators],
                "chains": [chain_to_json(c) for c in el.chains],
            }
            for el in cert.elements
        ],
    }


def certificate_from_json(data: dict[str, Any], K: Complex) -> CoverCertificate:
    """Rebuild a certificate against ``K`` by vertex names.

    Raises ``TcxError`` (or ``KeyError``/``ValueError``) on malformed input.
    """
    if data.get("format") != CERT_FORMAT:
        raise TcxError("not a tcx certificate")
    mode = data["invariant"]
    n = int(data.get("n", 1))
    if mode == "scat":
        ambient = K
    elif mode == "tc":
        ambient = power(K, n).underlying
    else:
        raise TcxError(f"unknown invariant {mode!r}")
    elements = []
    for el in data["elements"]:
        gens = tuple(ambient.simplex(names) for names in el["generators"])
        omega = Subcomplex(ambient, antichain(gens))
        dom = omega.complex
        chains = []
        for chain in el["chains"]:
            maps = []
            for m in chain:
                if set(m) != set(dom.labels):
                    raise TcxError("chain map does not cover the subcomplex vertices")
                maps.append(SimplicialMap(dom, K, tuple(K.vertex(m[name]) for name in dom.labels), check=False))
            chains.append(ContiguityChain(tuple(maps)))
        elements.append(CoverElement(gens, tuple(chains)))
    return CoverCertificate(mode, K, n, tuple(elements))


def suite_to_json(report: SuiteReport) -> dict[str, Any]:
    return {
        "holds": report.holds,
        "connected": report.connected,
        "strongly_collapsible": report.collapsible,
        "quantities": {k: bound_to_json(v) for k, v in report.quantities.items()},
        "checks": [
            {"name": c.name, "lhs": [_num(x) for x in c.lhs], "rhs": [_num(x) for x in c.rhs],
             "holds": c.holds, "decided": c.decided}
            for c in report.checks
        ],
        "notes": list(report.notes),
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
