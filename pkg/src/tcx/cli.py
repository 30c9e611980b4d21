"""Command line interface: ``tcx <command> ...``.

Exit codes: 0 success, 2 inequality violation or failed verification,
3 answer left open by the search budget, 64 usage error, 65 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import io
from .complex import (
    Complex,
    SimplicialMap,
    core,
    edge_path_connected,
    is_strongly_collapsible,
    subcomplex,
)
from .contiguity import SearchBudget, class_contains_constant, same_contiguity_class, verify_chain
from .errors import EmptyInput, ParseError, PreconditionViolated, SizeLimitExceeded, TcxError
from .invariants import (
    REALIZATION_NOTE,
    BoundResult,
    inequality_suite,
    invariance_checks,
    is_categorical,
    is_farber,
    scat,
    tc,
    verify_cover,
)
from .product import categorical_product, power

EXIT_OK, EXIT_VIOLATION, EXIT_UNKNOWN, EXIT_USAGE, EXIT_INPUT = 0, 2, 3, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve(path: str) -> Path:
    """A file path, falling back to a bundled fixture of the same name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = io.fixture_path(p.name)
    if bundled.exists():
        return bundled
    return p


class _Run:
    """Collects one command's report and writes it once at the end."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.t0 = time.monotonic()
        self.report: dict = {"command": args.command, "argv": sys.argv[1:], "inputs": {},
                             "results": {}, "certificates": [], "timings": {}, "warnings": []}
        self.lines: list[str] = []

    def load(self, path: str) -> tuple[Complex, dict[str, str]]:
        p = _resolve(path)
        K, meta = io.read_sc(p)
        self.report["inputs"][path] = io.digest(p)
        return K, meta

    def say(self, line: str) -> None:
        self.lines.append(line)

    def budget(self) -> SearchBudget:
        return SearchBudget(self.args.budget_states, self.args.budget_ms)

    def finish(self, code: int) -> int:
        self.report["timings"]["total_ms"] = round((time.monotonic() - self.t0) * 1000, 1)
        self.report["exit_code"] = code
        if self.args.json:
            print(io.dumps(self.report))
        else:
            for line in self.lines:
                print(line)
            for w in self.report["warnings"]:
                print(f"warning: {w}")
        return code


def _bound(run: _Run, r: BoundResult) -> None:
    run.report["results"][r.name] = io.bound_to_json(r)
    run.report["warnings"] += r.warnings
    status = r.status
    run.say(f"{r}  [{status}]")
    if r.refutation:
        run.say(f"  lower bound: {r.refutation.get('detail', '')}")
    if r.certificate is not None:
        cert = io.certificate_to_json(r.certificate)
        run.report["certificates"].append(cert)
        run.say(f"  certificate: {len(r.certificate.elements)} cover elements")
        if run.args.cert_out:
            Path(run.args.cert_out).write_text(io.dumps(cert))
            run.say(f"  written to {run.args.cert_out}")


def cmd_core(run: _Run) -> int:
    K, _ = run.load(run.args.file)
    c = core(K)
    steps = [(K.labels[v], K.labels[d]) for v, d in c.sequence]
    run.report["results"] = {
        "core": [c.core.names(f) for f in c.core.facets],
        "collapse_sequence": steps,
        "retraction": c.retraction.as_names(),
    }
    run.say(f"core: {c.core.n_vertices} vertices, {len(c.core.facets)} facets")
    for v, d in steps:
        run.say(f"  delete {v} (dominated by {d})")
    run.say(io.serialize(c.core).rstrip())
    return EXIT_OK


def cmd_collapsible(run: _Run) -> int:
    K, _ = run.load(run.args.file)
    value = is_strongly_collapsible(K)
    run.report["results"]["strongly_collapsible"] = value
    run.say(str(value).lower())
    return EXIT_OK


def cmd_connected(run: _Run) -> int:
    K, _ = run.load(run.args.file)
    value = edge_path_connected(K)
    run.report["results"]["edge_path_connected"] = value
    run.say(str(value).lower())
    return EXIT_OK


def _emit_complex(run: _Run, K: Complex, comment: str) -> int:
    text = io.serialize(K, comment)
    run.report["results"]["complex"] = [K.names(f) for f in K.facets]
    run.report["results"]["vertices"] = K.n_vertices
    if run.args.out:
        Path(run.args.out).write_text(text)
    run.say(text.rstrip())
    return EXIT_OK


def cmd_product(run: _Run) -> int:
    factors = [run.load(f)[0] for f in run.args.files]
    P = categorical_product(factors)
    return _emit_complex(run, P.underlying, "categorical product of " + " x ".join(run.args.files))


def cmd_power(run: _Run) -> int:
    K, _ = run.load(run.args.file)
    return _emit_complex(run, power(K, run.args.n).underlying, f"power {run.args.n} of {run.args.file}")


def _status_code(r: BoundResult) -> int:
    return EXIT_OK if r.exact else EXIT_UNKNOWN


def cmd_scat(run: _Run) -> int:
    K, _ = run.load(run.args.file)
    r = scat(K, run.budget())
    _bound(run, r)
    return _status_code(r)


def cmd_tc(run: _Run) -> int:
    K, meta = run.load(run.args.file)
    r = tc(K, run.args.n, run.budget(), tighten=not run.args.no_tighten)
    _bound(run, r)
    if "realization" in meta:
        run.report["results"]["realization_note"] = meta["realization"]
        run.say(f"  note: {meta['realization']}")
    return _status_code(r)


def _load_sub(run: _Run, ambient: Complex):
    S, _ = run.load(run.args.sub)
    faces = [ambient.simplex(S.names(f)) for f in S.facets]
    return subcomplex(ambient, faces)


def _decision(run: _Run, verdict: str, states: int) -> int:
    run.report["results"]["verdict"] = verdict
    run.report["results"]["states_explored"] = states
    run.say(verdict)
    return {"yes": EXIT_OK, "no": EXIT_OK}.get(verdict, EXIT_UNKNOWN)


def cmd_categorical(run: _Run) -> int:
    K, _ = run.load(run.args.file)
    omega = _load_sub(run, K)
    d = is_categorical(omega, run.budget())
    if d.yes:
        run.report["certificates"].append(io.chain_to_json(d.chain))
    return _decision(run, d.verdict, d.states_explored)


def cmd_farber(run: _Run) -> int:
    K, _ = run.load(run.args.file)
    P = power(K, run.args.n)
    omega = _load_sub(run, P.underlying)
    d = is_farber(omega, P, run.budget())
    for c in d.chains:
        run.report["certificates"].append(io.chain_to_json(c))
    return _decision(run, d.verdict, d.states_explored)


def _parse_map(text: str, K: Complex, L: Complex) -> SimplicialMap:
    pairs = {}
    for item in text.replace(",", " ").split():
        src, sep, dst = item.partition("=")
        if not sep:
            raise UsageError(f"map entries read 'vertex=image', got {item!r}")
        pairs[src] = dst
    if set(pairs) != set(K.labels):
        raise UsageError("map must assign every domain vertex exactly once")
    return SimplicialMap(K, L, tuple(L.vertex(pairs[name]) for name in K.labels))


def cmd_contiguity(run: _Run) -> int:
    K, _ = run.load(run.args.domain)
    L, _ = run.load(run.args.codomain)
    phi = _parse_map(run.args.phi, K, L)
    if run.args.psi:
        d = same_contiguity_class(phi, _parse_map(run.args.psi, K, L), run.budget())
    else:
        d = class_contains_constant(phi, run.budget())
    if d.yes:
        run.report["certificates"].append(io.chain_to_json(d.chain))
        run.say(f"chain of {len(d.chain)} maps")
    return _decision(run, d.verdict, d.states_explored)


def cmd_verify(run: _Run) -> int:
    K, _ = run.load(run.args.file)
    try:
        data = json.loads(Path(run.args.cert).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read certificate: {exc}", None, run.args.cert) from None
    try:
        if sorted(map(sorted, data.get("complex", []))) != sorted(sorted(K.names(f)) for f in K.facets):
            raise TcxError("certificate was issued for a different complex")
        cert = io.certificate_from_json(data, K)
        mode = "scat" if cert.mode == "scat" else cert.n
        check = verify_cover(K, mode, cert)
        ok, reason = check.ok, check.reason
    except (TcxError, KeyError, ValueError, TypeError) as exc:
        ok, reason = False, str(exc)
    run.report["results"]["verified"] = ok
    if not ok:
        run.report["results"]["reason"] = reason
    run.say("true" if ok else f"false: {reason}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_suite(run: _Run) -> int:
    K, meta = run.load(run.args.file)
    budget = run.budget()
    report = inequality_suite(K, run.args.n_max, budget)
    run.report["results"] = io.suite_to_json(report)
    for q in report.quantities.values():
        run.say(f"{q}  [{q.status}]")
    for c in report.checks:
        run.say(c.line())
    checks = list(report.checks)
    if run.args.invariance:
        seeds = [run.args.seed + i for i in range(run.args.expansions)]
        inv = invariance_checks(K, seeds, budget)
        run.report["results"]["invariance"] = [
            {"name": c.name, "holds": c.holds, "decided": c.decided} for c in inv]
        for c in inv:
            run.say(c.line())
        checks += inv
    notes = [REALIZATION_NOTE]
    if "realization" in meta:
        notes.append(meta["realization"])
    run.report["results"]["notes"] = notes
    for n in notes:
        run.say(f"note: {n}")
    return EXIT_OK if all(c.holds for c in checks) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    default_states = int(os.environ.get("TCX_BUDGET_STATES", 1_000_000))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-states", type=int, default=default_states,
                        help="states per contiguity search (default: $TCX_BUDGET_STATES or 1e6)")
    common.add_argument("--budget-ms", type=int, default=60_000, help="milliseconds per invariant")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--cert-out", metavar="PATH", help="write the certificate here")
    common.add_argument("--seed", type=int, default=0, help="first seed for strong expansions")

    parser = _Parser(prog="tcx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("core", cmd_core, "core and collapse sequence").add_argument("file")
    add("collapsible", cmd_collapsible, "is the complex strongly collapsible").add_argument("file")
    add("connected", cmd_connected, "is the complex edge-path connected").add_argument("file")
    p = add("product", cmd_product, "categorical product of complexes")
    p.add_argument("files", nargs="+")
    p.add_argument("--out")
    p = add("power", cmd_power, "categorical power K^n")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    add("scat", cmd_scat, "simplicial LS category").add_argument("file")
    p = add("tc", cmd_tc, "n-th discrete topological complexity")
    p.add_argument("file")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--no-tighten", action="store_true", help="skip the scat(K^(n-1)) lower bound")
    p = add("farber", cmd_farber, "is a subcomplex of K^n n-Farber")
    p.add_argument("file")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--sub", required=True, help=".sc file of simplices of K^n, vertices named (a,b,...)")
    p = add("categorical", cmd_categorical, "is a subcomplex categorical")
    p.add_argument("file")
    p.add_argument("--sub", required=True, help=".sc file of simplices of the complex")
    p = add("contiguity", cmd_contiguity, "contiguity class of simplicial maps")
    p.add_argument("domain")
    p.add_argument("codomain")
    p.add_argument("--phi", required=True, help="map as 'a=x,b=y,...'")
    p.add_argument("--psi", help="second map; omit to ask for a constant map")
    p = add("verify", cmd_verify, "replay a cover certificate")
    p.add_argument("file")
    p.add_argument("--cert", required=True)
    p = add("suite", cmd_suite, "check every scat/TC inequality")
    p.add_argument("file")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--invariance", action="store_true", help="also compare against strong expansions")
    p.add_argument("--expansions", type=int, default=3)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run = _Run(args)
    try:
        code = args.func(run)
    except (UsageError, PreconditionViolated, SizeLimitExceeded) as exc:
        print(f"tcx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, EmptyInput) as exc:
        print(f"tcx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TcxError as exc:
        print(f"tcx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run.finish(code)


if __name__ == "__main__":
    sys.exit(main())
