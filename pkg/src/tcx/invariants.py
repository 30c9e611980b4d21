"""Categorical and n-Farber subcomplexes, scat, TC_n and the inequality suite.

Both invariants are "least number of good subcomplexes covering the
ambient complex, minus one".  Being categorical or n-Farber passes to
subcomplexes (restrict every map of a chain), and any cover must hold each
ambient facet inside a single element, so cover elements are generated by
sets of ambient facets and the search runs in ``tcx.cover``.

An n-Farber test compares projections: ``Omega`` is n-Farber exactly when
all restricted projections ``pi_i|Omega`` lie in one contiguity class, and
by transitivity it is enough to compare ``pi_1`` with each other ``pi_j``.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .complex import (
    Complex,
    SimplicialMap,
    Subcomplex,
    bits,
    compose,
    edge_path_connected,
    generated_subcomplex,
    is_strongly_collapsible,
    restrict,
    simplicial_maps,
    strong_expansion,
)
from .contiguity import (
    NO,
    UNKNOWN,
    YES,
    ClassDecision,
    ContiguityChain,
    SearchBudget,
    class_contains_constant,
    same_contiguity_class,
    verify_chain,
)
from .cover import min_cover
from .errors import InconsistencyError, NotAPower, PreconditionViolated, TooLarge
from .product import ProductComplex, diagonal, power, projection

log = logging.getLogger(__name__)

INF = math.inf


# --------------------------------------------------------------------------
# feasibility oracles


def is_categorical(omega: Subcomplex, budget: SearchBudget = SearchBudget(), *,
                   deadline: float | None = None, certify: bool = True) -> ClassDecision:
    """Is the inclusion of ``omega`` in the contiguity class of a constant map?"""
    return class_contains_constant(omega.inclusion, budget, deadline=deadline, certify=certify)


@dataclass(frozen=True)
class FarberDecision:
    """Verdict plus chains ``pi_1|Omega ~ pi_j|Omega`` for ``j = 2..n``."""

    verdict: str
    chains: tuple[ContiguityChain, ...] = ()
    states_explored: int = 0

    def __bool__(self) -> bool:
        return self.verdict == YES

    @property
    def yes(self) -> bool:
        return self.verdict == YES


@lru_cache(maxsize=1024)
def _projection(P: ProductComplex, i: int) -> SimplicialMap:
    return projection(P, i)


def _check_power(omega: Subcomplex, P: ProductComplex) -> None:
    if omega.ambient != P.underlying or not P.is_power():
        raise NotAPower("omega must be a subcomplex of a power K^n")


def is_farber(omega: Subcomplex, P: ProductComplex, budget: SearchBudget = SearchBudget(), *,
              deadline: float | None = None, certify: bool = True) -> FarberDecision:
    _check_power(omega, P)
    first = restrict(_projection(P, 1), omega)
    chains = []
    states = 0
    verdict = YES
    for j in range(2, P.arity + 1):
        d = same_contiguity_class(first, restrict(_projection(P, j), omega), budget,
                                  deadline=deadline, certify=certify)
        states += d.states_explored
        if d.no:
            return FarberDecision(NO, (), states)
        if d.unknown:
            verdict = UNKNOWN
            continue
        if certify:
            chains.append(d.chain)
    return FarberDecision(verdict, tuple(chains) if verdict == YES else (), states)


def is_farber_by_definition(omega: Subcomplex, P: ProductComplex,
                            budget: SearchBudget = SearchBudget(), *,
                            max_maps: int = 200_000) -> ClassDecision:
    """Search for ``sigma: Omega -> K`` with ``diagonal o sigma ~ inclusion``.

    Enumerates every simplicial map ``Omega -> K``; a test oracle for
    ``is_farber`` on small subcomplexes.
    """
    _check_power(omega, P)
    K = P.factors[0]
    delta = diagonal(K, P.arity)
    states = 0
    saw_unknown = False
    for count, a in enumerate(simplicial_maps(omega.complex, K)):
        if count >= max_maps:
            raise TooLarge("too many simplicial maps to enumerate")
        sigma = SimplicialMap(omega.complex, K, a, check=False)
        d = same_contiguity_class(compose(delta, sigma), omega.inclusion, budget)
        states += d.states_explored
        if d.yes:
            return ClassDecision(YES, d.chain, states)
        saw_unknown |= d.unknown
    return ClassDecision(UNKNOWN if saw_unknown else NO, None, states)


# --------------------------------------------------------------------------
# certificates and bound results


@dataclass(frozen=True, eq=False)
class CoverElement:
    generators: tuple[int, ...]
    chains: tuple[ContiguityChain, ...]


@dataclass(frozen=True, eq=False)
class CoverCertificate:
    """A cover of ``ambient`` by generated subcomplexes with witness chains.

    ``mode`` is ``"scat"`` (each chain: inclusion to a constant) or ``"tc"``
    (chain ``j - 2``: ``pi_1|Omega`` to ``pi_j|Omega``).
    """

    mode: str
    base: Complex
    n: int
    elements: tuple[CoverElement, ...]

    @property
    def ambient(self) -> Complex:
        return self.base if self.mode == "scat" else power(self.base, self.n).underlying


@dataclass
class BoundResult:
    """An invariant as an interval ``[lower, upper]``; ``upper`` may be ``inf``."""

    name: str
    lower: float
    upper: float
    certificate: CoverCertificate | None = None
    refutation: dict = field(default_factory=dict)
    budget_report: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise InconsistencyError(f"{self.name}: lower bound {self.lower} exceeds upper {self.upper}")

    @property
    def status(self) -> str:
        if self.lower == self.upper:
            return "exact"
        return "unknown" if self.upper == INF else "bounds"

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> float | None:
        return self.lower if self.exact else None

    def __str__(self) -> str:
        if self.exact:
            return f"{self.name} = {_fmt(self.lower)}"
        return f"{self.name} in [{_fmt(self.lower)}, {_fmt(self.upper)}]"


def _fmt(x: float) -> str:
    return "inf" if x == INF else str(int(x))


def _cover_invariant(name: str, ambient: Complex, decide, mode: str, base: Complex, n: int,
                     budget: SearchBudget, deadline: float | None) -> BoundResult:
    """Run the cover search with per-query state caps growing up to ``budget.max_states``.

    Cheap passes settle most subsets quickly; later passes retry only the
    subsets left unknown.
    """
    t0 = time.monotonic()
    dl = budget.deadline(deadline)
    facets = ambient.facets
    states = 0
    answers: dict[int, str] = {}
    best = None
    caps = sorted({min(c, budget.max_states) for c in (2_000, 50_000)} | {budget.max_states})

    for cap in caps:
        pass_budget = SearchBudget(cap, budget.max_millis)

        def oracle(s: int) -> str:
            nonlocal states
            omega = generated_subcomplex(ambient, [facets[j] for j in bits(s)])
            d = decide(omega, pass_budget, dl, False)
            states += d.states_explored
            return d.verdict

        res = min_cover(len(facets), oracle, deadline=dl, answers=answers)
        if best is None:
            best = res
        else:
            if res.lower > best.lower:
                best.lower, best.refutation = res.lower, res.refutation
            if res.upper < best.upper:
                best.upper, best.cover = res.upper, res.cover
            best.complete = best.complete or res.complete
        if best.exact or time.monotonic() > dl:
            break
        for s in [s for s, a in answers.items() if a == UNKNOWN]:
            del answers[s]

    res = best
    cert = None
    if res.cover is not None:
        elements = []
        for s in res.cover:
            omega = generated_subcomplex(ambient, [facets[j] for j in bits(s)])
            d = decide(omega, budget, None, True)
            if not d.yes:
                raise InconsistencyError(f"{name}: cover element lost its witness on replay")
            chains = (d.chain,) if isinstance(d, ClassDecision) else d.chains
            elements.append(CoverElement(omega.generators, chains))
        cert = CoverCertificate(mode, base, n, tuple(elements))
    report = {
        "states": states,
        "millis": round((time.monotonic() - t0) * 1000, 1),
        "oracle_calls": len(answers),
        "unknown_answers": sum(1 for a in answers.values() if a == UNKNOWN),
        "search_complete": res.complete,
        "max_states": budget.max_states,
        "max_millis": budget.max_millis,
    }
    return BoundResult(name, res.lower - 1, res.upper - 1, cert, res.refutation, report)


def scat(K: Complex, budget: SearchBudget = SearchBudget(), *, deadline: float | None = None,
         name: str = "scat(K)") -> BoundResult:
    """Simplicial LS category: least ``k`` with a cover by ``k + 1`` categorical subcomplexes.

    ``budget.max_states`` bounds each contiguity search; ``budget.max_millis``
    bounds the whole computation.
    """
    out = _cover_invariant(
        name, K, lambda om, b, dl, cert: is_categorical(om, b, deadline=dl, certify=cert), "scat", K, 1, budget, deadline
    )
    if not edge_path_connected(K):
        out.warnings.append("complex is not edge-path connected")
    return out


def tc(K: Complex, n: int, budget: SearchBudget = SearchBudget(), *,
       deadline: float | None = None,
       scat_below: BoundResult | None = None,
       scat_above: BoundResult | None = None,
       tighten: bool = True) -> BoundResult:
    """n-th discrete topological complexity of ``K``.

    For edge-path connected ``K`` the lower bound is raised to the lower
    bound of ``scat(K^(n-1))`` (computed unless ``scat_below`` is given or
    ``tighten`` is False).  When ``scat_above`` (``scat(K^n)``) is supplied
    the upper end is cross-checked against it.
    """
    if n < 2:
        raise ValueError("tc needs n >= 2")
    P = power(K, n)
    out = _cover_invariant(
        f"TC_{n}(K)", P.underlying,
        lambda om, b, dl, cert: is_farber(om, P, b, deadline=dl, certify=cert), "tc", K, n, budget, deadline,
    )
    connected = edge_path_connected(K)
    if not connected:
        out.warnings.append("complex is not edge-path connected; scat bounds do not apply")
        return out

    if scat_below is None and tighten:
        scat_below = scat(power(K, n - 1).underlying, budget, deadline=deadline,
                          name=f"scat(K^{n - 1})")
    if scat_below is not None:
        if scat_below.lower > out.upper:
            raise InconsistencyError(
                f"scat(K^{n - 1}) >= {scat_below.lower} but TC_{n}(K) <= {out.upper}")
        if scat_below.lower > out.lower:
            out.lower = scat_below.lower
            out.refutation = {
                "method": "scat-lower-bound",
                "detail": f"scat(K^{n - 1}) >= {_fmt(scat_below.lower)} "
                          f"({scat_below.refutation.get('method', '')})",
            }
    if scat_above is not None and out.lower > scat_above.upper:
        raise InconsistencyError(f"TC_{n}(K) >= {out.lower} but scat(K^{n}) <= {scat_above.upper}")
    return out


# --------------------------------------------------------------------------
# independent certificate verification


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    reason: str = ""
    element: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_cover(K: Complex, mode: str | int, cert: CoverCertificate) -> CoverCheck:
    """Replay a cover certificate for ``scat(K)`` (``mode="scat"``) or ``TC_n(K)`` (``mode=n``).

    Checks coverage of every ambient facet and replays each chain with
    ``verify_chain``; never runs a search.
    """
    if mode == "scat":
        ambient, P = K, None
    else:
        n = int(mode)
        P = power(K, n)
        ambient = P.underlying
        if cert.mode != "tc" or cert.n != n:
            return CoverCheck(False, "certificate is for a different invariant")
    if mode == "scat" and cert.mode != "scat":
        return CoverCheck(False, "certificate is for a different invariant")
    if not cert.elements:
        return CoverCheck(False, "certificate has no elements")

    gens_all = [g for el in cert.elements for g in el.generators]
    for F in ambient.facets:
        if not any(F & ~g == 0 for g in gens_all):
            return CoverCheck(False, f"facet {ambient.names(F)} is not covered")

    for k, el in enumerate(cert.elements):
        try:
            omega = Subcomplex(ambient, tuple(sorted(el.generators)))
        except Exception as exc:  # noqa: BLE001
            return CoverCheck(False, f"bad generators: {exc}", k)
        if P is None:
            if len(el.chains) != 1:
                return CoverCheck(False, "scat elements carry exactly one chain", k)
            chain = el.chains[0]
            check = verify_chain(chain, start=omega.inclusion)
            if not check:
                return CoverCheck(False, check.reason, k)
            if not chain.end.is_constant():
                return CoverCheck(False, "chain does not end at a constant map", k)
        else:
            if len(el.chains) != P.arity - 1:
                return CoverCheck(False, f"expected {P.arity - 1} chains", k)
            first = restrict(projection(P, 1), omega)
            for j, chain in enumerate(el.chains, start=2):
                check = verify_chain(chain, start=first, end=restrict(projection(P, j), omega))
                if not check:
                    return CoverCheck(False, f"chain for pi_{j}: {check.reason}", k)
    return CoverCheck(True)


# --------------------------------------------------------------------------
# inequality suite


@dataclass
class Check:
    name: str
    lhs: tuple[float, float]
    rhs: tuple[float, float]
    holds: bool
    decided: bool

    def line(self) -> str:
        state = "holds" if self.holds else "VIOLATED"
        how = "exact" if self.decided else "interval"
        return f"{self.name}: {_interval(self.lhs)} vs {_interval(self.rhs)} -> {state} ({how})"


def _interval(iv: tuple[float, float]) -> str:
    lo, hi = iv
    return _fmt(lo) if lo == hi else f"[{_fmt(lo)}, {_fmt(hi)}]"


def leq(name: str, a: tuple[float, float], b: tuple[float, float]) -> Check:
    """``A <= B`` in interval semantics: violated only when ``lower(A) > upper(B)``."""
    return Check(name, a, b, not a[0] > b[1], a[0] == a[1] and b[0] == b[1])


REALIZATION_NOTE = (
    "TC_n(|K|) of the geometric realization is not computed; only the one-sided "
    "bound TC_n(|K|) <= TC_n(K) applies."
)


@dataclass
class SuiteReport:
    quantities: dict[str, BoundResult]
    checks: list[Check]
    collapsible: bool
    connected: bool
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def hard_failures(self) -> list[Check]:
        return [c for c in self.checks if not c.holds and c.decided]

    @property
    def all_exact(self) -> bool:
        return all(q.exact for q in self.quantities.values())


def _iv(r: BoundResult) -> tuple[float, float]:
    return (r.lower, r.upper)


def inequality_suite(K: Complex, n_max: int, budget: SearchBudget = SearchBudget(), *,
                     require_connectivity: bool = True) -> SuiteReport:
    """Compute scat(K^m) for m <= n_max and TC_n(K) for 2 <= n <= n_max; check every inequality.

    ``budget.max_millis`` applies to each invariant separately.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    connected = edge_path_connected(K)
    if not connected and require_connectivity:
        raise PreconditionViolated("the scat/TC inequalities need an edge-path connected complex")
    collapsible = is_strongly_collapsible(K)

    q: dict[str, BoundResult] = {}
    for m in range(1, n_max + 1):
        name = "scat(K)" if m == 1 else f"scat(K^{m})"
        q[name] = scat(power(K, m).underlying, budget, name=name)
    for n in range(2, n_max + 1):
        below = q["scat(K)" if n == 2 else f"scat(K^{n - 1})"]
        q[f"TC_{n}(K)"] = tc(K, n, budget, scat_below=below if connected else None,
                             scat_above=q[f"scat(K^{n})"] if connected else None, tighten=False)

    checks: list[Check] = []
    for m in range(2, n_max):
        checks.append(leq(f"TC_{m}(K) <= TC_{m + 1}(K)", _iv(q[f"TC_{m}(K)"]), _iv(q[f"TC_{m + 1}(K)"])))
    if connected:
        for n in range(2, n_max + 1):
            below = "scat(K)" if n == 2 else f"scat(K^{n - 1})"
            checks.append(leq(f"{below} <= TC_{n}(K)", _iv(q[below]), _iv(q[f"TC_{n}(K)"])))
            checks.append(leq(f"TC_{n}(K) <= scat(K^{n})", _iv(q[f"TC_{n}(K)"]), _iv(q[f"scat(K^{n})"])))
    s1, s2 = q["scat(K)"], q["scat(K^2)"]
    checks.append(leq("scat(K x K) + 1 <= (scat(K) + 1)^2",
                      (s2.lower + 1, s2.upper + 1), ((s1.lower + 1) ** 2, (s1.upper + 1) ** 2)))
    for n in range(2, n_max + 1):
        r = q[f"TC_{n}(K)"]
        if collapsible:
            holds = r.lower == 0
        else:
            holds = r.upper >= 1
        checks.append(Check(f"TC_{n}(K) = 0 iff strongly collapsible ({collapsible})",
                            _iv(r), (0.0, 0.0) if collapsible else (1.0, INF), holds, r.exact))

    report = SuiteReport(q, checks, collapsible, connected, [REALIZATION_NOTE])
    for c in report.hard_failures:
        log.error("inequality violated by exact values: %s", c.line())
    return report


def invariance_checks(K: Complex, seeds: list[int], budget: SearchBudget = SearchBudget(),
                      n: int = 2) -> list[Check]:
    """Compare scat and TC_n of ``K`` with those of seeded strong expansions."""
    base_s = scat(K, budget)
    base_t = tc(K, n, budget, tighten=False)
    out = []
    for seed in seeds:
        E = strong_expansion(K, seed)
        s = scat(E, budget)
        t = tc(E, n, budget, tighten=False)
        for label, a, b in (("scat", base_s, s), (f"TC_{n}", base_t, t)):
            disjoint = a.lower > b.upper or b.lower > a.upper
            out.append(Check(f"{label}(K) = {label}(expansion seed {seed})", _iv(a), _iv(b),
                             not disjoint, a.exact and b.exact))
    return out
