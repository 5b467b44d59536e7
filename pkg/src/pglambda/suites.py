"""Property suites over the built-in catalogue.

Each suite checks one verifiable statement about power graphs of finite
groups and reports per-group pass/fail records.  Suites that need the
exhaustive labelling search only run it on groups up to `exact_cap`
(default 32); everything else runs on the whole selection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .catalog import build_catalogue_groups
from .construct import lambda_p_group
from .groups import FiniteGroup, OrderTable, is_maximal_class, order_table
from .labelling import (
    exact_lambda,
    find_group_ham_path,
    labelling_to_path,
    path_to_labelling,
    validate_labelling,
)
from .powergraph import (
    ClassPartition,
    PowerGraph,
    build_power_graph,
    check_lower_hook,
    cyclic_classes,
    euler_phi,
)

__all__ = ["SuiteResult", "SUITE_NAMES", "run_suites"]

DEFAULT_EXACT_CAP = 32


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    subject: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class _Subject:
    name: str
    group: FiniteGroup
    graph: PowerGraph
    partition: ClassPartition
    orders: OrderTable

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def prime(self) -> int | None:
        return self.orders.p_group_prime


def _result(suite: str, subject: _Subject, passed: bool, detail: str) -> SuiteResult:
    return SuiteResult(suite, subject.name, passed, detail)


def _suite_power_graph_shape(subjects: Sequence[_Subject], cap: int,
                             budget: float) -> list[SuiteResult]:
    """Identity universal, diameter ≤ 2, class sizes φ(d), classes cover G."""
    out = []
    for s in subjects:
        problems = []
        full = (1 << s.n) - 1
        if s.n > 1 and not s.graph.is_universal(s.group.identity):
            problems.append("identity is not universal")
        for v in range(s.n):
            reach = s.graph.neighbors[v] | (1 << v)
            for u in list(range(s.n)):
                if (s.graph.neighbors[v] >> u) & 1:
                    reach |= s.graph.neighbors[u]
            if reach != full:
                problems.append(f"vertex {v} cannot reach everything in 2 steps")
                break
        covered = 0
        for cls in s.partition:
            if len(cls.members) != euler_phi(cls.order):
                problems.append(
                    f"class of order {cls.order} has {len(cls.members)} members")
            covered += len(cls.members)
        if covered != s.n:
            problems.append(f"classes cover {covered} of {s.n} elements")
        out.append(_result("power-graph-shape", s, not problems,
                           "; ".join(problems) or "ok"))
    return out


def _suite_congruences(subjects: Sequence[_Subject], cap: int,
                       budget: float) -> list[SuiteResult]:
    """m(p) ≡ 1+p (mod p²) and p | m(p^i) for qualifying p-groups."""
    out = []
    for s in subjects:
        p = s.prime
        if p is None or s.orders.exponent == s.n or s.n == 1:
            continue
        if p == 2 and is_maximal_class(s.group):
            continue
        problems = []
        m1 = s.partition.class_number(p)
        if m1 % (p * p) != (1 + p) % (p * p):
            problems.append(f"m({p}) = {m1} is not 1+{p} mod {p * p}")
        q = p * p
        while q <= s.orders.exponent:
            mi = s.partition.class_number(q)
            if mi % p != 0:
                problems.append(f"m({q}) = {mi} is not divisible by {p}")
            q *= p
        out.append(_result("class-number-congruences", s, not problems,
                           "; ".join(problems) or f"m({p}) = {m1}"))
    return out


def _family_class_expectations(tag: str, order: int) -> dict[int, int]:
    m = order // 2  # 2^e
    expected = {1: 1}
    if tag == "dihedral":
        expected[2] = 1 + m
        q = 4
    elif tag == "quaternion":
        expected[2] = 1
        expected[4] = 1 + m // 2
        q = 8
    else:  # semidihedral
        expected[2] = 1 + m // 2
        expected[4] = 1 + m // 4
        q = 8
    while q <= m:
        expected[q] = 1
        q *= 2
    return expected


def _suite_family_class_numbers(subjects: Sequence[_Subject], cap: int,
                                budget: float) -> list[SuiteResult]:
    """Exact per-order class counts for the three maximal-class 2-group families."""
    out = []
    for s in subjects:
        tag = s.group.family_tag
        if tag not in ("dihedral", "quaternion", "semidihedral"):
            continue
        expected = _family_class_expectations(tag, s.n)
        actual = {d: s.partition.class_number(d) for d in expected}
        extra = [d for d in s.partition.orders if d not in expected]
        ok = actual == expected and not extra
        detail = (f"class numbers {sorted(actual.items())}" if ok else
                  f"expected {sorted(expected.items())}, got {sorted(actual.items())}"
                  + (f", unexpected orders {extra}" if extra else ""))
        out.append(_result("family-class-numbers", s, ok, detail))
    return out


def _suite_lower_hook(subjects: Sequence[_Subject], cap: int,
                      budget: float) -> list[SuiteResult]:
    """Hook holds on p-groups; composite-order groups may (and C6 must) break it."""
    out = []
    for s in subjects:
        report = check_lower_hook(s.group)
        if s.prime is not None:
            detail = "holds" if report.holds else f"counterexample {report.counterexample}"
            out.append(_result("lower-hook", s, report.holds, detail))
        elif s.name == "cyclic:6":
            ok = not report.holds and report.counterexample is not None
            if ok:
                u, v1, v2 = report.counterexample
                ok = (u.order, v1.order, v2.order) == (6, 2, 3)
                detail = f"expected break found: orders ({u.order}, {v1.order}, {v2.order})"
            else:
                detail = "expected a counterexample, found none"
            out.append(_result("lower-hook", s, ok, detail))
        else:
            if report.holds:
                detail = "holds (no triple to break it)"
            else:
                u, v1, v2 = report.counterexample
                detail = f"breaks as allowed: orders ({u.order}, {v1.order}, {v2.order})"
            out.append(_result("lower-hook", s, True, detail))
    return out


def _suite_span_path_equivalence(subjects: Sequence[_Subject], cap: int,
                                 budget: float) -> list[SuiteResult]:
    """λ = |G| exactly when the reduced complement has a Hamiltonian path."""
    out = []
    for s in subjects:
        if not 3 <= s.n <= cap:
            continue
        path = find_group_ham_path(s.graph)
        cert = exact_lambda(s.graph, time_budget=budget)
        ok = (path is not None) == (cert.value == s.n)
        detail = (f"lambda = {cert.value}, path "
                  f"{'found' if path is not None else 'absent'}")
        out.append(_result("span-path-equivalence", s, ok, detail))
    return out


def _formula_lambda(s: _Subject) -> int:
    """Independent expectation: 2(p^e − 1) cyclic, |G|+1 unique-involution 2-group, else |G|."""
    if s.n == 1:
        return 0
    if s.orders.exponent == s.n:
        return 2 * (s.n - 1)
    if s.prime == 2 and s.partition.class_number(2) == 1:
        return s.n + 1
    return s.n


def _suite_constructive_matches_exact(subjects: Sequence[_Subject], cap: int,
                                      budget: float) -> list[SuiteResult]:
    """Constructive λ equals the exhaustive-search λ on small p-groups."""
    out = []
    for s in subjects:
        if s.prime is None or s.n > cap:
            continue
        constructive = lambda_p_group(s.group)
        exact = exact_lambda(s.graph, time_budget=budget)
        ok = constructive.value == exact.value
        out.append(_result("constructive-matches-exact", s, ok,
                           f"constructive {constructive.value}, exact {exact.value}"))
    return out


def _suite_constructive_witness_valid(subjects: Sequence[_Subject], cap: int,
                                      budget: float) -> list[SuiteResult]:
    """Constructive witnesses validate on the real graph and hit the formula value."""
    out = []
    for s in subjects:
        if s.prime is None:
            continue
        cert = lambda_p_group(s.group)
        violations = validate_labelling(s.graph, cert.witness)
        expected = _formula_lambda(s)
        ok = (not violations and cert.witness.span == cert.value
              and cert.value == expected)
        detail = (f"value {cert.value}, span {cert.witness.span}, "
                  f"expected {expected}, violations {len(violations)}")
        out.append(_result("constructive-witness-valid", s, ok, detail))
    return out


def _suite_round_trip(subjects: Sequence[_Subject], cap: int,
                      budget: float) -> list[SuiteResult]:
    """labelling_to_path inverts path_to_labelling on every span-|G| witness."""
    out = []
    for s in subjects:
        if s.prime is None:
            continue
        cert = lambda_p_group(s.group)
        if cert.value != s.n:
            continue
        path = labelling_to_path(s.graph, cert.witness)
        relabelled = path_to_labelling(s.graph, path)
        back = labelling_to_path(s.graph, relabelled)
        ok = (back.vertices == path.vertices
              and relabelled.span == s.n
              and not validate_labelling(s.graph, relabelled))
        out.append(_result("labelling-path-round-trip", s, ok,
                           "round trip stable" if ok else "path changed"))
    return out


_SUITES = (
    ("power-graph-shape", _suite_power_graph_shape),
    ("class-number-congruences", _suite_congruences),
    ("family-class-numbers", _suite_family_class_numbers),
    ("lower-hook", _suite_lower_hook),
    ("span-path-equivalence", _suite_span_path_equivalence),
    ("constructive-matches-exact", _suite_constructive_matches_exact),
    ("constructive-witness-valid", _suite_constructive_witness_valid),
    ("labelling-path-round-trip", _suite_round_trip),
)

SUITE_NAMES = tuple(name for name, _ in _SUITES)


def run_suites(max_order: int = 32,
               extra_groups: Sequence[tuple[str, FiniteGroup]] = (),
               *,
               exact_cap: int = DEFAULT_EXACT_CAP,
               time_budget: float = 60.0) -> list[SuiteResult]:
    """Run every suite over the catalogue (≤ max_order) plus any extra groups."""
    subjects = []
    for entry, group in build_catalogue_groups(max_order):
        subjects.append(_make_subject(entry.name, group))
    for name, group in extra_groups:
        subjects.append(_make_subject(name, group))

    results: list[SuiteResult] = []
    for _, fn in _SUITES:
        results.extend(fn(subjects, exact_cap, time_budget))
    return results


def _make_subject(name: str, group: FiniteGroup) -> _Subject:
    graph = build_power_graph(group)
    return _Subject(name=name, group=group, graph=graph,
                    partition=cyclic_classes(group), orders=order_table(group))
