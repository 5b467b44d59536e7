"""L(2,1)-labellings: validation, span, path conversions, and exact search.

A labelling is valid when labels differ by ≥ j across edges and by ≥ k
across distance-2 pairs (defaults j=2, k=1).  On a power graph every
distinct pair is within distance 2, so a valid L(2,1)-labelling has all
labels distinct; a span-|G| labelling is then the same data as a
Hamiltonian path in the complement of the power graph minus the
identity, and the two conversions here are mutually inverse.

The exact oracle is independent of all group theory: ascending-span
backtracking over label domains with forward checking, a clique-packing
prune, and an all-distinct pigeonhole prune.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadPathError,
    EmptyLabellingError,
    InvalidLabellingError,
    MissingLabelError,
    SearchTimeoutError,
    SpanTooLargeError,
    TooLargeError,
)
from .powergraph import Graph, PowerGraph, complement, delete_vertex, iter_bits

__all__ = [
    "DEFAULT_SEARCH_CAP",
    "DEFAULT_TIME_BUDGET",
    "Labelling",
    "HamPath",
    "Violation",
    "Evidence",
    "LambdaCertificate",
    "ConstructionInfo",
    "validate_labelling",
    "span",
    "check_ham_path",
    "path_to_labelling",
    "labelling_to_path",
    "find_hamiltonian_path",
    "reduced_complement",
    "find_group_ham_path",
    "power_graph_lower_bound",
    "LowerBound",
    "exact_lambda",
    "certificate_doc",
    "certificate_to_json",
    "format_labelling_csv",
    "parse_labelling_csv",
]

DEFAULT_SEARCH_CAP = 32
DEFAULT_TIME_BUDGET = 60.0


# ---------------------------------------------------------------------------
# labellings


@dataclass(frozen=True)
class Labelling:
    """Integer labels indexed by vertex, with separation parameters."""

    labels: tuple[int, ...]
    j: int = 2
    k: int = 1

    @property
    def span(self) -> int:
        return span(self.labels)

    def __getitem__(self, v: int) -> int:
        return self.labels[v]

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class HamPath:
    """Ordering of all non-identity elements, consecutive pairs non-adjacent.

    ``excluded`` is the identity vertex, the one element left out of the
    sequence.  Validity is relative to a power graph; see check_ham_path.
    """

    vertices: tuple[int, ...]
    excluded: int


@dataclass(frozen=True)
class Violation:
    """One labelled pair breaking a separation constraint."""

    u: int
    v: int
    distance: int
    gap: int
    required: int

    def __str__(self) -> str:
        return (f"vertices ({self.u}, {self.v}) at distance {self.distance}: "
                f"|gap| = {self.gap} < {self.required}")


def _normalize_labels(n: int, labels) -> list[int]:
    """Flatten any accepted labels form to a dense list; MissingLabel if short."""
    if isinstance(labels, Labelling):
        labels = labels.labels
    if isinstance(labels, Mapping):
        missing = [v for v in range(n) if v not in labels]
        if missing:
            raise MissingLabelError(f"no label for vertex {missing[0]}")
        return [int(labels[v]) for v in range(n)]
    out = [int(v) for v in labels]
    if len(out) != n:
        raise MissingLabelError(f"expected {n} labels, got {len(out)}")
    return out


def validate_labelling(graph: Graph, labels, j: int = 2, k: int = 1) -> list[Violation]:
    """Every violating pair with its distance; empty list means valid.

    Distances beyond 2 are unconstrained; d = 2 means non-adjacent with a
    common neighbour.
    """
    lab = _normalize_labels(graph.n, labels)
    neigh = graph.neighbors
    out = []
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if (neigh[u] >> v) & 1:
                distance, required = 1, j
            elif neigh[u] & neigh[v]:
                distance, required = 2, k
            else:
                continue
            gap = abs(lab[u] - lab[v])
            if gap < required:
                out.append(Violation(u, v, distance, gap, required))
    return out


def span(labels) -> int:
    """max − min of the labels; EmptyLabelling when there are none."""
    if isinstance(labels, Labelling):
        values = labels.labels
    elif isinstance(labels, Mapping):
        values = tuple(labels.values())
    else:
        values = tuple(labels)
    if not values:
        raise EmptyLabellingError("span of an empty labelling is undefined")
    return max(values) - min(values)


# ---------------------------------------------------------------------------
# Hamiltonian paths in the reduced complement


def _as_ham_path(graph: PowerGraph, path) -> HamPath:
    if isinstance(path, HamPath):
        return path
    return HamPath(tuple(path), graph.group.identity)


def check_ham_path(graph: PowerGraph, path: HamPath | Sequence[int]) -> None:
    """Raise BadPath unless the path covers G minus the identity exactly
    once with every consecutive pair NON-adjacent in the power graph."""
    identity = graph.group.identity
    path = _as_ham_path(graph, path)
    if path.excluded != identity:
        raise BadPathError(f"excluded vertex {path.excluded} is not the identity {identity}")
    expected = set(range(graph.n)) - {identity}
    got = list(path.vertices)
    if len(got) != len(set(got)) or set(got) != expected:
        raise BadPathError("path does not cover the non-identity elements exactly once")
    for a, b in zip(got, got[1:]):
        if graph.adjacent(a, b):
            raise BadPathError(f"consecutive pair ({a}, {b}) is adjacent in the power graph")


def path_to_labelling(graph: PowerGraph, path: HamPath | Sequence[int]) -> Labelling:
    """Identity ↦ −2 and the i-th path vertex ↦ i: valid with span |G|."""
    path = _as_ham_path(graph, path)
    check_ham_path(graph, path)
    labels = [0] * graph.n
    labels[path.excluded] = -2
    for i, v in enumerate(path.vertices):
        labels[v] = i
    return Labelling(tuple(labels))


def labelling_to_path(graph: PowerGraph, labels) -> HamPath:
    """Invert path_to_labelling for any valid span-|G| labelling.

    Valid span-|G| labels occupy an interval of |G|+1 integers with one
    interior hole, and the identity label sits at one end with the hole
    beside it; the remaining labels are consecutive, and ordering their
    preimages ascending gives the path.  Re-anchoring the identity below
    the rest and translating yields the canonical image {−2, 0, .., |G|−2},
    so label translations of the input produce the same path.
    """
    n = graph.n
    lab = _normalize_labels(n, labels)
    violations = validate_labelling(graph, lab)
    if violations:
        raise InvalidLabellingError(
            f"not a valid L(2,1)-labelling: {len(violations)} violations, "
            f"first: {violations[0]}")
    got = span(lab)
    if got != n:
        raise SpanTooLargeError(f"conversion needs span exactly {n}, got {got}")
    identity = graph.group.identity
    rest = sorted((lab[v], v) for v in range(n) if v != identity)
    if not (lab[identity] < rest[0][0] or lab[identity] > rest[-1][0]):
        raise InvalidLabellingError(
            "identity label is interior; the graph cannot be a power graph")
    base = rest[0][0]
    for offset, (value, _) in enumerate(rest):
        if value != base + offset:
            raise InvalidLabellingError(
                "non-identity labels are not consecutive; the graph cannot "
                "be a power graph")
    path = HamPath(tuple(v for _, v in rest), identity)
    check_ham_path(graph, path)
    return path


# ---------------------------------------------------------------------------
# Hamiltonian path search (exhaustive, with sound pruning)


def _connected(neigh: Sequence[int], domain: int, start: int) -> bool:
    seen = frontier = 1 << start
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= neigh[v]
        frontier = grow & domain & ~seen
        seen |= frontier
    return seen == domain


def _next_candidates(neigh: Sequence[int], full: int, cur: int, visited: int) -> list[int]:
    """Unvisited neighbours of cur worth trying, best candidate last.

    Sound prunes: the rest of the path is a Hamiltonian path of
    rem ∪ {cur} starting at cur, so that set must be connected and can
    hold at most one further degree-1 vertex (the far endpoint).
    """
    rem = full & ~visited
    cand = neigh[cur] & rem
    if not cand:
        return []
    domain = rem | (1 << cur)
    if not _connected(neigh, domain, cur):
        return []
    pendants = 0
    for v in iter_bits(rem):
        if (neigh[v] & domain).bit_count() <= 1:
            pendants += 1
            if pendants > 1:
                return []
    ordered = sorted(iter_bits(cand),
                     key=lambda v: ((neigh[v] & rem).bit_count(), v))
    ordered.reverse()  # the stack pops from the end
    return ordered


def _ham_from(neigh: Sequence[int], full: int, start: int) -> tuple[int, ...] | None:
    path = [start]
    visited = 1 << start
    frames = [_next_candidates(neigh, full, start, visited)]
    while frames:
        if visited == full:
            return tuple(path)
        frame = frames[-1]
        if not frame:
            frames.pop()
            visited &= ~(1 << path.pop())
            continue
        v = frame.pop()
        path.append(v)
        visited |= 1 << v
        if visited == full:
            return tuple(path)
        frames.append(_next_candidates(neigh, full, v, visited))
    return None


def find_hamiltonian_path(graph: Graph,
                          max_vertices: int | None = None) -> tuple[int, ...] | None:
    """A Hamiltonian path of the graph, or None as exhaustive proof of absence.

    Deterministic: start vertices ascend by (degree, index) and the search
    prefers low-degree continuations.  A graph with more than two degree-1
    vertices, an isolated vertex (n ≥ 2), or a disconnected vertex set is
    rejected immediately.
    """
    from .groups import max_group_order

    cap = max_vertices if max_vertices is not None else max_group_order()
    n = graph.n
    if n > cap:
        raise TooLargeError(f"Hamiltonian search capped at {cap} vertices, graph has {n}")
    if n == 0:
        return ()
    if n == 1:
        return (0,)
    neigh = graph.neighbors
    full = (1 << n) - 1
    degrees = [neigh[v].bit_count() for v in range(n)]
    if any(d == 0 for d in degrees):
        return None
    if sum(1 for d in degrees if d == 1) > 2:
        return None
    if not _connected(neigh, full, 0):
        return None
    by_degree = sorted(range(n), key=lambda v: (degrees[v], v))
    # a degree-1 vertex must be an endpoint, so starting there is complete
    pendant_starts = [v for v in by_degree if degrees[v] == 1]
    for start in pendant_starts or by_degree:
        found = _ham_from(neigh, full, start)
        if found is not None:
            return found
    return None


def reduced_complement(graph: PowerGraph) -> tuple[Graph, tuple[int, ...]]:
    """Complement of the power graph minus the identity; kept[new] = old."""
    reduced, kept = delete_vertex(graph, graph.group.identity)
    return complement(reduced), kept


def find_group_ham_path(graph: PowerGraph) -> HamPath | None:
    """Search the reduced complement; None is an exhaustive absence proof."""
    comp, kept = reduced_complement(graph)
    found = find_hamiltonian_path(comp)
    if found is None:
        return None
    return HamPath(tuple(kept[v] for v in found), graph.group.identity)


# ---------------------------------------------------------------------------
# lower bounds and the exact oracle


@dataclass(frozen=True)
class LowerBound:
    """A proven lower bound on λ with the reason it holds."""

    value: int
    kind: str
    vertex: int | None = None


def power_graph_lower_bound(graph: PowerGraph) -> LowerBound:
    """λ ≥ |G| for any power graph; ≥ |G|+1 with a universal non-identity.

    All labels are distinct (diameter ≤ 2) and the universal identity
    forces a further gap of 2, giving |G|.  A universal non-identity
    vertex is isolated in the reduced complement, so for |G| ≥ 3 no
    Hamiltonian path exists there and the bound tightens by one.
    """
    n = graph.n
    if n <= 1:
        return LowerBound(0, "degenerate")
    if n >= 3:
        for v in range(n):
            if v != graph.group.identity and graph.is_universal(v):
                return LowerBound(n + 1, "universal-nonidentity-vertex", vertex=v)
    return LowerBound(n, "power-graph-bound")


@dataclass(frozen=True)
class Evidence:
    """Why λ−1 is impossible: the lower-bound side of a certificate."""

    kind: str
    bound: int
    span: int | None = None
    vertex: int | None = None


@dataclass(frozen=True)
class ConstructionInfo:
    """How a constructive witness was assembled."""

    kind: str
    path: tuple[int, ...]
    joints: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class LambdaCertificate:
    """λ value with a witness labelling and lower-bound evidence."""

    value: int
    witness: Labelling
    evidence: Evidence
    method: str
    construction: ConstructionInfo | None = None


class _TimeUp(Exception):
    pass


def _greedy_clique(graph: Graph) -> int:
    """Bitmask of a maximal clique found greedily by descending degree."""
    mask = 0
    for v in sorted(range(graph.n), key=lambda u: (-graph.degree(u), u)):
        if graph.neighbors[v] & mask == mask:
            mask |= 1 << v
    return mask


def _gap2_packing(mask: int) -> int:
    """Max count of pairwise-≥2-separated values in the bitmask (greedy is
    optimal here: taking the smallest value never hurts)."""
    count = 0
    while mask:
        low = mask & -mask
        count += 1
        mask &= -1 << (low.bit_length() + 1)
    return count


def _span_feasible(d1: Sequence[int], d2: Sequence[int], n: int, s: int,
                   clique: int, all_distinct: bool,
                   deadline: float) -> list[int] | None:
    """One exhaustive feasibility probe: labels ⊆ {0..s} or None.

    Fixed vertex order (descending degree), ascending label choice, with
    forward checking; the first vertex is capped at s/2 to break the
    reflection symmetry.  Raises _TimeUp past the deadline.
    """
    if all_distinct and s < n - 1:
        return None
    if 2 * (clique.bit_count() - 1) > s:
        return None

    order = sorted(range(n),
                   key=lambda v: (-d1[v].bit_count(), -d2[v].bit_count(), v))
    full = (1 << (s + 1)) - 1
    domains = [full] * n
    domains[order[0]] = (1 << (s // 2 + 1)) - 1
    labels = [-1] * n
    state = {"unassigned": (1 << n) - 1, "ticks": 0}

    def doomed() -> bool:
        unassigned = state["unassigned"]
        if all_distinct:
            union = 0
            need = 0
            for v in iter_bits(unassigned):
                union |= domains[v]
                need += 1
            if union.bit_count() < need:
                return True
        in_clique = clique & unassigned
        need = in_clique.bit_count()
        if need:
            union = 0
            for v in iter_bits(in_clique):
                union |= domains[v]
            if _gap2_packing(union) < need:
                return True
        return False

    def assign(i: int) -> bool:
        if i == n:
            return True
        state["ticks"] += 1
        if state["ticks"] >= 1024:
            state["ticks"] = 0
            if time.monotonic() > deadline:
                raise _TimeUp
        u = order[i]
        for lab in iter_bits(domains[u]):
            labels[u] = lab
            state["unassigned"] &= ~(1 << u)
            unassigned = state["unassigned"]
            wide = (0b111 << lab) >> 1  # {lab−1, lab, lab+1}
            single = 1 << lab
            changed: list[tuple[int, int]] = []
            ok = True
            for v in iter_bits(d1[u] & unassigned):
                old = domains[v]
                new = old & ~wide
                if new != old:
                    domains[v] = new
                    changed.append((v, old))
                    if not new:
                        ok = False
                        break
            if ok:
                for v in iter_bits(d2[u] & unassigned):
                    old = domains[v]
                    new = old & ~single
                    if new != old:
                        domains[v] = new
                        changed.append((v, old))
                        if not new:
                            ok = False
                            break
            if ok and not doomed() and assign(i + 1):
                return True
            for v, old in changed:
                domains[v] = old
            state["unassigned"] |= 1 << u
            labels[u] = -1
        return False

    return labels[:] if assign(0) else None


def exact_lambda(graph: Graph, start_span: int = 0, *,
                 max_vertices: int = DEFAULT_SEARCH_CAP,
                 time_budget: float = DEFAULT_TIME_BUDGET) -> LambdaCertificate:
    """Minimum L(2,1) span by ascending-span exhaustive search.

    Knows nothing about groups: works on the bare graph, which is what
    makes it an independent oracle.  The certificate's witness achieves
    the span and the evidence records the exhaustive refutation of
    span−1 (run explicitly even when the first probed span succeeds).

    Raises Timeout with the best proven bounds when the budget runs out,
    and TooLarge above ``max_vertices``.
    """
    n = graph.n
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > max_vertices:
        raise TooLargeError(f"exact search capped at {max_vertices} vertices, "
                            f"graph has {n}")
    if start_span < 0:
        raise ValueError(f"start_span must be >= 0, got {start_span}")
    if n == 1:
        return LambdaCertificate(
            value=0, witness=Labelling((0,)),
            evidence=Evidence(kind="degenerate", bound=0), method="exact-search")

    deadline = time.monotonic() + time_budget
    d1 = list(graph.neighbors)
    everyone = (1 << n) - 1
    d2 = []
    for u in range(n):
        mask = 0
        for v in range(n):
            if v != u and not (d1[u] >> v) & 1 and d1[u] & d1[v]:
                mask |= 1 << v
        d2.append(mask)
    all_distinct = all((d1[u] | d2[u]) == everyone ^ (1 << u) for u in range(n))
    clique = _greedy_clique(graph)

    floor = 2 * (clique.bit_count() - 1)
    if all_distinct:
        floor = max(floor, n - 1)
    s = max(start_span, floor)
    proven = floor  # spans below this are impossible by the bounds above
    last_refuted = -10

    try:
        while True:
            found = _span_feasible(d1, d2, n, s, clique, all_distinct, deadline)
            if found is not None:
                break
            last_refuted = s
            proven = s + 1
            s += 1
    except _TimeUp:
        raise SearchTimeoutError(
            f"no result within {time_budget:.1f}s; proven lambda >= {proven}",
            lower_bound=proven) from None

    low = min(found)
    labels = [lab - low for lab in found]
    sigma = max(labels)
    try:
        # certify sigma−1 (and walk down if a caller overshot start_span)
        while sigma > 0 and sigma - 1 != last_refuted:
            below = _span_feasible(d1, d2, n, sigma - 1, clique, all_distinct,
                                   deadline)
            if below is None:
                last_refuted = sigma - 1
                break
            low = min(below)
            labels = [lab - low for lab in below]
            sigma = max(labels)
    except _TimeUp:
        raise SearchTimeoutError(
            f"witness of span {sigma} found but span {sigma - 1} not yet "
            f"refuted within {time_budget:.1f}s",
            lower_bound=proven, upper_bound=sigma) from None

    witness = Labelling(tuple(labels))
    if sigma == 0:
        evidence = Evidence(kind="degenerate", bound=0)
    else:
        evidence = Evidence(kind="exhaustive-search-at-span", span=sigma - 1,
                            bound=sigma)
    return LambdaCertificate(value=sigma, witness=witness, evidence=evidence,
                             method="exact-search")


# ---------------------------------------------------------------------------
# serialization


def certificate_doc(cert: LambdaCertificate) -> dict:
    """Certificate as a plain JSON-ready dict: {lambda, method, evidence, labels}."""
    evidence: dict[str, object] = {"kind": cert.evidence.kind,
                                   "bound": cert.evidence.bound}
    if cert.evidence.span is not None:
        evidence["span"] = cert.evidence.span
    if cert.evidence.vertex is not None:
        evidence["vertex"] = cert.evidence.vertex
    doc: dict[str, object] = {
        "lambda": cert.value,
        "method": cert.method,
        "evidence": evidence,
        "labels": list(cert.witness.labels),
    }
    if cert.construction is not None:
        doc["construction"] = {
            "kind": cert.construction.kind,
            "path": list(cert.construction.path),
            "joints": [list(j) for j in cert.construction.joints],
        }
    return doc


def certificate_to_json(cert: LambdaCertificate, *, indent: int | None = None) -> str:
    """Deterministic JSON rendering (sorted keys, no volatile fields)."""
    return json.dumps(certificate_doc(cert), sort_keys=True, indent=indent)


def format_labelling_csv(labels) -> str:
    """CSV with header element,label; elements written as indices."""
    if isinstance(labels, Labelling):
        labels = labels.labels
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["element", "label"])
    if isinstance(labels, Mapping):
        rows: Iterable[tuple[int, int]] = sorted(labels.items())
    else:
        rows = enumerate(labels)
    for element, label in rows:
        writer.writerow([element, label])
    return buf.getvalue()


def parse_labelling_csv(text: str, n: int,
                        names: Sequence[str] | None = None) -> dict[int, int]:
    """Read a labelling CSV; elements may be indices or element names.

    Returns {vertex: label}.  A numeric element column is always read as
    an index (names like "1" cannot shadow it); anything else must match
    a known element name.  Malformed rows, unknown elements, and
    duplicates raise ValueError; coverage is left to validate_labelling.
    """
    name_index = {name: i for i, name in enumerate(names)} if names else {}
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows or [cell.strip() for cell in rows[0]] != ["element", "label"]:
        raise ValueError("labelling CSV must start with the header 'element,label'")
    out: dict[int, int] = {}
    for row in rows[1:]:
        if len(row) != 2:
            raise ValueError(f"labelling row {row!r} must have 2 columns")
        key, value = row[0].strip(), row[1].strip()
        try:
            vertex = int(key)
        except ValueError:
            if key not in name_index:
                raise ValueError(f"unknown element {key!r}") from None
            vertex = name_index[key]
        if not 0 <= vertex < n:
            raise ValueError(f"element index {vertex} out of range 0..{n - 1}")
        try:
            label = int(value)
        except ValueError as exc:
            raise ValueError(f"label {value!r} is not an integer") from exc
        if vertex in out:
            raise ValueError(f"element {key!r} labelled twice")
        out[vertex] = label
    return out
