"""Constructive complement paths and the p-group lambda dispatcher."""

from __future__ import annotations

import itertools
import random

import pytest

from pglambda import (
    ConstructionFailedError,
    CrossAdjacencyError,
    Graph,
    NotPGroupError,
    OrderedClassFamily,
    ParameterTooSmallError,
    SingleClassError,
    ThinLevelError,
    UnequalSizesError,
    build_interleaved_path,
    build_power_graph,
    check_ham_path,
    construct_labelling_quaternion,
    construct_path_dihedral,
    construct_path_general,
    construct_path_semidihedral,
    cyclic_classes,
    lambda_p_group,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_elementary_abelian,
    make_heisenberg,
    make_quaternion,
    make_semidihedral,
    order_classes_for_descent,
    recognize_family,
    validate_group,
    validate_labelling,
)


# ---------------------------------------------------------------------------
# interleaving


def test_interleaving_is_column_major():
    graph = Graph(5, [0] * 5)  # no edges: every interleaving is admissible
    segment = build_interleaved_path(graph, [(1, 2), (3, 4)])
    assert segment.vertices == (1, 3, 2, 4)
    assert (segment.first, segment.last) == (1, 4)


def test_interleaving_sorts_class_members():
    graph = Graph(5, [0] * 5)
    segment = build_interleaved_path(graph, [(2, 1), (4, 3)])
    assert segment.vertices == (1, 3, 2, 4)


def test_interleaving_accepts_family_and_plain_lists():
    group = make_elementary_abelian(3, 2)
    graph = build_power_graph(group)
    classes = tuple(c.members for c in cyclic_classes(group).by_order[3])
    assert len(classes) == 4 and all(len(c) == 2 for c in classes)

    segment = build_interleaved_path(graph, OrderedClassFamily(classes))
    assert segment.vertices == build_interleaved_path(graph, list(classes)).vertices
    assert sorted(segment.vertices) == sorted(itertools.chain(*classes))
    for a, b in itertools.pairwise(segment.vertices):
        assert not graph.adjacent(a, b)


def test_interleaving_rejects_single_class():
    with pytest.raises(SingleClassError):
        build_interleaved_path(Graph(3, [0] * 3), [(1, 2)])


def test_interleaving_rejects_unequal_or_empty_classes():
    graph = Graph(4, [0] * 4)
    with pytest.raises(UnequalSizesError):
        build_interleaved_path(graph, [(1, 2), (3,)])
    with pytest.raises(UnequalSizesError):
        build_interleaved_path(graph, [(), ()])


def test_interleaving_rejects_shared_vertices():
    with pytest.raises(ValueError, match="share a vertex"):
        build_interleaved_path(Graph(4, [0] * 4), [(1, 2), (2, 3)])


def test_interleaving_rejects_adjacent_classes():
    # in a cyclic group the power graph is complete, so the class of
    # order 3 is adjacent to the class of order 9
    group = make_cyclic(9)
    graph = build_power_graph(group)
    with pytest.raises(CrossAdjacencyError):
        build_interleaved_path(graph, [(3, 6), (1, 2)])


# ---------------------------------------------------------------------------
# level descent


def test_descent_levels_for_c2_x_c4():
    group = make_direct_product(make_cyclic(2), make_cyclic(4))
    graph = build_power_graph(group)
    families = order_classes_for_descent(cyclic_classes(group), graph)
    assert len(families) == 2  # order-4 level, then order-2 level
    assert [len(f.classes) for f in families] == [2, 3]
    assert [f.size for f in families] == [2, 1]

    # the junction between consecutive levels must avoid the edge
    upper, lower = families
    a = upper.classes[-1][-1]
    b = lower.classes[0][0]
    assert not graph.adjacent(a, b)


def test_descent_rejects_levels_with_one_class():
    group = make_cyclic(8)
    with pytest.raises(ThinLevelError):
        order_classes_for_descent(cyclic_classes(group), build_power_graph(group))


def test_descent_rejects_non_p_groups():
    group = make_cyclic(6)
    with pytest.raises(NotPGroupError):
        order_classes_for_descent(cyclic_classes(group), build_power_graph(group))


@pytest.mark.parametrize("group", [
    make_elementary_abelian(2, 2),
    make_elementary_abelian(3, 2),
    make_direct_product(make_cyclic(2), make_cyclic(4)),
    make_direct_product(make_cyclic(3), make_cyclic(9)),
    make_heisenberg(3),
], ids=["elemab2^2", "elemab3^2", "c2xc4", "c3xc9", "heis3"])
def test_general_construction_yields_a_complement_path(group):
    path = construct_path_general(group)
    check_ham_path(build_power_graph(group), path)


# ---------------------------------------------------------------------------
# the three named 2-group families


@pytest.mark.parametrize("e", [2, 3, 4, 5])
def test_dihedral_paths(e):
    path = construct_path_dihedral(e)
    group = make_dihedral(2 ** (e + 1))
    graph = build_power_graph(group)
    check_ham_path(graph, path)
    # the alternation starts and ends on reflections (outside involutions)
    assert group.element_order(path.vertices[0]) == 2
    assert group.element_order(path.vertices[-1]) == 2


def test_dihedral_needs_e_at_least_two():
    with pytest.raises(ParameterTooSmallError):
        construct_path_dihedral(1)


@pytest.mark.parametrize("e", [3, 4, 5])
def test_semidihedral_paths(e):
    path = construct_path_semidihedral(e)
    graph = build_power_graph(make_semidihedral(2 ** (e + 1)))
    check_ham_path(graph, path)


def test_semidihedral_seed_for_order_16():
    path = construct_path_semidihedral(3)
    # y, x^4, x^2y, x^2, x^4y, x^6 in the canonical table (y = index 8)
    seed = path.vertices[:6]
    assert seed == (8, 4, 10, 2, 12, 6)
    graph = build_power_graph(make_semidihedral(16))
    for a, b in itertools.pairwise(seed):
        assert not graph.adjacent(a, b)


def test_semidihedral_needs_e_at_least_three():
    with pytest.raises(ParameterTooSmallError):
        construct_path_semidihedral(2)


@pytest.mark.parametrize("e", [2, 3, 4, 5])
def test_quaternion_labellings(e):
    labels = construct_labelling_quaternion(e)
    n = 2 ** (e + 1)
    group = make_quaternion(n)
    graph = build_power_graph(group)
    assert validate_labelling(graph, labels) == []
    assert labels.span == n + 1
    assert labels.labels[group.identity] == -2
    z = 2 ** (e - 1)  # the unique involution x^(2^(e-1))
    assert group.element_order(z) == 2
    assert labels.labels[z] == n - 1


def test_quaternion_needs_e_at_least_two():
    with pytest.raises(ParameterTooSmallError):
        construct_labelling_quaternion(1)


# ---------------------------------------------------------------------------
# family recognition


@pytest.mark.parametrize("group,family", [
    (make_cyclic(1), "cyclic"),
    (make_cyclic(16), "cyclic"),
    (make_cyclic(27), "cyclic"),
    (make_quaternion(8), "quaternion"),
    (make_quaternion(32), "quaternion"),
    (make_dihedral(8), "dihedral"),
    (make_dihedral(32), "dihedral"),
    (make_semidihedral(16), "semidihedral"),
    (make_semidihedral(64), "semidihedral"),
    (make_elementary_abelian(2, 2), "general"),
    (make_heisenberg(3), "general"),
    (make_direct_product(make_cyclic(2), make_cyclic(8)), "general"),
], ids=lambda v: v if isinstance(v, str) else v.family_tag + str(v.order))
def test_recognize_family_on_canonical_tables(group, family):
    assert recognize_family(group) == family


def test_recognize_family_rejects_non_p_groups():
    with pytest.raises(NotPGroupError):
        recognize_family(make_cyclic(6))


def _shuffled_copy(group, seed):
    """The same group on scrambled element indices (identity may move)."""
    rnd = random.Random(seed)
    sigma = list(range(group.order))
    rnd.shuffle(sigma)
    mul = [[0] * group.order for _ in range(group.order)]
    for a in range(group.order):
        for b in range(group.order):
            mul[sigma[a]][sigma[b]] = sigma[group.compose(a, b)]
    return validate_group(mul, identity=sigma[group.identity],
                          family_tag="scrambled")


@pytest.mark.parametrize("maker,family", [
    (lambda: make_dihedral(16), "dihedral"),
    (lambda: make_semidihedral(16), "semidihedral"),
    (lambda: make_quaternion(16), "quaternion"),
    (lambda: make_cyclic(8), "cyclic"),
    (lambda: make_direct_product(make_cyclic(4), make_cyclic(4)), "general"),
], ids=["d16", "sd16", "q16", "c8", "c4xc4"])
def test_recognition_is_invariant_under_relabelling(maker, family):
    for seed in (3, 11):
        assert recognize_family(_shuffled_copy(maker(), seed)) == family


def test_scrambled_dihedral_still_gets_a_constructive_certificate():
    group = _shuffled_copy(make_dihedral(16), 5)
    cert = lambda_p_group(group)
    assert cert.value == 16
    assert cert.construction.kind == "involution-alternation"
    assert validate_labelling(build_power_graph(group), cert.witness) == []


# ---------------------------------------------------------------------------
# the dispatcher


def test_dispatcher_on_the_trivial_group():
    cert = lambda_p_group(make_cyclic(1))
    assert cert.value == 0
    assert cert.evidence.kind == "degenerate"
    assert cert.construction.kind == "degenerate"


def test_dispatcher_rejects_non_p_groups():
    with pytest.raises(NotPGroupError):
        lambda_p_group(make_cyclic(12))


@pytest.mark.parametrize("group,value,kind", [
    (make_cyclic(9), 16, "cyclic-even-spacing"),
    (make_quaternion(8), 9, "restricted-complement-path"),
    (make_dihedral(8), 8, "involution-alternation"),
    (make_semidihedral(16), 16, "seed-alternation"),
    (make_elementary_abelian(3, 2), 9, "class-interleaving-descent"),
    (make_heisenberg(3), 27, "class-interleaving-descent"),
], ids=["c9", "q8", "d8", "sd16", "elemab3^2", "heis3"])
def test_dispatcher_routes_and_values(group, value, kind):
    cert = lambda_p_group(group)
    assert cert.value == value
    assert cert.method == "constructive"
    assert cert.construction.kind == kind
    graph = build_power_graph(group)
    assert validate_labelling(graph, cert.witness) == []
    assert cert.witness.span == value


def test_dispatcher_evidence_kinds():
    assert lambda_p_group(make_cyclic(4)).evidence.kind == "complete-graph-bound"
    q8 = lambda_p_group(make_quaternion(8))
    assert q8.evidence.kind == "universal-nonidentity-vertex"
    assert q8.evidence.vertex == 2
    assert lambda_p_group(make_dihedral(8)).evidence.kind == "power-graph-bound"


def test_descent_certificate_reports_non_adjacent_joints():
    group = make_direct_product(make_cyclic(3), make_cyclic(9))
    graph = build_power_graph(group)
    cert = lambda_p_group(group)
    assert cert.construction.kind == "class-interleaving-descent"
    joints = cert.construction.joints
    assert joints  # at least one level junction for a two-level group
    path = cert.construction.path
    for a, b in joints:
        assert not graph.adjacent(a, b)
        assert path.index(b) == path.index(a) + 1


def test_dispatcher_path_matches_witness_order():
    group = make_dihedral(16)
    cert = lambda_p_group(group)
    path = cert.construction.path
    labels = cert.witness.labels
    assert [labels[v] for v in path] == list(range(len(path)))
