"""Tests for edge enumeration and the two multiplicity routes."""

import random

import pytest

from coxvar import group
from coxvar.arrangement import Arrangement, Edge
from coxvar.errors import ReflectionNotOnEdge


def arr(spec, **kw):
    return Arrangement(group(spec), **kw)


# -- separating sets ---------------------------------------------------------


def test_separating_set_metric_properties():
    a = arr("B3")
    g = a.group
    rng = random.Random(5)
    for _ in range(300):
        x, y, z = (rng.randrange(g.order) for _ in range(3))
        sxy = a.separating_set(x, y)
        syz = a.separating_set(y, z)
        sxz = a.separating_set(x, z)
        assert sxy == a.separating_set(y, x)
        # symmetric difference law: sep(x,z) = sep(x,y) XOR sep(y,z)
        assert sxz == sxy ^ syz
    for x in range(g.order):
        assert len(a.separating_set(0, x)) == int(g.length[x])


# -- edge enumeration --------------------------------------------------------


def test_edge_counts_small_groups():
    # A2: three lines plus the center
    assert len(arr("A2").relevant_edges()) == 4
    # B2: four lines plus the center
    assert len(arr("B2").relevant_edges()) == 5
    # A1xA1: two lines, the center is not relevant (reducible support)
    assert len(arr("A1xA1").relevant_edges()) == 2
    # A3: 6 hyperplanes, 4 A2-type edges, 1 center
    assert len(arr("A3").relevant_edges()) == 11


def test_edges_are_closed_reflection_sets():
    for spec in ("A3", "B3", "I2(6)", "A2xA1"):
        a = arr(spec)
        g = a.group
        D, _ = g.conj_tables
        for edge in a.relevant_edges():
            refl = set(edge.reflections)
            members = set()
            # subgroup generated by the edge reflections
            frontier = [0]
            seen = {0}
            while frontier:
                nxt = []
                for x in frontier:
                    for t in refl:
                        y = g.mul(x, int(g.refl_ids[t]))
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            members = seen
            inside = {t for t in range(g.num_reflections)
                      if int(g.refl_ids[t]) in members}
            assert inside == refl


def test_edge_witness_conjugates_class_onto_edge():
    for spec in ("A3", "B3", "D4"):
        a = arr(spec)
        g = a.group
        D, _ = g.conj_tables
        for edge in a.relevant_edges():
            TJ = a.parabolic(edge.class_J).T_J
            img = {int(D[edge.witness, t]) for t in TJ}
            assert img == set(edge.reflections)


def test_edge_orbit_sizes_match_normalizer_index():
    for spec in ("A4", "B3", "H3"):
        a = arr(spec)
        g = a.group
        by_class = {}
        for e in a.relevant_edges():
            by_class.setdefault(e.class_J, []).append(e)
        for J, edges in by_class.items():
            pd = a.parabolic(J)
            assert len(edges) == g.order // pd.normalizer_order


# -- chamber faces span relevant edges (completeness) ------------------------


@pytest.mark.parametrize("spec", ["A2", "A3", "B2", "B3", "I2(7)",
                                  "A2xA1", "D4"])
def test_every_chamber_face_spans_a_relevant_edge(spec):
    a = arr(spec)
    g = a.group
    for x in range(g.order):
        for t in g.inversion_set(x) | (set(range(g.num_reflections)) -
                                       g.inversion_set(x)):
            e = a.minimal_edge_through_chamber_face(x, t)
            assert t in e.reflections


@pytest.mark.parametrize("spec", ["A5", "D5", "H3", "H4"])
def test_chamber_faces_sampled_large_groups(spec):
    a = arr(spec)
    g = a.group
    rng = random.Random(17)
    for _ in range(2500):
        x = rng.randrange(g.order)
        t = rng.randrange(g.num_reflections)
        e = a.minimal_edge_through_chamber_face(x, t)
        assert t in e.reflections


# -- chamber-counting oracle -------------------------------------------------


def test_count_L_examples():
    a = arr("A2")
    edges = a.relevant_edges()
    hyper = [e for e in edges if len(e) == 1]
    center = [e for e in edges if len(e) == 3]
    assert len(hyper) == 3 and len(center) == 1
    for e in hyper:
        assert a.count_L(e, e.reflections[0]) == 4
    assert a.count_L(center[0], 0) == 2
    # H3 hyperplane: l = 12, so 24 chambers
    h = arr("H3")
    e0 = [e for e in h.relevant_edges() if len(e) == 1][0]
    assert h.count_L(e0, e0.reflections[0]) == 24


def test_count_L_rejects_foreign_reflection():
    a = arr("A2")
    e = [e for e in a.relevant_edges() if len(e) == 1][0]
    missing = [t for t in range(3) if t not in e.reflections][0]
    with pytest.raises(ReflectionNotOnEdge):
        a.count_L(e, missing)


def test_oracle_invariant_across_edge_cosets():
    # all edges in one class orbit get the same oracle count
    for spec in ("A3", "B3", "I2(8)"):
        a = arr(spec)
        by_class = {}
        for e in a.relevant_edges():
            by_class.setdefault(e.class_J, set()).add(
                a.multiplicity_oracle(e))
        for J, counts in by_class.items():
            assert len(counts) == 1


# -- formula vs oracle -------------------------------------------------------


@pytest.mark.parametrize("spec", ["A2", "A3", "A4", "B2", "B3", "D4",
                                  "H3", "I2(5)", "I2(6)", "I2(9)",
                                  "A2xA1", "B2xA1"])
def test_formula_matches_oracle(spec):
    a = arr(spec)
    for rep in a.multiplicity_reports(with_oracle=True):
        assert rep.match, (spec, rep.class_J, rep.l_formula, rep.l_oracle)


def test_formula_rejects_reducible_class():
    a = arr("A3")
    with pytest.raises(ValueError):
        a.multiplicity_formula((0, 2))


def test_multiplicity_report_values_H3():
    got = {(r.label, r.ingredients, r.l_formula)
           for r in arr("H3").multiplicity_reports()}
    assert got == {
        ("A1", (1, 3, 4, 1), 12),
        ("A2", (1, 1, 2, 1), 2),
        ("I2(5)", (3, 1, 2, 1), 6),
        ("H3", (8, 1, 1, 4), 32),
    }


def test_floor_ambient_flag_changes_nothing_for_H3_and_B3():
    for spec in ("H3", "B3"):
        wj = {(r.label, r.l_formula)
              for r in arr(spec).multiplicity_reports()}
        w = {(r.label, r.l_formula)
             for r in arr(spec, floor_ambient="W").multiplicity_reports()}
        assert wj == w


# -- explicit chamber-set decomposition --------------------------------------


@pytest.mark.parametrize("spec,J", [("A3", (0, 1)), ("A3", (0, 1, 2)),
                                    ("B3", (0, 1)), ("B3", (0, 1, 2)),
                                    ("H3", (0, 1))])
def test_decompose_L_reproduces_chamber_set(spec, J):
    a = arr(spec)
    g = a.group
    pd = a.parabolic(J)
    edge = Edge(reflections=tuple(int(t) for t in pd.T_J),
                class_J=tuple(J), witness=0, coset_id=0)
    Jmask = sum(1 << s for s in J)
    full = [t for t in edge.reflections
            if int(g.refl_support[t]) == Jmask]
    assert full
    for t in full[:3]:
        blocks, union = a.decompose_L(J, t)
        assert union == a.chambers_spanning(edge, t)
        assert sum(len(b) for b in blocks.values()) == len(union)
        # block count and sizes mirror the formula ingredients
        floor = g.floor_class(int(t))
        assert len(blocks) == len(pd.coxeter_class) * len(floor)
    # reflections of smaller support are rejected
    small = [t for t in edge.reflections
             if int(g.refl_support[t]) != Jmask]
    if small:
        with pytest.raises(ValueError):
            a.decompose_L(J, small[0])
