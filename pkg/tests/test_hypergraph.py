import csv
import io
import itertools
import json
from math import comb

import numpy as np
import pytest

from ahg.algebra import associates, builtin_order5_loop, dihedral_group, loop_from_group
from ahg.errors import DomainError
from ahg.hypergraph import all_pairs_distances, build, degrees, distance, export, from_edges

from oracles import associating_triples_oracle


def test_group_has_all_triples():
    g, _ = dihedral_group(3)
    h = build(loop_from_group(g))
    assert len(h.directed_edges) == 6 * comb(6, 3)
    assert len(h.support_edges) == comb(6, 3)
    assert (h.multiplicity == 6).all()


def test_group_degrees():
    # each vertex fills one of 3 slots; the other two are an ordered distinct pair
    g, _ = dihedral_group(3)
    h = build(loop_from_group(g))
    m = 6
    d = degrees(h)
    assert (d.directed_degree == 3 * (m - 1) * (m - 2)).all()
    counted = [sum(v in e for e in itertools.permutations(range(m), 3)) for v in range(m)]
    assert d.directed_degree.tolist() == counted


def test_m_d3_edge_count(moufang):
    _, _, loop, h = moufang(3)
    assert len(h.directed_edges) == len(associating_triples_oracle(loop.table)) == 564


def test_order5_edges():
    h = build(builtin_order5_loop())
    edges = {tuple(e) for e in h.directed_edges.tolist()}
    assert (1, 2, 3) in edges
    assert (1, 3, 2) not in edges


@pytest.mark.parametrize("n", [3, 4])
def test_full_rescan(moufang, n):
    _, _, loop, h = moufang(n)
    edges = {tuple(e) for e in h.directed_edges.tolist()}
    for x, y, z in itertools.permutations(range(loop.order), 3):
        assert ((x, y, z) in edges) == associates(loop, x, y, z)
    assert h.directed_edges.tolist() == sorted(h.directed_edges.tolist())


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_structure_invariants(moufang, n):
    _, _, _, h = moufang(n)
    assert h.vertex_count == 4 * n
    assert h.multiplicity.sum() == len(h.directed_edges)
    assert ((h.multiplicity >= 1) & (h.multiplicity <= 6)).all()
    sets = {tuple(sorted(e)) for e in h.directed_edges.tolist()}
    assert sets == {tuple(e) for e in h.support_edges.tolist()}
    assert len(sets) == len(h.support_edges)
    d = degrees(h)
    assert d.directed_degree.sum() == 3 * len(h.directed_edges)
    assert d.support_degree.sum() == 3 * len(h.support_edges)
    assert (d.edge_sizes == 3).all()


def test_no_edge_hypergraph():
    h = from_edges(4, [])
    d = degrees(h)
    assert not d.directed_degree.any() and not d.support_degree.any()
    assert distance(h, 0, 1) is None


def test_distance_basic():
    h = from_edges(5, [(0, 1, 2), (2, 3, 4)])
    assert distance(h, 0, 1) == 1
    assert distance(h, 0, 3) == 2
    with pytest.raises(DomainError):
        distance(h, 2, 2)
    with pytest.raises(DomainError):
        distance(h, 0, 9)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_all_pairs_distance_one(moufang, n):
    _, _, _, h = moufang(n)
    d = all_pairs_distances(h)
    off = d[~np.eye(h.vertex_count, dtype=bool)]
    assert (off == 1).all()
    assert distance(h, 0, h.vertex_count - 1) == 1


def test_from_edges_validation():
    with pytest.raises(DomainError):
        from_edges(3, [(0, 1, 1)])
    with pytest.raises(DomainError):
        from_edges(3, [(0, 1, 3)])


class TestExport:
    def test_edge_json(self, moufang):
        _, _, _, h = moufang(3)
        raw = export(h, "edge-json")
        assert b'"vertex_count": 12' in raw
        doc = json.loads(raw)
        assert doc["n"] == 3
        assert len(doc["vertices"]) == 12
        assert len(doc["directed_edges"]) == 564

    def test_incidence_csv(self, moufang):
        _, _, _, h = moufang(3)
        rows = list(csv.reader(io.StringIO(export(h, "incidence-csv").decode())))
        assert rows[0][0] == "vertex" and rows[0][1] == "e0"
        assert len(rows) == 1 + 12
        assert [r[0] for r in rows[1:]] == list(h.names)
        mat = np.array([[int(x) for x in r[1:]] for r in rows[1:]])
        assert mat.shape == (12, len(h.support_edges))
        assert (mat.sum(axis=0) == 3).all()

    def test_support_list(self, moufang):
        _, _, _, h = moufang(3)
        lines = export(h, "support-list").decode().splitlines()
        assert len(lines) == len(h.support_edges)
        a, b, c, mult = map(int, lines[0].split())
        assert (a, b, c) == tuple(h.support_edges[0]) and mult == h.multiplicity[0]

    @pytest.mark.parametrize("fmt", ["edge-json", "incidence-csv", "support-list"])
    def test_deterministic(self, fmt):
        g, _ = dihedral_group(3)
        from ahg.algebra import moufang_extension

        a = export(build(moufang_extension(g)), fmt)
        b = export(build(moufang_extension(dihedral_group(3)[0])), fmt)
        assert a == b

    def test_backends_give_same_bytes(self, monkeypatch):
        from ahg import _accel
        from ahg.algebra import moufang_extension

        loop = moufang_extension(dihedral_group(4)[0])
        out = {}
        for flag in (True, False):
            monkeypatch.setattr(_accel, "USE_NUMBA", flag)
            out[flag] = [export(build(loop), f) for f in ("edge-json", "incidence-csv", "support-list")]
        assert out[True] == out[False]

    def test_unknown_format(self, moufang):
        with pytest.raises(DomainError, match="unknown export format"):
            export(moufang(3)[3], "xml")
