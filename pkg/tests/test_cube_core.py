from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cubelink.cube_core import (
    MAX_DIM,
    CubeGraph,
    Face,
    adjacent,
    associated_pairs,
    check_dim,
    check_vertex,
    delete_coordinate,
    distance,
    face_vertices,
    facet,
    format_face,
    format_vertex,
    free_direction,
    insert_coordinate,
    link_graph,
    neighbors,
    opposite,
    parse_face,
    parse_vertex,
    project,
    vertices,
)


class TestVertices:
    def test_dimension_bounds(self):
        assert check_dim(1) == 1
        assert check_dim(MAX_DIM) == MAX_DIM
        with pytest.raises(ValueError):
            check_dim(0)
        with pytest.raises(ValueError):
            check_dim(MAX_DIM + 1)
        with pytest.raises(TypeError):
            check_dim("3")
        with pytest.raises(TypeError):
            check_dim(True)

    def test_vertex_range(self):
        assert list(vertices(2)) == [0, 1, 2, 3]
        with pytest.raises(ValueError):
            check_vertex(3, 8)
        with pytest.raises(ValueError):
            check_vertex(3, -1)

    def test_neighbors_ascending(self):
        assert neighbors(3, 0) == [1, 2, 4]
        assert neighbors(3, 5) == [4, 7, 1]
        # ascending by flipped coordinate, not by vertex value
        assert neighbors(2, 3) == [2, 1]

    def test_distance_and_adjacency(self):
        assert distance(0b000, 0b111) == 3
        assert distance(5, 5) == 0
        assert adjacent(0, 4)
        assert not adjacent(0, 3)
        assert not adjacent(6, 6)

    def test_opposite(self):
        assert opposite(3, 0) == 7
        assert opposite(4, 0b0101) == 0b1010
        assert opposite(3, opposite(3, 5)) == 5

    def test_parse_format_round_trip(self):
        assert parse_vertex(5, "00110") == 0b00110
        assert format_vertex(5, 0b00110) == "00110"
        # most significant coordinate first: leftmost char is bit d-1
        assert parse_vertex(3, "100") == 4
        with pytest.raises(ValueError):
            parse_vertex(3, "0101")
        with pytest.raises(ValueError):
            parse_vertex(3, "01x")


class TestFaces:
    def test_facet_contains(self):
        F = facet(2, 1)
        assert F.contains(0b100)
        assert F.contains(0b111)
        assert not F.contains(0b011)
        assert F.is_facet()
        assert F.dim(3) == 2

    def test_opposite_facet(self):
        F = facet(0, 0)
        Fo = F.opposite_facet()
        assert Fo.contains(1)
        assert not Fo.contains(0)
        assert Fo.opposite_facet() == F

    def test_two_face(self):
        F = Face(0b011, 0b001)
        assert F.contains(0b101)
        assert not F.contains(0b111)
        assert not F.is_facet()
        assert F.dim(3) == 1

    def test_face_vertices(self):
        assert sorted(face_vertices(3, facet(1, 0))) == [0, 1, 4, 5]
        full = Face(0, 0)
        assert len(list(face_vertices(3, full))) == 8

    def test_parse_format_face(self):
        F = parse_face("0*1")
        assert F.fixed_mask == 0b101
        assert F.fixed_values == 0b001
        assert format_face(3, F) == "0*1"
        assert parse_face("***").fixed_mask == 0
        with pytest.raises(ValueError):
            parse_face("01x")

    def test_project(self):
        F = facet(2, 1)
        assert project(0b011, F) == 0b111
        assert project(0b111, F) == 0b111
        with pytest.raises(ValueError):
            project(0, Face(0b011, 0))


class TestDirections:
    def test_associated_pairs(self):
        # 0 and 1 differ in coordinate 0 only, so they associate it
        assert sorted(associated_pairs(3, [0, 1, 3])) == [0, 1]
        assert associated_pairs(3, [0, 7]) == frozenset()
        assert sorted(associated_pairs(3, [0, 1, 2, 4])) == [0, 1, 2]

    def test_free_direction(self):
        assert free_direction(4, {0b0011, 0b0101}) == 0
        assert free_direction(4, {0b0000, 0b0001, 0b0010}) == 2
        assert free_direction(3, set()) == 0

    def test_free_direction_exhausted(self):
        # all three directions of Q3 associated
        with pytest.raises(ValueError):
            free_direction(3, {0, 1, 2, 4})

    def test_association_bound_small(self):
        # any nonempty Z associates at most |Z| - 1 directions
        for mask in range(1, 1 << 8):
            Z = [v for v in range(8) if (mask >> v) & 1]
            assert len(associated_pairs(3, Z)) <= len(Z) - 1


class TestCubeGraph:
    def test_plain_graph(self):
        G = CubeGraph(3)
        assert G.vertex_count == 8
        assert G.neighbors(0) == [1, 2, 4]
        assert G.has_vertex(7)
        assert not G.has_vertex(8)

    def test_removed_vertices(self):
        G = CubeGraph(3, frozenset({1}))
        assert G.vertex_count == 7
        assert G.neighbors(0) == [2, 4]
        assert not G.has_vertex(1)
        assert G.without({2}).vertex_count == 6

    def test_vertex_strings(self):
        G = CubeGraph(4)
        assert G.parse_vertex("1010") == 0b1010
        assert G.format_vertex(0b1010) == "1010"

    def test_link_graph(self):
        G = link_graph(5, 0)
        assert G.vertex_count == 30
        assert not G.has_vertex(0)
        assert not G.has_vertex(31)
        assert G.neighbors(1) == [3, 5, 9, 17]


class TestCoordinateSurgery:
    def test_delete_coordinate(self):
        # dropping coordinate 1 of 0b1011 keeps bits (0, 2, 3) -> 0b101
        assert delete_coordinate(0b1011, 1) == 0b101
        assert delete_coordinate(0b1011, 0) == 0b101
        assert delete_coordinate(0b1011, 3) == 0b011

    def test_insert_coordinate(self):
        assert insert_coordinate(0b101, 1, 1) == 0b1011
        assert insert_coordinate(0b101, 0, 0) == 0b1010
        assert insert_coordinate(0b11, 2, 0) == 0b011

    @given(st.integers(0, (1 << 6) - 1), st.integers(0, 5), st.integers(0, 1))
    def test_insert_then_delete(self, v, c, b):
        assert delete_coordinate(insert_coordinate(v, c, b), c) == v

    @given(st.integers(0, (1 << 6) - 1), st.integers(0, (1 << 6) - 1))
    def test_distance_symmetric(self, u, v):
        assert distance(u, v) == distance(v, u)
        assert (distance(u, v) == 0) == (u == v)

    @given(st.integers(0, (1 << 5) - 1))
    def test_projection_is_neighbor_or_fixed(self, v):
        F = facet(2, 1)
        p = project(v, F)
        assert F.contains(p)
        assert p == v or adjacent(v, p)
