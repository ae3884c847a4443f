from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from cubelink.cube_core import CubeGraph, facet, link_graph, opposite
from cubelink.path_oracle import Pairing, validate_linkage
from cubelink.linkage_engine import (
    UnsupportedInstanceError,
    base_solve,
    detect_config_3F,
    scenario3_context,
    solve_avoiding,
    solve_link,
    solve_linkage,
    solve_strong,
)


def check(res):
    report = validate_linkage(res.host, res.pairing, res.linkage)
    assert report.ok, report
    return res


class TestDispatch:
    """Each construction leaves its label in the trace; outputs are pinned
    because the whole pipeline is deterministic."""

    def test_trivial_pair(self):
        res = check(solve_linkage(5, Pairing(((6, 25),))))
        assert res.trace == ("Q5:trivial_pair",)

    def test_base_case(self):
        res = check(solve_linkage(4, Pairing(((0, 15), (5, 10)))))
        assert res.trace == ("Q4:base",)

    def test_scenario1_all_antipodal(self):
        res = check(solve_linkage(5, Pairing(((0, 31), (1, 30), (2, 29)))))
        assert res.trace == ("Q5:scenario1", "Q4:trivial_pair", "Q4:base")
        assert res.linkage == [
            [0, 8, 9, 11, 3, 19, 27, 31],
            [1, 17, 16, 18, 26, 30],
            [2, 6, 4, 5, 13, 29],
        ]

    def test_scenario2_common_facet(self):
        res = check(solve_linkage(5, Pairing(((0, 3), (1, 2), (4, 8)))))
        assert res.trace == ("Q5:scenario2", "Q4:base")
        assert res.linkage == [
            [0, 16, 17, 19, 3],
            [1, 5, 7, 6, 2],
            [4, 20, 21, 23, 22, 18, 26, 24, 8],
        ]

    def test_scenario3_general(self):
        res = check(solve_linkage(5, Pairing(((0, 31), (1, 30), (2, 28)))))
        assert res.trace == ("Q5:scenario3", "Q4:base")
        assert res.linkage == [
            [0, 4, 5, 7, 3, 11, 9, 25, 27, 19, 23, 31],
            [1, 17, 21, 29, 13, 15, 14, 30],
            [2, 6, 22, 20, 28],
        ]

    def test_even_reduction(self):
        res = check(solve_linkage(6, Pairing(((0, 63), (1, 62), (2, 61)))))
        assert res.trace == ("Q6:even_menger", "Q5:scenario1", "Q4:trivial_pair", "Q4:base")
        assert res.linkage == [
            [0, 8, 9, 11, 3, 19, 27, 31, 63],
            [1, 17, 16, 18, 26, 30, 62],
            [2, 6, 4, 5, 13, 29, 61],
        ]

    def test_projection_on_slack(self):
        res = check(solve_linkage(6, Pairing(((0, 63), (5, 58)))))
        assert res.trace == ("Q6:projection", "Q5:projection", "Q4:base")
        assert res.linkage == [
            [0, 8, 12, 28, 20, 16, 48, 52, 60, 62, 63],
            [5, 4, 36, 32, 40, 56, 58],
        ]

    def test_orientation_matches_pairs(self):
        for pairs in [((9, 20), (3, 30)), ((20, 9), (30, 3))]:
            res = check(solve_linkage(5, Pairing(pairs)))
            for path, (s, t) in zip(res.linkage, pairs):
                assert path[0] == s and path[-1] == t

    def test_high_dimension_smoke(self):
        res = check(solve_linkage(9, Pairing(
            ((0, 511), (1, 510), (2, 509), (4, 507), (8, 503)))))
        assert res.trace[0].startswith("Q9:")


class TestPreconditions:
    def test_q3_two_pairs_unsupported(self):
        with pytest.raises(UnsupportedInstanceError) as info:
            solve_linkage(3, Pairing(((0, 3), (1, 2))))
        cert = info.value.certificate
        assert cert.face == facet(2, 0)
        assert cert.witness_terminal == 0

    def test_pair_budget(self):
        with pytest.raises(ValueError):
            solve_linkage(4, Pairing(((0, 15), (1, 14), (2, 13))))
        with pytest.raises(ValueError):
            solve_linkage(5, Pairing(((0, 31), (1, 30), (2, 29), (4, 27))))

    def test_terminal_range(self):
        with pytest.raises(ValueError):
            solve_linkage(3, Pairing(((0, 9),)))

    def test_avoid_budget(self):
        with pytest.raises(ValueError):
            solve_avoiding(5, Pairing(((0, 31), (1, 30), (2, 29))), {4})
        with pytest.raises(ValueError):
            solve_avoiding(4, Pairing(((0, 15), (1, 14))), {2, 3})

    def test_avoid_terminal_overlap(self):
        with pytest.raises(ValueError):
            solve_avoiding(5, Pairing(((0, 31),)), {31})

    def test_avoid_small_dimension_single_pair(self):
        res = check(solve_avoiding(3, Pairing(((0, 3),)), {5}))
        assert res.trace == ("Q3:trivial_pair",)
        assert res.linkage == [[0, 1, 3]]
        assert 5 not in res.linkage[0]

    def test_avoid_projection(self):
        res = check(solve_avoiding(5, Pairing(((0, 31), (3, 28))), {7}))
        assert res.trace == ("Q5:projection", "Q4:base")
        assert all(7 not in p for p in res.linkage)

    def test_base_solve_rejects_large_dimension(self):
        with pytest.raises(ValueError):
            base_solve(CubeGraph(5), Pairing(((0, 31),)))


class TestConfig3F:
    BAD = [
        ((0, 3), (1, 2)),
        ((0, 5), (1, 4)),
        ((0, 6), (2, 4)),
        ((1, 7), (3, 5)),
        ((2, 7), (3, 6)),
        ((4, 7), (5, 6)),
    ]

    def test_detects_all_blocked_pairings(self):
        for pairs in self.BAD:
            cert = detect_config_3F(Pairing(pairs))
            assert cert is not None
            # the witness terminal and its partner sit on the named 2-face,
            # and the other pair straddles it
            assert cert.witness_terminal in {v for p in pairs for v in p}
            assert cert.face.dim(3) == 2

    def test_clean_pairings_pass(self):
        assert detect_config_3F(Pairing(((0, 6), (3, 5)))) is None
        assert detect_config_3F(Pairing(((0, 7), (1, 6)))) is None

    def test_frozen_certificate(self):
        cert = detect_config_3F(Pairing(((0, 3), (1, 2))))
        assert cert.face == facet(2, 0)
        assert cert.witness_terminal == 0

    def test_matches_exact_search_everywhere(self):
        from cubelink.certifier import exhaustive_instances
        from cubelink.path_oracle import UNLINKED, decide_linked

        for inst in exhaustive_instances("cube:3", 2):
            blocked = decide_linked(CubeGraph(3), inst.pairing).status == UNLINKED
            assert (detect_config_3F(inst.pairing) is not None) == blocked


class TestScenario3Context:
    def test_frozen_fields(self):
        ctx = scenario3_context(5, Pairing(((0, 31), (1, 30), (2, 28))))
        assert ctx.d == 5
        assert ctx.first == 2
        assert ctx.face == facet(0, 0)
        assert ctx.rho == {0: 31, 31: 0, 1: 30, 30: 1, 2: 28, 28: 2}
        assert ctx.omega == {0: 4, 30: 14}
        assert ctx.X_F == frozenset({0, 30})
        assert ctx.X_beta == (0, 30)
        assert ctx.X_alpha == frozenset()
        assert ctx.S == frozenset()

    def test_omega_lands_in_face_near_source(self):
        ctx = scenario3_context(7, Pairing(
            ((0, 127), (1, 126), (2, 124), (4, 120))))
        for x, w in ctx.omega.items():
            assert ctx.face.contains(w)
            assert w == x or bin(w ^ x).count("1") == 1

    def test_rejects_all_antipodal(self):
        with pytest.raises(ValueError):
            scenario3_context(5, Pairing(((0, 31), (1, 30), (2, 29))))

    def test_rejects_common_facet(self):
        with pytest.raises(ValueError):
            scenario3_context(5, Pairing(((0, 3), (1, 2), (4, 8))))


class TestStrong:
    def test_extra_pair_route(self):
        res = check(solve_strong(5, Pairing(((0, 31), (3, 28))), 7))
        assert res.trace == ("Q5:strong_extra_pair", "Q5:scenario3", "Q4:base")
        assert all(7 not in p for p in res.linkage)
        assert res.linkage == [
            [0, 4, 6, 14, 10, 8, 24, 26, 30, 31],
            [3, 2, 18, 16, 20, 28],
        ]

    def test_projection_route(self):
        res = check(solve_strong(6, Pairing(((0, 63), (5, 58), (9, 54))), 17))
        assert res.trace == ("Q6:strong_projection", "Q5:scenario1",
                             "Q4:trivial_pair", "Q4:base")
        assert all(17 not in p for p in res.linkage)

    def test_host_excludes_forbidden(self):
        res = solve_strong(5, Pairing(((0, 31), (3, 28))), 7)
        assert res.host.removed == frozenset({7})

    def test_forbidden_terminal_rejected(self):
        with pytest.raises(ValueError):
            solve_strong(5, Pairing(((0, 31), (3, 7))), 3)

    def test_pair_bound_is_floor_half(self):
        with pytest.raises(ValueError):
            solve_strong(5, Pairing(((0, 31), (3, 7), (9, 22))), 12)
        check(solve_strong(7, Pairing(((0, 127), (3, 124), (9, 118))), 12))


class TestLink:
    def test_single_pair_bfs(self):
        res = check(solve_link(6, 0, Pairing(((3, 48),))))
        assert res.trace == ("Q6:link_bfs",)
        assert res.linkage == [[3, 1, 17, 16, 48]]

    def test_small_dimension_base(self):
        res = check(solve_link(5, 0, Pairing(((1, 2), (4, 8)))))
        assert res.trace == ("Q5:link_base",)
        assert res.linkage == [[1, 3, 2], [4, 5, 7, 6, 14, 10, 8]]

    def test_case_two_sides(self):
        res = check(solve_link(6, 0, Pairing(((3, 48), (5, 40), (6, 33)))))
        assert res.trace == ("Q6:link_case2", "Q5:scenario3", "Q4:base")
        assert res.linkage == [
            [3, 1, 17, 16, 48],
            [5, 4, 12, 14, 10, 2, 18, 22, 30, 26, 58, 42, 40],
            [6, 38, 34, 32, 33],
        ]

    def test_case_one_side_with_detour(self):
        res = check(solve_link(6, 0, Pairing(((51, 33), (43, 27), (39, 25)))))
        assert res.trace == ("Q6:link_case1", "Q5:scenario3", "Q4:base",
                             "Q6:link_detour")
        assert res.linkage == [
            [51, 35, 33],
            [43, 47, 15, 7, 5, 13, 45, 37, 53, 21, 23, 31, 27],
            [39, 55, 54, 52, 60, 61, 29, 25],
        ]

    def test_case_two_sides_tail_fallback(self):
        # instances picked to drive the guide vertex back onto the first
        # source, forcing the direct tail route instead of the lifted one
        for apex, pairs in [
            (47, ((45, 58), (31, 52), (59, 56))),
            (43, ((40, 36), (51, 21), (29, 62))),
            (57, ((63, 62), (37, 16), (52, 25))),
        ]:
            res = check(solve_link(6, apex, Pairing(pairs)))
            assert res.trace[0] == "Q6:link_case2"

    def test_avoids_apex_and_antipode(self):
        apex = 9
        res = check(solve_link(6, apex, Pairing(((3, 48), (5, 40), (6, 33)))))
        banned = {apex, opposite(6, apex)}
        assert all(not (set(p) & banned) for p in res.linkage)
        assert res.host.removed == frozenset(banned)

    def test_host_is_link_graph(self):
        res = solve_link(6, 0, Pairing(((3, 48),)))
        assert res.host == link_graph(6, 0)

    def test_dimension_and_bound_errors(self):
        with pytest.raises(ValueError):
            solve_link(4, 0, Pairing(((1, 2), (4, 8))))
        with pytest.raises(ValueError):
            solve_link(6, 0, Pairing(((1, 2), (4, 8), (16, 32), (3, 5))))
        with pytest.raises(ValueError):
            solve_link(6, 0, Pairing(((0, 3),)))
        with pytest.raises(ValueError):
            solve_link(6, 0, Pairing(((63, 3),)))


class TestEngineProperties:
    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_random_instances_validate(self, data):
        d = data.draw(st.integers(5, 7))
        k = data.draw(st.integers(1, (d + 1) // 2))
        terms = data.draw(st.lists(
            st.integers(0, (1 << d) - 1), min_size=2 * k, max_size=2 * k,
            unique=True))
        Y = Pairing(tuple((terms[2 * i], terms[2 * i + 1]) for i in range(k)))
        check(solve_linkage(d, Y))

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_deterministic(self, data):
        terms = data.draw(st.lists(
            st.integers(0, 63), min_size=6, max_size=6, unique=True))
        Y = Pairing(((terms[0], terms[1]), (terms[2], terms[3]),
                     (terms[4], terms[5])))
        a = solve_linkage(6, Y)
        b = solve_linkage(6, Y)
        assert a.linkage == b.linkage and a.trace == b.trace

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_strong_random(self, data):
        d = data.draw(st.integers(5, 7))
        k = d // 2
        picks = data.draw(st.lists(
            st.integers(0, (1 << d) - 1), min_size=2 * k + 1,
            max_size=2 * k + 1, unique=True))
        x = picks[-1]
        Y = Pairing(tuple((picks[2 * i], picks[2 * i + 1]) for i in range(k)))
        res = check(solve_strong(d, Y, x))
        assert all(x not in p for p in res.linkage)


def test_solve_result_json_shape():
    res = solve_linkage(4, Pairing(((0, 15),)))
    obj = res.to_json()
    assert obj["host"] == {"type": "cube", "d": 4, "forbidden": []}
    assert obj["pairs"] == [["0000", "1111"]]
    assert obj["paths"][0][0] == "0000"
    assert obj["scenario_trace"] == ["Q4:trivial_pair"]
