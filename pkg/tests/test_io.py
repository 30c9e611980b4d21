from __future__ import annotations

import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tcx import SearchBudget, normalize, scat, tc, verify_cover
from tcx.errors import EmptyInput, ParseError
from tcx.invariants import BoundResult
from tcx.io import (
    bound_to_json,
    certificate_from_json,
    certificate_to_json,
    fixture_path,
    load_fixture,
    parse_text,
    read_sc,
    serialize,
)

FAST = SearchBudget(max_states=100_000, max_millis=20_000)

names = st.sampled_from(list("abcdefg"))
facet_lists = st.lists(st.lists(names, min_size=1, max_size=4, unique=True), min_size=1, max_size=6)


def facet_sets(K):
    return {frozenset(K.names(f)) for f in K.facets}


class TestParse:
    def test_hollow_triangle(self):
        K, _ = parse_text("a b\nb c\na c\n")
        assert K.labels == ("a", "b", "c") and len(K.facets) == 3

    def test_absorption(self):
        K, _ = parse_text("a b c\na b\n")
        assert facet_sets(K) == {frozenset("abc")}

    def test_comments_and_blank_lines(self):
        K, meta = parse_text("# title\n\na b  # edge\n#@ source: test\n")
        assert facet_sets(K) == {frozenset("ab")}
        assert meta == {"source": "test"}

    def test_vertex_order_metadata(self):
        K, _ = parse_text("#@ vertices: c b a\na b\nb c\n")
        assert K.labels == ("c", "b", "a")
        with pytest.raises(ParseError):
            parse_text("#@ vertices: a\na b\n")

    def test_bad_metadata_has_line_number(self):
        with pytest.raises(ParseError) as info:
            parse_text("a b\n#@ nonsense\n")
        assert info.value.line == 2

    def test_bad_token(self):
        with pytest.raises(ParseError) as info:
            parse_text("a b\nc {d}\n")
        assert info.value.line == 2

    def test_empty(self):
        with pytest.raises(EmptyInput):
            parse_text("# nothing\n\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            read_sc(tmp_path / "absent.sc")

    def test_figure1(self, figure1):
        assert figure1.n_vertices == 6 and len(figure1.facets) == 7
        _, meta = read_sc(fixture_path("figure1.sc"))
        assert "realization" in meta


class TestSerialize:
    @given(facet_lists)
    def test_round_trip(self, facets):
        K = normalize(facets)
        L, _ = parse_text(serialize(K))
        assert L == K

    def test_sorted_output(self):
        # facets come out sorted by vertex position, so output is independent of input order
        K = normalize([["b", "c"], ["a", "b"]])
        L = normalize([["a", "b"], ["b", "c"]])
        body = [x for x in serialize(K, "demo").splitlines() if not x.startswith("#")]
        assert body == ["b c", "b a"]
        assert parse_text(serialize(K))[0] == K
        assert sorted(parse_text(serialize(L))[0].facets) == sorted(L.facets)


class TestJson:
    def test_infinite_bound(self):
        d = bound_to_json(BoundResult("x", 1, math.inf))
        assert d["upper"] is None and d["status"] == "unknown"

    def test_certificate_round_trip(self, hollow):
        for mode, r in (("scat", scat(hollow, FAST)), (2, tc(hollow, 2, FAST))):
            data = json.loads(json.dumps(certificate_to_json(r.certificate)))
            back = certificate_from_json(data, hollow)
            assert verify_cover(hollow, mode, back)

    def test_certificate_survives_reordering(self, hollow):
        r = scat(hollow, FAST)
        data = certificate_to_json(r.certificate)
        L = normalize([["c", "a"], ["b", "c"], ["b", "a"]])
        assert L.labels != hollow.labels
        assert verify_cover(L, "scat", certificate_from_json(data, L))

    @pytest.mark.parametrize("name", ["point", "edge", "hollow_triangle", "cone", "hollow_triangle_expanded"])
    def test_fixture_round_trip(self, name):
        K = load_fixture(name)
        assert parse_text(serialize(K))[0] == K
