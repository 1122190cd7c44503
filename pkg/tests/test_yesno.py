"""Two-stage filter construction, queries, and serialization."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yesnobf.bitcore import BitVector, BloomFilter, HashFamily, is_subset
from yesnobf.yesno import (
    ElementSketch,
    QueryResult,
    Sketcher,
    YesNoFilter,
    YesNoParams,
    build,
    sketch,
)

FIXTURE_SEED = 0
FIXTURE_ELEMENT = 5063
FIXTURE_PARAMS = YesNoParams.of(p=13, q=2, r=2, k=3, k_prime=1)


def test_params_arithmetic_and_fields():
    params = YesNoParams.of(p=160, q=32, r=3, k=4, k_prime=5)
    assert params.m == 160 + 32 * 3
    assert (params.p, params.q, params.r) == (160, 32, 3)
    assert not params.allow_false_negatives


@pytest.mark.parametrize("kwargs", [
    dict(m=255, p=160, q=32, r=3, k=4, k_prime=5),   # m != p + q*r
    dict(m=256, p=0, q=128, r=2, k=4, k_prime=5),    # empty yes-filter
    dict(m=256, p=160, q=32, r=-1, k=4, k_prime=5),
    dict(m=192, p=64, q=64, r=2, k=4, k_prime=5),    # q must stay below p
    dict(m=256, p=160, q=32, r=3, k=0, k_prime=5),
    dict(m=256, p=160, q=32, r=3, k=4, k_prime=0),   # r > 0 needs hashes
    dict(m=256, p=160, q=32, r=3, k=4, k_prime=-1),
])
def test_params_rejects_bad_geometry(kwargs):
    with pytest.raises(ValueError):
        YesNoParams(**kwargs)


def test_pinned_sketch():
    s = sketch(FIXTURE_PARAMS, FIXTURE_ELEMENT, seed=FIXTURE_SEED)
    assert s.yes_part.positions() == (1, 4, 11)
    assert s.no_part.positions() == (1,)
    assert len(s.yes_part) == FIXTURE_PARAMS.p
    assert len(s.no_part) == FIXTURE_PARAMS.q


def test_sketcher_matches_module_helper():
    sk = Sketcher(FIXTURE_PARAMS, seed=FIXTURE_SEED)
    direct = sk.sketch(FIXTURE_ELEMENT)
    helper = sketch(FIXTURE_PARAMS, FIXTURE_ELEMENT, seed=FIXTURE_SEED)
    assert direct.yes_part == helper.yes_part
    assert direct.no_part == helper.no_part


def _sk(p, q, yes_bits, no_bits):
    return ElementSketch(BitVector.from_positions(p, yes_bits),
                         BitVector.from_positions(q, no_bits))


class TestHandWalkedConstruction:
    """Sketches crafted bit by bit so every placement is checkable by hand."""

    PARAMS = YesNoParams.of(p=8, q=4, r=2, k=2, k_prime=2)

    def _build(self):
        p, q = 8, 4
        members = [_sk(p, q, (0, 1), (0, 1)), _sk(p, q, (2, 3), (2, 3))]
        candidates = [
            _sk(p, q, (0, 2), (0, 2)),  # placed in no-filter 0
            _sk(p, q, (1, 3), (1, 3)),  # 0 would swallow member 0 -> filter 1
            _sk(p, q, (0, 3), (0, 1)),  # both filters guarded -> unmitigated
            _sk(p, q, (4, 5), (0, 1)),  # fails the yes stage, not an FP
            _sk(p, q, (1, 2), (0, 2)),  # fits filter 0 without new bits
        ]
        return YesNoFilter.build_from_sketches(self.PARAMS, members, candidates)

    def test_report(self):
        _, report = self._build()
        assert (report.n, report.t) == (2, 5)
        assert report.f_count == 4
        assert report.r_count == 3
        assert report.unmitigated == 1
        assert report.per_no_filter_load == (2, 1)

    def test_final_bit_patterns(self):
        filt, _ = self._build()
        assert filt.yes_filter.positions() == (0, 1, 2, 3)
        assert filt.no_filters[0].positions() == (0, 2)
        assert filt.no_filters[1].positions() == (1, 3)

    def test_query_outcomes(self):
        filt, _ = self._build()
        p, q = 8, 4
        assert filt.query_sketch(_sk(p, q, (0, 1), (0, 1))) is QueryResult.POSITIVE
        assert filt.query_sketch(_sk(p, q, (4, 5), (0, 1))) is QueryResult.NEGATIVE_YES_STAGE
        assert filt.query_sketch(_sk(p, q, (0, 2), (0, 2))) is QueryResult.NEGATIVE_NO_STAGE
        # the unmitigated false positive still answers yes
        assert filt.query_sketch(_sk(p, q, (0, 3), (0, 1))) is QueryResult.POSITIVE

    def test_classification_partition(self):
        filt, _ = self._build()
        p, q = 8, 4
        member_pairs = [("m0", _sk(p, q, (0, 1), (0, 1))),
                        ("m1", _sk(p, q, (2, 3), (2, 3)))]
        candidate_pairs = [("c0", _sk(p, q, (0, 2), (0, 2))),
                           ("c1", _sk(p, q, (1, 3), (1, 3))),
                           ("c2", _sk(p, q, (0, 3), (0, 1))),
                           ("c3", _sk(p, q, (4, 5), (0, 1))),
                           ("c4", _sk(p, q, (1, 2), (0, 2)))]
        got = filt.classify_sketches(member_pairs, candidate_pairs)
        assert got.true_positives == ["m0", "m1"]
        assert got.false_negatives == []
        assert got.yes_stage_negatives == ["c3"]
        assert got.no_stage_rejections == ["c0", "c1", "c4"]
        assert got.residual_false_positives == ["c2"]
        assert got.fp_count == 1
        assert got.yes_filter_fp_count == 4


def test_build_rejects_overlap_and_duplicates():
    params = YesNoParams.of(p=13, q=2, r=1, k=3, k_prime=1)
    with pytest.raises(ValueError, match="duplicate"):
        YesNoFilter.build(params, ["a", "a"], ["b"])
    with pytest.raises(ValueError, match="duplicate"):
        YesNoFilter.build(params, ["a"], ["b", "b"])
    with pytest.raises(ValueError, match="overlap"):
        YesNoFilter.build(params, ["a", "b"], ["b", "c"])


def test_members_always_positive_with_guard():
    params = YesNoParams.of(p=40, q=8, r=2, k=3, k_prime=3)
    members = [f"name-{i}" for i in range(12)]
    candidates = [f"probe-{i}" for i in range(120)]
    for seed in range(10):
        filt, report = build(params, members, candidates, seed=seed)
        assert all(filt.contains(e) for e in members)
        got = filt.classify(members, candidates)
        assert got.false_negatives == []
        assert got.true_positives == members
        # the structure never does worse than its own yes stage
        assert got.fp_count <= got.yes_filter_fp_count == report.f_count
        assert report.r_count == sum(report.per_no_filter_load)
        assert report.unmitigated == report.f_count - report.r_count


def test_guard_keeps_member_patterns_uncovered():
    # tight no-filters (q=2) saturate fast; the guard must still hold the line
    params = YesNoParams.of(p=13, q=2, r=1, k=3, k_prime=1)
    members = [f"m{i}" for i in range(5)]
    candidates = [f"c{i}" for i in range(30)]
    filt, report = YesNoFilter.build(params, members, candidates, seed=0)
    sk = Sketcher(params, seed=0)
    for e in members:
        for nf in filt.no_filters:
            assert not is_subset(sk.sketch(e).no_part, nf)
    assert all(filt.contains(e) for e in members)


def test_without_guard_members_can_be_lost():
    relaxed = YesNoParams.of(p=13, q=2, r=1, k=3, k_prime=1,
                             allow_false_negatives=True)
    members = [f"m{i}" for i in range(5)]
    candidates = [f"c{i}" for i in range(30)]
    filt, report = YesNoFilter.build(relaxed, members, candidates, seed=0)
    # first fit with no guard: everything lands in the first no-filter
    assert report.r_count == report.f_count
    assert report.per_no_filter_load == (report.r_count,)
    got = filt.classify(members, candidates)
    assert len(got.false_negatives) == 5
    assert all(filt.query(e) is QueryResult.NEGATIVE_NO_STAGE
               for e in got.false_negatives)


def test_zero_no_filters_degenerate_to_plain_bloom():
    params = YesNoParams.of(p=64, q=1, r=0, k=3, k_prime=0)
    members = [f"m{i}" for i in range(10)]
    candidates = [f"c{i}" for i in range(200)]
    filt, report = YesNoFilter.build(params, members, candidates, seed=7)
    assert report.r_count == 0
    assert filt.no_filters == []

    reference = BloomFilter(64, 3, seed=7)
    for e in members:
        reference.insert(e)
    assert filt.yes_filter == reference.vector
    for e in members + candidates + [f"fresh-{i}" for i in range(200)]:
        assert filt.contains(e) == reference.contains(e)


def test_serialization_round_trip():
    params = YesNoParams.of(p=40, q=8, r=2, k=3, k_prime=3)
    members = [f"name-{i}" for i in range(12)]
    candidates = [f"probe-{i}" for i in range(60)]
    filt, _ = build(params, members, candidates, seed=3)
    text = filt.to_bitstring()
    assert len(text) == params.m
    assert set(text) <= {"0", "1"}
    back = YesNoFilter.from_bitstring(params, text, seed=3)
    assert back == filt
    assert [back.query(e) for e in members + candidates] == \
           [filt.query(e) for e in members + candidates]
    with pytest.raises(ValueError):
        YesNoFilter.from_bitstring(params, text + "0", seed=3)


def test_constructor_validates_part_lengths():
    params = YesNoParams.of(p=8, q=4, r=2, k=2, k_prime=2)
    yes = BitVector(8)
    good = [BitVector(4), BitVector(4)]
    with pytest.raises(ValueError):
        YesNoFilter(params, BitVector(9), good)
    with pytest.raises(ValueError):
        YesNoFilter(params, yes, [BitVector(4)])
    with pytest.raises(ValueError):
        YesNoFilter(params, yes, [BitVector(4), BitVector(5)])


# --- properties ----------------------------------------------------------

element_sets = st.sets(st.integers(min_value=0, max_value=10**9),
                       min_size=1, max_size=25)


@settings(max_examples=60, deadline=None)
@given(members=element_sets, extra=element_sets, seed=st.integers(0, 2**32 - 1))
def test_property_no_false_negatives(members, extra, seed):
    params = YesNoParams.of(p=48, q=8, r=2, k=3, k_prime=2)
    candidates = sorted(extra - members)
    filt, _ = YesNoFilter.build(params, sorted(members), candidates, seed=seed)
    assert all(filt.contains(e) for e in members)


@settings(max_examples=60, deadline=None)
@given(members=element_sets, extra=element_sets, seed=st.integers(0, 2**32 - 1))
def test_property_round_trip_preserves_answers(members, extra, seed):
    params = YesNoParams.of(p=48, q=8, r=2, k=3, k_prime=2)
    candidates = sorted(extra - members)
    filt, _ = YesNoFilter.build(params, sorted(members), candidates, seed=seed)
    back = YesNoFilter.from_bitstring(params, filt.to_bitstring(), seed=seed)
    probes = sorted(members) + candidates + list(range(50))
    assert [back.query(e) for e in probes] == [filt.query(e) for e in probes]


@settings(max_examples=60, deadline=None)
@given(members=element_sets, extra=element_sets, seed=st.integers(0, 2**32 - 1))
def test_property_rejections_never_exceed_yes_stage_fps(members, extra, seed):
    params = YesNoParams.of(p=48, q=8, r=2, k=3, k_prime=2)
    candidates = sorted(extra - members)
    filt, report = YesNoFilter.build(params, sorted(members), candidates, seed=seed)
    got = filt.classify(sorted(members), candidates)
    assert got.yes_filter_fp_count == report.f_count
    # placements made after an element was skipped can cover it anyway,
    # so rejections may exceed r_count but never fall below it
    assert len(got.no_stage_rejections) >= report.r_count
    assert got.fp_count <= report.unmitigated
    assert got.fp_count + len(got.no_stage_rejections) == report.f_count
