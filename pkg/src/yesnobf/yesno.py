"""The yes-no Bloom filter: a yes-filter plus r small no-filters.

The yes-filter is a classic Bloom filter over the member set S. When the
caller can enumerate the set T of non-members that will actually be queried,
construction finds the yes-filter's false positives F within T and records as
many as it can in the no-filters. A query then answers positive only if it
passes the yes-filter AND is not recognized by any no-filter, which removes
known false positives without touching membership answers: by default every
commit to a no-filter is guarded so that no member's no-pattern ever becomes
covered, keeping the structure free of false negatives.

With r=0 the whole thing degenerates to a classic Bloom filter of p bits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .bitcore import MODE_RANDOM, BitVector, HashFamily


@dataclass(frozen=True)
class YesNoParams:
    """Geometry of a yes-no filter.

    m total bits = p (yes-filter) + q * r (r no-filters of q bits each);
    k and k_prime are the hash counts of the yes and no families. With
    allow_false_negatives the construction skips the member guard and
    accepts every recordable false positive, trading correctness of member
    answers for mitigation capacity.
    """

    m: int
    p: int
    q: int
    r: int
    k: int
    k_prime: int
    allow_false_negatives: bool = False

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be positive, got {self.p}")
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.r < 0:
            raise ValueError(f"r must be >= 0, got {self.r}")
        if self.m != self.p + self.q * self.r:
            raise ValueError(
                f"m must equal p + q*r: {self.m} != {self.p} + {self.q}*{self.r}")
        if self.q >= self.p:
            raise ValueError(f"q ({self.q}) must be smaller than p ({self.p})")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.k_prime < 0:
            raise ValueError(f"k_prime must be >= 0, got {self.k_prime}")
        if self.r > 0 and self.k_prime < 1:
            raise ValueError("k_prime must be >= 1 when there are no-filters")

    @classmethod
    def of(cls, p: int, q: int, r: int, k: int, k_prime: int,
           allow_false_negatives: bool = False) -> YesNoParams:
        """Construct with m computed from the part lengths."""
        return cls(p + q * r, p, q, r, k, k_prime, allow_false_negatives)


@dataclass(frozen=True)
class ElementSketch:
    """An element's two hash patterns: p-bit yes part, q-bit no part."""

    yes_part: BitVector
    no_part: BitVector


class Sketcher:
    """Bundles params with a seed and produces element sketches.

    The yes and no families share the seed; their different (count, range)
    shapes keep their position streams independent. A classic Bloom filter
    built from HashFamily(k, p, seed=seed) sees exactly the yes parts.
    """

    __slots__ = ("params", "seed", "mode", "yes_family", "no_family")

    def __init__(self, params: YesNoParams, seed: int = 0, mode: str = MODE_RANDOM):
        self.params = params
        self.seed = seed
        self.mode = mode
        self.yes_family = HashFamily(params.k, params.p, mode=mode, seed=seed)
        self.no_family = HashFamily(params.k_prime, params.q, mode=mode, seed=seed)

    def sketch(self, element) -> ElementSketch:
        return ElementSketch(
            BitVector(self.params.p, self.yes_family.element_mask(element)),
            BitVector(self.params.q, self.no_family.element_mask(element)),
        )


def sketch(params: YesNoParams, element, seed: int = 0,
           mode: str = MODE_RANDOM) -> ElementSketch:
    """One-off sketch; build a Sketcher when sketching many elements."""
    return Sketcher(params, seed, mode).sketch(element)


class QueryResult(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE_YES_STAGE = "negative_yes_stage"
    NEGATIVE_NO_STAGE = "negative_no_stage"


@dataclass(frozen=True)
class ConstructionReport:
    """What construction saw and did.

    f_count is the number of yes-filter false positives found in T,
    r_count how many of them the no-filters accepted, unmitigated the
    leftovers, per_no_filter_load the acceptance count per no-filter.
    """

    n: int
    t: int
    f_count: int
    r_count: int
    unmitigated: int
    per_no_filter_load: tuple[int, ...]


@dataclass(frozen=True)
class Classification:
    """Partition of S and T by query outcome, input order preserved."""

    true_positives: list = field(default_factory=list)
    yes_stage_negatives: list = field(default_factory=list)
    no_stage_rejections: list = field(default_factory=list)
    residual_false_positives: list = field(default_factory=list)
    false_negatives: list = field(default_factory=list)

    @property
    def fp_count(self) -> int:
        """Residual false positives, the count the structure exists to shrink."""
        return len(self.residual_false_positives)

    @property
    def yes_filter_fp_count(self) -> int:
        """False positives of the yes stage alone (mitigated or not)."""
        return len(self.no_stage_rejections) + len(self.residual_false_positives)


def _check_disjoint_sets(members, candidates):
    member_list = list(members)
    candidate_list = list(candidates)
    member_set = set(member_list)
    candidate_set = set(candidate_list)
    if len(member_set) != len(member_list):
        raise ValueError("duplicate elements in the member set")
    if len(candidate_set) != len(candidate_list):
        raise ValueError("duplicate elements in the queryable set")
    overlap = member_set & candidate_set
    if overlap:
        sample = next(iter(overlap))
        raise ValueError(f"member and queryable sets overlap (e.g. {sample!r})")
    return member_list, candidate_list


class YesNoFilter:
    """Built two-stage filter; treat as immutable once constructed."""

    __slots__ = ("params", "seed", "mode", "yes_filter", "no_filters",
                 "_sketcher", "_yes_mask", "_no_masks")

    def __init__(self, params: YesNoParams, yes_filter: BitVector,
                 no_filters: list[BitVector], seed: int = 0,
                 mode: str = MODE_RANDOM):
        if yes_filter.length != params.p:
            raise ValueError("yes_filter length does not match params.p")
        if len(no_filters) != params.r:
            raise ValueError("expected exactly r no-filters")
        if any(nf.length != params.q for nf in no_filters):
            raise ValueError("every no-filter must have length params.q")
        self.params = params
        self.seed = seed
        self.mode = mode
        self.yes_filter = yes_filter
        self.no_filters = list(no_filters)
        self._sketcher = Sketcher(params, seed, mode)
        self._yes_mask = yes_filter.as_int()
        self._no_masks = [nf.as_int() for nf in no_filters]

    @classmethod
    def build(cls, params: YesNoParams, members, candidates, seed: int = 0,
              mode: str = MODE_RANDOM) -> tuple[YesNoFilter, ConstructionReport]:
        """Construct from the member set and the queryable non-member set.

        members and candidates must each be duplicate-free and mutually
        disjoint; candidate order fixes the order in which false positives
        compete for no-filter space (first come, first placed).
        """
        member_list, candidate_list = _check_disjoint_sets(members, candidates)
        sk = Sketcher(params, seed, mode)
        member_sketches = [sk.sketch(e) for e in member_list]
        candidate_sketches = [sk.sketch(e) for e in candidate_list]
        return cls.build_from_sketches(params, member_sketches, candidate_sketches,
                                       seed=seed, mode=mode)

    @classmethod
    def build_from_sketches(cls, params: YesNoParams, member_sketches,
                            candidate_sketches, *, seed: int = 0,
                            mode: str = MODE_RANDOM
                            ) -> tuple[YesNoFilter, ConstructionReport]:
        """Construction core for callers that already hold the sketches.

        The sketches must come from a Sketcher with the same params, seed
        and mode, or later queries will not see the bits laid down here.
        """
        yes_mask = 0
        member_no_masks = []
        for s in member_sketches:
            yes_mask |= s.yes_part.as_int()
            member_no_masks.append(s.no_part.as_int())

        r = params.r
        no_masks = [0] * r
        loads = [0] * r
        guard = not params.allow_false_negatives
        f_count = 0
        r_count = 0

        for s in candidate_sketches:
            y = s.yes_part.as_int()
            if y & yes_mask != y:
                continue  # genuine negative, nothing to mitigate
            f_count += 1
            fno = s.no_part.as_int()
            for j in range(r):
                candidate_mask = no_masks[j] | fno
                if guard:
                    ok = True
                    for mn in member_no_masks:
                        if mn & candidate_mask == mn:
                            ok = False  # would start rejecting a member
                            break
                    if not ok:
                        continue
                no_masks[j] = candidate_mask
                loads[j] += 1
                r_count += 1
                break

        report = ConstructionReport(
            n=len(member_sketches),
            t=len(candidate_sketches),
            f_count=f_count,
            r_count=r_count,
            unmitigated=f_count - r_count,
            per_no_filter_load=tuple(loads),
        )
        built = cls(params,
                    BitVector(params.p, yes_mask),
                    [BitVector(params.q, nm) for nm in no_masks],
                    seed=seed, mode=mode)
        return built, report

    def sketch(self, element) -> ElementSketch:
        return self._sketcher.sketch(element)

    def query_sketch(self, s: ElementSketch) -> QueryResult:
        """Two-stage decision for an element already sketched with
        matching params and seed."""
        y = s.yes_part.as_int()
        if y & self._yes_mask != y:
            return QueryResult.NEGATIVE_YES_STAGE
        fno = s.no_part.as_int()
        for nm in self._no_masks:
            if fno & nm == fno:
                return QueryResult.NEGATIVE_NO_STAGE
        return QueryResult.POSITIVE

    def query(self, element) -> QueryResult:
        return self.query_sketch(self._sketcher.sketch(element))

    def contains(self, element) -> bool:
        return self.query(element) is QueryResult.POSITIVE

    def classify(self, members, candidates) -> Classification:
        """Partition members and candidates by query outcome.

        Members land in true_positives (or false_negatives, possible only
        when the filter was built with allow_false_negatives); candidates
        land in yes_stage_negatives, no_stage_rejections, or
        residual_false_positives — the last being the queries the structure
        still gets wrong.
        """
        member_list, candidate_list = _check_disjoint_sets(members, candidates)
        member_pairs = [(e, self._sketcher.sketch(e)) for e in member_list]
        candidate_pairs = [(e, self._sketcher.sketch(e)) for e in candidate_list]
        return self.classify_sketches(member_pairs, candidate_pairs)

    def classify_sketches(self, member_pairs, candidate_pairs) -> Classification:
        """classify() core over (element, sketch) pairs."""
        out = Classification()
        for e, s in member_pairs:
            if self.query_sketch(s) is QueryResult.POSITIVE:
                out.true_positives.append(e)
            else:
                out.false_negatives.append(e)
        for e, s in candidate_pairs:
            result = self.query_sketch(s)
            if result is QueryResult.NEGATIVE_YES_STAGE:
                out.yes_stage_negatives.append(e)
            elif result is QueryResult.NEGATIVE_NO_STAGE:
                out.no_stage_rejections.append(e)
            else:
                out.residual_false_positives.append(e)
        return out

    def to_bitstring(self) -> str:
        """All m bits: yes-filter first, then each no-filter in order."""
        parts = [self.yes_filter.to_bitstring()]
        parts.extend(nf.to_bitstring() for nf in self.no_filters)
        return "".join(parts)

    @classmethod
    def from_bitstring(cls, params: YesNoParams, text: str, seed: int = 0,
                       mode: str = MODE_RANDOM) -> YesNoFilter:
        if len(text) != params.m:
            raise ValueError(f"expected {params.m} bits, got {len(text)}")
        yes = BitVector.from_bitstring(text[:params.p])
        no_filters = []
        for j in range(params.r):
            start = params.p + j * params.q
            no_filters.append(BitVector.from_bitstring(text[start:start + params.q]))
        return cls(params, yes, no_filters, seed=seed, mode=mode)

    def __eq__(self, other) -> bool:
        if not isinstance(other, YesNoFilter):
            return NotImplemented
        return (self.params == other.params and self.seed == other.seed
                and self.mode == other.mode and self.yes_filter == other.yes_filter
                and self.no_filters == other.no_filters)

    def __repr__(self) -> str:
        return (f"YesNoFilter(p={self.params.p}, q={self.params.q}, "
                f"r={self.params.r}, k={self.params.k}, "
                f"k_prime={self.params.k_prime}, seed={self.seed})")


def build(params: YesNoParams, members, candidates, seed: int = 0,
          mode: str = MODE_RANDOM) -> tuple[YesNoFilter, ConstructionReport]:
    """Module-level alias of YesNoFilter.build."""
    return YesNoFilter.build(params, members, candidates, seed=seed, mode=mode)
