"""Word semimetrics and the continuous Cayley graph.

``word_distance`` is a directed breadth-first search over right
multiplication by generators, with horizon semantics: an answer is exact
(finite, or infinite when the frontier empties or a structural fast path
certifies it) or only known to exceed the horizon.

``gamma_distance`` evaluates the five-case distance on the point set
M ∪ (M × S × (0,1)); ``gamma_set_distance`` computes exact infima between
finitely described regions (cell sets) by evaluating the case formulas at
closure extremes, which suffices because the distance is affine (or concave)
in edge offsets between breakpoints.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import HorizonTooSmall, InvalidElement, NoPath
from .extnum import (
    INF,
    ZERO,
    ExtNonNeg,
    TruncatedDistance,
    ext_min,
    truncated_min,
)
from .monoids import MonoidOracle, Word, format_word


# ---------------------------------------------------------------------------
# Word distance (directed BFS with horizon)
# ---------------------------------------------------------------------------


def _bfs(oracle: MonoidOracle, x: Word, y: Word, horizon: int):
    """Returns (TruncatedDistance, witness word or None)."""
    if x == y:
        return TruncatedDistance.known(ZERO), ()
    fast = oracle.exact_distance(x, y)
    if fast is not None:
        if fast.is_infinite:
            return TruncatedDistance.known(INF), None
        return TruncatedDistance.known(fast), oracle.exact_distance_witness(x, y)
    parents: dict[Word, tuple[Word, str]] = {}
    seen = {x}
    frontier = [x]
    for depth in range(1, horizon + 1):
        next_frontier = []
        for m in frontier:
            for s in oracle.generators:
                p = oracle.multiply(m, (s,))
                if p in seen:
                    continue
                seen.add(p)
                parents[p] = (m, s)
                if p == y:
                    word: list[str] = []
                    cur = p
                    while cur != x:
                        cur, letter = parents[cur]
                        word.append(letter)
                    return TruncatedDistance.known(ExtNonNeg.finite(depth)), tuple(reversed(word))
                next_frontier.append(p)
        if not next_frontier:
            # Reachable set exhausted without meeting y: certified infinite.
            return TruncatedDistance.known(INF), None
        frontier = next_frontier
    return TruncatedDistance.unknown_above(ExtNonNeg.finite(horizon)), None


def word_distance(oracle: MonoidOracle, x: Word, y: Word, horizon: int) -> TruncatedDistance:
    # Set-distance and pipeline code re-asks the same vertex pairs heavily.
    cache = getattr(oracle, "_wd_cache", None)
    if cache is None:
        cache = {}
        oracle._wd_cache = cache
    key = (x, y, horizon)
    hit = cache.get(key)
    if hit is None:
        cache[key] = hit = _bfs(oracle, x, y, horizon)[0]
    return hit


def shortest_word(oracle: MonoidOracle, x: Word, y: Word, horizon: int) -> Word:
    """A witness word w of length d(x,y) with x*w = y; NoPath if none certified."""
    dist, witness = _bfs(oracle, x, y, horizon)
    if witness is None:
        raise NoPath(f"no certified finite path from {format_word(x)} to {format_word(y)}")
    return witness


# ---------------------------------------------------------------------------
# Cayley points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vertex:
    element: Word

    def __str__(self) -> str:
        return f"v:{format_word(self.element)}"


@dataclass(frozen=True)
class EdgePoint:
    element: Word
    gen: str
    mu: Fraction

    def __post_init__(self):
        if not isinstance(self.mu, Fraction):
            object.__setattr__(self, "mu", Fraction(self.mu))
        if not (0 < self.mu < 1):
            raise InvalidElement(f"edge offset must lie strictly between 0 and 1, got {self.mu}")

    def __str__(self) -> str:
        return f"e:{format_word(self.element)}:{self.gen}:{self.mu.numerator}/{self.mu.denominator}"


CayleyPoint = Union[Vertex, EdgePoint]


def parse_point(oracle: MonoidOracle, text: str) -> CayleyPoint:
    if text.startswith("v:"):
        return Vertex(oracle.parse_word(text[2:]))
    if text.startswith("e:"):
        try:
            _, word, gen, frac = text.split(":")
        except ValueError:
            raise InvalidElement(f"bad edge point {text!r}") from None
        return EdgePoint(oracle.parse_word(word), gen, Fraction(frac))
    # Bare words denote vertices.
    return Vertex(oracle.parse_word(text))


# ---------------------------------------------------------------------------
# The five-case distance
# ---------------------------------------------------------------------------

# Internal extended points allow closed offsets 0 and 1 so that infima over
# segment closures can be evaluated at interval endpoints.  An extended edge
# point with offset 0 or 1 is *not* identified with a vertex: the case
# formulas are evaluated literally, which yields the correct closure limits
# in the directed setting.

_ExtPoint = tuple  # ("v", m) | ("e", m, s, mu) with mu in [0, 1]


def _ext(p: CayleyPoint) -> _ExtPoint:
    if isinstance(p, Vertex):
        return ("v", p.element)
    return ("e", p.element, p.gen, p.mu)


def _ext_distance(
    oracle: MonoidOracle, p: _ExtPoint, q: _ExtPoint, horizon: int
) -> TruncatedDistance:
    wd = lambda a, b: word_distance(oracle, a, b, horizon)
    if p[0] == "v" and q[0] == "v":
        return wd(p[1], q[1])
    if p[0] == "v":
        _, n, _y, nu = q
        return wd(p[1], n).plus(ExtNonNeg.of(nu))
    _, m, x, mu = p
    mx = oracle.multiply(m, (x,))
    if q[0] == "v":
        n = q[1]
        via_back = wd(m, n).plus(ExtNonNeg.of(mu))
        via_forward = wd(mx, n).plus(ExtNonNeg.of(1 - mu))
        return truncated_min([via_back, via_forward])
    _, n, y, nu = q
    if m == n and x == y:
        return TruncatedDistance.known(ExtNonNeg.of(abs(mu - nu)))
    to_base = _ext_distance(oracle, p, ("v", n), horizon)
    return to_base.plus(ExtNonNeg.of(nu))


def gamma_distance(oracle: MonoidOracle, p: CayleyPoint, q: CayleyPoint, horizon: int) -> TruncatedDistance:
    return _ext_distance(oracle, _ext(p), _ext(q), horizon)


# ---------------------------------------------------------------------------
# Cell sets: finite descriptions of regions of the Cayley graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    element: Word
    gen: str
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi <= 1):
            raise InvalidElement(f"bad segment bounds [{self.lo}, {self.hi}]")


class CellSet:
    """Finitely many vertices plus edge segments, read as a closed region."""

    def __init__(self, vertices: Iterable[Word] = (), segments: Iterable[Segment] = ()):
        self.vertices = frozenset(vertices)
        merged: dict[tuple[Word, str], list[list[Fraction]]] = {}
        for seg in segments:
            merged.setdefault((seg.element, seg.gen), []).append([seg.lo, seg.hi])
        out: list[Segment] = []
        for (m, s), intervals in merged.items():
            intervals.sort()
            acc = [intervals[0]]
            for lo, hi in intervals[1:]:
                if lo <= acc[-1][1]:
                    acc[-1][1] = max(acc[-1][1], hi)
                else:
                    acc.append([lo, hi])
            out.extend(Segment(m, s, lo, hi) for lo, hi in acc)
        self.segments = tuple(sorted(out, key=lambda g: (g.element, g.gen, g.lo)))

    def __bool__(self) -> bool:
        return bool(self.vertices) or bool(self.segments)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CellSet)
            and self.vertices == other.vertices
            and self.segments == other.segments
        )

    def __hash__(self):
        return hash((self.vertices, self.segments))

    def translate(self, oracle: MonoidOracle, m: Word) -> "CellSet":
        return CellSet(
            (oracle.multiply(m, v) for v in self.vertices),
            (Segment(oracle.multiply(m, s.element), s.gen, s.lo, s.hi) for s in self.segments),
        )

    def closure_reps(self) -> list[_ExtPoint]:
        reps: list[_ExtPoint] = [("v", v) for v in sorted(self.vertices)]
        for seg in self.segments:
            reps.append(("e", seg.element, seg.gen, seg.lo))
            if seg.hi != seg.lo:
                reps.append(("e", seg.element, seg.gen, seg.hi))
        return reps

    def contains(self, p: CayleyPoint) -> bool:
        """Membership in the closed region (segment endpoints included)."""
        if isinstance(p, Vertex):
            return p.element in self.vertices
        for seg in self.segments:
            if seg.element == p.element and seg.gen == p.gen and seg.lo <= p.mu <= seg.hi:
                return True
        return False

    def sample_points(self, offsets: Sequence[Fraction] = (Fraction(1, 2),)) -> list[CayleyPoint]:
        """Honest CayleyPoints in the set: vertices plus interior edge samples."""
        points: list[CayleyPoint] = [Vertex(v) for v in sorted(self.vertices)]
        for seg in self.segments:
            for off in sorted(set(offsets)):
                mu = seg.lo + (seg.hi - seg.lo) * off
                if 0 < mu < 1 and seg.lo <= mu <= seg.hi:
                    points.append(EdgePoint(seg.element, seg.gen, mu))
        return points

    def to_json(self, oracle: MonoidOracle) -> dict:
        return {
            "vertices": sorted(f"v:{format_word(v)}" for v in self.vertices),
            "segments": [
                {
                    "base": format_word(s.element),
                    "gen": s.gen,
                    "lo": [s.lo.numerator, s.lo.denominator],
                    "hi": [s.hi.numerator, s.hi.denominator],
                }
                for s in self.segments
            ],
        }


def _interval_gap(a_lo, a_hi, b_lo, b_hi) -> Fraction:
    if a_hi < b_lo:
        return b_lo - a_hi
    if b_hi < a_lo:
        return a_lo - b_hi
    return Fraction(0)


def gamma_set_distance(oracle: MonoidOracle, A: CellSet, B: CellSet, horizon: int) -> TruncatedDistance:
    """Exact inf { d(a,b) : a in closure(A), b in closure(B) }."""
    if not A or not B:
        return TruncatedDistance.known(INF)
    candidates: list[TruncatedDistance] = []
    # Same-edge overlaps need the interior: |mu - nu| is convex, so interval
    # intersection (distance 0) is not visible from endpoints alone.
    b_by_edge: dict[tuple[Word, str], list[Segment]] = {}
    for seg in B.segments:
        b_by_edge.setdefault((seg.element, seg.gen), []).append(seg)
    for seg in A.segments:
        for other in b_by_edge.get((seg.element, seg.gen), ()):
            gap = _interval_gap(seg.lo, seg.hi, other.lo, other.hi)
            candidates.append(TruncatedDistance.known(ExtNonNeg.of(gap)))
    a_reps = A.closure_reps()
    b_reps = B.closure_reps()
    for p in a_reps:
        for q in b_reps:
            candidates.append(_ext_distance(oracle, p, q, horizon))
    return truncated_min(candidates)


# ---------------------------------------------------------------------------
# Gamma oracle: the Cayley graph as a semimetric space
# ---------------------------------------------------------------------------


class GammaOracle:
    """Γ_S(M) with a fixed default horizon; restriction to vertices is d_S."""

    def __init__(self, monoid: MonoidOracle, horizon: int = 8):
        self.monoid = monoid
        self.horizon = horizon

    def distance(self, p: CayleyPoint, q: CayleyPoint, horizon: Optional[int] = None) -> TruncatedDistance:
        return gamma_distance(self.monoid, p, q, horizon or self.horizon)

    def known_distance(self, p: CayleyPoint, q: CayleyPoint) -> ExtNonNeg:
        d = self.distance(p, q)
        if not d.is_known:
            raise HorizonTooSmall(f"d({p}, {q}) only known to exceed {d.value}")
        return d.value

    def points_equal(self, p: CayleyPoint, q: CayleyPoint) -> bool:
        return p == q

    def set_distance(self, A: CellSet, B: CellSet, horizon: Optional[int] = None) -> TruncatedDistance:
        return gamma_set_distance(self.monoid, A, B, horizon or self.horizon)

    def format_point(self, p: CayleyPoint) -> str:
        return str(p)

    # -- ball cell sets ----------------------------------------------------

    def out_ball_cellset(self, center: Word, radius: Fraction, horizon: Optional[int] = None) -> CellSet:
        horizon = horizon or self.horizon
        radius = Fraction(radius)
        depth = int(radius)
        if depth > horizon:
            raise HorizonTooSmall(f"radius {radius} exceeds horizon {horizon}")
        # BFS outward from the center: the BFS depth of m is d(center, m).
        vertices = []
        segments = []
        dist_of = {center: 0}
        frontier = [center]
        for level in range(depth + 1):
            next_frontier = []
            for m in frontier:
                room = radius - level
                vertices.append(m)
                if room > 0:
                    hi = min(Fraction(1), room)
                    for s in self.monoid.generators:
                        segments.append(Segment(m, s, Fraction(0), hi))
                        p = self.monoid.multiply(m, (s,))
                        if p not in dist_of:
                            dist_of[p] = level + 1
                            next_frontier.append(p)
            frontier = next_frontier
        return CellSet(vertices, segments)

    def in_ball_cellset(self, center: Word, radius: Fraction, horizon: Optional[int] = None) -> CellSet:
        horizon = horizon or self.horizon
        radius = Fraction(radius)
        candidates = self.monoid.left_divisor_candidates(center, int(radius) + 1)
        if candidates is None:
            if self.monoid.ball_exhausted(horizon):
                candidates = self.monoid.elements_up_to(horizon)
            else:
                raise HorizonTooSmall(
                    f"{self.monoid.name}: cannot enumerate in-ball candidates"
                )
        vertices = []
        segments = []
        wd = lambda a, b: word_distance(self.monoid, a, b, horizon)
        dist_to_center: dict[Word, TruncatedDistance] = {}

        def d_to_center(m: Word) -> TruncatedDistance:
            if m not in dist_to_center:
                dist_to_center[m] = wd(m, center)
            return dist_to_center[m]

        for m in candidates:
            d = d_to_center(m)
            if d.is_known and not d.value.is_infinite and d.value.finite_value() <= radius:
                vertices.append(m)
        # Edge (m, s): offsets with min(mu + d(m,c), (1-mu) + d(ms,c)) <= radius.
        edge_bases = set(candidates)
        for m in list(edge_bases):
            for s in self.monoid.generators:
                intervals = []
                dm = d_to_center(m)
                if dm.is_known and not dm.value.is_infinite:
                    room = radius - dm.value.finite_value()
                    if room > 0:
                        intervals.append((Fraction(0), min(Fraction(1), room)))
                ms = self.monoid.multiply(m, (s,))
                dms = d_to_center(ms)
                if dms.is_known and not dms.value.is_infinite:
                    room = radius - dms.value.finite_value()
                    lo = 1 - room
                    if lo < 1:
                        intervals.append((max(Fraction(0), lo), Fraction(1)))
                for lo, hi in intervals:
                    segments.append(Segment(m, s, lo, hi))
        return CellSet(vertices, segments)

    def strong_ball_cellset(self, center: Word, radius: Fraction, horizon: Optional[int] = None) -> CellSet:
        out = self.out_ball_cellset(center, radius, horizon)
        inn = self.in_ball_cellset(center, radius, horizon)
        vertices = out.vertices & inn.vertices
        segments = []
        inn_by_edge: dict[tuple[Word, str], list[Segment]] = {}
        for seg in inn.segments:
            inn_by_edge.setdefault((seg.element, seg.gen), []).append(seg)
        for seg in out.segments:
            for other in inn_by_edge.get((seg.element, seg.gen), ()):
                lo = max(seg.lo, other.lo)
                hi = min(seg.hi, other.hi)
                if lo <= hi:
                    segments.append(Segment(seg.element, seg.gen, lo, hi))
        return CellSet(vertices, segments)

    def ball_cellset(self, center: Word, radius: Fraction, kind: str, horizon: Optional[int] = None) -> CellSet:
        if kind == "out":
            return self.out_ball_cellset(center, radius, horizon)
        if kind == "in":
            return self.in_ball_cellset(center, radius, horizon)
        if kind == "strong":
            return self.strong_ball_cellset(center, radius, horizon)
        raise ValueError(f"unknown ball kind {kind!r}")


# ---------------------------------------------------------------------------
# Inclusion quasi-isometry and geodesics
# ---------------------------------------------------------------------------


def check_inclusion_qi(gamma: GammaOracle, horizon: int, sample_depth: Optional[int] = None):
    """Vertex distances in Γ agree with d_S; edge points sit in strong 1-balls."""
    from .spaces import ViolationReport, Violation  # local import avoids a cycle

    monoid = gamma.monoid
    depth = min(horizon, sample_depth if sample_depth is not None else 4)
    ball = monoid.elements_up_to(depth)
    violations = []
    for x in ball:
        for y in ball:
            via_words = word_distance(monoid, x, y, horizon)
            via_gamma = gamma_distance(monoid, Vertex(x), Vertex(y), horizon)
            if not via_words.is_known or not via_gamma.is_known:
                raise HorizonTooSmall(
                    f"d({format_word(x)}, {format_word(y)}) not known at horizon {horizon}"
                )
            if via_words.value != via_gamma.value:
                violations.append(
                    Violation(
                        points=(f"v:{format_word(x)}", f"v:{format_word(y)}"),
                        inequality="gamma restriction equals word distance",
                        lhs=via_gamma.value,
                        rhs=via_words.value,
                    )
                )
    one = ExtNonNeg.finite(1)
    for m in ball:
        for s in monoid.generators:
            for mu in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
                p = EdgePoint(m, s, mu)
                fwd = gamma.known_distance(Vertex(m), p)
                back = gamma.known_distance(p, Vertex(m))
                if fwd > one or back > one:
                    violations.append(
                        Violation(
                            points=(f"v:{format_word(m)}", str(p)),
                            inequality="edge point lies in the strong 1-ball of its base",
                            lhs=max(fwd, back),
                            rhs=one,
                        )
                    )
    return ViolationReport("inclusion_qi", violations)


def geodesic_witness(gamma: GammaOracle, x: Word, y: Word, horizon: int):
    """A vertex path witness along a shortest word from x to y."""
    from .spaces import PathWitness

    monoid = gamma.monoid
    dist = word_distance(monoid, x, y, horizon)
    if not dist.is_known or dist.value.is_infinite:
        raise NoPath(f"distance from {format_word(x)} to {format_word(y)} is {dist}")
    w = shortest_word(monoid, x, y, horizon)
    steps = [(Fraction(0), Vertex(x))]
    cur = x
    for i, letter in enumerate(w, start=1):
        cur = monoid.multiply(cur, (letter,))
        steps.append((Fraction(i), Vertex(cur)))
    return PathWitness(tuple(steps))
