"""Behavioral monoid oracles and algebraic side-condition checkers.

A monoid is given behaviorally: an ordered finite generator alphabet, an
identity, multiplication and a normal form.  Elements are encoded as their
canonical normal-form word over the alphabet (a tuple of generator names),
which makes equality and hashing canonical.  Universal properties are only
ever checked on word-length balls and reported as ``holds_at_horizon``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    InvalidElement,
    InvalidLetter,
    NonTerminating,
    SpecParseError,
    SpecValidationError,
)
from .extnum import INF, ExtNonNeg

Word = tuple[str, ...]

EPSILON_DISPLAY = "ε"


def format_word(word: Word) -> str:
    return EPSILON_DISPLAY if not word else "".join(word)


class MonoidOracle:
    """Base oracle.  Subclasses must provide ``generators`` and ``normal_form``."""

    name: str = "monoid"
    generators: tuple[str, ...] = ()

    @property
    def identity(self) -> Word:
        return ()

    def normal_form(self, word: Sequence[str]) -> Word:
        raise NotImplementedError

    def multiply(self, u: Word, v: Word) -> Word:
        return self.normal_form(tuple(u) + tuple(v))

    # -- optional structural fast paths -----------------------------------

    def exact_distance(self, x: Word, y: Word) -> Optional[ExtNonNeg]:
        """Exact right-multiplication distance when structure permits, else None."""
        return None

    def exact_distance_witness(self, x: Word, y: Word) -> Optional[Word]:
        """A shortest word w with x*w = y when exact_distance is finite."""
        return None

    def certified_infinite(self, x: Word, y: Word) -> bool:
        d = self.exact_distance(x, y)
        return d is not None and d.is_infinite

    def left_divisor_candidates(self, y: Word, radius: int) -> Optional[list[Word]]:
        """A finite superset of {x : d(x, y) <= radius}, when enumerable."""
        return None

    # -- ball enumeration --------------------------------------------------

    def __init__(self):
        self._levels: list[list[Word]] = [[self.identity]]
        self._seen: set[Word] = {self.identity}
        self._exhausted = False

    def _grow_to(self, n: int) -> None:
        while len(self._levels) <= n and not self._exhausted:
            frontier = self._levels[-1]
            new_level = []
            for m in frontier:
                for s in self.generators:
                    p = self.multiply(m, (s,))
                    if p not in self._seen:
                        self._seen.add(p)
                        new_level.append(p)
            if new_level:
                self._levels.append(new_level)
            else:
                self._exhausted = True

    def elements_up_to(self, n: int) -> list[Word]:
        """All elements at word distance <= n from the identity, BFS order."""
        self._grow_to(n)
        out: list[Word] = []
        for level in self._levels[: n + 1]:
            out.extend(level)
        return out

    def ball_exhausted(self, n: int) -> bool:
        """True when the ball of radius n is all of M (finite, saturated)."""
        self._grow_to(n)
        return self._exhausted and len(self._levels) - 1 <= n

    def depth_of(self, m: Word, horizon: int) -> Optional[int]:
        self._grow_to(horizon)
        for depth, level in enumerate(self._levels[: horizon + 1]):
            if m in level:
                return depth
        return None

    # -- word parsing ------------------------------------------------------

    def parse_word(self, text: str) -> Word:
        if text in ("", EPSILON_DISPLAY, "e") and "e" not in self.generators:
            return ()
        if text in ("", EPSILON_DISPLAY):
            return ()
        letters: list[str] = []
        by_len = sorted(self.generators, key=len, reverse=True)
        i = 0
        while i < len(text):
            for g in by_len:
                if text.startswith(g, i):
                    letters.append(g)
                    i += len(g)
                    break
            else:
                raise InvalidLetter(f"cannot tokenize {text!r} at position {i} over {self.generators}")
        return self.normal_form(tuple(letters))

    def format_word(self, word: Word) -> str:
        return format_word(word)

    def check_letters(self, word: Sequence[str]) -> None:
        for letter in word:
            if letter not in self.generators:
                raise InvalidLetter(f"unknown generator {letter!r}")


class FreeMonoid(MonoidOracle):
    """Free monoid on an ordered alphabet; normal form is the word itself."""

    def __init__(self, rank: int, alphabet: Optional[Sequence[str]] = None):
        if rank < 0:
            raise SpecValidationError("free monoid rank must be >= 0")
        if alphabet is None:
            alphabet = [f"f{i+1}" for i in range(rank)]
        if len(alphabet) != rank or len(set(alphabet)) != rank:
            raise SpecValidationError("alphabet must list `rank` distinct letters")
        self.name = f"free{rank}"
        self.generators = tuple(alphabet)
        super().__init__()

    def normal_form(self, word: Sequence[str]) -> Word:
        self.check_letters(word)
        return tuple(word)

    def exact_distance(self, x: Word, y: Word) -> Optional[ExtNonNeg]:
        if len(x) <= len(y) and y[: len(x)] == x:
            return ExtNonNeg.finite(len(y) - len(x))
        return INF

    def exact_distance_witness(self, x: Word, y: Word) -> Optional[Word]:
        if len(x) <= len(y) and y[: len(x)] == x:
            return y[len(x):]
        return None

    def left_divisor_candidates(self, y: Word, radius: int) -> list[Word]:
        return [y[:i] for i in range(len(y) + 1)]


class TableMonoid(MonoidOracle):
    """Finite monoid given by a full multiplication table on named elements.

    Canonical encodings are shortest generator words found by BFS from the
    identity; every element must be reachable from the chosen generators.
    """

    def __init__(
        self,
        elements: Sequence[str],
        table: Sequence[Sequence[int]],
        identity: str | int = 0,
        generators: Optional[Sequence[str]] = None,
        name: str = "table",
    ):
        self.name = name
        self.element_names = tuple(elements)
        n = len(self.element_names)
        if len(set(self.element_names)) != n or n == 0:
            raise SpecValidationError("element names must be distinct and nonempty")
        self.table = [tuple(row) for row in table]
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise SpecValidationError("table must be n x n")
        for row in self.table:
            for v in row:
                if not (0 <= v < n):
                    raise SpecValidationError(f"table entry {v} out of range")
        self.identity_idx = elements.index(identity) if isinstance(identity, str) else identity
        e = self.identity_idx
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise SpecValidationError(f"{self.element_names[e]!r} is not a two-sided identity")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise SpecValidationError(
                            "multiplication table is not associative at "
                            f"({self.element_names[i]},{self.element_names[j]},{self.element_names[k]})"
                        )
        if generators is None:
            generators = [x for i, x in enumerate(self.element_names) if i != e]
        for g in generators:
            if g not in self.element_names:
                raise SpecValidationError(f"generator {g!r} is not an element")
        self.generators = tuple(generators)
        self._gen_idx = {g: self.element_names.index(g) for g in self.generators}
        # BFS from the identity over right multiplication assigns each
        # reachable index its canonical (shortest, alphabet-ordered) word.
        canon: dict[int, Word] = {e: ()}
        queue = deque([e])
        while queue:
            i = queue.popleft()
            for g in self.generators:
                j = self.table[i][self._gen_idx[g]]
                if j not in canon:
                    canon[j] = canon[i] + (g,)
                    queue.append(j)
        if len(canon) != n:
            missing = [x for i, x in enumerate(self.element_names) if i not in canon]
            raise SpecValidationError(f"elements not generated by {self.generators}: {missing}")
        self._canon = canon
        super().__init__()

    def name_index(self, name: str) -> int:
        try:
            return self.element_names.index(name)
        except ValueError:
            raise InvalidElement(f"unknown element {name!r}") from None

    def mult_names(self, a: str, b: str) -> str:
        return self.element_names[self.table[self.name_index(a)][self.name_index(b)]]

    def index_of(self, word: Word) -> int:
        i = self.identity_idx
        for g in word:
            if g not in self._gen_idx:
                raise InvalidLetter(f"unknown generator {g!r}")
            i = self.table[i][self._gen_idx[g]]
        return i

    def normal_form(self, word: Sequence[str]) -> Word:
        return self._canon[self.index_of(tuple(word))]

    def left_divisor_candidates(self, y: Word, radius: int) -> list[Word]:
        return list(self._canon.values())


class FiniteGroup(TableMonoid):
    """A TableMonoid that additionally verifies the inverse law."""

    def __init__(self, elements, table, identity=0, generators=None, name="group"):
        super().__init__(elements, table, identity=identity, generators=generators, name=name)
        n = len(self.element_names)
        e = self.identity_idx
        inverse = {}
        for i in range(n):
            inv = [j for j in range(n) if self.table[i][j] == e and self.table[j][i] == e]
            if not inv:
                raise SpecValidationError(f"{self.element_names[i]!r} has no inverse; not a group")
            inverse[i] = inv[0]
        self.inverse_idx = inverse

    def inverse_word(self, w: Word) -> Word:
        return self._canon[self.inverse_idx[self.index_of(w)]]


def cyclic_group(n: int, gen: str = "g") -> FiniteGroup:
    """Z/n with the single generator `gen`; element names e, g, g2, ..."""
    if n < 1:
        raise SpecValidationError("cyclic group order must be >= 1")
    names = ["e"] + ([gen] if n > 1 else []) + [f"{gen}{k}" for k in range(2, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = [gen] if n > 1 else []
    return FiniteGroup(names, table, identity="e", generators=gens, name=f"Z{n}")


def trivial_monoid() -> TableMonoid:
    return TableMonoid(["e"], [[0]], identity="e", generators=[], name="trivial")


@dataclass(frozen=True)
class FreeProductElem:
    """Alternating form g0 x1 g1 ... xn gn of an element of F * G.

    ``group_parts`` has length n+1 (names of elements of G, identity
    allowed), ``free_parts`` has length n (free generator names).
    """

    group_parts: tuple[str, ...]
    free_parts: tuple[str, ...]

    def __post_init__(self):
        if len(self.group_parts) != len(self.free_parts) + 1:
            raise InvalidElement("alternating form must have one more group part than free parts")


class FreeProductMonoid(MonoidOracle):
    """Free product of a free monoid and a finite group.

    Generating set: the free letters together with the non-identity group
    elements, so that every right unit sits at distance 1 in both directions.
    Multiplication renormalizes only at the junction of the two alternating
    forms.
    """

    def __init__(self, free_rank: int, group: FiniteGroup, free_alphabet: Optional[Sequence[str]] = None):
        if free_rank < 1:
            raise SpecValidationError("free product requires free rank >= 1")
        if free_alphabet is None:
            free_alphabet = [f"f{i+1}" for i in range(free_rank)] if free_rank > 1 else ["f"]
        if len(free_alphabet) != free_rank:
            raise SpecValidationError("free alphabet must list free_rank letters")
        self.group = group
        self.free_letters = tuple(free_alphabet)
        e = group.element_names[group.identity_idx]
        self.group_identity = e
        group_gens = tuple(x for x in group.element_names if x != e)
        overlap = set(self.free_letters) & set(group.element_names)
        if overlap:
            raise SpecValidationError(f"free letters clash with group element names: {sorted(overlap)}")
        self.name = f"free{free_rank}*{group.name}"
        self.generators = self.free_letters + group_gens
        # The geometry pipelines hammer these with repeated arguments.
        self._alt_cache: dict[Word, FreeProductElem] = {}
        self._mult_cache: dict[tuple[Word, Word], Word] = {}
        self._quot_cache: dict[tuple[Word, Word], Optional[Word]] = {}
        super().__init__()

    # -- alternating forms -------------------------------------------------

    def to_alternating(self, word: Sequence[str]) -> FreeProductElem:
        word = tuple(word)
        cached = self._alt_cache.get(word)
        if cached is not None:
            return cached
        e = self.group_identity
        groups = [e]
        frees: list[str] = []
        for letter in word:
            if letter in self.free_letters:
                frees.append(letter)
                groups.append(e)
            elif letter in self.group.element_names:
                groups[-1] = self.group.mult_names(groups[-1], letter)
            else:
                raise InvalidLetter(f"unknown letter {letter!r}")
        elem = FreeProductElem(tuple(groups), tuple(frees))
        self._alt_cache[word] = elem
        return elem

    def from_alternating(self, elem: FreeProductElem) -> Word:
        e = self.group_identity
        out: list[str] = []
        for i, x in enumerate(elem.free_parts):
            if elem.group_parts[i] != e:
                out.append(elem.group_parts[i])
            out.append(x)
        if elem.group_parts[-1] != e:
            out.append(elem.group_parts[-1])
        return tuple(out)

    def normal_form(self, word: Sequence[str]) -> Word:
        return self.from_alternating(self.to_alternating(word))

    def multiply(self, u: Word, v: Word) -> Word:
        key = (u, v)
        cached = self._mult_cache.get(key)
        if cached is not None:
            return cached
        a = self.to_alternating(u)
        b = self.to_alternating(v)
        join = self.group.mult_names(a.group_parts[-1], b.group_parts[0])
        groups = a.group_parts[:-1] + (join,) + b.group_parts[1:]
        frees = a.free_parts + b.free_parts
        out = self.from_alternating(FreeProductElem(groups, frees))
        self._mult_cache[key] = out
        return out

    # -- distance fast path ------------------------------------------------

    def _left_quotient(self, x: Word, y: Word) -> Optional[Word]:
        """The unique w with x*w = y, or None when y is not in x*M."""
        key = (x, y)
        if key in self._quot_cache:
            return self._quot_cache[key]
        self._quot_cache[key] = w = self._left_quotient_raw(x, y)
        return w

    def _left_quotient_raw(self, x: Word, y: Word) -> Optional[Word]:
        a = self.to_alternating(x)
        b = self.to_alternating(y)
        m, n = len(a.free_parts), len(b.free_parts)
        if m > n:
            return None
        if a.free_parts != b.free_parts[:m]:
            return None
        if a.group_parts[:m] != b.group_parts[:m]:
            return None
        g = self.group
        inv_idx = g.inverse_idx[g.name_index(a.group_parts[m])]
        head = g.element_names[g.table[inv_idx][g.name_index(b.group_parts[m])]]
        groups = (head,) + b.group_parts[m + 1:]
        frees = b.free_parts[m:]
        return self.from_alternating(FreeProductElem(groups, frees))

    def exact_distance(self, x: Word, y: Word) -> Optional[ExtNonNeg]:
        w = self._left_quotient(x, y)
        if w is None:
            return INF
        return ExtNonNeg.finite(len(w))

    def exact_distance_witness(self, x: Word, y: Word) -> Optional[Word]:
        return self._left_quotient(x, y)

    def left_divisor_candidates(self, y: Word, radius: int) -> list[Word]:
        b = self.to_alternating(y)
        out: list[Word] = []
        for cut in range(len(b.free_parts) + 1):
            for g in self.group.element_names:
                elem = FreeProductElem(b.group_parts[:cut] + (g,), b.free_parts[:cut])
                out.append(self.from_alternating(elem))
        return sorted(set(out))


def free_product_normal_form(monoid: FreeProductMonoid, word: Sequence[str]) -> FreeProductElem:
    """The unique alternating form of a word over the free letters and G."""
    return monoid.to_alternating(word)


class RewritingMonoid(MonoidOracle):
    """Monoid presented by a confluent, length-nonincreasing rewriting system.

    Normal forms are fixpoints of leftmost rewriting with a step cap; the
    user asserts confluence (a consistency sampler lives in the test suite).
    Optional ``fast_path`` tags ("bicyclic", "zero") certify infinite
    distances for the two stock infinite fixtures.
    """

    def __init__(
        self,
        generators: Sequence[str],
        rules: Sequence[tuple[Sequence[str], Sequence[str]]],
        step_cap: int = 10_000,
        fast_path: Optional[str] = None,
        name: str = "rewriting",
    ):
        self.name = name
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise SpecValidationError("generators must be distinct")
        self.rules = [(tuple(lhs), tuple(rhs)) for lhs, rhs in rules]
        for lhs, rhs in self.rules:
            if not lhs:
                raise SpecValidationError("rule left-hand side must be nonempty")
            for letter in lhs + rhs:
                if letter not in self.generators:
                    raise SpecValidationError(f"rule uses unknown generator {letter!r}")
            if len(rhs) > len(lhs):
                raise SpecValidationError(f"rule {lhs}->{rhs} is length-increasing")
            if len(rhs) == len(lhs) and rhs >= lhs:
                raise SpecValidationError(f"length-preserving rule {lhs}->{rhs} needs a decreasing tie-break")
        self.step_cap = step_cap
        if fast_path not in (None, "bicyclic", "zero"):
            raise SpecValidationError(f"unknown fast_path {fast_path!r}")
        if fast_path == "bicyclic" and len(self.generators) != 2:
            raise SpecValidationError("bicyclic fast path expects generators (p, q)")
        if fast_path == "zero" and len(self.generators) != 2:
            raise SpecValidationError("zero-monoid fast path expects generators (a, z)")
        self.fast_path = fast_path
        super().__init__()

    def normal_form(self, word: Sequence[str]) -> Word:
        self.check_letters(word)
        w = list(word)
        for _ in range(self.step_cap):
            pos_rule = None
            for i in range(len(w)):
                for lhs, rhs in self.rules:
                    if tuple(w[i : i + len(lhs)]) == lhs:
                        pos_rule = (i, lhs, rhs)
                        break
                if pos_rule:
                    break
            if pos_rule is None:
                return tuple(w)
            i, lhs, rhs = pos_rule
            w[i : i + len(lhs)] = list(rhs)
        raise NonTerminating(f"rewriting did not stabilize within {self.step_cap} steps")

    # Fast paths read the normal forms structurally: bicyclic normal forms
    # are q^a p^b (with generators ordered (p, q)); zero-monoid normal forms
    # are a^k or the zero letter (generators ordered (a, z)).

    def _bicyclic_exponents(self, w: Word) -> tuple[int, int]:
        p, q = self.generators
        a = 0
        while a < len(w) and w[a] == q:
            a += 1
        return a, len(w) - a

    def exact_distance(self, x: Word, y: Word) -> Optional[ExtNonNeg]:
        if self.fast_path == "bicyclic":
            a, b = self._bicyclic_exponents(x)
            c, d = self._bicyclic_exponents(y)
            if c < a:
                return INF
            if c == a:
                return ExtNonNeg.finite(d - b if d >= b else b - d)
            return ExtNonNeg.finite(b + (c - a) + d)
        if self.fast_path == "zero":
            _, z = self.generators
            if x == (z,):
                return ExtNonNeg.finite(0) if y == (z,) else INF
            if y == (z,):
                return ExtNonNeg.finite(1)
            return ExtNonNeg.finite(len(y) - len(x)) if len(y) >= len(x) else INF
        return None

    def exact_distance_witness(self, x: Word, y: Word) -> Optional[Word]:
        if self.fast_path == "bicyclic":
            p, q = self.generators
            a, b = self._bicyclic_exponents(x)
            c, d = self._bicyclic_exponents(y)
            if c < a:
                return None
            if c == a:
                return (p,) * (d - b) if d >= b else (q,) * (b - d)
            return (q,) * (b + c - a) + (p,) * d
        if self.fast_path == "zero":
            a_, z = self.generators
            if x == (z,):
                return () if y == (z,) else None
            if y == (z,):
                return (z,)
            return (a_,) * (len(y) - len(x)) if len(y) >= len(x) else None
        return None

    def left_divisor_candidates(self, y: Word, radius: int) -> Optional[list[Word]]:
        if self.fast_path == "bicyclic":
            p, q = self.generators
            c, d = self._bicyclic_exponents(y)
            out = []
            for a in range(c + 1):
                b_max = radius if a < c else d + radius
                for b in range(b_max + 1):
                    out.append((q,) * a + (p,) * b)
            return out
        if self.fast_path == "zero":
            a_, z = self.generators
            if y == (z,):
                return None  # everything reaches z; not enumerable
            return [(a_,) * j for j in range(len(y) + 1)]
        return None


def bicyclic_monoid() -> RewritingMonoid:
    return RewritingMonoid(["p", "q"], [(("p", "q"), ())], fast_path="bicyclic", name="bicyclic")


def zero_monoid() -> RewritingMonoid:
    rules = [(("a", "z"), ("z",)), (("z", "a"), ("z",)), (("z", "z"), ("z",))]
    return RewritingMonoid(["a", "z"], rules, fast_path="zero", name="zero")


def rewrite_normal_form(
    rules: Sequence[tuple[Sequence[str], Sequence[str]]],
    word: Sequence[str],
    step_cap: int = 10_000,
) -> Word:
    """Fixpoint of leftmost rewriting of `word` under `rules`."""
    letters = sorted({l for lhs, rhs in rules for l in tuple(lhs) + tuple(rhs)} | set(word))
    return RewritingMonoid(letters, rules, step_cap=step_cap).normal_form(tuple(word))


@dataclass
class SubmonoidSpec:
    """A submonoid given by a membership predicate (plus optional generators)."""

    membership: Callable[[Word], bool]
    generators: Optional[list[Word]] = None
    name: str = "submonoid"


class SubmonoidOracle(MonoidOracle):
    """A submonoid of a parent oracle, enumerated by filtering parent balls.

    Word length is measured in the parent's generators; the submonoid's own
    generating set is exactly what the extraction pipeline discovers.
    """

    def __init__(self, parent: MonoidOracle, spec: SubmonoidSpec):
        self.parent = parent
        self.spec = spec
        self.name = f"{spec.name}<{parent.name}"
        self.generators = parent.generators
        super().__init__()

    def normal_form(self, word: Sequence[str]) -> Word:
        return self.parent.normal_form(word)

    def multiply(self, u: Word, v: Word) -> Word:
        return self.parent.multiply(u, v)

    def exact_distance(self, x: Word, y: Word):
        return self.parent.exact_distance(x, y)

    def exact_distance_witness(self, x: Word, y: Word):
        return self.parent.exact_distance_witness(x, y)

    def contains(self, m: Word) -> bool:
        return self.spec.membership(m)

    def elements_up_to(self, n: int) -> list[Word]:
        return [m for m in self.parent.elements_up_to(n) if self.contains(m)]

    def ball_exhausted(self, n: int) -> bool:
        return self.parent.ball_exhausted(n)


def ends_in_group_identity_submonoid(monoid: FreeProductMonoid) -> SubmonoidSpec:
    """Elements of F*G whose alternating form ends with the group identity."""

    def member(m: Word) -> bool:
        alt = monoid.to_alternating(m)
        return alt.group_parts[-1] == monoid.group_identity

    return SubmonoidSpec(member, name="ends_in_e")


# ---------------------------------------------------------------------------
# Horizon-bounded property checkers
# ---------------------------------------------------------------------------


@dataclass
class Verdict:
    status: str  # "holds_at_horizon" | "fails"
    horizon: int
    witness: Optional[dict] = None

    @property
    def holds(self) -> bool:
        return self.status == "holds_at_horizon"

    def to_json(self) -> dict:
        doc = {"status": self.status, "horizon": self.horizon}
        if self.witness is not None:
            doc["witness"] = self.witness
        return doc


def check_cancellative(oracle: MonoidOracle, side: str, horizon: int) -> Verdict:
    """Search the horizon ball for a cancellation failure on the given side."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    ball = oracle.elements_up_to(horizon)
    for m in ball:
        seen: dict[Word, Word] = {}
        for a in ball:
            prod = oracle.multiply(m, a) if side == "left" else oracle.multiply(a, m)
            if prod in seen and seen[prod] != a:
                b = seen[prod]
                w = {
                    "m": format_word(m),
                    "a": format_word(a),
                    "b": format_word(b),
                    "product": format_word(prod),
                    "side": side,
                }
                return Verdict("fails", horizon, w)
            seen[prod] = a
    return Verdict("holds_at_horizon", horizon)


def check_finite_geometric_type(oracle: MonoidOracle, horizon: int, threshold: int) -> Verdict:
    """Count solutions a of a*b = c over the ball; fail when a count reaches threshold."""
    ball = oracle.elements_up_to(horizon)
    ball_set = set(ball)
    solutions: dict[tuple[Word, Word], list[Word]] = {}
    for a in ball:
        for b in ball:
            c = oracle.multiply(a, b)
            if c in ball_set:
                solutions.setdefault((b, c), []).append(a)
    worst = None
    for (b, c), sols in solutions.items():
        if worst is None or len(sols) > len(worst[2]):
            worst = (b, c, sols)
        if len(sols) >= threshold:
            w = {
                "b": format_word(b),
                "c": format_word(c),
                "count": len(sols),
                "solutions": [format_word(a) for a in sorted(sols)],
            }
            return Verdict("fails", horizon, w)
    return Verdict("holds_at_horizon", horizon)


def check_left_unitary(oracle: MonoidOracle, sub: SubmonoidSpec, horizon: int) -> Verdict:
    """Search for s in the submonoid and t outside it with s*t inside."""
    ball = oracle.elements_up_to(horizon)
    members = [m for m in ball if sub.membership(m)]
    non_members = [m for m in ball if not sub.membership(m)]
    if not sub.membership(oracle.identity):
        return Verdict("fails", horizon, {"reason": "identity not a member"})
    for s in members:
        for t in non_members:
            st = oracle.multiply(s, t)
            if sub.membership(st):
                w = {"s": format_word(s), "t": format_word(t), "st": format_word(st)}
                return Verdict("fails", horizon, w)
    return Verdict("holds_at_horizon", horizon)


# ---------------------------------------------------------------------------
# JSON monoid spec documents
# ---------------------------------------------------------------------------


def from_spec_dict(doc: dict) -> MonoidOracle:
    """Build an oracle from a monoid spec document (see README for the schema)."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise SpecParseError("monoid spec must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "free":
        return FreeMonoid(doc["rank"], alphabet=doc.get("alphabet"))
    if kind == "finite_group":
        return FiniteGroup(
            doc["elements"],
            doc["table"],
            identity=doc.get("identity", 0),
            generators=doc.get("generators"),
        )
    if kind == "table":
        return TableMonoid(
            doc["elements"],
            doc["table"],
            identity=doc.get("identity", 0),
            generators=doc.get("generators"),
        )
    if kind == "free_product":
        group = from_spec_dict(doc["group"])
        if not isinstance(group, FiniteGroup):
            raise SpecValidationError("free_product 'group' must be a finite_group spec")
        return FreeProductMonoid(doc["free_rank"], group, free_alphabet=doc.get("alphabet"))
    if kind == "rewriting":
        if not doc.get("confluent", False):
            raise SpecValidationError("rewriting spec must assert confluence ('confluent': true)")
        gens = list(doc["generators"])

        def side(text) -> tuple[str, ...]:
            # Rule sides are written as plain strings; tokenize greedily.
            if not isinstance(text, str):
                return tuple(text)
            letters: list[str] = []
            i = 0
            by_len = sorted(gens, key=len, reverse=True)
            while i < len(text):
                for g in by_len:
                    if text.startswith(g, i):
                        letters.append(g)
                        i += len(g)
                        break
                else:
                    raise SpecParseError(f"cannot tokenize rule side {text!r} at position {i}")
            return tuple(letters)

        rules = [(side(lhs), side(rhs)) for lhs, rhs in doc["rules"]]
        return RewritingMonoid(
            doc["generators"],
            rules,
            fast_path=doc.get("fast_path"),
            step_cap=doc.get("step_cap", 10_000),
        )
    raise SpecParseError(f"unknown monoid spec type {kind!r}")
