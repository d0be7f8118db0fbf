"""Curve-sets: one production word per edge class, plus the word transforms.

The substitution matrix counts letter r in the production of class c; its
common row sum is the order of the curve-set, which equals the squared
displacement of every non-constant production.  Curve families without a
common row sum exist but fall outside this framework; expansion and
rendering still work for them (a curve-set may carry no grid, only a turn
resolution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .exactgeom import Point, normalize_turn, phi, trace_tokens
from .gridmodel import GridSpec
from .words import Word, WordError, parse_word


class UnequalRowSums(ValueError):
    """Row sums of the substitution matrix differ; no order is defined."""

    def __init__(self, row_sums: dict[str, int]):
        self.row_sums = row_sums
        super().__init__(f"row sums differ: {row_sums}")


class TransformError(ValueError):
    pass


@dataclass(frozen=True)
class CurveSet:
    """Productions for every letter of a grid; constants map to themselves.

    ``grid`` may be None for freeform families; then ``turn`` supplies the
    turn resolution and no grid-level validation applies.
    """

    name: str
    grid: GridSpec | None
    productions: tuple[tuple[str, Word], ...]
    turn: int | None = None

    @staticmethod
    def make(
        name: str,
        grid: GridSpec | None,
        productions: Mapping[str, Word],
        turn: int | None = None,
    ) -> "CurveSet":
        if grid is not None:
            missing = [c for c in grid.letters if c not in productions]
            if missing:
                raise WordError(f"no production for letters {missing}")
            extra = [c for c in productions if c not in grid.letters]
            if extra:
                raise WordError(f"productions for unknown letters {extra}")
            items = tuple((c, productions[c]) for c in grid.letters)
        else:
            items = tuple(sorted(productions.items()))
        return CurveSet(name, grid, items, turn)

    @property
    def n(self) -> int:
        if self.grid is not None:
            return self.grid.n
        if self.turn is None:
            raise ValueError(f"curve-set {self.name!r} has no turn resolution")
        return self.turn

    @cached_property
    def prod(self) -> dict[str, Word]:
        return dict(self.productions)

    @property
    def letters(self) -> tuple[str, ...]:
        if self.grid is not None:
            return self.grid.letters
        return tuple(c for c, _ in self.productions)

    @cached_property
    def constants(self) -> frozenset[str]:
        return frozenset(
            c for c, w in self.productions if w.tokens == (c,)
        )

    def production(self, letter: str) -> Word:
        return self.prod[letter]

    def displacement(self, letter: str) -> Point:
        """End point of the production traced from the origin, direction 0."""
        end, _, _ = trace_tokens(self.production(letter).tokens, self.n)
        return Point(self.n, end)

    def with_name(self, name: str) -> "CurveSet":
        return CurveSet(name, self.grid, self.productions, self.turn)


def expand(cs: CurveSet, axiom: Word, k: int) -> Word:
    """Apply the productions k times to the axiom."""
    if k < 0:
        raise ValueError("iteration count must be >= 0")
    tokens: Sequence = axiom.tokens
    prod = {c: w.tokens for c, w in cs.productions}
    for _ in range(k):
        out: list = []
        for tok in tokens:
            if isinstance(tok, int):
                if out and isinstance(out[-1], int):
                    out[-1] += tok
                else:
                    out.append(tok)
            else:
                repl = prod.get(tok)
                if repl is None:
                    raise WordError(f"letter {tok!r} has no production")
                if out and isinstance(out[-1], int) and isinstance(repl[0], int):
                    out[-1] += repl[0]
                    out.extend(repl[1:])
                else:
                    out.extend(repl)
        tokens = out
    return Word(tokens)


def expand_tagged(cs: CurveSet, axiom: Word, k: int) -> tuple[Word, list[int]]:
    """Expand and tag every letter of the result with the index of the
    first-iterate edge it descends from (ancestor coloring)."""
    first = expand(cs, axiom, min(k, 1))
    if k == 0:
        return first, list(range(first.nletters()))
    tokens = list(first.tokens)
    tags: list[int] = []
    i = 0
    for tok in tokens:
        if isinstance(tok, str):
            tags.append(i)
            i += 1
    prod = {c: w.tokens for c, w in cs.productions}
    for _ in range(k - 1):
        out: list = []
        newtags: list[int] = []
        ti = 0
        for tok in tokens:
            if isinstance(tok, int):
                if out and isinstance(out[-1], int):
                    out[-1] += tok
                else:
                    out.append(tok)
            else:
                repl = prod[tok]
                tag = tags[ti]
                ti += 1
                if out and isinstance(out[-1], int) and isinstance(repl[0], int):
                    out[-1] += repl[0]
                    out.extend(repl[1:])
                else:
                    out.extend(repl)
                newtags.extend(tag for t in repl if isinstance(t, str))
        tokens = out
        tags = newtags
    return Word(tokens), tags


@dataclass(frozen=True)
class SubstMatrix:
    """entries[r][c] = number of letters[r] in the production of letters[c]."""

    letters: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def row_sums(self) -> dict[str, int]:
        return {
            c: sum(self.entries[i]) for i, c in enumerate(self.letters)
        }

    def __getitem__(self, rc: tuple[str, str]) -> int:
        r, c = rc
        return self.entries[self.letters.index(r)][self.letters.index(c)]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __str__(self) -> str:
        return "[" + ",".join(
            "[" + ",".join(str(x) for x in row) + "]" for row in self.entries
        ) + "]"


def subst_matrix(cs: CurveSet) -> SubstMatrix:
    letters = cs.letters
    idx = {c: i for i, c in enumerate(letters)}
    cols = {c: cs.production(c).letters() for c in letters}
    entries = tuple(
        tuple(cols[c].count(r) for c in letters) for r in letters
    )
    return SubstMatrix(letters, entries)


def order(cs: CurveSet) -> int:
    m = subst_matrix(cs)
    sums = m.row_sums()
    values = set(sums.values())
    if len(values) != 1:
        raise UnequalRowSums(sums)
    return values.pop()


def is_irreducible(m: SubstMatrix) -> bool:
    """True iff the letter-dependency digraph is strongly connected."""
    k = len(m.letters)
    # arc c -> r whenever letter r occurs in the production of c
    fwd = [[r for r in range(k) if m.entries[r][c] > 0] for c in range(k)]
    bwd = [[c for c in range(k) if m.entries[r][c] > 0] for r in range(k)]

    def reach(adj):
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    return len(reach(fwd)) == k and len(reach(bwd)) == k


def reachable_letters(m: SubstMatrix, letter: str) -> list[str]:
    start = m.letters.index(letter)
    k = len(m.letters)
    fwd = [[r for r in range(k) if m.entries[r][c] > 0] for c in range(k)]
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in fwd[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return [c for i, c in enumerate(m.letters) if i in seen]


def spectral_radius(entries: Sequence[Sequence[int]], tol: float = 1e-12) -> float:
    """Largest eigenvalue modulus of a nonnegative integer matrix.

    Power iteration on M + I (the shift forces aperiodicity so the
    iteration converges even for cyclic dependency structures).
    """
    k = len(entries)
    v = [1.0] * k
    prev = 0.0
    for _ in range(100000):
        w = [
            sum(entries[i][j] * v[j] for j in range(k)) + v[i]
            for i in range(k)
        ]
        norm = max(abs(x) for x in w)
        if norm == 0:
            return 0.0
        v = [x / norm for x in w]
        if abs(norm - prev) <= tol * max(1.0, norm):
            return norm - 1.0
        prev = norm
    return prev - 1.0


def dimension(cs: CurveSet, letter: str) -> float:
    """Similarity dimension of one curve: 2*log_R(rho) over the letters
    reachable from it; constants give 0."""
    r = order(cs)
    m = subst_matrix(cs)
    keep = reachable_letters(m, letter)
    idx = [m.letters.index(c) for c in keep]
    sub = [[m.entries[i][j] for j in idx] for i in idx]
    rho = spectral_radius(sub)
    if rho <= 1.0:
        return 0.0
    return 2.0 * math.log(rho) / math.log(r)


# -- word transforms ---------------------------------------------------


def make_folding(prod_l: Word) -> Word:
    """Companion production: reverse, swap + with -, and swap L with R."""
    if not prod_l.alphabet() <= {"L", "R"}:
        raise TransformError("folding construction needs the alphabet {L, R}")
    return prod_l.reversed_complement({"L": "R", "R": "L"})


def reversal_complement(prod: Word, relabel: dict[str, str] | None = None) -> Word:
    """Reverse the word, negate all turns, and relabel letters."""
    return prod.reversed_complement(relabel)


def drop_letters_normalize(
    cs: CurveSet, drop: Iterable[str], target_n: int | None = None
) -> CurveSet:
    """Remove constant letters from all productions and merge the turns.

    Merged turns are reduced mod n into (-n/2, n/2].  With target_n the
    turns are rescaled by n/target_n (all merged turns must be divisible);
    half-turn results become U-turns on the coarser resolution.
    """
    drop = set(drop)
    n = cs.n
    bad = drop - cs.constants
    if bad:
        raise TransformError(f"letters {sorted(bad)} are not constants")
    out: dict[str, Word] = {}
    for letter, w in cs.productions:
        if letter in drop:
            continue
        kept = Word(t for t in w.tokens if isinstance(t, int) or t not in drop)
        kept = kept.normalized(n)
        if target_n is not None:
            if n % target_n:
                raise TransformError(f"{target_n} does not divide {n}")
            scale = n // target_n
            rescaled = []
            for t in kept.tokens:
                if isinstance(t, int):
                    if t % scale:
                        raise TransformError(
                            f"turn {t} not divisible by {scale} when rescaling"
                        )
                    rescaled.append(normalize_turn(t // scale, target_n))
                else:
                    rescaled.append(t)
            kept = Word(rescaled)
        out[letter] = kept
    return CurveSet.make(
        cs.name + "-dropped",
        None,
        out,
        turn=target_n if target_n is not None else n,
    )


def rewrite(text: str, rules: Sequence[tuple[str, str]], n: int | None = None) -> Word:
    """Apply ordered global textual substitutions, then reparse as a word
    (adjacent turn runs produced by the rules are merged)."""
    for find, repl in rules:
        text = text.replace(find, repl)
    return parse_word(text, n, merge_adjacent=True)


TRIANGLE_EMBED_RULES: tuple[tuple[str, str], ...] = (
    ("+", "p"),
    ("-", "m"),
    ("0", "n"),
    ("p", "B++D++E--C"),
    ("m", "B++D--E--C"),
    ("n", "B++D0E--C"),
    ("F", "+A-"),
)

SQUARE_POINT_RULES: tuple[tuple[str, str], ...] = (
    ("+", "+F+"),
    ("A", "+F-F-F+"),
    ("!", "--F--"),
)


def embed_triangle_word(text: str) -> Word:
    """Lift a one-letter triangle-grid word onto the five-letter grid whose
    A-edges form the triangle grid; the result uses turn resolution 6."""
    for find, repl in TRIANGLE_EMBED_RULES:
        text = text.replace(find, repl)
    if text.startswith("+"):
        text = text[1:]
    if text.endswith("-"):
        text = text[:-1]
    return parse_word(text, 6, merge_adjacent=True)


def decorate_square_point_word(text: str) -> Word:
    """Re-render a double-square-grid word so it traverses the points of the
    truncated square grid; the result uses turn resolution 8."""
    for find, repl in SQUARE_POINT_RULES:
        text = text.replace(find, repl)
    return parse_word(text, 8, merge_adjacent=True)


def infer_turns(seq: str, grid: GridSpec) -> Word:
    """Insert the unique turns between consecutive letters of a turn-free
    word, on grids where the letter pair determines the turn."""
    tokens: list = []
    prev: str | None = None
    for c in seq:
        if c.isspace():
            continue
        if c in "+-0!":
            raise TransformError("sequence already contains turns")
        if prev is not None:
            turns = grid.pair_turns.get((prev, c))
            if turns is None:
                raise TransformError(f"no transition from {prev!r} to {c!r}")
            if len(turns) > 1:
                raise TransformError(
                    f"turn between {prev!r} and {c!r} is ambiguous: {turns}"
                )
            tokens.append(turns[0])
        tokens.append(c)
        prev = c
    return Word(tokens)
