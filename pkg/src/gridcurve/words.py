"""Words: alternating edge letters and integer turn amounts.

A word like ``F+F--F`` is stored as the token tuple ``('F', 1, 'F', -2, 'F')``.
Turns count in units of 2*pi/n for whatever grid the word is drawn on; the
U-turn on double-edge grids is written ``!`` and stored as +n/2.  Boundary
words of tiles carry a trailing turn, e.g. ``[A++]^6`` expands to six letters
``A`` with a ``++`` after each.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class WordError(ValueError):
    pass


def _merge_tokens(tokens: Iterable) -> tuple:
    out: list = []
    for tok in tokens:
        if isinstance(tok, int):
            if out and isinstance(out[-1], int):
                out[-1] += tok
            else:
                out.append(tok)
        elif isinstance(tok, str) and len(tok) == 1:
            out.append(tok)
        else:
            raise WordError(f"bad token {tok!r}")
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Immutable token sequence; adjacent turns are merged on construction."""

    tokens: tuple

    def __init__(self, tokens: Iterable = ()):
        object.__setattr__(self, "tokens", _merge_tokens(tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator:
        return iter(self.tokens)

    def __bool__(self) -> bool:
        return bool(self.tokens)

    def letters(self) -> list[str]:
        return [t for t in self.tokens if isinstance(t, str)]

    def nletters(self) -> int:
        return sum(1 for t in self.tokens if isinstance(t, str))

    def turns(self) -> list[int]:
        return [t for t in self.tokens if isinstance(t, int)]

    def net_turn(self) -> int:
        return sum(self.turns())

    def alphabet(self) -> set[str]:
        return set(self.letters())

    def concat(self, turn: int, other: "Word") -> "Word":
        return Word(self.tokens + (turn,) + other.tokens)

    def repeated(self, k: int) -> "Word":
        if k < 0:
            raise WordError("negative repetition")
        return Word(self.tokens * k)

    def reversed_complement(self, relabel: dict[str, str] | None = None) -> "Word":
        relabel = relabel or {}
        out = []
        for tok in reversed(self.tokens):
            if isinstance(tok, int):
                out.append(-tok)
            else:
                out.append(relabel.get(tok, tok))
        return Word(out)

    def relabeled(self, relabel: dict[str, str]) -> "Word":
        return Word(relabel.get(t, t) if isinstance(t, str) else t for t in self.tokens)

    def normalized(self, n: int) -> "Word":
        """Reduce every turn mod n into (-n/2, n/2]."""
        from .exactgeom import normalize_turn

        return Word(
            normalize_turn(t, n) if isinstance(t, int) else t for t in self.tokens
        )

    def pairs(self) -> list[tuple[str, int, str]]:
        """Interior (letter, turn, letter) triples, in order."""
        out = []
        toks = self.tokens
        i = 0
        while i + 2 < len(toks) or (i + 2 == len(toks) and isinstance(toks[i], str)):
            if (
                i + 2 < len(toks)
                and isinstance(toks[i], str)
                and isinstance(toks[i + 1], int)
                and isinstance(toks[i + 2], str)
            ):
                out.append((toks[i], toks[i + 1], toks[i + 2]))
            i += 1
        return out

    def to_string(self, n: int | None = None, double: bool = True) -> str:
        parts = []
        for tok in self.tokens:
            if isinstance(tok, str):
                parts.append(tok)
            else:
                parts.append(format_turn(tok, n, double))
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Word({self.to_string()!r})"


def format_turn(t: int, n: int | None = None, double: bool = True) -> str:
    if t == 0:
        return "0"
    if n is not None:
        if abs(t) > n // 2:
            raise WordError(f"turn {t} not printable at resolution {n}")
        if n % 2 == 0 and t == n // 2 and double:
            return "!"
    return ("+" if t > 0 else "-") * abs(t)


def parse_word(text: str, n: int | None = None,
               merge_adjacent: bool = False) -> Word:
    """Parse a bare word like ``F+F-F`` or a tile form ``[A++]^6``.

    ``!`` requires n (it stands for a turn of n/2).  Turn runs longer than
    n/2 are rejected when n is known.  Adjacent runs of different turn
    characters are rejected unless merge_adjacent is set (rewrite recipes
    produce them legitimately).
    """
    text = text.strip()
    if text.startswith("["):
        close = text.index("]")
        inner = text[1:close]
        rest = text[close + 1 :].strip()
        if not rest.startswith("^"):
            raise WordError("tile form needs an exponent: [word]^k")
        k = int(rest[1:])
        return parse_word(inner, n, merge_adjacent).repeated(k)
    tokens: list = []
    i = 0
    while i < len(text):
        c = text[i]
        if c in "+-":
            j = i
            while j < len(text) and text[j] == c:
                j += 1
            run = j - i
            if n is not None and run > n // 2:
                raise WordError(f"turn of {run} exceeds {n}//2 units")
            tokens.append(run if c == "+" else -run)
            i = j
        elif c == "0":
            tokens.append(0)
            i += 1
        elif c == "!":
            if n is None:
                raise WordError("'!' needs a known turn resolution")
            if n % 2:
                raise WordError("'!' needs an even turn resolution")
            tokens.append(n // 2)
            i += 1
        elif c.isalpha():
            tokens.append(c)
            i += 1
        elif c.isspace():
            i += 1
        else:
            raise WordError(f"unexpected character {c!r} in word")
    if not merge_adjacent:
        for a, b in zip(tokens, tokens[1:]):
            if isinstance(a, int) and isinstance(b, int):
                raise WordError("adjacent turns in source word")
    return Word(tokens)
