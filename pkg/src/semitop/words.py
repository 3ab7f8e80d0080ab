"""Words, alphabets and semigroup/monoid presentations.

A word is a tuple of letter indices into an alphabet (a tuple of distinct
symbol names).  Words are compared in shortlex order, with letters ordered
by their position in the alphabet.

Text format::

    monoid                 # or: semigroup
    generators: b c
    b c = 1                # "1" is the empty word (monoid kind only)

A ``;`` acts like a line break, so ``"monoid; generators: b c; b c = 1"``
is the same presentation.  An optional ``relations:`` keyword may precede
the relation lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple  # tuple[int, ...]

SEMIGROUP = "semigroup"
MONOID = "monoid"
KINDS = (SEMIGROUP, MONOID)


class PresentationError(ValueError):
    """Malformed presentation text or an invalid presentation."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)


def shortlex_key(word: Sequence[int]):
    return (len(word), tuple(word))


def make_alphabet(symbols: Iterable[str]) -> tuple[str, ...]:
    symbols = tuple(symbols)
    if not symbols:
        raise PresentationError("alphabet must be non-empty")
    seen = set()
    for sym in symbols:
        if sym in seen:
            raise PresentationError(f"duplicate generator name {sym!r}")
        if sym == "1" or not sym or any(ch.isspace() for ch in sym):
            raise PresentationError(f"invalid generator name {sym!r}")
        seen.add(sym)
    return symbols


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Read a whitespace-separated word; ``1`` or blank is the empty word."""
    lookup = {sym: i for i, sym in enumerate(alphabet)}
    tokens = text.split()
    if tokens == ["1"]:
        return ()
    try:
        return tuple(lookup[tok] for tok in tokens)
    except KeyError as exc:
        raise PresentationError(f"unknown generator {exc.args[0]!r}") from None


def format_word(word: Sequence[int], alphabet: Sequence[str]) -> str:
    if not word:
        return "1"
    return " ".join(alphabet[i] for i in word)


@dataclass(frozen=True)
class Presentation:
    """A presentation <X | R> of a semigroup or a monoid."""

    alphabet: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...] = ()
    kind: str = SEMIGROUP

    def __post_init__(self):
        object.__setattr__(self, "alphabet", make_alphabet(self.alphabet))
        rels = tuple((tuple(u), tuple(v)) for u, v in self.relations)
        object.__setattr__(self, "relations", rels)
        if self.kind not in KINDS:
            raise PresentationError(f"unknown kind {self.kind!r}")
        n = len(self.alphabet)
        for u, v in rels:
            for letter in u + v:
                if not 0 <= letter < n:
                    raise PresentationError(f"letter {letter} out of range")
            if self.kind == SEMIGROUP and (not u or not v):
                raise PresentationError("empty word in a semigroup presentation")

    @property
    def is_monoid(self) -> bool:
        return self.kind == MONOID

    def word(self, text: str) -> Word:
        w = parse_word(text, self.alphabet)
        if not w and not self.is_monoid:
            raise PresentationError("empty word in a semigroup presentation")
        return w

    def format_word(self, word: Sequence[int]) -> str:
        return format_word(word, self.alphabet)

    def __str__(self):
        return format_presentation(self)


def _segments(text: str):
    """Yield (line number, column offset, content) with comments removed."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for piece in line.split(";"):
            if piece.strip():
                lead = len(piece) - len(piece.lstrip())
                yield lineno, offset + lead + 1, piece.strip()
            offset += len(piece) + 1


def parse_presentation(text: str) -> Presentation:
    segments = list(_segments(text))
    if not segments:
        raise PresentationError("empty presentation", 1, 1)
    lineno, col, head = segments[0]
    if head not in KINDS:
        raise PresentationError(f"expected 'semigroup' or 'monoid', got {head!r}", lineno, col)
    kind = head
    if len(segments) < 2 or not segments[1][2].startswith("generators:"):
        where = segments[1] if len(segments) > 1 else (lineno + 1, 1, "")
        raise PresentationError("expected 'generators:' line", where[0], where[1])
    lineno, col, gens = segments[1]
    names = gens[len("generators:"):].split()
    seen = set()
    for name in names:
        if name in seen:
            raise PresentationError(f"duplicate generator name {name!r}", lineno,
                                    col + gens.index(name, len("generators:")))
        seen.add(name)
    try:
        alphabet = make_alphabet(names)
    except PresentationError as exc:
        raise PresentationError(str(exc), lineno, col) from None
    lookup = {sym: i for i, sym in enumerate(alphabet)}

    relations = []
    for lineno, col, content in segments[2:]:
        if content.startswith("relations:"):
            col += len("relations:")
            rest = content[len("relations:"):]
            content = rest.strip()
            col += len(rest) - len(rest.lstrip())
            if not content:
                continue
        if content.count("=") != 1:
            raise PresentationError("expected '<word> = <word>'", lineno, col)
        left, right = content.split("=")
        sides = []
        for side, side_col in ((left, col), (right, col + len(left) + 1)):
            tokens = side.split()
            if not tokens:
                raise PresentationError("missing word (use 1 for the empty word)", lineno, side_col)
            if tokens == ["1"]:
                if kind == SEMIGROUP:
                    raise PresentationError("empty word in a semigroup presentation",
                                            lineno, side_col + side.index("1"))
                sides.append(())
                continue
            word = []
            pos = 0
            for tok in tokens:
                pos = side.index(tok, pos)
                if tok not in lookup:
                    raise PresentationError(f"unknown generator {tok!r}", lineno, side_col + pos)
                word.append(lookup[tok])
                pos += len(tok)
            sides.append(tuple(word))
        relations.append((sides[0], sides[1]))
    return Presentation(alphabet, tuple(relations), kind)


def format_presentation(p: Presentation) -> str:
    lines = [p.kind, "generators: " + " ".join(p.alphabet)]
    for u, v in p.relations:
        lines.append(f"{p.format_word(u)} = {p.format_word(v)}")
    return "\n".join(lines) + "\n"
