"""Concrete semigroups and their bounded enumeration.

Three backends share one element interface (``generators``, ``multiply``,
hashable canonical elements):

* :class:`TransformationBackend` -- partial maps of ``{0..n-1}`` acting on
  the right, stored as image tuples with ``None`` for undefined points.
* :class:`~semitop.rewriting.RewritingBackend` -- shortlex normal forms.
* :class:`ReesMatrixBackend` -- triples ``(i, g, lam)`` over Z^k.

Letters always act by right multiplication.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .rewriting import BoundExceeded, RewritingBackend, knuth_bendix
from .words import MONOID, SEMIGROUP, Presentation, PresentationError, Word, format_word, make_alphabet

COMPLETE = "complete"
TRUNCATED = "truncated"
UNKNOWN_EQUALITY = "unknown-equality"


@dataclass(frozen=True)
class TransformationBackend:
    degree: int
    maps: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        maps = tuple(tuple(m) for m in self.maps)
        for m in maps:
            if len(m) != self.degree:
                raise ValueError(f"map {m} does not have {self.degree} entries")
            for x in m:
                if x is not None and not 0 <= x < self.degree:
                    raise ValueError(f"image {x} out of range in {m}")
        object.__setattr__(self, "maps", maps)

    exact = True

    @property
    def generators(self):
        return self.maps

    @property
    def identity(self):
        return tuple(range(self.degree))

    def multiply(self, a, b):
        # a first, then b
        return tuple(None if x is None else b[x] for x in a)


@dataclass(frozen=True)
class ReesMatrixBackend:
    """Rees matrix semigroup M(Z^k; I, Lambda; P) without zero.

    ``sandwich[lam][i]`` is the k-vector p_{lam,i}; the product is
    ``(i, g, lam)(j, h, mu) = (i, g + p_{lam,j} + h, mu)``.
    """

    rank: int
    n_rows: int
    n_cols: int
    sandwich: tuple
    gens: tuple

    def __post_init__(self):
        sandwich = tuple(tuple(tuple(v) for v in row) for row in self.sandwich)
        if len(sandwich) != self.n_cols or any(len(row) != self.n_rows for row in sandwich):
            raise ValueError("sandwich matrix must be |Lambda| x |I|")
        if any(len(v) != self.rank for row in sandwich for v in row):
            raise ValueError(f"sandwich entries must be {self.rank}-vectors")
        gens = tuple((i, tuple(g), lam) for i, g, lam in self.gens)
        for i, g, lam in gens:
            if not (0 <= i < self.n_rows and 0 <= lam < self.n_cols and len(g) == self.rank):
                raise ValueError(f"bad generator {(i, g, lam)}")
        object.__setattr__(self, "sandwich", sandwich)
        object.__setattr__(self, "gens", gens)

    exact = True
    identity = None

    @property
    def generators(self):
        return self.gens

    def multiply(self, a, b):
        i, g, lam = a
        j, h, mu = b
        p = self.sandwich[lam][j]
        return (i, tuple(x + y + z for x, y, z in zip(g, p, h)), mu)

    def r_key(self, a):
        """R-classes of a completely simple semigroup are its rows."""
        return a[0]

    def step_bound(self) -> int:
        """Max change of |g|_1 under right multiplication by a generator."""
        gen = max(sum(map(abs, g)) for _, g, _ in self.gens)
        return gen + max(sum(map(abs, v)) for row in self.sandwich for v in row)

    def r_class_window(self, row: int, radius: int):
        """Elements (row, g, lam) of one R-class with |g|_1 <= radius."""
        vecs = [()]
        for _ in range(self.rank):
            vecs = [v + (x,) for v in vecs for x in range(-radius, radius + 1)]
        vecs = [v for v in vecs if sum(map(abs, v)) <= radius]
        return [(row, v, lam) for lam in range(self.n_cols) for v in vecs]

    def idempotent_count(self) -> int:
        return self.n_rows * self.n_cols

    def regular_witness(self, a):
        # x = (i', h, lam') with g + p_{lam,i'} + h + p_{lam',i} + g = g
        i, g, lam = a
        p1, p2 = self.sandwich[lam][0], self.sandwich[0][i]
        return (0, tuple(-x - y - z for x, y, z in zip(g, p1, p2)), 0)


@dataclass(frozen=True)
class Semigroup:
    """A semigroup (or monoid) given by a backend and named generators."""

    backend: object
    alphabet: tuple[str, ...]
    kind: str = SEMIGROUP
    presentation: Presentation | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", make_alphabet(self.alphabet))
        if len(self.backend.generators) != len(self.alphabet):
            raise ValueError("one backend generator per alphabet symbol required")
        if self.kind == MONOID and self.backend.identity is None:
            raise ValueError("backend has no identity; use semigroup kind")
        if self.presentation is not None and self.presentation.alphabet != self.alphabet:
            raise ValueError("presentation alphabet differs from the semigroup's")

    @property
    def is_monoid(self) -> bool:
        return self.kind == MONOID

    @property
    def generators(self):
        return self.backend.generators

    @property
    def exact(self) -> bool:
        """Whether equality of canonical forms is equality in S."""
        return self.backend.exact

    @property
    def identity(self):
        return self.backend.identity if self.is_monoid else None

    def multiply(self, a, b):
        return self.backend.multiply(a, b)

    def evaluate(self, word):
        word = tuple(word)
        if not word:
            if not self.is_monoid:
                raise ValueError("empty word does not name an element of a semigroup")
            return self.backend.identity
        if isinstance(self.backend, RewritingBackend):
            return self.backend.normal_form(word)
        gens = self.generators
        result = gens[word[0]]
        for letter in word[1:]:
            result = self.backend.multiply(result, gens[letter])
        return result

    def word(self, text: str) -> Word:
        lookup = {s: i for i, s in enumerate(self.alphabet)}
        tokens = text.split()
        if tokens == ["1"]:
            tokens = []
        try:
            return tuple(lookup[t] for t in tokens)
        except KeyError as exc:
            raise ValueError(f"unknown generator {exc.args[0]!r}") from None

    def relations_hold(self, presentation: Presentation | None = None):
        """Return the relations u = v of the presentation that fail in S."""
        p = presentation or self.presentation
        if p is None:
            return []
        return [(u, v) for u, v in p.relations if self.evaluate(u) != self.evaluate(v)]

    @classmethod
    def from_presentation(cls, p: Presentation, max_rules: int = 500,
                          max_len: int | None = None) -> "Semigroup":
        backend = knuth_bendix(p, max_rules=max_rules, max_len=max_len)
        return cls(backend, p.alphabet, p.kind, p)


@dataclass
class Enumeration:
    """Elements of S_n in shortlex order of their shortest witnesses.

    ``right[i][x]`` is the index of ``elements[i] * x`` or ``None`` when that
    product lies outside the enumerated set.
    """

    semigroup: Semigroup
    max_len: int
    elements: list
    words: list
    index: dict
    right: list
    status: str
    _left: list | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(zip(self.elements, self.words))

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    @property
    def identity_index(self):
        if self.semigroup.is_monoid:
            return self.index[self.semigroup.identity]
        return None

    def length(self, i: int) -> int:
        return len(self.words[i])

    def lookup(self, element):
        return self.index.get(element)

    def product(self, i: int, j: int):
        """Index of elements[i] * elements[j], or None if not enumerated."""
        return self.index.get(self.semigroup.multiply(self.elements[i], self.elements[j]))

    @property
    def left(self):
        """Left Cayley graph: ``left[i][x]`` is the index of x * elements[i]."""
        if self._left is None:
            gens = self.semigroup.generators
            mult = self.semigroup.multiply
            self._left = [tuple(self.index.get(mult(g, s)) for g in gens) for s in self.elements]
        return self._left

    def format(self, i: int) -> str:
        return format_word(self.words[i], self.semigroup.alphabet)

    def level_counts(self):
        """Number of elements with shortest witness of each length."""
        counts = Counter(len(w) for w in self.words)
        return [counts.get(n, 0) for n in range(self.max_len + 1)]


@lru_cache(maxsize=64)
def enumerate_semigroup(s: Semigroup, max_len: int, max_size: int | None = None) -> Enumeration:
    """Breadth-first closure under right multiplication by generators.

    Stops early once no new elements appear (the semigroup is finite and
    fully enumerated); otherwise returns S_max_len flagged truncated.  With
    ``max_size``, no elements are added past that many (also truncated).
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    gens = s.generators
    mult = s.multiply
    elements, words, index = [], [], {}

    def add(elt, word):
        index[elt] = len(elements)
        elements.append(elt)
        words.append(word)

    status = COMPLETE
    if s.is_monoid:
        add(s.identity, ())
    if max_len >= 1:
        for x, g in enumerate(gens):
            if g not in index:
                add(g, (x,))
    elif gens:
        status = TRUNCATED
    right = []
    i = 0
    while i < len(elements):
        word = words[i]
        row = []
        for x, g in enumerate(gens):
            try:
                prod = mult(elements[i], g)
            except BoundExceeded:
                status = TRUNCATED
                row.append(None)
                continue
            j = index.get(prod)
            if j is None:
                if len(word) + 1 <= max_len and (max_size is None or len(elements) < max_size):
                    j = len(elements)
                    add(prod, word + (x,))
                else:
                    status = TRUNCATED
            row.append(j)
        right.append(tuple(row))
        i += 1
    if not s.exact:
        status = UNKNOWN_EQUALITY
    return Enumeration(s, max_len, elements, words, index, right, status)


def table_presentation(enum: Enumeration) -> Presentation:
    """Defining relations read off a complete right Cayley graph.

    For every element w_i and generator x with w_i x not itself the chosen
    witness of its value, emit ``w_i x = w_j``.  Rewriting left to right with
    these relations sends every word to its witness, so they present S.
    """
    if not enum.complete:
        raise ValueError("multiplication-table presentation needs a complete enumeration")
    s = enum.semigroup
    rels = []
    for i, row in enumerate(enum.right):
        for x, j in enumerate(row):
            lhs = enum.words[i] + (x,)
            if enum.words[j] != lhs:
                rels.append((lhs, enum.words[j]))
    return Presentation(s.alphabet, tuple(rels), s.kind)


def with_table_presentation(s: Semigroup, max_len: int = 1000) -> Semigroup:
    enum = enumerate_semigroup(s, max_len)
    return Semigroup(s.backend, s.alphabet, s.kind, table_presentation(enum))


# ---------------------------------------------------------------------------
# file formats

def _clean_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_transformations(text: str) -> Semigroup:
    """Parse ``degree: n`` followed by ``name: [i1,...,in]`` lines.

    Points are 1-based in the file, ``-`` marks an undefined point.  An
    optional ``kind: monoid`` line selects monoid kind.
    """
    degree = None
    kind = SEMIGROUP
    names, maps = [], []
    for lineno, line in _clean_lines(text):
        key, _, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        if not _:
            raise PresentationError("expected 'name: value'", lineno, 1)
        if key == "degree" and degree is None:
            degree = int(rest)
        elif key == "kind":
            kind = rest
        else:
            if degree is None:
                raise PresentationError("'degree:' must come first", lineno, 1)
            m = re.fullmatch(r"\[(.*)\]", rest)
            if not m:
                raise PresentationError("expected [i1,...,in]", lineno, line.index(rest) + 1)
            entries = [e.strip() for e in m.group(1).split(",")]
            images = []
            for e in entries:
                if e == "-":
                    images.append(None)
                else:
                    v = int(e)
                    if not 1 <= v <= degree:
                        raise PresentationError(f"point {v} out of range", lineno, 1)
                    images.append(v - 1)
            if len(images) != degree:
                raise PresentationError(f"expected {degree} entries", lineno, 1)
            names.append(key)
            maps.append(tuple(images))
    if degree is None:
        raise PresentationError("missing 'degree:' line", 1, 1)
    return Semigroup(TransformationBackend(degree, tuple(maps)), tuple(names), kind)


def format_transformations(s: Semigroup) -> str:
    b = s.backend
    lines = [f"degree: {b.degree}"]
    if s.is_monoid:
        lines.append("kind: monoid")
    for name, m in zip(s.alphabet, b.maps):
        lines.append(f"{name}: [" + ",".join("-" if x is None else str(x + 1) for x in m) + "]")
    return "\n".join(lines) + "\n"


_VEC = re.compile(r"\(([^()]*)\)|(-?\d+)")


def _vectors(text, k):
    out = []
    for m in _VEC.finditer(text):
        if m.group(1) is not None:
            v = tuple(int(t) for t in m.group(1).replace(",", " ").split())
        else:
            v = (int(m.group(2)),)
        if len(v) != k:
            raise ValueError(f"expected a {k}-vector, got {v}")
        out.append(v)
    return out


def parse_rees(text: str) -> Semigroup:
    """Parse ``rees: k |I| |Lambda|``, the sandwich rows, then generators.

    Each of the |Lambda| sandwich rows lists |I| vectors written ``(v1 .. vk)``
    (a bare integer is allowed when k = 1).  Generators are
    ``name: (i, v1 .. vk, lam)`` with 0-based i and lam.
    """
    lines = list(_clean_lines(text))
    if not lines or not lines[0][1].startswith("rees:"):
        raise PresentationError("expected 'rees: k |I| |Lambda|'", 1, 1)
    try:
        k, n_rows, n_cols = (int(t) for t in lines[0][1][5:].split())
    except ValueError:
        raise PresentationError("expected three integers after 'rees:'", lines[0][0], 6) from None
    if len(lines) < 1 + n_cols:
        raise PresentationError("missing sandwich matrix rows", lines[-1][0], 1)
    sandwich = []
    for lineno, line in lines[1:1 + n_cols]:
        try:
            row = _vectors(line, k)
        except ValueError as exc:
            raise PresentationError(str(exc), lineno, 1) from None
        if len(row) != n_rows:
            raise PresentationError(f"expected {n_rows} entries in sandwich row", lineno, 1)
        sandwich.append(tuple(row))
    names, gens = [], []
    for lineno, line in lines[1 + n_cols:]:
        name, sep, rest = line.partition(":")
        if not sep:
            name, rest = f"g{len(gens)}", line
        nums = [int(t) for t in re.findall(r"-?\d+", rest)]
        if len(nums) != k + 2:
            raise PresentationError(f"expected (i, {k} integers, lam)", lineno, 1)
        names.append(name.strip())
        gens.append((nums[0], tuple(nums[1:-1]), nums[-1]))
    try:
        backend = ReesMatrixBackend(k, n_rows, n_cols, tuple(sandwich), tuple(gens))
    except ValueError as exc:
        raise PresentationError(str(exc), lines[0][0], 1) from None
    return Semigroup(backend, tuple(names), SEMIGROUP)


def format_rees(s: Semigroup) -> str:
    b = s.backend
    lines = [f"rees: {b.rank} {b.n_rows} {b.n_cols}"]
    for row in b.sandwich:
        lines.append(" ".join("(" + " ".join(map(str, v)) + ")" for v in row))
    for name, (i, g, lam) in zip(s.alphabet, b.gens):
        lines.append(f"{name}: ({i}, {' '.join(map(str, g))}, {lam})")
    return "\n".join(lines) + "\n"
