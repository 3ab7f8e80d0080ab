"""Finitely presented groups: reduction, Tietze moves, Smith normal form,
Todd-Coxeter coset enumeration.

Group words are tuples of non-zero integers: ``i + 1`` stands for generator
``i`` and ``-(i + 1)`` for its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

DEFAULT_COSET_LIMIT = 100_000

EXACT = "exact"
INFINITE = "infinite-certified"
UNKNOWN = "unknown"


class CosetLimitExceeded(RuntimeError):
    pass


def free_reduce(word) -> tuple:
    out: list = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def inverse(word) -> tuple:
    return tuple(-x for x in reversed(word))


def conjugate(word, by) -> tuple:
    """by . word . by^-1"""
    return free_reduce(tuple(by) + tuple(word) + inverse(by))


def canonical_relator(word) -> tuple:
    """Representative of the cyclic conjugates of ``word`` and its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    candidates = []
    for v in (w, inverse(w)):
        for k in range(len(v)):
            candidates.append(v[k:] + v[:k])
    return min(candidates, key=lambda c: tuple((abs(x), x < 0) for x in c))


@dataclass(frozen=True)
class GroupPresentation:
    """Group presentation with optional provenance.

    ``generator_origin[i]`` records where generator i came from (an edge id
    of a 2-complex, say); ``relator_origin[j]`` likewise for relators.
    ``edge_generator`` maps complex edge ids to generator letters
    (``0`` for tree edges) when the presentation was read off a complex.
    """

    generators: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...] = ()
    generator_origin: tuple = ()
    relator_origin: tuple = ()
    edge_generator: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        n = len(self.generators)
        rels = tuple(free_reduce(r) for r in self.relators)
        for r in rels:
            for x in r:
                if x == 0 or abs(x) > n:
                    raise ValueError(f"letter {x} out of range for {n} generators")
        object.__setattr__(self, "relators", rels)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def edge_path_word(self, edges, directions=None) -> tuple:
        """Image of an edge path under the tree-collapse map.

        ``directions[i]`` is +1 for a positively traversed edge, -1 otherwise.
        """
        if directions is None:
            directions = [1] * len(edges)
        out = []
        for e, d in zip(edges, directions):
            g = self.edge_generator[e]
            if g:
                out.append(g * d)
        return free_reduce(out)

    def format_word(self, word) -> str:
        if not word:
            return "1"
        return " ".join(self.generators[abs(x) - 1] + ("'" if x < 0 else "") for x in word)

    def __str__(self):
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"⟨{' '.join(self.generators)} | {rels}⟩".replace("  ", " ")

    def to_text(self) -> str:
        lines = ["group", "generators: " + " ".join(self.generators)]
        lines += [f"{self.format_word(r)} = 1" for r in self.relators]
        return "\n".join(lines) + "\n"


def parse_group_presentation(text: str) -> GroupPresentation:
    """Inverse of :meth:`GroupPresentation.to_text`; ``g'`` is g inverse."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "group" or not lines[1].startswith("generators:"):
        raise ValueError("expected 'group' and 'generators:' lines")
    gens = tuple(lines[1][len("generators:"):].split())
    lookup = {g: i + 1 for i, g in enumerate(gens)}
    rels = []
    for ln in lines[2:]:
        left, _, right = ln.partition("=")
        word = []
        for side, sign in ((left, 1), (right, -1)):
            toks = [t for t in side.split() if t != "1"]
            letters = []
            for t in toks:
                inv = t.endswith("'")
                name = t[:-1] if inv else t
                if name not in lookup:
                    raise ValueError(f"unknown generator {name!r}")
                letters.append(-lookup[name] if inv else lookup[name])
            word += letters if sign == 1 else list(inverse(letters))
        rels.append(tuple(word))
    return GroupPresentation(gens, tuple(rels))


# ---------------------------------------------------------------------------
# abelianization

def exponent_matrix(p: GroupPresentation):
    rows = []
    for r in p.relators:
        row = [0] * p.rank
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def smith_diagonal(matrix) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns the non-zero invariant factors d1 | d2 | ... (positive).
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest non-zero absolute value in the remaining block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # move a smaller remainder into the pivot position
                best = None
                for i in range(t + 1, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                        best = ("r", i, a[i][t])
                for j in range(t + 1, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                        best = ("c", j, a[t][j])
                if best[0] == "r":
                    a[t], a[best[1]] = a[best[1]], a[t]
                else:
                    for row in a:
                        row[t], row[best[1]] = row[best[1]], row[t]
                continue
            # the pivot must divide the rest of the block
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        a[t] = [x + y for x, y in zip(a[t], a[i])]
                        done = False
                        break
                if not done:
                    break
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelian_invariants(p: GroupPresentation) -> list[int]:
    """Invariants of the abelianization: torsion divisors > 1, then 0 per free factor."""
    diag = smith_diagonal(exponent_matrix(p)) if p.relators else []
    torsion = [d for d in diag if d != 1]
    return torsion + [0] * (p.rank - len(diag))


# ---------------------------------------------------------------------------
# coset enumeration

class CosetTable:
    """HLT coset enumeration with coincidence processing.

    Columns ``2*i`` and ``2*i + 1`` hold the action of generator i and its
    inverse.  After :meth:`run`, cosets are renumbered 0..index-1 in order
    of definition, coset 0 being the subgroup itself.
    """

    def __init__(self, ngens: int, relators, subgroup=(), limit: int = DEFAULT_COSET_LIMIT):
        self.ngens = ngens
        self.relators = [tuple(self._col(x) for x in r) for r in relators if r]
        self.subgroup = [tuple(self._col(x) for x in w) for w in subgroup if w]
        self.limit = limit
        self.table: list = [[None] * (2 * ngens)]
        self.parent = [0]
        self.defined = 1
        self.index = None

    @staticmethod
    def _col(x):
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    @staticmethod
    def _inv(c):
        return c ^ 1

    def _rep(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def _live(self, c):
        return self.parent[c] == c

    def _define(self, c, x):
        if self.defined >= self.limit:
            raise CosetLimitExceeded(f"more than {self.limit} cosets")
        d = len(self.table)
        self.table.append([None] * (2 * self.ngens))
        self.parent.append(d)
        self.defined += 1
        self.table[c][x] = d
        self.table[d][self._inv(x)] = c

    def _coincidence(self, a, b):
        queue = []

        def merge(k, l):
            k, l = self._rep(k), self._rep(l)
            if k != l:
                lo, hi = min(k, l), max(k, l)
                self.parent[hi] = lo
                queue.append(hi)

        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(2 * self.ngens):
                d = self.table[g][x]
                if d is None:
                    continue
                ix = self._inv(x)
                if self.table[d][ix] == g:
                    self.table[d][ix] = None
                mu, nu = self._rep(g), self._rep(d)
                if self.table[mu][x] is not None:
                    merge(nu, self.table[mu][x])
                elif self.table[nu][ix] is not None:
                    merge(mu, self.table[nu][ix])
                else:
                    self.table[mu][x] = nu
                    self.table[nu][ix] = mu

    def _scan_and_fill(self, c, word):
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i and t[b][self._inv(word[j])] is not None:
                b = t[b][self._inv(word[j])]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][self._inv(word[i])] = f
                return
            self._define(f, word[i])

    def run(self) -> "CosetTable":
        for w in self.subgroup:
            self._scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            if self._live(c):
                for r in self.relators:
                    self._scan_and_fill(c, r)
                    if not self._live(c):
                        break
                if self._live(c):
                    for x in range(2 * self.ngens):
                        if self.table[c][x] is None:
                            self._define(c, x)
            c += 1
        self._compact()
        return self

    def _compact(self):
        live = [c for c in range(len(self.table)) if self._live(c)]
        renum = {c: k for k, c in enumerate(live)}
        self.table = [[renum[self._rep(d)] for d in self.table[c]] for c in live]
        self.parent = list(range(len(live)))
        self.index = len(live)

    def act(self, coset: int, word) -> int:
        for x in word:
            coset = self.table[coset][self._col(x)]
        return coset

    def is_consistent(self) -> bool:
        """Every relator closes at every coset and columns are inverse bijections."""
        for c in range(self.index):
            for x in range(2 * self.ngens):
                if self.table[self.table[c][x]][self._inv(x)] != c:
                    return False
            for r in self.relators:
                d = c
                for x in r:
                    d = self.table[d][x]
                if d != c:
                    return False
        return True


def todd_coxeter(p: GroupPresentation, subgroup=(), limit: int = DEFAULT_COSET_LIMIT) -> CosetTable:
    return CosetTable(p.rank, p.relators, subgroup, limit).run()


# ---------------------------------------------------------------------------
# Tietze simplification

def _substitute(word, gen: int, replacement) -> tuple:
    out = []
    for x in word:
        if x == gen:
            out.extend(replacement)
        elif x == -gen:
            out.extend(inverse(replacement))
        else:
            out.append(x)
    return free_reduce(out)


def _dedupe(relators):
    seen = set()
    out = []
    for r in relators:
        c = canonical_relator(r)
        if c and c not in seen:
            seen.add(c)
            out.append(cyclic_reduce(r))
    return out


def _shorten_by(r, s):
    """Use relator ``r`` to shorten relator ``s``.

    If a cyclic conjugate of r (or its inverse) splits as a.b with
    |a| > |b| and a occurs in a cyclic conjugate of s, replace a by b^-1.
    """
    n = len(r)
    if n == 0 or len(s) < (n + 2) // 2:
        return None
    for v in (r, inverse(r)):
        for k in range(n):
            rot = v[k:] + v[:k]
            for cut in range(n, n // 2, -1):
                a, b = rot[:cut], rot[cut:]
                ss = s + s
                for start in range(len(s)):
                    if ss[start:start + cut] == a and cut <= len(s):
                        rotated = s[start:] + s[:start]
                        new = cyclic_reduce(inverse(b) + rotated[cut:])
                        if len(new) < len(s):
                            return new
    return None


def tietze_simplify(p: GroupPresentation, max_steps: int = 10_000) -> GroupPresentation:
    """Simplify by generator elimination, relator shortening and dedup.

    Each move is a Tietze transformation, so the group is unchanged.
    """
    gens = list(p.generators)
    origins = list(p.generator_origin) if p.generator_origin else [None] * len(gens)
    rels = _dedupe(p.relators)
    steps = 0
    changed = True
    while changed and steps < max_steps:
        changed = False
        # generator elimination: a relator containing some generator exactly once
        best = None
        for idx, r in enumerate(rels):
            counts = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for g, c in counts.items():
                if c == 1:
                    key = (len(r), -g)
                    if best is None or key < best[0]:
                        best = (key, idx, g)
        if best is not None:
            _, idx, g = best
            r = rels[idx]
            pos = next(k for k, x in enumerate(r) if abs(x) == g)
            rot = r[pos:] + r[:pos]
            # rot = g^e . w  =>  g = w^-1 (e = 1) or g = w (e = -1)
            w = rot[1:]
            replacement = inverse(w) if rot[0] > 0 else tuple(w)
            rels = [_substitute(s, g, replacement) for k, s in enumerate(rels) if k != idx]
            # renumber generators above g
            rels = [tuple(x - 1 if abs(x) > g and x > 0 else (x + 1 if abs(x) > g else x)
                          for x in s) for s in rels]
            del gens[g - 1]
            del origins[g - 1]
            rels = _dedupe(rels)
            steps += 1
            changed = True
            continue
        # relator shortening
        order = sorted(range(len(rels)), key=lambda k: len(rels[k]))
        for a in order:
            for b in order:
                if a == b or len(rels[a]) > len(rels[b]):
                    continue
                new = _shorten_by(rels[a], rels[b])
                if new is not None:
                    rels[b] = new
                    rels = _dedupe(rels)
                    changed = True
                    steps += 1
                    break
            if changed:
                break
    return GroupPresentation(tuple(gens), tuple(rels), tuple(origins),
                             ("derived",) * len(rels), notes=p.notes)


# ---------------------------------------------------------------------------

@dataclass
class GroupAnalysis:
    abelian_invariants: list
    order_status: str
    order: int | None = None
    coset_table: CosetTable | None = field(default=None, repr=False)

    @property
    def is_trivial(self) -> bool:
        return self.order_status == EXACT and self.order == 1

    def describe(self) -> str:
        if self.order_status == EXACT:
            return str(self.order)
        return self.order_status


def analyze_group(p: GroupPresentation, coset_limit: int = DEFAULT_COSET_LIMIT) -> GroupAnalysis:
    inv = abelian_invariants(p)
    if 0 in inv:
        return GroupAnalysis(inv, INFINITE)
    try:
        table = todd_coxeter(p, limit=coset_limit)
    except CosetLimitExceeded:
        return GroupAnalysis(inv, UNKNOWN)
    order = table.index
    torsion = prod(inv) if inv else 1
    if order % torsion:
        raise AssertionError(f"abelianization order {torsion} does not divide {order}")
    return GroupAnalysis(inv, EXACT, order, table)


def is_identity(table: CosetTable, word) -> bool:
    """Whether ``word`` is trivial, given a table over the trivial subgroup."""
    return table.act(0, word) == 0
