"""Transitive actions of semigroups on finite sets by partial maps."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .green import GreenData, is_group, orbits
from .words import Presentation, PresentationError


@dataclass(frozen=True)
class PartialAction:
    """``maps[x][v]`` is v acted on by letter x, or None when undefined."""

    alphabet: tuple[str, ...]
    maps: tuple[tuple[int | None, ...], ...]
    labels: tuple[str, ...] | None = None
    source: str = "user-supplied"

    def __post_init__(self):
        maps = tuple(tuple(m) for m in self.maps)
        if len(maps) != len(self.alphabet):
            raise ValueError("one map per alphabet symbol required")
        n = len(maps[0]) if maps else 0
        for m in maps:
            if len(m) != n or any(x is not None and not 0 <= x < n for x in m):
                raise ValueError("maps must be partial self-maps of the vertex set")
        object.__setattr__(self, "maps", maps)

    @property
    def vertex_count(self) -> int:
        return len(self.maps[0]) if self.maps else 0

    def act(self, v, word):
        for x in word:
            if v is None:
                return None
            v = self.maps[x][v]
        return v

    def successors(self, v):
        return [m[v] for m in self.maps]

    def predecessors(self):
        pred = [[] for _ in range(self.vertex_count)]
        for m in self.maps:
            for v, w in enumerate(m):
                if w is not None:
                    pred[w].append(v)
        return pred

    def label(self, v) -> str:
        return self.labels[v] if self.labels else str(v)


def reachable(n, succ, start) -> list[bool]:
    seen = [False] * n
    seen[start] = True
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in succ(v):
            if w is not None and not seen[w]:
                seen[w] = True
                queue.append(w)
    return seen


def is_transitive(a: PartialAction) -> bool:
    """vS^1 = V for all v, i.e. the action graph is strongly connected."""
    n = a.vertex_count
    if n == 0:
        return False
    pred = a.predecessors()
    return all(reachable(n, a.successors, 0)) and all(reachable(n, lambda v: pred[v], 0))


def action_on_r_class(green: GreenData, r_class) -> PartialAction:
    """S acting on R by r.x = rx if rx in R, undefined otherwise."""
    enum = green.enum
    if not enum.complete:
        raise ValueError("R-class not complete: enumeration was truncated")
    r_class = tuple(r_class)
    pos = {e: k for k, e in enumerate(r_class)}
    maps = tuple(tuple(pos.get(enum.right[r][x]) for r in r_class)
                 for x in range(len(enum.semigroup.alphabet)))
    return PartialAction(enum.semigroup.alphabet, maps,
                         tuple(enum.format(r) for r in r_class), f"r-class-of({enum.format(r_class[0])})")


def regular_action(green: GreenData) -> PartialAction:
    """Right regular action of a semigroup on itself (a group is one R-class)."""
    enum = green.enum
    maps = tuple(tuple(enum.right[i][x] for i in range(len(enum)))
                 for x in range(len(enum.semigroup.alphabet)))
    return PartialAction(enum.semigroup.alphabet, maps,
                         tuple(enum.format(i) for i in range(len(enum))), "right-regular")


@dataclass
class ActionReport:
    ok: bool
    relation_violation: tuple | None = None   # (relation index, vertex)
    unreachable: tuple | None = None          # (from vertex, to vertex)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        if self.relation_violation is not None:
            r, v = self.relation_violation
            return f"relation {r} fails at vertex {v}"
        a, b = self.unreachable
        return f"vertex {b} is not reachable from vertex {a}"


def validate_action(p: Presentation, a: PartialAction) -> ActionReport:
    """Check relation compatibility and transitivity."""
    if p.alphabet != a.alphabet:
        raise ValueError("presentation and action use different alphabets")
    for r, (u, v) in enumerate(p.relations):
        for vertex in range(a.vertex_count):
            if a.act(vertex, u) != a.act(vertex, v):
                return ActionReport(False, relation_violation=(r, vertex))
    n = a.vertex_count
    fwd = reachable(n, a.successors, 0)
    if not all(fwd):
        return ActionReport(False, unreachable=(0, fwd.index(False)))
    pred = a.predecessors()
    back = reachable(n, lambda v: pred[v], 0)
    if not all(back):
        return ActionReport(False, unreachable=(back.index(False), 0))
    return ActionReport(True)


def _extend(a: PartialAction, image0: int):
    """The automorphism sending vertex 0 to ``image0``, if one exists."""
    n = a.vertex_count
    g = [None] * n
    g[0] = image0
    queue = deque([0])
    while queue:
        p = queue.popleft()
        gp = g[p]
        for m in a.maps:
            q, gq = m[p], m[gp]
            if (q is None) != (gq is None):
                return None
            if q is None:
                continue
            if g[q] is None:
                g[q] = gq
                queue.append(q)
            elif g[q] != gq:
                return None
    if any(x is None for x in g) or len(set(g)) != n:
        return None
    return tuple(g)


def automorphism_group(a: PartialAction) -> list[tuple[int, ...]]:
    """All automorphisms of a transitive action, as vertex permutations.

    An automorphism is determined by the image of one vertex, so each
    candidate image of vertex 0 is extended along the action graph.
    """
    if not is_transitive(a):
        raise ValueError("action is not transitive")
    group = [g for w in range(a.vertex_count) if (g := _extend(a, w)) is not None]
    if not is_group(group):
        raise AssertionError("automorphisms are not closed under composition")
    return group


def is_automorphism(a: PartialAction, g) -> bool:
    if sorted(g) != list(range(a.vertex_count)):
        return False
    for m in a.maps:
        for v in range(a.vertex_count):
            w = m[v]
            gw = m[g[v]]
            if (w is None) != (gw is None) or (w is not None and g[w] != gw):
                return False
    return True


@dataclass(frozen=True)
class QuotientAction:
    orbit_map: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    action: PartialAction


def quotient_action(a: PartialAction, group) -> QuotientAction:
    """Induced action on G-orbits; orbits are numbered by their least vertex."""
    group = list(group)
    if not group:
        group = [tuple(range(a.vertex_count))]
    if not is_group(group):
        raise ValueError("not a group of permutations")
    for g in group:
        if not is_automorphism(a, g):
            raise ValueError(f"{g} is not an automorphism of the action")
    orbs = orbits(a.vertex_count, group)
    omap = [None] * a.vertex_count
    for k, orb in enumerate(orbs):
        for v in orb:
            omap[v] = k
    maps = []
    for m in a.maps:
        row = []
        for orb in orbs:
            targets = {None if m[v] is None else omap[m[v]] for v in orb}
            if len(targets) != 1:
                raise AssertionError("induced action is not well defined")
            row.append(targets.pop())
        maps.append(tuple(row))
    labels = tuple(a.label(orb[0]) for orb in orbs)
    return QuotientAction(tuple(omap), tuple(orbs),
                          PartialAction(a.alphabet, tuple(maps), labels, f"quotient({a.source})"))


def cycle_notation(perm) -> str:
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            seen.add(i)
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) or "()"


def parse_action(text: str) -> PartialAction:
    """``vertices: m`` then ``x: [j1,...,jm]`` per symbol (1-based, ``-`` undefined)."""
    n = None
    names, maps = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PresentationError("expected 'name: value'", lineno, 1)
        key, rest = key.strip(), rest.strip()
        if n is None:
            if key != "vertices":
                raise PresentationError("expected 'vertices: m' first", lineno, 1)
            n = int(rest)
            continue
        m = re.fullmatch(r"\[(.*)\]", rest)
        if not m:
            raise PresentationError("expected [j1,...,jm]", lineno, line.index(rest) + 1)
        row = []
        for tok in m.group(1).split(","):
            tok = tok.strip()
            if tok == "-":
                row.append(None)
            else:
                v = int(tok)
                if not 1 <= v <= n:
                    raise PresentationError(f"vertex {v} out of range", lineno, 1)
                row.append(v - 1)
        if len(row) != n:
            raise PresentationError(f"expected {n} entries", lineno, 1)
        names.append(key)
        maps.append(tuple(row))
    if n is None:
        raise PresentationError("missing 'vertices:' line", 1, 1)
    return PartialAction(tuple(names), tuple(maps))


def format_action(a: PartialAction) -> str:
    lines = [f"vertices: {a.vertex_count}"]
    for name, m in zip(a.alphabet, a.maps):
        lines.append(f"{name}: [" + ",".join("-" if x is None else str(x + 1) for x in m) + "]")
    return "\n".join(lines) + "\n"
