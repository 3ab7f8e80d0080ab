"""Action complexes K(P, V) and their combinatorics.

Vertices are V, there is an edge (v, x) from v to vx whenever vx is
defined, and a 2-cell (p, u = v) for each relation whose sides are defined
at p, glued along the two traced boundary paths.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .action import PartialAction, QuotientAction, quotient_action, validate_action
from .green import GreenData, is_group, orbits
from .words import Presentation


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    dst: int
    label: int


@dataclass(frozen=True)
class Face:
    p: int
    rel: int
    u_path: tuple[int, ...]
    v_path: tuple[int, ...]


@dataclass(frozen=True)
class TwoComplex:
    """Edges are ordered by (src, label), faces by (basepoint, relation)."""

    alphabet: tuple[str, ...]
    n_vertices: int
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...] = ()

    def __post_init__(self):
        for k, e in enumerate(self.edges):
            if e.id != k:
                raise ValueError("edge ids must be 0..|E|-1 in order")
        for f in self.faces:
            if self.path_end(f.p, f.u_path) != self.path_end(f.p, f.v_path):
                raise ValueError(f"face {f} boundary paths do not share endpoints")

    @property
    def edge_index(self) -> dict:
        return {(e.src, e.label): e.id for e in self.edges}

    def out_edges(self):
        out = [[] for _ in range(self.n_vertices)]
        for e in self.edges:
            out[e.src].append(e)
        return out

    def in_edges(self):
        inc = [[] for _ in range(self.n_vertices)]
        for e in self.edges:
            inc[e.dst].append(e)
        return inc

    def path_end(self, start: int, path) -> int:
        v = start
        for eid in path:
            e = self.edges[eid]
            if e.src != v:
                raise ValueError(f"edge {eid} does not start at vertex {v}")
            v = e.dst
        return v

    def trace(self, start: int, word):
        """Edge path spelling ``word`` from ``start``, or None if it leaves the complex."""
        index = self.edge_index
        path = []
        v = start
        for x in word:
            eid = index.get((v, x))
            if eid is None:
                return None
            path.append(eid)
            v = self.edges[eid].dst
        return tuple(path)

    def one_skeleton(self) -> "TwoComplex":
        return TwoComplex(self.alphabet, self.n_vertices, self.edges, ())

    def is_strongly_connected(self) -> bool:
        return not _unreached(self, 0, reverse=False) and not _unreached(self, 0, reverse=True)

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "vertices": self.n_vertices,
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst, "label": self.alphabet[e.label]}
                      for e in self.edges],
            "faces": [{"p": f.p, "rel": f.rel, "u_path": list(f.u_path), "v_path": list(f.v_path)}
                      for f in self.faces],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TwoComplex":
        labels = list(data.get("alphabet") or [])
        for e in data["edges"]:
            if e["label"] not in labels:
                labels.append(e["label"])
        edges = tuple(Edge(e["id"], e["src"], e["dst"], labels.index(e["label"]))
                      for e in sorted(data["edges"], key=lambda e: e["id"]))
        faces = tuple(Face(f["p"], f["rel"], tuple(f["u_path"]), tuple(f["v_path"]))
                      for f in data.get("faces", []))
        return cls(tuple(labels), data["vertices"], edges, faces)

    def to_dot(self, vertex_labels=None) -> str:
        lines = ["digraph K {"]
        for v in range(self.n_vertices):
            name = vertex_labels[v] if vertex_labels else str(v)
            lines.append(f'  {v} [label="{name}"];')
        for e in self.edges:
            lines.append(f'  {e.src} -> {e.dst} [label="{self.alphabet[e.label]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dumps(k: TwoComplex) -> str:
    return json.dumps(k.to_json(), indent=1, sort_keys=True)


def action_graph(a: PartialAction) -> TwoComplex:
    edges = []
    for v in range(a.vertex_count):
        for x, m in enumerate(a.maps):
            if m[v] is not None:
                edges.append(Edge(len(edges), v, m[v], x))
    return TwoComplex(a.alphabet, a.vertex_count, tuple(edges))


def build_action_complex(p: Presentation, a: PartialAction, truncated: bool = False) -> TwoComplex:
    """K(P, V).

    With ``truncated=True`` the action may be a finite window of an
    infinite one: the relation check is skipped and a 2-cell is attached
    only where both sides are defined and agree.
    """
    if not truncated:
        report = validate_action(p, a)
        if not report:
            raise ValueError(f"invalid action: {report}")
    graph = action_graph(a)
    faces = []
    for vertex in range(a.vertex_count):
        for r, (u, v) in enumerate(p.relations):
            end = a.act(vertex, u)
            if end is None or end != a.act(vertex, v):
                continue
            faces.append(Face(vertex, r, graph.trace(vertex, u), graph.trace(vertex, v)))
    return TwoComplex(a.alphabet, a.vertex_count, graph.edges, tuple(faces))


def schutzenberger_graph(green: GreenData, r_class) -> TwoComplex:
    from .action import action_on_r_class
    return action_graph(action_on_r_class(green, r_class))


def _unreached(k: TwoComplex, root: int, reverse: bool):
    nbrs = k.in_edges() if reverse else k.out_edges()
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in nbrs[v]:
            w = e.src if reverse else e.dst
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return [v for v in range(k.n_vertices) if v not in seen]


class NotStronglyConnected(ValueError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"graph is not strongly connected: vertex {vertex} unreachable")


@dataclass(frozen=True)
class DirectedSpanningTree:
    root: int
    parent_edge: tuple  # per vertex: incoming tree edge id, None at the root
    depth: tuple

    def path(self, k: TwoComplex, w: int) -> list[int]:
        """Directed tree path from the root to w."""
        out = []
        while w != self.root:
            eid = self.parent_edge[w]
            out.append(eid)
            w = k.edges[eid].src
        return out[::-1]

    def edge_ids(self) -> set:
        return {e for e in self.parent_edge if e is not None}


def directed_spanning_tree(k: TwoComplex, root: int = 0) -> DirectedSpanningTree:
    """BFS along edge directions; tree paths are shortest directed paths."""
    back = _unreached(k, root, reverse=True)
    if back:
        raise NotStronglyConnected(back[0])
    out = k.out_edges()
    parent = [None] * k.n_vertices
    depth = [None] * k.n_vertices
    depth[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in out[v]:
            if depth[e.dst] is None:
                depth[e.dst] = depth[v] + 1
                parent[e.dst] = e.id
                queue.append(e.dst)
    missing = [v for v in range(k.n_vertices) if depth[v] is None]
    if missing:
        raise NotStronglyConnected(missing[0])
    return DirectedSpanningTree(root, tuple(parent), tuple(depth))


def return_paths(k: TwoComplex, root: int) -> list:
    """A shortest directed path from every vertex back to ``root``."""
    inc = k.in_edges()
    nxt = [None] * k.n_vertices
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in inc[v]:
            if e.src not in seen:
                seen.add(e.src)
                nxt[e.src] = e.id
                queue.append(e.src)
    if len(seen) != k.n_vertices:
        raise NotStronglyConnected(min(set(range(k.n_vertices)) - seen))
    paths = []
    for w in range(k.n_vertices):
        path = []
        v = w
        while v != root:
            path.append(nxt[v])
            v = k.edges[nxt[v]].dst
        paths.append(path)
    return paths


def directed_loop_generators(k: TwoComplex, root: int = 0) -> list[list[int]]:
    """Directed loops at ``root`` generating pi_1 of the 1-skeleton.

    With T a directed spanning tree, p_w the tree path root -> w and q_w a
    directed path w -> root: the loops p_src(e) e q_dst(e) for non-tree
    edges e, then p_w q_w for every vertex w.  Empty loops are dropped.
    """
    tree = directed_spanning_tree(k, root)
    q = return_paths(k, root)
    tree_edges = tree.edge_ids()
    loops = []
    for e in k.edges:
        if e.id not in tree_edges:
            loops.append(tree.path(k, e.src) + [e.id] + q[e.dst])
    for w in range(k.n_vertices):
        loop = tree.path(k, w) + q[w]
        if loop:
            loops.append(loop)
    return loops


@dataclass(frozen=True)
class ComplexMorphism:
    vertex_map: tuple
    edge_map: tuple
    face_map: tuple


def _check_group(n, group):
    group = list(group) or [tuple(range(n))]
    if not is_group(group):
        raise ValueError("automorphisms do not form a group")
    return group


def complex_quotient(k: TwoComplex, group) -> tuple[TwoComplex, ComplexMorphism]:
    """Orbit complex G\\K with G acting by g(v,x) = (gv,x), g(p,u=v) = (gp,u=v)."""
    group = _check_group(k.n_vertices, group)
    index = k.edge_index
    for g in group:
        for e in k.edges:
            if (g[e.src], e.label) not in index or k.edges[index[g[e.src], e.label]].dst != g[e.dst]:
                raise ValueError("group does not act on the complex")
    orbs = orbits(k.n_vertices, group)
    vmap = [None] * k.n_vertices
    for i, orb in enumerate(orbs):
        for v in orb:
            vmap[v] = i
    # orbit edges: one per (orbit of src, label), numbered like action_graph
    reps = {}
    for e in k.edges:
        reps.setdefault((vmap[e.src], e.label), e)
    qedges = []
    qindex = {}
    for key in sorted(reps):
        e = reps[key]
        qindex[key] = len(qedges)
        qedges.append(Edge(len(qedges), key[0], vmap[e.dst], e.label))
    emap = tuple(qindex[vmap[e.src], e.label] for e in k.edges)
    for e in k.edges:
        if qedges[emap[e.id]].dst != vmap[e.dst]:
            raise AssertionError("edge orbits are not well defined")
    qfaces = {}
    fmap = []
    for f in k.faces:
        key = (vmap[f.p], f.rel)
        image = Face(key[0], f.rel, tuple(emap[e] for e in f.u_path), tuple(emap[e] for e in f.v_path))
        if qfaces.setdefault(key, image) != image:
            raise AssertionError("face orbits are not well defined")
        fmap.append(key)
    fkeys = sorted(qfaces)
    fpos = {key: i for i, key in enumerate(fkeys)}
    quotient = TwoComplex(k.alphabet, len(orbs), tuple(qedges), tuple(qfaces[key] for key in fkeys))
    morphism = ComplexMorphism(tuple(vmap), emap, tuple(fpos[key] for key in fmap))
    if not is_covering(k, quotient, morphism):
        raise AssertionError("projection is not a covering")
    return quotient, morphism


def is_covering(k: TwoComplex, base: TwoComplex, m: ComplexMorphism) -> bool:
    """Label- and incidence-preserving, bijective on the star of every vertex."""
    for e in k.edges:
        b = base.edges[m.edge_map[e.id]]
        if (b.src, b.dst, b.label) != (m.vertex_map[e.src], m.vertex_map[e.dst], e.label):
            return False
    out_k, in_k = k.out_edges(), k.in_edges()
    out_b, in_b = base.out_edges(), base.in_edges()
    for v in range(k.n_vertices):
        w = m.vertex_map[v]
        for mine, theirs in ((out_k[v], out_b[w]), (in_k[v], in_b[w])):
            images = sorted(m.edge_map[e.id] for e in mine)
            if images != sorted(e.id for e in theirs):
                return False
    return True


@dataclass
class QuotientCheck:
    ok: bool
    detail: str = ""
    orbit_complex: TwoComplex | None = field(default=None, repr=False)
    quotient_complex: TwoComplex | None = field(default=None, repr=False)

    def __bool__(self):
        return self.ok


def verify_quotient_isomorphism(p: Presentation, a: PartialAction, group) -> QuotientCheck:
    """Compare G\\K(V) with K(G\\V); canonical orbit numbering makes this equality."""
    k = build_action_complex(p, a)
    orbit_complex, _ = complex_quotient(k, group)
    q: QuotientAction = quotient_action(a, group)
    direct = build_action_complex(p, q.action)
    for name in ("n_vertices", "edges", "faces"):
        if getattr(orbit_complex, name) != getattr(direct, name):
            return QuotientCheck(False, f"{name} differ", orbit_complex, direct)
    return QuotientCheck(True, "", orbit_complex, direct)
