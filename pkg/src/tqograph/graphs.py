"""Undirected simple graphs, the graph families under study, and edge-space helpers.

Vertex ordering conventions (normative, 0-indexed):
  * star / complete / complete bipartite: natural order, hub or X-part first;
  * multi_star(q, m): component c occupies [c*m, (c+1)*m), hub at c*m;
  * toric(L): (i, j, x) -> (j-1)*L + (i-1), (i, j, y) -> L^2 + (j-1)*L + (i-1)
    with 1-based (i, j) as in the defining adjacency formula;
  * toric3d(L): (i, j, k) -> (k-1)*L^2 + (j-1)*L + (i-1);
  * line graphs: vertex i of L(G) is edge i of G in canonical edge order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .gf2 import BitString, Gf2Matrix

FAMILIES = (
    "star",
    "complete",
    "complete_bipartite",
    "multi_star",
    "lattice",
    "toric",
    "connected_multi_star",
    "line_of_complete",
    "line_of_bipartite",
    "toric3d",
    "custom",
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with a canonical vertex order.

    ``x_part`` marks the X side of a declared bipartition (used by the
    complete bipartite family to split odd-degree counts).
    """

    n: int
    edges: Tuple[Tuple[int, int], ...]
    name: str = ""
    x_part: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if u >= v:
                raise ValueError(f"edge ({u},{v}) must have u < v")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Sequence[Tuple[int, int]],
        name: str = "",
        x_part: Optional[Sequence[int]] = None,
    ) -> "Graph":
        canon = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        return cls(n, canon, name, tuple(x_part) if x_part is not None else None)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def adjacency(self) -> Gf2Matrix:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Gf2Matrix(self.n, self.n, rows)

    def edge_index(self) -> Dict[Tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}


def adjacency(g: Graph) -> Gf2Matrix:
    return g.adjacency()


@dataclass(frozen=True)
class FamilySpec:
    """A graph family name plus its integer parameters."""

    family: str
    params: Tuple[int, ...] = ()
    periodic: bool = True
    path: Optional[str] = None

    def label(self) -> str:
        if self.family == "custom":
            return f"custom:{self.path}"
        return self.family + "(" + ",".join(str(p) for p in self.params) + ")"


def star(n: int) -> Graph:
    if n < 2:
        raise ValueError("star needs n >= 2")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)], name=f"star({n})")


def complete(m: int) -> Graph:
    if m < 1:
        raise ValueError("complete needs m >= 1")
    return Graph.from_edges(
        m, list(itertools.combinations(range(m), 2)), name=f"complete({m})"
    )


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite needs both parts non-empty")
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return Graph.from_edges(
        a + b, edges, name=f"complete_bipartite({a},{b})", x_part=range(a)
    )


def multi_star(q: int, m: int) -> Graph:
    """q disjoint m-vertex stars; requires q >= m."""
    if m < 2 or q < m:
        raise ValueError("multi_star needs m >= 2 and q >= m")
    edges = []
    for c in range(q):
        hub = c * m
        edges.extend((hub, hub + i) for i in range(1, m))
    return Graph.from_edges(q * m, edges, name=f"multi_star({q},{m})")


def lattice(L: int, D: int, periodic: bool = True) -> Graph:
    """D-dimensional square lattice of linear size L (periodic by default)."""
    if L < 2 or D < 1:
        raise ValueError("lattice needs L >= 2 and D >= 1")
    n = L**D

    def index(coord):
        idx = 0
        for c in reversed(coord):
            idx = idx * L + c
        return idx

    edges = set()
    for coord in itertools.product(range(L), repeat=D):
        for d in range(D):
            c2 = list(coord)
            c2[d] += 1
            if c2[d] == L:
                if not periodic:
                    continue
                c2[d] = 0
            u, v = index(coord), index(tuple(c2))
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(
        n, sorted(edges), name=f"lattice(L={L},D={D},{'pbc' if periodic else 'obc'})"
    )


def _theta(i: int, j: int) -> int:
    return 1 if i <= j else 0


def _delta_cyclic(a: int, b: int, L: int) -> int:
    return 1 if (a - b) % L == 0 else 0


def toric_vertex(i: int, j: int, d: str, L: int) -> int:
    """Map a 1-based toric label (i, j, x/y) to a vertex index."""
    base = 0 if d == "x" else L * L
    return base + (j - 1) * L + (i - 1)


def toric(L: int) -> Graph:
    """2L^2-vertex toric graph: per-column stars linked by half graphs.

    Entries follow the defining delta/theta adjacency formula, with the
    column index j cyclic mod L.
    """
    if L < 2:
        raise ValueError("toric needs L >= 2")
    labels = [
        (i, j, d) for d in ("x", "y") for j in range(1, L + 1) for i in range(1, L + 1)
    ]
    edges = []
    for (i1, j1, d1), (i2, j2, d2) in itertools.combinations(labels, 2):
        a = 0
        if d1 == "x" and d2 == "x" and _delta_cyclic(j2, j1, L):
            a ^= (1 if i2 == L else 0) * _theta(i1, L - 1)
            a ^= (1 if i1 == L else 0) * _theta(i2, L - 1)
        if d1 == "y" and d2 == "y" and _delta_cyclic(j2, j1, L):
            a ^= (1 if i1 == 1 else 0) * _theta(2, i2)
            a ^= (1 if i2 == 1 else 0) * _theta(2, i1)
        if d1 == "y" and d2 == "x":
            a ^= (
                (_delta_cyclic(j2, j1, L) | _delta_cyclic(j2 - 1, j1, L))
                * _theta(i2, i1 - 1)
                * _theta(2, i1)
            )
        if d1 == "x" and d2 == "y":
            a ^= (
                (_delta_cyclic(j2, j1, L) | _delta_cyclic(j1 - 1, j2, L))
                * _theta(i1 + 1, i2)
                * _theta(i1, L - 1)
            )
        if a:
            u = toric_vertex(i1, j1, d1, L)
            v = toric_vertex(i2, j2, d2, L)
            edges.append((min(u, v), max(u, v)))
    return Graph.from_edges(2 * L * L, edges, name=f"toric({L})")


def connected_multi_star(L: int) -> Graph:
    """Multi-star layers linked by a fixed constant-degree pattern.

    Column stars as in the toric labelling: y-hub (1,j,y) with leaves
    (i,j,y) for i >= 2, x-hub (L,j,x) with leaves (i,j,x) for i < L.
    Each non-hub (i,j,y), i >= 2, additionally connects to (i-1,j,x) and
    (i-1,j+1 mod L,x), so middle-layer vertices have degree 3 and the hub
    neighborhoods stay disjoint ("cmstar-variant-1").
    """
    if L < 2:
        raise ValueError("connected_multi_star needs L >= 2")
    edges = set()
    for j in range(1, L + 1):
        for i in range(2, L + 1):
            edges.add(
                tuple(
                    sorted((toric_vertex(1, j, "y", L), toric_vertex(i, j, "y", L)))
                )
            )
        for i in range(1, L):
            edges.add(
                tuple(
                    sorted((toric_vertex(L, j, "x", L), toric_vertex(i, j, "x", L)))
                )
            )
        for i in range(2, L + 1):
            jn = j % L + 1
            u = toric_vertex(i, j, "y", L)
            edges.add(tuple(sorted((u, toric_vertex(i - 1, j, "x", L)))))
            edges.add(tuple(sorted((u, toric_vertex(i - 1, jn, "x", L)))))
    return Graph.from_edges(2 * L * L, sorted(edges), name=f"cmstar-variant-1({L})")


def toric3d_vertex(i: int, j: int, k: int, L: int) -> int:
    """Map a 1-based 3D label (i, j, k) to a vertex index."""
    return (k - 1) * L * L + (j - 1) * L + (i - 1)


def toric3d(L: int) -> Graph:
    """L^3-vertex generalized toric graph: L multi-star layers on a 3-torus.

    Entries follow the generalized delta/theta adjacency formula, with the
    j and k indices cyclic mod L.
    """
    if L < 2:
        raise ValueError("toric3d needs L >= 2")
    rng = range(1, L + 1)
    labels = [(i, j, k) for k in rng for j in rng for i in rng]
    edges = set()
    for (i1, j1, k1), (i2, j2, k2) in itertools.combinations(labels, 2):
        a = 0
        if _delta_cyclic(j1, j2, L) and _delta_cyclic(k1, k2, L):
            a ^= (1 if i1 == 1 else 0) * _theta(2, i2)
            a ^= (1 if i2 == 1 else 0) * _theta(2, i1)
        if _delta_cyclic(j1, j2, L):
            a ^= _delta_cyclic(k1, k2 + 1, L) * _theta(i2, i1) * _theta(2, i2)
            a ^= _delta_cyclic(k2, k1 + 1, L) * _theta(i1, i2) * _theta(2, i1)
        if _delta_cyclic(j1, j2 + 1, L) and _delta_cyclic(k1, k2 + 1, L):
            a ^= _theta(i2, i1) * _theta(2, i2)
        if _delta_cyclic(j2, j1 + 1, L) and _delta_cyclic(k2, k1 + 1, L):
            a ^= _theta(i1, i2) * _theta(2, i1)
        if a:
            u = toric3d_vertex(i1, j1, k1, L)
            v = toric3d_vertex(i2, j2, k2, L)
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(L**3, sorted(edges), name=f"toric3d({L})")


def line_graph(g: Graph) -> Tuple[Graph, Tuple[Tuple[int, int], ...]]:
    """Line graph of g plus the vertex -> base-edge correspondence."""
    base_edges = g.edges
    incident: List[List[int]] = [[] for _ in range(g.n)]
    for idx, (u, v) in enumerate(base_edges):
        incident[u].append(idx)
        incident[v].append(idx)
    edges = set()
    for idxs in incident:
        for a, b in itertools.combinations(idxs, 2):
            edges.add((min(a, b), max(a, b)))
    lg = Graph.from_edges(len(base_edges), sorted(edges), name=f"line({g.name})")
    return lg, base_edges


def line_of_complete(m: int) -> Graph:
    return line_graph(complete(m))[0]


def line_of_bipartite(m: int) -> Graph:
    return line_graph(complete_bipartite(m, m))[0]


def s_vector(g: Graph, v: int) -> BitString:
    """Edge-indicator bitstring of all edges incident to vertex v."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return BitString.from_indices(
        g.m, (i for i, (a, b) in enumerate(g.edges) if v in (a, b))
    )


@dataclass(frozen=True)
class OddDegreeInfo:
    vertices: Tuple[int, ...]
    l: int
    l_x: Optional[int] = None
    l_y: Optional[int] = None


def odd_degree_vertices(g: Graph, k: BitString) -> OddDegreeInfo:
    """Vertices with odd degree in the edge subgraph selected by k."""
    if k.n != g.m:
        raise ValueError(f"expected {g.m} edge bits, got {k.n}")
    deg = [0] * g.n
    for i in k.support():
        u, v = g.edges[i]
        deg[u] += 1
        deg[v] += 1
    odd = tuple(v for v in range(g.n) if deg[v] & 1)
    if g.x_part is not None:
        xs = set(g.x_part)
        l_x = sum(1 for v in odd if v in xs)
        return OddDegreeInfo(odd, len(odd), l_x, len(odd) - l_x)
    return OddDegreeInfo(odd, len(odd))


def gen_family(spec: FamilySpec) -> Graph:
    """Build a graph from a family spec."""
    fam, p = spec.family, spec.params

    def need(count):
        if len(p) != count:
            raise ValueError(f"{fam} takes {count} parameter(s), got {len(p)}")

    if fam == "star":
        need(1)
        return star(p[0])
    if fam == "complete":
        need(1)
        return complete(p[0])
    if fam == "complete_bipartite":
        need(2)
        return complete_bipartite(p[0], p[1])
    if fam == "multi_star":
        need(2)
        return multi_star(p[0], p[1])
    if fam == "lattice":
        need(2)
        return lattice(p[0], p[1], periodic=spec.periodic)
    if fam == "toric":
        need(1)
        return toric(p[0])
    if fam == "connected_multi_star":
        need(1)
        return connected_multi_star(p[0])
    if fam == "line_of_complete":
        need(1)
        return line_of_complete(p[0])
    if fam == "line_of_bipartite":
        need(1)
        return line_of_bipartite(p[0])
    if fam == "toric3d":
        need(1)
        return toric3d(p[0])
    if fam == "custom":
        if spec.path is None:
            raise ValueError("custom family requires a file path")
        return read_edge_list(spec.path)
    raise ValueError(f"unknown family {fam!r}")


def read_edge_list(path: str) -> Graph:
    """Edge-list file: 'n m' header, then m lines 'u v' (0-indexed, u < v)."""
    lines = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
    if not lines:
        raise ValueError(f"{path}: empty edge-list file")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"{path}: bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ValueError(f"{path}: expected {m} edges, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        u, v = (int(t) for t in line.split())
        edges.append((u, v))
    return Graph.from_edges(n, edges, name=path)


def write_edge_list(g: Graph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g))


def format_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"
