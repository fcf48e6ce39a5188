"""Archimedean lattice catalog and instantiation on a cylinder/torus.

Each of the eleven vertex-translative tilings ships as a plain-text template
file (``data/<name>.lattice``) describing one Delta x tau unit cell on a
deformed integer grid: occupied site offsets, coupling edges, the wire
partition rule, and named foliation variants.  ``build`` tiles the template
onto an ``n x N`` torus (space coordinate ``y`` mod ``n``, time coordinate
``x`` in ``1..N`` with the wrap edges recorded as the cut), and
``decorate`` subdivides every wire edge with an extra degree-2 site.

Grid semantics: sites sit at integer coordinates ``(x, y)``; the horizontal
direction is time.  Coupling edges either join two sites in the same column
(``dx2 == dx1``) or reach one or two columns forward; the time span of an
edge is what the QCA slice extraction later compiles into in-column or
cross-column entangling gates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import numpy as np

__all__ = [
    "LATTICE_NAMES",
    "NoPathPartition",
    "LatticeTemplate",
    "Lattice",
    "WirePartition",
    "build",
    "decorate",
    "partition_wires",
    "adjacency",
    "load_template",
    "vertex_config_degree",
]

LATTICE_NAMES = (
    "3.3.3.3.3.3",
    "4.4.4.4",
    "6.6.6",
    "3.6.3.6",
    "3.4.6.4",
    "4.8.8",
    "3.12.12",
    "4.6.12",
    "3.3.3.3.6",
    "3.3.4.3.4",
    "3.3.3.4.4",
)


class NoPathPartition(Exception):
    """The lattice admits no partition of its sites into row wires."""


def vertex_config_degree(name: str) -> int:
    """Vertex degree = number of faces listed in the configuration string."""
    return len(name.split("-")[0].split("."))


@dataclass(frozen=True)
class LatticeTemplate:
    """One foliation variant of a lattice: a Delta x tau unit cell."""

    name: str
    foliation: str
    delta: int
    tau: int
    sites: tuple          # tuple of (dx, dy) occupied offsets
    edges: tuple          # tuple of (dx1, y1, dx2, y2) coupling edges
    wires: str            # "rows" | "none"
    faces: tuple = ()     # tuple of face site-offset tuples ((dx, dy), ...)

    def occupied(self, c: int, dy: int) -> bool:
        return (c % self.tau, dy % self.delta) in set(self.sites)


@dataclass(frozen=True)
class Lattice:
    """A tiling instance on the cut torus (cylinder)."""

    name: str
    n: int
    N: int
    deltaSpace: int
    tauTime: int
    foliation: str
    sites: tuple          # tuple of (x, y), x in 1..N, y in 0..n-1, occupied only
    edges: tuple          # tuple of (site_index_a, site_index_b, kind, wraps_time)
    template: LatticeTemplate
    site_index: dict = field(repr=False, default_factory=dict)

    def index_of(self, x: int, y: int) -> int:
        return self.site_index[(x, y % self.n)]

    def is_occupied(self, x: int, y: int) -> bool:
        return (x, y % self.n) in self.site_index

    @property
    def cut_edges(self) -> tuple:
        return tuple(e for e in self.edges if e[3])


@dataclass(frozen=True)
class WirePartition:
    """Row wires (vertex-disjoint induced paths) plus the coupling edges."""

    wires: tuple          # tuple of site-index tuples, one per row, time-ordered
    couplingEdges: tuple  # edge tuples not inside any wire


def _parse_template_file(text: str, name: str) -> dict[str, LatticeTemplate]:
    """Parse one ``.lattice`` file into {foliation: template}."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    out: dict[str, LatticeTemplate] = {}
    declared: list[str] = []
    i = 0
    current = None

    def flush(cur):
        if cur is None:
            return
        out[cur["foliation"]] = LatticeTemplate(
            name=name,
            foliation=cur["foliation"],
            delta=cur["delta"],
            tau=cur["tau"],
            sites=tuple(cur["sites"]),
            edges=tuple(cur["edges"]),
            wires=cur["wires"],
            faces=tuple(cur["faces"]),
        )

    section = None
    for ln in lines:
        parts = ln.split()
        head = parts[0].upper()
        if head == "LATTICE":
            if parts[1] != name:
                raise ValueError(f"template file declares {parts[1]}, expected {name}")
        elif head == "FOLIATIONS":
            declared = parts[1:]
        elif head == "FOLIATION":
            flush(current)
            current = {"foliation": parts[1], "delta": 0, "tau": 0,
                       "sites": [], "edges": [], "wires": "rows", "faces": []}
            section = None
        elif head in ("UNITCELL", "EDGES", "WIRES", "FACES"):
            section = head
            if head == "WIRES" and len(parts) > 1:
                current["wires"] = parts[1]
        elif section == "UNITCELL":
            if head == "DELTA":
                current["delta"] = int(parts[1])
            elif head == "TAU":
                current["tau"] = int(parts[1])
            elif head == "SITE":
                current["sites"].append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError(f"unknown UNITCELL line: {ln}")
        elif section == "EDGES":
            if head != "EDGE":
                raise ValueError(f"unknown EDGES line: {ln}")
            dx1, y1, dx2, y2 = (int(v) for v in parts[1:5])
            if dx2 < dx1 or dx2 - dx1 > 2:
                raise ValueError(f"edge time span out of range: {ln}")
            current["edges"].append((dx1, y1, dx2, y2))
        elif section == "WIRES":
            current["wires"] = parts[0]
        elif section == "FACES":
            if head != "FACE":
                raise ValueError(f"unknown FACES line: {ln}")
            offsets = []
            for tok in parts[1:]:
                a, b = tok.split(",")
                offsets.append((int(a), int(b)))
            current["faces"].append(tuple(offsets))
        else:
            raise ValueError(f"line outside any section: {ln}")
    flush(current)
    for fol in declared:
        if fol not in out:
            raise ValueError(f"declared foliation {fol} has no body")
    return out


def load_template(name: str, foliation: str = "standard") -> LatticeTemplate:
    """Load a lattice template from the packaged data files."""
    base = name.split("-")[0]
    if base not in LATTICE_NAMES:
        raise ValueError(f"unknown lattice name: {name}")
    fname = base.replace(".", "_") + ".lattice"
    text = resources.files("archqca.data").joinpath(fname).read_text()
    templates = _parse_template_file(text, base)
    if foliation not in templates:
        raise ValueError(f"unknown foliation {foliation!r} for lattice {base}")
    return templates[foliation]


def _build_from_template(tpl: LatticeTemplate, n: int, N: int) -> Lattice:
    if n <= 0 or N <= 0:
        raise ValueError("n and N must be positive")
    if n % tpl.delta:
        raise ValueError(f"n must be a multiple of Delta={tpl.delta}")
    if N % tpl.tau:
        raise ValueError(f"N must be a multiple of tau={tpl.tau}")

    sites = []
    site_index: dict = {}
    for x in range(1, N + 1):
        for y in range(n):
            if tpl.occupied(x - 1, y):
                site_index[(x, y)] = len(sites)
                sites.append((x, y))

    edges = []
    seen = set()

    def add_edge(x1, y1, x2, y2, kind):
        y1 %= n
        y2 %= n
        wraps = x2 > N
        x2w = ((x2 - 1) % N) + 1
        x1w = ((x1 - 1) % N) + 1
        a = site_index.get((x1w, y1))
        b = site_index.get((x2w, y2))
        if a is None or b is None:
            raise ValueError(
                f"template edge endpoint unoccupied: ({x1},{y1})-({x2},{y2})")
        if a == b:
            raise ValueError(f"edge collapses to a loop at n={n}: ({x1},{y1})-({x2},{y2})")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ValueError(f"duplicate edge at n={n}: ({x1},{y1})-({x2},{y2})")
        seen.add(key)
        edges.append((a, b, kind, wraps))

    # Wire edges: successive occupied sites along each row.
    if tpl.wires == "rows":
        for y in range(n):
            xs = [x for x in range(1, N + 1) if (x, y) in site_index]
            for i, x in enumerate(xs):
                nxt = xs[(i + 1) % len(xs)]
                if nxt <= x:
                    nxt += N
                add_edge(x, y, nxt, y, "wire")

    # Coupling edges from the template, tiled over all cells.
    for (dx1, y1, dx2, y2) in tpl.edges:
        for t in range(N // tpl.tau):
            for s in range(n // tpl.delta):
                x1 = dx1 + 1 + t * tpl.tau
                x2 = x1 + (dx2 - dx1)
                kind = "cz" if dx1 == dx2 else "span"
                add_edge(x1, y1 + s * tpl.delta, x2, y2 + s * tpl.delta, kind)

    return Lattice(
        name=tpl.name if tpl.foliation == "standard" else f"{tpl.name}-{tpl.foliation}",
        n=n, N=N,
        deltaSpace=tpl.delta, tauTime=tpl.tau, foliation=tpl.foliation,
        sites=tuple(sites), edges=tuple(edges), template=tpl,
        site_index=site_index,
    )


def build(name: str, n: int, N: int, foliation: str = "standard") -> Lattice:
    """Instantiate a lattice by name on an n x N cut torus."""
    tpl = load_template(name, foliation)
    return _build_from_template(tpl, n, N)


def decorate(lat: Lattice) -> Lattice:
    """Subdivide every wire edge with one new degree-2 site.

    The decorated lattice doubles the time resolution: original column x
    moves to 2x-1 and each wire segment gains a midpoint site at the even
    column in between.  Coupling edges keep their original endpoints, so
    their time span doubles; a span that grows beyond two columns cannot be
    represented on the grid and is rejected.
    """
    tpl = lat.template
    if tpl.wires != "rows":
        raise NoPathPartition(f"{lat.name} has no wire partition to decorate")
    tau2 = 2 * tpl.tau
    sites2 = []
    for (dx, dy) in tpl.sites:
        sites2.append((2 * dx, dy))
    # Midpoint sites: one per wire edge.  Every occupied node is the source
    # of exactly one wire edge toward the next occupied column on its row,
    # so placing the midpoint right after each occupied node subdivides each
    # wire edge exactly once.
    for (dx, dy) in tpl.sites:
        sites2.append((2 * dx + 1, dy))
    edges2 = []
    for (dx1, y1, dx2, y2) in tpl.edges:
        span = dx2 - dx1
        if span == 0:
            edges2.append((2 * dx1, y1, 2 * dx1, y2))
        elif span == 1:
            edges2.append((2 * dx1, y1, 2 * dx1 + 2, y2))
        else:
            raise ValueError(
                "cannot decorate a lattice with coupling edges spanning two columns")
    tpl2 = LatticeTemplate(
        name=f"{tpl.name}-decorated",
        foliation=tpl.foliation,
        delta=tpl.delta, tau=tau2,
        sites=tuple(sorted(set(sites2))),
        edges=tuple(edges2),
        wires="rows",
        faces=(),
    )
    return _build_from_template(tpl2, lat.n, 2 * lat.N)


def partition_wires(lat: Lattice) -> WirePartition:
    """Partition sites into row wires; raise NoPathPartition when impossible."""
    if lat.template.wires != "rows":
        raise NoPathPartition(
            f"{lat.name} cannot be partitioned into induced row paths")
    wires = []
    for y in range(lat.n):
        row = [lat.site_index[(x, y)] for x in range(1, lat.N + 1)
               if (x, y) in lat.site_index]
        wires.append(tuple(row))
    coupling = tuple(e for e in lat.edges if e[2] != "wire")
    # Induced-path check: no coupling edge may join two sites of one wire.
    wire_of = {}
    for y, row in enumerate(wires):
        for idx in row:
            wire_of[idx] = y
    for (a, b, kind, _w) in coupling:
        if wire_of[a] == wire_of[b]:
            raise NoPathPartition(
                f"{lat.name}: row {wire_of[a]} is not an induced path")
    return WirePartition(wires=tuple(wires), couplingEdges=coupling)


def adjacency(lat: Lattice) -> np.ndarray:
    """Symmetric GF(2) adjacency matrix over all occupied sites (torus)."""
    m = len(lat.sites)
    A = np.zeros((m, m), dtype=np.uint8)
    for (a, b, _kind, _w) in lat.edges:
        A[a, b] ^= 1
        A[b, a] ^= 1
    return A


def degree_multiset(lat: Lattice) -> list[int]:
    """Per-site edge-instance degrees (multigraph count)."""
    deg = [0] * len(lat.sites)
    for (a, b, _kind, _w) in lat.edges:
        deg[a] += 1
        deg[b] += 1
    return deg
