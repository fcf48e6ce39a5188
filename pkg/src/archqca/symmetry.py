"""Subsystem-symmetry generators of the lattice graph state.

Seeding a virtual Pauli e_l on the wire inputs and propagating it column
by column through the QCA leaves physical X operators wherever the
running vector has an X component on an occupied site; the resulting
site support is a pure-X stabilizer element.  Besides these propagated
generators, some lattices carry plaquette-loop (one-form) symmetries and
color-class (fractional) symmetries, both found directly from the graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import gf2, qca as qca_mod
from .graphstate import neighbor_lists
from .lattice import Lattice
from .qca import Qca, QcaClass, compile_slice

__all__ = [
    "Kind",
    "SymmetryGenerator",
    "NotGliderClass",
    "generate",
    "full_basis",
    "label_kind",
    "line_symmetries",
    "one_form_generators",
    "fractional_symmetries",
    "render",
]


class Kind(Enum):
    RIBBON = "Ribbon"
    CONE = "Cone"
    FRACTAL = "Fractal"
    ONE_FORM = "OneForm"
    FRACTIONAL = "Fractional"


class NotGliderClass(Exception):
    """line_symmetries requires a QCA with gliders."""


@dataclass(frozen=True)
class SymmetryGenerator:
    """A pure-X stabilizer element given by its site support.

    ``label`` records the seeding virtual Pauli index l in 1..2n for
    propagated generators (X_l for l <= n, Z_{l-n} above) and is None
    for one-form/fractional generators.
    """

    lattice: Lattice = field(repr=False)
    support: np.ndarray
    label: int | None = None
    kind: Kind | None = None

    def __post_init__(self):
        object.__setattr__(self, "support", gf2.bitvec(self.support))
        if len(self.support) != len(self.lattice.sites):
            raise ValueError("support length mismatch")

    def with_kind(self, kind: Kind) -> "SymmetryGenerator":
        return SymmetryGenerator(self.lattice, self.support, self.label, kind)


def _slice_matrices(qca: Qca) -> list[np.ndarray]:
    return [compile_slice(s).m for s in qca.slices]


def generate(qca: Qca, lat: Lattice, l: int, steps: int) -> SymmetryGenerator:
    """Propagate seed e_l for ``steps`` columns and record the X footprint.

    The support at column x is the X part of T^[x-1] e_l on the occupied
    sites of that column.
    """
    n = qca.n
    if not 1 <= l <= 2 * n:
        raise ValueError(f"seed index {l} outside 1..{2 * n}")
    if steps > lat.N:
        raise ValueError("steps exceeds the lattice length")
    mats = _slice_matrices(qca)
    w = np.zeros(2 * n, np.uint8)
    w[l - 1] = 1
    support = np.zeros(len(lat.sites), np.uint8)
    for x in range(1, steps + 1):
        for y in np.nonzero(w[:n])[0]:
            if lat.is_occupied(x, int(y)):
                support[lat.index_of(x, int(y))] = 1
        w = gf2.matmul(mats[(x - 1) % qca.tau], w.reshape(-1, 1)).reshape(-1)
    return SymmetryGenerator(lat, support, label=l)


def full_basis(qca: Qca, lat: Lattice) -> list[SymmetryGenerator]:
    """All 2n propagated generators over the full lattice length.

    Requires N to cover whole QCA periods so the supports close around
    the torus; the result is checked for GF(2) independence.
    """
    p = qca_mod.period(qca)
    if p is qca_mod.NOT_FOUND:
        raise ValueError("QCA period unknown; cannot size the basis window")
    if lat.N % (p * qca.tau):
        raise ValueError(
            f"N={lat.N} is not a multiple of one QCA period p*tau={p * qca.tau}")
    n = qca.n
    mats = _slice_matrices(qca)
    # Propagate all 2n seeds jointly: column x of W is T^[x-1] e_l.
    W = np.eye(2 * n, dtype=np.uint8)
    supports = np.zeros((2 * n, len(lat.sites)), np.uint8)
    for x in range(1, lat.N + 1):
        for y in range(n):
            if lat.is_occupied(x, y):
                supports[:, lat.index_of(x, y)] = W[y, :]
        W = gf2.matmul(mats[(x - 1) % qca.tau], W)
    # Independence check; a column prefix usually certifies full rank.
    prefix = min(supports.shape[1], 8 * n)
    if gf2.rank(supports[:, :prefix]) != 2 * n and gf2.rank(supports) != 2 * n:
        raise ValueError("propagated supports are not independent")
    return [SymmetryGenerator(lat, supports[l - 1], label=l)
            for l in range(1, 2 * n + 1)]


def label_kind(gen: SymmetryGenerator, evidence: QcaClass) -> SymmetryGenerator:
    """Attach the symmetry kind implied by the QCA class."""
    mapping = {
        QcaClass.PERIODIC: Kind.RIBBON,
        QcaClass.GLIDER: Kind.CONE,
        QcaClass.FRACTAL: Kind.FRACTAL,
    }
    if evidence not in mapping:
        raise ValueError(f"no symmetry kind for QCA class {evidence}")
    return gen.with_kind(mapping[evidence])


def line_symmetries(qca: Qca, lat: Lattice) -> list[SymmetryGenerator]:
    """Generators seeded by glider vectors: bounded-width X strings."""
    gliders = qca_mod.find_gliders(qca)
    if not gliders:
        raise NotGliderClass(f"{lat.name}: transfer matrix admits no gliders")
    n = qca.n
    mats = _slice_matrices(qca)
    out = []
    for g in gliders:
        w = gf2.bitvec(g).copy()
        support = np.zeros(len(lat.sites), np.uint8)
        for x in range(1, lat.N + 1):
            for y in np.nonzero(w[:n])[0]:
                if lat.is_occupied(x, int(y)):
                    support[lat.index_of(x, int(y))] = 1
            w = gf2.matmul(mats[(x - 1) % qca.tau], w.reshape(-1, 1)).reshape(-1)
        out.append(SymmetryGenerator(lat, support, label=None, kind=Kind.CONE))
    return out


def _face_supports(lat: Lattice):
    tpl = lat.template
    for face in tpl.faces:
        for t in range(lat.N // tpl.tau):
            for s in range(lat.n // tpl.delta):
                sites = []
                ok = True
                for (dx, dy) in face:
                    x = (dx + t * tpl.tau) % lat.N + 1
                    y = (dy + s * tpl.delta) % lat.n
                    if not lat.is_occupied(x, y):
                        ok = False
                        break
                    sites.append(lat.index_of(x, y))
                if ok:
                    yield sites


def one_form_generators(lat: Lattice) -> list[SymmetryGenerator]:
    """One loop generator per face instance whose support lies in the
    adjacency kernel.  Lattices without face templates yield []."""
    nbr = neighbor_lists(lat)
    out = []
    for sites in _face_supports(lat):
        support = np.zeros(len(lat.sites), np.uint8)
        support[sites] = 1
        ok = True
        touched = set(sites)
        for v in sites:
            touched.update(nbr[v])
        for v in touched:
            if int(support[nbr[v]].sum()) % 2:
                ok = False
                break
        if ok:
            out.append(SymmetryGenerator(lat, support, label=None,
                                         kind=Kind.ONE_FORM))
    return out


def _color_graph(nbr: list[list[int]]) -> list[int]:
    """Proper coloring with the fewest colors (<= 4 here), deterministic
    backtracking in vertex order."""
    m = len(nbr)
    for k in range(2, 5):
        colors = [-1] * m
        v = 0
        choice = [0] * m
        while 0 <= v < m:
            placed = False
            for c in range(choice[v], k):
                if all(colors[w] != c for w in nbr[v] if colors[w] >= 0):
                    colors[v] = c
                    choice[v] = c + 1
                    placed = True
                    break
            if placed:
                v += 1
                if v < m:
                    choice[v] = 0
            else:
                colors[v] = -1
                choice[v] = 0
                v -= 1
        if v == m:
            return colors
    raise ValueError("graph needs more than 4 colors")


def fractional_symmetries(lat: Lattice) -> list[SymmetryGenerator]:
    """Color-class X products that lie in the adjacency kernel."""
    nbr = neighbor_lists(lat)
    colors = _color_graph(nbr)
    k = max(colors) + 1
    out = []
    for c in range(k):
        support = np.array([1 if col == c else 0 for col in colors], np.uint8)
        in_kernel = all(
            int(support[nbr[v]].sum()) % 2 == 0 for v in range(len(nbr)))
        if in_kernel:
            out.append(SymmetryGenerator(lat, support, label=None,
                                         kind=Kind.FRACTIONAL))
    return out


def render(gen: SymmetryGenerator, format: str = "ascii") -> str:
    """Deterministic support drawing.

    ascii: one row per wire y (top row y=0), one column per time column;
    '#' = occupied and in the support, '.' = occupied, ' ' = unoccupied.
    svg: 16-unit pitch, lattice edges as grid lines, support as circles.
    """
    lat = gen.lattice
    if format == "ascii":
        grid = []
        for y in range(lat.n):
            row = []
            for x in range(1, lat.N + 1):
                if not lat.is_occupied(x, y):
                    row.append(" ")
                elif gen.support[lat.index_of(x, y)]:
                    row.append("#")
                else:
                    row.append(".")
            grid.append("".join(row))
        return "\n".join(grid)
    if format == "svg":
        pitch = 16
        width = (lat.N + 1) * pitch
        height = (lat.n + 1) * pitch
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{width}" height="{height}">'
        ]
        for (a, b, _kind, wraps) in lat.edges:
            if wraps:
                continue
            (x1, y1), (x2, y2) = lat.sites[a], lat.sites[b]
            parts.append(
                f'<line x1="{x1 * pitch}" y1="{(y1 + 1) * pitch}" '
                f'x2="{x2 * pitch}" y2="{(y2 + 1) * pitch}" '
                f'stroke="lightgray" stroke-width="1"/>')
        for idx, (x, y) in enumerate(lat.sites):
            filled = bool(gen.support[idx])
            fill = "black" if filled else "white"
            parts.append(
                f'<circle cx="{x * pitch}" cy="{(y + 1) * pitch}" r="4" '
                f'fill="{fill}" stroke="black" stroke-width="1"/>')
        parts.append("</svg>")
        return "\n".join(parts)
    raise ValueError(f"unknown render format {format!r}")
