"""Deterministic SVG rendering for instances and verified drawings.

Every element is emitted in a sorted, reproducible order and numbers
are formatted to a fixed precision, so the same inputs always produce
byte-identical output.  When a drawing accompanies an instance it is
run through the matching verifier first; a drawing the verifier turns
down is refused with `DrawingRejectedError` rather than rendered.

Overlay layers:

* ``levels``   horizontal guide line per level
* ``gates``    gadget outlines and gate bars (needs a `GadgetIndex`)
* ``tunnels``  lane polylines per variable (needs a `GadgetIndex`)
* ``clusters`` region polygons from a clustered target drawing
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from .core import (
    OrderedLevelGraph,
    PolylineDrawing,
    PreconditionError,
    verify_drawing_geometric,
)
from .geom import Point, Scalar
from .geoplan import GeodesicDrawing, GeodesicInstance, verify_geodesic_drawing
from .levelvariants import (
    ClusteredInstance,
    TLevelInstance,
    TargetDrawing,
    verify_clustered_drawing,
    verify_tlevel_drawing,
)
from .satgadget import GadgetIndex, Pm3SatInstance

DEFAULT_LAYERS: Tuple[str, ...] = ("levels", "gates", "tunnels", "clusters")

KNOWN_LAYERS = frozenset(DEFAULT_LAYERS)

_STYLE = (
    "<style>"
    ".level{stroke:#cccccc;stroke-width:1;}"
    ".edge{stroke:#333333;fill:none;stroke-width:2;}"
    ".vertex{fill:#1f6feb;}"
    ".point{fill:#1f6feb;}"
    ".axis{stroke:#888888;stroke-width:1.5;}"
    ".segment{stroke:#1f6feb;stroke-width:6;}"
    ".clause{stroke:#d62728;fill:none;stroke-width:2;}"
    ".gate{stroke:#d62728;stroke-width:5;stroke-linecap:round;}"
    ".tunnel{stroke:#2ca02c;fill:none;stroke-width:1.5;stroke-dasharray:3 2;}"
    ".clause-gadget{stroke:#9467bd;fill:none;stroke-dasharray:6 3;}"
    ".cluster{fill:none;stroke:#ff7f0e;stroke-width:1.5;}"
    ".label{font:8px monospace;fill:#555555;}"
    "</style>"
)


class DrawingRejectedError(ValueError):
    """The supplied drawing failed verification and will not be drawn."""


class RenderSpec(NamedTuple):
    """Rendering knobs: unit scale, overlay selection, output path."""

    scale: Scalar = 36
    layers: Tuple[str, ...] = DEFAULT_LAYERS
    output: Optional[str] = None


def _fmt(value: Scalar) -> str:
    return f"{float(value):.4f}"


class _Canvas:
    """Maps exact model coordinates (y up) onto SVG pixels (y down)."""

    def __init__(self, spec: RenderSpec, points: List[Point]):
        self.scale = Fraction(spec.scale)
        self.margin = Fraction(20)
        xs = [Fraction(p[0]) for p in points]
        ys = [Fraction(p[1]) for p in points]
        self.min_x = min(xs, default=Fraction(0))
        self.max_x = max(xs, default=Fraction(0))
        self.min_y = min(ys, default=Fraction(0))
        self.max_y = max(ys, default=Fraction(0))
        self.elements: List[str] = []

    def tx(self, x: Scalar) -> Fraction:
        return self.margin + (Fraction(x) - self.min_x) * self.scale

    def ty(self, y: Scalar) -> Fraction:
        return self.margin + (self.max_y - Fraction(y)) * self.scale

    def line(self, cls: str, a: Point, b: Point) -> None:
        self.elements.append(
            f'<line class="{cls}" x1="{_fmt(self.tx(a[0]))}" '
            f'y1="{_fmt(self.ty(a[1]))}" x2="{_fmt(self.tx(b[0]))}" '
            f'y2="{_fmt(self.ty(b[1]))}"/>')

    def disk(self, cls: str, p: Point, radius: float = 4.0) -> None:
        self.elements.append(
            f'<circle class="{cls}" cx="{_fmt(self.tx(p[0]))}" '
            f'cy="{_fmt(self.ty(p[1]))}" r="{radius:.4f}"/>')

    def polyline(self, cls: str, pts: Tuple[Point, ...],
                 name: Optional[str] = None) -> None:
        coords = " ".join(
            f"{_fmt(self.tx(p[0]))},{_fmt(self.ty(p[1]))}" for p in pts)
        tag = f' data-name="{name}"' if name is not None else ""
        self.elements.append(f'<polyline class="{cls}"{tag} points="{coords}"/>')

    def polygon(self, cls: str, pts: Tuple[Point, ...], name: str) -> None:
        coords = " ".join(
            f"{_fmt(self.tx(p[0]))},{_fmt(self.ty(p[1]))}" for p in pts)
        self.elements.append(
            f'<polygon class="{cls}" data-name="{name}" points="{coords}"/>')

    def rect(self, cls: str, lo: Point, hi: Point, name: str) -> None:
        w = (Fraction(hi[0]) - Fraction(lo[0])) * self.scale
        h = (Fraction(hi[1]) - Fraction(lo[1])) * self.scale
        self.elements.append(
            f'<rect class="{cls}" data-name="{name}" '
            f'x="{_fmt(self.tx(lo[0]))}" y="{_fmt(self.ty(hi[1]))}" '
            f'width="{_fmt(w)}" height="{_fmt(h)}"/>')

    def label(self, text: str, p: Point) -> None:
        self.elements.append(
            f'<text class="label" x="{_fmt(self.tx(p[0]))}" '
            f'y="{_fmt(self.ty(p[1]))}">{text}</text>')

    def svg(self) -> str:
        width = 2 * self.margin + (self.max_x - self.min_x) * self.scale
        height = 2 * self.margin + (self.max_y - self.min_y) * self.scale
        head = (
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{_fmt(width)}" height="{_fmt(height)}" '
            f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">')
        return "\n".join([head, _STYLE] + self.elements + ["</svg>"]) + "\n"


def _check_spec(spec: Optional[RenderSpec]) -> RenderSpec:
    if spec is None:
        spec = RenderSpec()
    if Fraction(spec.scale) <= 0:
        raise PreconditionError("render scale must be positive")
    unknown = [layer for layer in spec.layers if layer not in KNOWN_LAYERS]
    if unknown:
        raise PreconditionError(f"unknown render layers: {unknown}")
    return spec


def _level_guides(canvas: _Canvas, num_levels: int) -> None:
    pad = Fraction(1, 2)
    for lvl in range(num_levels):
        canvas.line("level", (canvas.min_x - pad, lvl), (canvas.max_x + pad, lvl))
    canvas.min_x -= pad
    canvas.max_x += pad


def _render_leveled(graph: OrderedLevelGraph,
                    drawing: Optional[PolylineDrawing],
                    spec: RenderSpec,
                    index: Optional[GadgetIndex],
                    regions: Optional[Dict[str, Tuple[Point, ...]]] = None,
                    ) -> str:
    if drawing is not None:
        points = dict(drawing.points)
        paths = {e: drawing.paths[e] for e in graph.edges}
    else:
        points = {v.id: (v.pos, v.level) for v in graph.vertices}
        paths = {e: (points[e[0]], points[e[1]]) for e in graph.edges}
    extent: List[Point] = list(points.values())
    for path in paths.values():
        extent.extend(path)
    if regions:
        for ring in regions.values():
            extent.extend(ring)
    canvas = _Canvas(spec, extent)
    if "levels" in spec.layers:
        _level_guides(canvas, graph.num_levels)
    if regions is not None and "clusters" in spec.layers:
        for name in sorted(regions):
            canvas.polygon("cluster", regions[name], name)
            canvas.label(name, regions[name][0])
    for edge in sorted(paths):
        canvas.polyline("edge", paths[edge], name=f"{edge[0]}->{edge[1]}")
    for vid in sorted(points):
        canvas.disk("vertex", points[vid])
    if index is not None:
        _gadget_overlays(canvas, spec, points, index)
    return canvas.svg()


def _gadget_overlays(canvas: _Canvas, spec: RenderSpec,
                     points: Dict[str, Point], index: GadgetIndex) -> None:
    pad = Fraction(3, 10)
    if "gates" in spec.layers:
        for i, roles in enumerate(index.clause_vertices):
            ids = sorted(roles.values())
            xs = [Fraction(points[vid][0]) for vid in ids]
            ys = [Fraction(points[vid][1]) for vid in ids]
            lo = (min(xs) - pad, min(ys) - pad)
            hi = (max(xs) + pad, max(ys) + pad)
            canvas.rect("clause-gadget", lo, hi, f"clause{i}")
            canvas.label(f"clause{i}", (lo[0], hi[1]))
            for g in (1, 2, 3):
                left, right = roles.get(f"gate{g}.left"), roles.get(f"gate{g}.right")
                if left is None or right is None:
                    continue
                canvas.line("gate", points[left], points[right])
    if "tunnels" in spec.layers:
        for j, lanes in enumerate(index.tunnels):
            for kind in sorted(lanes):
                chain = tuple(points[vid] for vid in lanes[kind])
                canvas.polyline("tunnel", chain, name=f"var{j}.{kind}")


def _render_pm3sat(inst: Pm3SatInstance, spec: RenderSpec) -> str:
    xs: List[Scalar] = []
    ys: List[Scalar] = [0]
    for a, b in inst.variables:
        xs.extend((a, b))
    for clause in inst.clauses:
        xs.extend(clause.legs)
        ys.append(clause.y)
    extent = [(x, 0) for x in xs] + [(0, y) for y in ys]
    canvas = _Canvas(spec, extent or [(0, 0)])
    pad = Fraction(1)
    canvas.line("axis", (canvas.min_x - pad, 0), (canvas.max_x + pad, 0))
    canvas.min_x -= pad
    canvas.max_x += pad
    for j, (a, b) in enumerate(inst.variables):
        canvas.line("segment", (a, 0), (b, 0))
        canvas.label(f"u{j}", (a, Fraction(1, 4)))
    for i, clause in enumerate(inst.clauses):
        spine_y = clause.y
        canvas.line("clause", (min(clause.legs), spine_y), (max(clause.legs), spine_y))
        for leg in clause.legs:
            canvas.line("clause", (leg, 0), (leg, spine_y))
        canvas.label(f"clause{i}", (min(clause.legs), spine_y))
    return canvas.svg()


def _render_geodesic(inst: GeodesicInstance,
                     drawing: Optional[GeodesicDrawing],
                     spec: RenderSpec) -> str:
    if drawing is not None:
        paths = {e: drawing.paths[e] for e in inst.edges}
    else:
        paths = {e: (inst.points[e[0]], inst.points[e[1]]) for e in inst.edges}
    extent: List[Point] = list(inst.points.values())
    for path in paths.values():
        extent.extend(path)
    canvas = _Canvas(spec, extent)
    for edge in sorted(paths):
        canvas.polyline("edge", paths[edge], name=f"{edge[0]}->{edge[1]}")
    for pid in sorted(inst.points):
        canvas.disk("point", inst.points[pid])
    return canvas.svg()


def render_svg(instance, drawing=None, spec: Optional[RenderSpec] = None,
               index: Optional[GadgetIndex] = None) -> str:
    """Render any supported instance, optionally with a verified drawing.

    Drawings are checked by the verifier that matches the instance
    kind; a failing drawing raises `DrawingRejectedError`.  The result
    depends only on the arguments, never on ambient state.
    """
    spec = _check_spec(spec)
    if isinstance(instance, OrderedLevelGraph):
        flat: Optional[PolylineDrawing] = None
        if drawing is not None:
            flat = drawing.drawing if isinstance(drawing, TargetDrawing) else drawing
            if not verify_drawing_geometric(instance, flat):
                raise DrawingRejectedError("drawing fails geometric checks")
        return _render_leveled(instance, flat, spec, index)
    if isinstance(instance, TLevelInstance):
        flat = None
        if drawing is not None:
            target = (drawing if isinstance(drawing, TargetDrawing)
                      else TargetDrawing(drawing))
            if not verify_tlevel_drawing(instance, target):
                raise DrawingRejectedError("drawing fails tree-clustering checks")
            flat = target.drawing
        return _render_leveled(instance.graph, flat, spec, index=None)
    if isinstance(instance, ClusteredInstance):
        flat = None
        regions = None
        if drawing is not None:
            if not isinstance(drawing, TargetDrawing):
                raise PreconditionError("clustered rendering needs regions")
            if not verify_clustered_drawing(instance, drawing):
                raise DrawingRejectedError("drawing fails cluster checks")
            flat = drawing.drawing
            regions = drawing.regions
        return _render_leveled(instance.graph, flat, spec, index=None,
                               regions=regions)
    if isinstance(instance, GeodesicInstance):
        if drawing is not None:
            if not verify_geodesic_drawing(instance, drawing):
                raise DrawingRejectedError("drawing fails geodesic checks")
        return _render_geodesic(instance, drawing, spec)
    if isinstance(instance, Pm3SatInstance):
        if drawing is not None:
            raise PreconditionError("formula instances take no drawing")
        return _render_pm3sat(instance, spec)
    raise PreconditionError(f"cannot render {type(instance).__name__}")
