"""Reference domains used across tests and the CLI docs.

``e1``: two annular sectors around 3i carried on single slices I and J,
plus the lens shared by the annulus and its conjugate, carried on every
slice.  All three terms are rasterized on one shared grid, which makes the
inner approximations nest the way the true sets do.

``e2_truncated``: finitely many axially symmetric strips along the real
axis joined by one-slice bridges, each bridge on its own unit.
"""

from __future__ import annotations

import math

from .domain import ALL_SLICES, SliceDomain, SliceSpec
from .planar import PlanarSet, Rect, rasterize_sector
from .quat import UI, UJ, UK, ImaginaryUnit

E1_CENTER = 3j
E1_RMIN, E1_RMAX = 2, 4


def e1_terms(eps: float = 0.05):
    """The three planar terms of the E1 domain, rasterized at pitch eps."""
    sector1 = rasterize_sector(E1_CENTER, E1_RMIN, E1_RMAX,
                               -math.pi / 2, 3 * math.pi / 4, eps)
    sector2 = rasterize_sector(E1_CENTER, E1_RMIN, E1_RMAX,
                               math.pi / 4, 3 * math.pi / 2, eps)
    annulus = rasterize_sector(E1_CENTER, E1_RMIN, E1_RMAX,
                               0.0, 3 * math.pi, eps)
    lens_all = annulus.intersection(annulus.conjugate())
    lens = PlanarSet([r for comp in lens_all.components()
                      if comp.meets_real_axis() for r in comp.rects])
    return sector1, sector2, lens


def e1(eps: float = 0.05, unit_i: ImaginaryUnit = UI,
       unit_j: ImaginaryUnit = UJ) -> SliceDomain:
    sector1, sector2, lens = e1_terms(eps)
    return SliceDomain([
        (sector1, SliceSpec.of(unit_i)),
        (sector2, SliceSpec.of(unit_j)),
        (lens, ALL_SLICES),
    ])


def e1_without_shared_term(eps: float = 0.05, unit_i: ImaginaryUnit = UI,
                           unit_j: ImaginaryUnit = UJ) -> SliceDomain:
    """The negative twin: dropping the shared term breaks both slice
    openness and two-path-symmetry, so validation is skipped."""
    sector1, sector2, _ = e1_terms(eps)
    return SliceDomain([
        (sector1, SliceSpec.of(unit_i)),
        (sector2, SliceSpec.of(unit_j)),
    ], validate=False)


E2_UNITS = (UI, UJ, UK)


def e2_intervals(count: int):
    """Disjoint real base intervals (a_l, b_l), l = 1..count+1."""
    return [(4 * k, 4 * k + 2) for k in range(count + 1)]


def e2_truncated(count: int = 3, units=E2_UNITS) -> SliceDomain:
    """First ``count`` strip-plus-bridge terms of the infinite example."""
    if count > len(units):
        raise ValueError("need one unit per truncated piece")
    iv = e2_intervals(count)
    pieces = []
    for idx in range(count):
        a, b = iv[idx]
        pieces.append((PlanarSet([Rect.of(a, b, -1, 1)]), ALL_SLICES))
    for idx in range(count):
        a, b = iv[idx]
        a2, b2 = iv[idx + 1]
        mid, mid2 = (a + b) / 2, (a2 + b2) / 2
        bridge = PlanarSet([
            Rect.of(mid, mid2, 2, 3),   # top span between the two midlines
            Rect.of(mid, b, 0, 3),      # left foot over the right half strip
            Rect.of(a2, mid2, 0, 3),    # right foot (strip may be absent)
        ])
        pieces.append((bridge, SliceSpec.of(units[idx])))
    return SliceDomain(pieces)


def square_all_slices(side: float = 2.0, center: complex = 0j) -> SliceDomain:
    """A single axially symmetric square strip: the simplest 2ps domain."""
    h = side / 2
    rect = Rect.of(center.real - h, center.real + h, center.imag - h, center.imag + h)
    return SliceDomain([(PlanarSet([rect]), ALL_SLICES)])


# -- domain files for the CLI ----------------------------------------------------


def e1_file(eps: float = 0.05, include_shared: bool = True) -> dict:
    """E1 as a domain file; the lens term ships pre-rasterized so that the
    shared-grid inclusions of the in-process construction are preserved."""
    import math as _math

    def sector(a, b):
        return {"region": {"sector": {"center": [0.0, 3.0],
                                      "rmin": E1_RMIN, "rmax": E1_RMAX,
                                      "thmin": a, "thmax": b, "eps": eps}}}
    pieces = [
        {**sector(-_math.pi / 2, 3 * _math.pi / 4), "slices": [[1, 0, 0]]},
        {**sector(_math.pi / 4, 3 * _math.pi / 2), "slices": [[0, 1, 0]]},
    ]
    if include_shared:
        _, _, lens = e1_terms(eps)
        rects = [[str(r.ax), str(r.bx), str(r.ay), str(r.by)] for r in lens.rects]
        pieces.append({"region": {"rects": rects}, "slices": "all"})
    return {"schema_version": 1, "pieces": pieces}


def e2_file(count: int = 3) -> dict:
    iv = e2_intervals(count)
    axes = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    pieces = []
    for idx in range(count):
        a, b = iv[idx]
        pieces.append({"region": {"rects": [[str(a), str(b), "-1", "1"]]},
                       "slices": "all"})
    for idx in range(count):
        a, b = iv[idx]
        a2, b2 = iv[idx + 1]
        mid, mid2 = (a + b) / 2, (a2 + b2) / 2
        rects = [[str(mid), str(mid2), "2", "3"],
                 [str(mid), str(b), "0", "3"],
                 [str(a2), str(mid2), "0", "3"]]
        pieces.append({"region": {"rects": rects}, "slices": [axes[idx]]})
    return {"schema_version": 1, "pieces": pieces}
