"""Exact 2-D sets: finite unions of open axis-aligned rational rectangles.

All topology predicates (membership, containment, components, boundary
distance) are decided in exact rational arithmetic.  Floating point is used
only to prune candidates; every reported answer is confirmed exactly.

Open-set semantics throughout: rectangles are open, so two rectangles that
share only a closed edge are disjoint and do not connect.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class InvalidSector(ValueError):
    """Sector with an empty radial range."""


def frac(v) -> Fraction:
    """Exact Fraction from int/float/str/Fraction (floats convert exactly)."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)
    raise TypeError(f"cannot convert {type(v)} to Fraction")


@dataclass(frozen=True, slots=True)
class Rect:
    """Open rectangle (ax, bx) x (ay, by) with rational endpoints."""

    ax: Fraction
    bx: Fraction
    ay: Fraction
    by: Fraction

    def __post_init__(self):
        if not (self.ax < self.bx and self.ay < self.by):
            raise ValueError(f"degenerate rectangle {self}")

    @staticmethod
    def of(ax, bx, ay, by) -> "Rect":
        return Rect(frac(ax), frac(bx), frac(ay), frac(by))

    def contains(self, px: Fraction, py: Fraction) -> bool:
        return self.ax < px < self.bx and self.ay < py < self.by

    def overlaps(self, o: "Rect") -> bool:
        return (max(self.ax, o.ax) < min(self.bx, o.bx)
                and max(self.ay, o.ay) < min(self.by, o.by))

    def intersect(self, o: "Rect") -> "Rect | None":
        ax, bx = max(self.ax, o.ax), min(self.bx, o.bx)
        ay, by = max(self.ay, o.ay), min(self.by, o.by)
        if ax < bx and ay < by:
            return Rect(ax, bx, ay, by)
        return None

    def conj(self) -> "Rect":
        return Rect(self.ax, self.bx, -self.by, -self.ay)

    def area(self) -> Fraction:
        return (self.bx - self.ax) * (self.by - self.ay)

    def as_tuple(self):
        return (self.ax, self.bx, self.ay, self.by)


def _point(z) -> tuple[Fraction, Fraction]:
    if isinstance(z, complex):
        return (frac(z.real), frac(z.imag))
    if isinstance(z, tuple):
        return (frac(z[0]), frac(z[1]))
    if isinstance(z, (int, float, Fraction)):
        return (frac(z), Fraction(0))
    raise TypeError(f"cannot interpret {z!r} as a planar point")


def _xy_overlap_pairs(rects_a, rects_b, check_y=True, same=False):
    """Yield (i, j) index pairs of rectangles with strict x-overlap (and,
    optionally, strict y-overlap).  Sweep line over x, close-before-open."""
    events = []
    for i, r in enumerate(rects_a):
        events.append((r.ax, 1, 0, i))
        events.append((r.bx, 0, 0, i))
    for j, r in enumerate(rects_b):
        events.append((r.ax, 1, 1, j))
        events.append((r.bx, 0, 1, j))
    events.sort(key=lambda e: (e[0], e[1]))
    active = (set(), set())
    for _x, kind, side, idx in events:
        if kind == 0:
            active[side].discard(idx)
            continue
        rect = (rects_a if side == 0 else rects_b)[idx]
        other = active[1 - side]
        pool = rects_b if side == 0 else rects_a
        for oidx in other:
            o = pool[oidx]
            if not check_y or (max(rect.ay, o.ay) < min(rect.by, o.by)):
                yield (idx, oidx) if side == 0 else (oidx, idx)
        if same:
            for oidx in active[side]:
                o = rects_a[oidx]
                if not check_y or (max(rect.ay, o.ay) < min(rect.by, o.by)):
                    yield (oidx, idx)
        active[side].add(idx)


def _merge_open_intervals(ivals):
    """Merge strictly overlapping open intervals; touching ones stay apart."""
    if not ivals:
        return []
    ivals = sorted(ivals)
    out = [list(ivals[0])]
    for a, b in ivals[1:]:
        if a < out[-1][1]:
            if b > out[-1][1]:
                out[-1][1] = b
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def _open_cover_gap(c, d, merged):
    """Return a point of the open interval (c, d) not covered by the merged
    open intervals, or None if covered.  ``merged`` is sorted and disjoint."""
    for u, v in merged:
        if u <= c and d <= v:
            return None
        if u >= d:
            break
    # not inside a single component: locate an uncovered point
    cur = c
    for u, v in merged:
        if v <= cur:
            continue
        if u >= d:
            break
        if u > cur:
            return (cur + min(u, d)) / 2
        # u <= cur < v: interval covers up to v, but the endpoint v itself
        # is outside the open cover unless another component starts below it
        cur = v
        if cur >= d:
            return None
        return cur if cur > c else (cur + d) / 2
    if cur < d:
        return (cur + d) / 2
    return None


class PlanarSet:
    """Finite union of open rational rectangles."""

    __slots__ = ("rects", "_rect_set", "_frag_v", "_frag_h", "_frag_np",
                 "_xs", "_strip_active", "_np_bounds")

    def __init__(self, rects=()):
        self.rects = tuple(dict.fromkeys(rects))
        self._rect_set = None
        self._frag_v = None
        self._frag_h = None
        self._frag_np = None
        self._xs = None
        self._strip_active = None
        self._np_bounds = None

    # -- basic structure ---------------------------------------------------

    def __bool__(self):
        return bool(self.rects)

    def __len__(self):
        return len(self.rects)

    def is_empty(self) -> bool:
        return not self.rects

    def rect_set(self):
        if self._rect_set is None:
            self._rect_set = frozenset(self.rects)
        return self._rect_set

    def bbox(self):
        if not self.rects:
            return None
        return (min(r.ax for r in self.rects), max(r.bx for r in self.rects),
                min(r.ay for r in self.rects), max(r.by for r in self.rects))

    def _bounds_np(self):
        if self._np_bounds is None:
            if self.rects:
                arr = np.array([[float(r.ax), float(r.bx), float(r.ay), float(r.by)]
                                for r in self.rects])
            else:
                arr = np.zeros((0, 4))
            self._np_bounds = arr
        return self._np_bounds

    # -- membership ---------------------------------------------------------

    def contains(self, z) -> bool:
        px, py = _point(z)
        if len(self.rects) > 48:
            b = self._bounds_np()
            x, y = float(px), float(py)
            eps = 1e-9 * (1.0 + abs(x) + abs(y))
            cand = np.nonzero((b[:, 0] < x + eps) & (b[:, 1] > x - eps)
                              & (b[:, 2] < y + eps) & (b[:, 3] > y - eps))[0]
            return any(self.rects[i].contains(px, py) for i in cand)
        return any(r.contains(px, py) for r in self.rects)

    def meets_real_axis(self) -> bool:
        return any(r.ay < 0 < r.by for r in self.rects)

    def real_trace(self):
        """Open real intervals covered by this set (exact, merged)."""
        return _merge_open_intervals([(r.ax, r.bx) for r in self.rects
                                      if r.ay < 0 < r.by])

    def area(self) -> Fraction:
        """Exact area of the union (strip sweep)."""
        total = Fraction(0)
        for kind, lo, hi, mine, _ in _sweep_strips(self, PlanarSet()):
            if kind != "strip":
                continue
            width = hi - lo
            for a, b in _merge_open_intervals(mine):
                total += width * (b - a)
        return total

    # -- set algebra ---------------------------------------------------------

    def union(self, other: "PlanarSet") -> "PlanarSet":
        return PlanarSet(self.rects + other.rects)

    def conjugate(self) -> "PlanarSet":
        return PlanarSet(tuple(r.conj() for r in self.rects))

    def intersection(self, other: "PlanarSet") -> "PlanarSet":
        common = [r for r in self.rects if r in other.rect_set()]
        mine = [r for r in self.rects if r not in other.rect_set()]
        theirs = [r for r in other.rects if r not in self.rect_set()]
        out = list(common)
        for i, j in _xy_overlap_pairs(mine, theirs):
            out.append(mine[i].intersect(theirs[j]))
        return PlanarSet(out)

    def difference(self, other: "PlanarSet") -> "PlanarSet":
        """Open rectangles covering A minus the closure of B.

        The result is an open set equal to A \\ cl(B) up to measure-zero
        seams along subdivision lines; in particular A.difference(A) is
        exactly empty and emptiness/nonemptiness is reliable.
        """
        out = []
        for kind, lo, hi, mine, theirs in _sweep_strips(self, other):
            if kind != "strip":
                continue
            for c, d in mine:
                pieces = [(c, d)]
                for u, v in sorted(theirs):
                    nxt = []
                    for cc, dd in pieces:
                        if v <= cc or u >= dd:
                            nxt.append((cc, dd))
                            continue
                        if u > cc:
                            nxt.append((cc, u))
                        if v < dd:
                            nxt.append((v, dd))
                    pieces = nxt
                for cc, dd in pieces:
                    if cc < dd:
                        out.append(Rect(lo, hi, cc, dd))
        return PlanarSet(out)

    def is_subset(self, other: "PlanarSet") -> bool:
        return self.subset_witness(other) is None

    def subset_witness(self, other: "PlanarSet"):
        """None if self is a subset of other, else an uncovered exact point."""
        mine = [r for r in self.rects if r not in other.rect_set()]
        if not mine:
            return None
        probe = PlanarSet(mine)
        for kind, lo, hi, a_iv, b_iv in _sweep_strips(probe, other):
            if not a_iv:
                continue
            merged = _merge_open_intervals(b_iv)
            if kind == "strip":
                x = (lo + hi) / 2
            else:
                x = lo
            for c, d in a_iv:
                y = _open_cover_gap(c, d, merged)
                if y is not None:
                    return (x, y)
        return None

    def set_equal(self, other: "PlanarSet") -> bool:
        return self.is_subset(other) and other.is_subset(self)

    # -- components ----------------------------------------------------------

    def components(self) -> list["PlanarSet"]:
        n = len(self.rects)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in _xy_overlap_pairs(self.rects, (), same=True):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
        groups: dict[int, list[Rect]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(self.rects[i])
        return [PlanarSet(v) for v in groups.values()]

    # -- boundary fragments and distance --------------------------------------

    def _build_fragments(self):
        """Boundary of the union, as closed axis-parallel segments.

        Each rectangle edge, minus the open parts lying strictly inside some
        other rectangle; leftover pieces (possibly degenerate points) are
        exactly the boundary of the union that lies on that edge.
        """
        vert: list[tuple[Fraction, Fraction, Fraction]] = []
        horiz: list[tuple[Fraction, Fraction, Fraction]] = []
        rects = self.rects
        xcands: dict[int, list[int]] = {i: [] for i in range(len(rects))}
        for i, j in _xy_overlap_pairs(rects, (), check_y=False, same=True):
            xcands[i].append(j)
            xcands[j].append(i)

        def cut(carrier_lo, carrier_hi, removals):
            pieces = [(carrier_lo, carrier_hi)]
            for ru, rv in removals:
                nxt = []
                for u, v in pieces:
                    if rv <= u or ru >= v:
                        nxt.append((u, v))
                        continue
                    if ru > u:
                        nxt.append((u, ru))
                    if rv < v:
                        nxt.append((rv, v))
                pieces = nxt
                if not pieces:
                    break
            return pieces

        for i, r in enumerate(rects):
            near = [rects[j] for j in xcands[i]]
            for x in (r.ax, r.bx):
                rem = [(q.ay, q.by) for q in near if q.ax < x < q.bx]
                for u, v in cut(r.ay, r.by, rem):
                    vert.append((x, u, v))
            for y in (r.ay, r.by):
                rem = [(q.ax, q.bx) for q in near if q.ay < y < q.by]
                for u, v in cut(r.ax, r.bx, rem):
                    horiz.append((y, u, v))
        self._frag_v = vert
        self._frag_h = horiz
        segs = []
        for x, u, v in vert:
            segs.append((float(x), float(u), float(x), float(v)))
        for y, u, v in horiz:
            segs.append((float(u), float(y), float(v), float(y)))
        self._frag_np = (np.array(segs) if segs else np.zeros((0, 4)))

    def boundary_fragments(self):
        if self._frag_v is None:
            self._build_fragments()
        return self._frag_v, self._frag_h

    def boundary_sample(self, pitch: float):
        """Points on the exact boundary, spaced at most ``pitch`` apart."""
        vert, horiz = self.boundary_fragments()
        pts = []
        for x, u, v in vert:
            n = max(1, math.ceil(float(v - u) / pitch))
            for t in range(n + 1):
                pts.append((float(x), float(u) + (float(v - u)) * t / n))
        for y, u, v in horiz:
            n = max(1, math.ceil(float(v - u) / pitch))
            for t in range(n + 1):
                pts.append((float(u) + (float(v - u)) * t / n, float(y)))
        return pts

    def dist2_to_complement(self, z) -> Fraction:
        """Exact squared distance from z to the boundary; 0 if z is outside."""
        px, py = _point(z)
        if not self.contains((px, py)):
            return Fraction(0)
        if self._frag_v is None:
            self._build_fragments()
        segs = self._frag_np
        x, y = float(px), float(py)
        dx = np.clip(np.minimum(segs[:, 0], segs[:, 2]) - x, 0, None) \
            + np.clip(x - np.maximum(segs[:, 0], segs[:, 2]), 0, None)
        dy = np.clip(np.minimum(segs[:, 1], segs[:, 3]) - y, 0, None) \
            + np.clip(y - np.maximum(segs[:, 1], segs[:, 3]), 0, None)
        d2 = dx * dx + dy * dy
        m = float(d2.min())
        cut = m * (1.0 + 1e-9) + 1e-14 * (1.0 + abs(x) + abs(y))
        cand = np.nonzero(d2 <= cut)[0]
        nv = len(self._frag_v)
        best = None
        for i in cand:
            i = int(i)
            if i < nv:
                c, u, v = self._frag_v[i]
                dxe = px - c
                dye = Fraction(0) if u <= py <= v else min(abs(py - u), abs(py - v))
            else:
                c, u, v = self._frag_h[i - nv]
                dye = py - c
                dxe = Fraction(0) if u <= px <= v else min(abs(px - u), abs(px - v))
            val = dxe * dxe + dye * dye
            if best is None or val < best:
                best = val
        assert best is not None
        return best

    def dist_to_complement(self, z) -> float:
        return math.sqrt(float(self.dist2_to_complement(z)))

    # -- sampling -------------------------------------------------------------

    def sample(self, rng, n: int):
        """n pseudo-random points of the set (area weighted)."""
        if not self.rects:
            return []
        weights = [float(r.area()) for r in self.rects]
        total = sum(weights)
        pts = []
        for _ in range(n):
            t = rng.random() * total
            acc = 0.0
            pick = self.rects[-1]
            for r, w in zip(self.rects, weights):
                acc += w
                if t <= acc:
                    pick = r
                    break
            x = float(pick.ax) + rng.random() * float(pick.bx - pick.ax)
            y = float(pick.ay) + rng.random() * float(pick.by - pick.ay)
            pts.append(complex(x, y))
        return pts

    def grid_points(self, pitch: float, margin: float = 0.0):
        """Grid points strictly inside the set, at the given pitch."""
        box = self.bbox()
        if box is None:
            return []
        ax, bx, ay, by = (float(v) for v in box)
        out = []
        x = ax + pitch / 2
        while x < bx:
            y = ay + pitch / 2
            while y < by:
                z = complex(x, y)
                if self.contains(z):
                    if margin <= 0.0 or self.dist2_to_complement(z) > frac(margin) ** 2:
                        out.append(z)
                y += pitch
            x += pitch
        return out

    def __repr__(self):
        return f"PlanarSet({len(self.rects)} rects)"


def _sweep_strips(a: PlanarSet, b: PlanarSet):
    """Yield ('strip', lo, hi, a_ivals, b_ivals) for open x-strips and
    ('line', x, x, a_ivals, b_ivals) for subdivision lines, in x order."""
    opens: dict[Fraction, list[tuple[int, int]]] = {}
    closes: dict[Fraction, list[tuple[int, int]]] = {}
    xs = set()
    for side, ps in ((0, a), (1, b)):
        for i, r in enumerate(ps.rects):
            opens.setdefault(r.ax, []).append((side, i))
            closes.setdefault(r.bx, []).append((side, i))
            xs.add(r.ax)
            xs.add(r.bx)
    bps = sorted(xs)
    active = (set(), set())
    for t, x in enumerate(bps):
        for side, i in closes.get(x, ()):
            active[side].discard(i)
        # rectangles spanning the line x (open at both sides)
        a_line = [(a.rects[i].ay, a.rects[i].by) for i in active[0]]
        b_line = [(b.rects[i].ay, b.rects[i].by) for i in active[1]]
        if a_line or b_line:
            yield ("line", x, x, a_line, b_line)
        for side, i in opens.get(x, ()):
            active[side].add(i)
        if t + 1 < len(bps):
            hi = bps[t + 1]
            a_iv = [(a.rects[i].ay, a.rects[i].by) for i in active[0]]
            b_iv = [(b.rects[i].ay, b.rects[i].by) for i in active[1]]
            if a_iv or b_iv:
                yield ("strip", x, hi, a_iv, b_iv)


# -- piecewise-linear paths ----------------------------------------------------


@dataclass(frozen=True)
class PlPath:
    """Piecewise-linear path given by >= 2 rational vertices."""

    vertices: tuple

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValueError("a path needs at least two vertices")

    @staticmethod
    def of(points) -> "PlPath":
        return PlPath(tuple(_point(p) for p in points))

    def start(self):
        return self.vertices[0]

    def end(self):
        return self.vertices[-1]

    def starts_on_real_axis(self) -> bool:
        return self.vertices[0][1] == 0


def _segment_param_interval(p, q, rect: Rect):
    """Open parameter interval (or None) where p + t*(q-p) lies in rect."""
    lo, hi = Fraction(-10), Fraction(10)  # superset of [0, 1]
    for pc, qc, a, b in ((p[0], q[0], rect.ax, rect.bx),
                         (p[1], q[1], rect.ay, rect.by)):
        d = qc - pc
        if d == 0:
            if not (a < pc < b):
                return None
            continue
        t1 = (a - pc) / d
        t2 = (b - pc) / d
        if t1 > t2:
            t1, t2 = t2, t1
        lo = max(lo, t1)
        hi = min(hi, t2)
        if lo >= hi:
            return None
    return (lo, hi)


def path_in_set(path: PlPath, s: PlanarSet) -> bool:
    """Exact test that the whole path lies in the open set."""
    verts = path.vertices
    for a, b in zip(verts[:-1], verts[1:]):
        if a == b:
            if not s.contains(a):
                return False
            continue
        ivals = []
        for r in s.rects:
            iv = _segment_param_interval(a, b, r)
            if iv is not None:
                ivals.append(iv)
        # the open intervals must cover the closed range [0, 1]
        ivals.sort()
        cur = Fraction(0)
        covered = False
        while True:
            best = None
            for lo, hi in ivals:
                if lo < cur < hi or (cur == 0 and lo < 0 < hi):
                    if best is None or hi > best:
                        best = hi
                if lo >= cur and not (cur == 0 and lo < 0):
                    if lo > cur:
                        break
            if best is None:
                covered = False
                break
            if best > 1:
                covered = True
                break
            cur = best
        if not covered:
            return False
    return True


# -- sector rasterization ------------------------------------------------------

_OCTANT_DIRS = {0: (1, 0), 1: (1, 1), 2: (0, 1), 3: (-1, 1),
                4: (-1, 0), 5: (-1, -1), 6: (0, -1), 7: (1, -1)}


def _direction_vector(theta: float):
    """Rational direction vector for a ray angle.

    Exact for multiples of pi/4; otherwise a rational approximation within
    1e-9 (callers treat such sectors as approximate).
    """
    k = round(theta / (math.pi / 4))
    if abs(theta - k * math.pi / 4) <= 1e-12 * (1 + abs(theta)):
        return tuple(Fraction(c) for c in _OCTANT_DIRS[k % 8]), True
    return ((Fraction(math.cos(theta)).limit_denominator(10 ** 9),
             Fraction(math.sin(theta)).limit_denominator(10 ** 9)), False)


def _halfplane_column_bound(e, sign, u0, u1):
    """y-constraint so that sign * (e.x*y - e.y*x) > 0 for all x in (u0, u1).

    Returns ("all",), ("none",), ("gt", b) for y > b, or ("lt", b) for y < b.
    """
    ex, ey = (e[0] * sign, e[1] * sign)
    if ex == 0:
        # condition is -ey*x > 0 uniformly over the open column
        if (-ey * u0 > 0 or u0 == 0) and (-ey * u1 > 0 or u1 == 0) and ey != 0:
            return ("all",)
        return ("none",)
    t = ey / ex  # condition: y > t*x (ex > 0) or y < t*x (ex < 0)
    if ex > 0:
        b = t * (u1 if t >= 0 else u0)
        return ("gt", b)
    b = t * (u1 if t <= 0 else u0)
    return ("lt", b)


def _wedge_column_intervals(wedges, u0, u1, ylo, yhi):
    """Open y-intervals of the column band lying inside the wedge union."""
    out = []
    for constraints in wedges:
        lo, hi = ylo, yhi
        dead = False
        for e, sign in constraints:
            kind = _halfplane_column_bound(e, sign, u0, u1)
            if kind[0] == "none":
                dead = True
                break
            if kind[0] == "gt":
                lo = max(lo, kind[1])
            elif kind[0] == "lt":
                hi = min(hi, kind[1])
        if not dead and lo < hi:
            out.append((lo, hi))
    return out


def _snap_down(value_f: float, upper2: Fraction, grid: Fraction) -> Fraction | None:
    """Largest grid multiple q with q >= 0 and q^2 <= upper2, guided by floats."""
    q = Fraction(math.floor(value_f / float(grid))) * grid
    while q * q > upper2:
        q -= grid
    while (q + grid) * (q + grid) <= upper2:
        q += grid
    if q < 0:
        return None
    return q


def _snap_up(value_f: float, lower2: Fraction, grid: Fraction) -> Fraction:
    """Smallest grid multiple q with q^2 >= lower2, guided by floats."""
    q = Fraction(math.ceil(value_f / float(grid))) * grid
    while q * q < lower2:
        q += grid
    while q - grid >= 0 and (q - grid) * (q - grid) >= lower2:
        q -= grid
    return q


def rasterize_sector(center, rmin, rmax, thmin, thmax, eps) -> PlanarSet:
    """Inner rectangle approximation of the open annular sector

        { c + t*e^{i*theta} : rmin < t < rmax, thmin < theta < thmax }.

    Columns of width eps step eps/2 so adjacent columns overlap; y bounds are
    snapped inward to a grid of pitch eps/4, so halving eps yields a superset.
    Hausdorff distance to the true sector is <= eps*sqrt(2).
    """
    cx, cy = _point(center)
    rmin_f, rmax_f = frac(rmin), frac(rmax)
    if rmin_f >= rmax_f:
        raise InvalidSector(f"need rmin < rmax, got {rmin} >= {rmax}")
    if rmin_f < 0:
        raise InvalidSector("rmin must be >= 0")
    if not (float(thmax) > float(thmin)):
        return PlanarSet()
    step = frac(eps) / 2
    grid = frac(eps) / 4
    span = float(thmax) - float(thmin)
    full_turn = span >= 2 * math.pi - 1e-15

    # each wedge is a conjunction of halfplane constraints (e, sign) meaning
    # sign * cross(e, p) > 0; a sector wider than pi splits into two
    # halfplane wedges whose union is the original direction arc
    wedges = []
    if not full_turn:
        if span <= math.pi:
            lo, _ = _direction_vector(float(thmin))
            hi, _ = _direction_vector(float(thmax))
            wedges.append(((lo, 1), (hi, -1)))
        else:
            lo1, _ = _direction_vector(float(thmin))
            hi2, _ = _direction_vector(float(thmax))
            wedges.append(((lo1, 1),))
            wedges.append(((hi2, -1),))

    rmin2, rmax2 = rmin_f * rmin_f, rmax_f * rmax_f
    kmax = math.ceil(float(rmax_f) / float(step)) + 1
    out = []
    for k in range(-kmax - 1, kmax + 1):
        u0 = k * step
        u1 = u0 + 2 * step
        if u1 <= -rmax_f or u0 >= rmax_f:
            continue
        umax2 = max(u0 * u0, u1 * u1)
        if umax2 >= rmax2:
            continue
        outer = _snap_down(math.sqrt(float(rmax2 - umax2)), rmax2 - umax2, grid)
        if outer is None or outer == 0:
            continue
        straddles = u0 < 0 < u1
        umin2 = Fraction(0) if straddles else min(u0 * u0, u1 * u1)
        bands = []
        if umin2 < rmin2:
            inner = _snap_up(math.sqrt(float(rmin2 - umin2)), rmin2 - umin2, grid)
            if inner < outer:
                bands.append((inner, outer))
                bands.append((-outer, -inner))
        else:
            bands.append((-outer, outer))
        for ylo, yhi in bands:
            if ylo >= yhi:
                continue
            if full_turn:
                out.append(Rect(cx + u0, cx + u1, cy + ylo, cy + yhi))
                continue
            for wlo, whi in _wedge_column_intervals(wedges, u0, u1, ylo, yhi):
                out.append(Rect(cx + u0, cx + u1, cy + wlo, cy + whi))
    return PlanarSet(out)
