"""Symbolic slice-open subsets of the quaternions.

A domain is a finite list of pieces (planar set, slice spec).  A piece
(U, all) lives on every slice; a piece (U, {I, ...}) is the union of the
chart images U^I over its listed units.  Membership, pullbacks per slice,
the shared two-path region, and the two-path-symmetry decision all reduce to
exact planar computations on the pullbacks.

Two fresh "generic" units stand in for the cofinitely many slices that
behave identically (all named exceptional slices are finite here).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .planar import PlanarSet, PlPath, Rect, frac
from .quat import ImaginaryUnit, Quaternion, psi, slice_decompose

UNIT_MATCH_TOL = 1e-9


class NotInDomain(ValueError):
    pass


class Requires2PS(ValueError):
    """Operation needs a two-path-symmetric domain."""


class SliceOpennessError(ValueError):
    """A piece's real trace is not interior on every slice."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


ALL_SLICES = "all"


@dataclass(frozen=True)
class SliceSpec:
    """Either every slice (units is None) or a finite set of chart units."""

    units: tuple[ImaginaryUnit, ...] | None

    @staticmethod
    def all_slices() -> "SliceSpec":
        return SliceSpec(None)

    @staticmethod
    def of(*units: ImaginaryUnit) -> "SliceSpec":
        seen: list[ImaginaryUnit] = []
        for u in units:
            for v in seen:
                if u.isclose(v):
                    raise ValueError(f"duplicate unit in slice spec: {u}")
            seen.append(u)
        return SliceSpec(tuple(seen))

    @property
    def is_all(self) -> bool:
        return self.units is None


@dataclass(frozen=True)
class PointClass:
    """Equivalence class of a point: a full sphere orbit or a singleton."""

    sphere_z: complex | None = None
    point: Quaternion | None = None

    @staticmethod
    def sphere(z: complex) -> "PointClass":
        if z.imag <= 0:
            raise ValueError("sphere class stores z with Im z > 0")
        return PointClass(sphere_z=z)

    @staticmethod
    def singleton(q: Quaternion) -> "PointClass":
        return PointClass(point=q)

    @property
    def is_sphere(self) -> bool:
        return self.sphere_z is not None


_GENERIC_CANDIDATES = (
    (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0),
    (1.0, 1.0, 0.0), (1.0, -1.0, 0.0), (0.0, 1.0, 1.0), (0.0, 1.0, -1.0),
    (1.0, 0.0, 1.0), (1.0, 0.0, -1.0), (1.0, 1.0, 1.0), (1.0, 2.0, 3.0),
    (3.0, 1.0, 2.0), (2.0, 3.0, 1.0), (1.0, -2.0, 3.0), (5.0, 1.0, 1.0),
)


class SliceDomain:
    """Finite symbolic slice-open set."""

    def __init__(self, pieces, validate: bool = True):
        norm = []
        for region, spec in pieces:
            if not isinstance(region, PlanarSet):
                region = PlanarSet(region)
            if not isinstance(spec, SliceSpec):
                spec = SliceSpec.all_slices() if spec == ALL_SLICES else SliceSpec.of(*spec)
            norm.append((region, spec))
        self.pieces = tuple(norm)

        named: list[ImaginaryUnit] = []
        for _, spec in self.pieces:
            if spec.is_all:
                continue
            for u in spec.units:
                for v in (u, -u):
                    if not any(v.isclose(w) for w in named):
                        named.append(v)
        self.named_units = tuple(named)

        generics: list[ImaginaryUnit] = []
        for cand in _GENERIC_CANDIDATES:
            u = ImaginaryUnit.of(*cand)
            if any(u.same_plane(w) for w in named):
                continue
            if any(u.same_plane(w) for w in generics):
                continue
            generics.append(u)
            if len(generics) == 2:
                break
        self.generic_units = tuple(generics)
        self.effective_slices = self.named_units + self.generic_units

        self._pullbacks: dict = {}
        self._omega_2ps: PlanarSet | None = None
        self._2ps: tuple | None = None
        self._s_omega: tuple | None = None
        if validate:
            self.validate()

    # -- unit bookkeeping ----------------------------------------------------

    def _unit_key(self, unit: ImaginaryUnit):
        for i, u in enumerate(self.named_units):
            if unit.isclose(u, UNIT_MATCH_TOL):
                return ("named", i)
        return ("generic",)

    def resolve_unit(self, unit: ImaginaryUnit) -> ImaginaryUnit:
        """The canonical representative used for stem tags and orbit keys:
        the stored named unit if the unit lies on a named plane chart, else
        the first generic unit (all unnamed slices behave identically)."""
        key = self._unit_key(unit)
        if key[0] == "named":
            return self.named_units[key[1]]
        return self.generic_units[0]

    def snap_unit(self, unit: ImaginaryUnit) -> ImaginaryUnit:
        """Sign-faithful snap: the stored named unit if close to one, else
        the unit itself (for chart bases, where orientation matters)."""
        key = self._unit_key(unit)
        if key[0] == "named":
            return self.named_units[key[1]]
        return unit

    def is_named(self, unit: ImaginaryUnit) -> bool:
        return self._unit_key(unit)[0] == "named"

    # -- membership and pullbacks ---------------------------------------------

    def contains_q(self, q: Quaternion) -> bool:
        x, y, unit = slice_decompose(q)
        if unit is None:
            for region, _ in self.pieces:
                if region.contains(complex(x, 0.0)):
                    return True
            return False
        z = complex(x, y)
        zc = complex(x, -y)
        for region, spec in self.pieces:
            if spec.is_all:
                if region.contains(z) or region.contains(zc):
                    return True
            else:
                for u in spec.units:
                    if unit.isclose(u, UNIT_MATCH_TOL) and region.contains(z):
                        return True
                    if unit.isclose(-u, UNIT_MATCH_TOL) and region.contains(zc):
                        return True
        return False

    def pullback(self, unit: ImaginaryUnit) -> PlanarSet:
        """Planar trace of the domain on the slice of ``unit``, in base
        coordinates: { z : z^unit in domain }.  1-D real traces of pieces
        living on other slices are omitted (validation makes them interior
        to every pullback)."""
        key = self._unit_key(unit)
        cached = self._pullbacks.get(key)
        if cached is not None:
            return cached
        rects: list[Rect] = []
        for region, spec in self.pieces:
            if spec.is_all:
                rects.extend(region.rects)
                rects.extend(region.conjugate().rects)
            elif key[0] == "named":
                u = self.named_units[key[1]]
                for v in spec.units:
                    if v.isclose(u, UNIT_MATCH_TOL):
                        rects.extend(region.rects)
                    if v.isclose(-u, UNIT_MATCH_TOL):
                        rects.extend(region.conjugate().rects)
        ps = PlanarSet(rects)
        self._pullbacks[key] = ps
        return ps

    # -- validation -------------------------------------------------------------

    def validate(self):
        """Slice-openness: each piece's real trace must be interior to the
        pullback of every effective slice (1-D open cover check)."""
        for pi, (region, _) in enumerate(self.pieces):
            trace = region.real_trace()
            if not trace:
                continue
            for unit in self.effective_slices:
                cover = self.pullback(unit).real_trace()
                for a, b in trace:
                    if not _interval_covered(a, b, cover):
                        x = _uncovered_point(a, b, cover)
                        raise SliceOpennessError(
                            f"piece {pi}: real point {float(x)} is not interior "
                            f"to the slice of {unit.axis()}",
                            witness=float(x))
        return self

    # -- the shared two-path region ---------------------------------------------

    def omega_2ps(self) -> PlanarSet:
        """Planar region reachable from the real axis inside two distinct
        slices: union over slice pairs of the connected components of the
        pullback intersections that meet the real axis."""
        if self._omega_2ps is not None:
            return self._omega_2ps
        rects = []
        seen = set()
        for pk, pl in self._slice_pairs():
            inter = self.pullback(pk).intersection(self.pullback(pl))
            for comp in inter.components():
                if comp.meets_real_axis():
                    for r in comp.rects:
                        if r not in seen:
                            seen.add(r)
                            rects.append(r)
        self._omega_2ps = PlanarSet(rects)
        return self._omega_2ps

    def _slice_pairs(self):
        eff = self.effective_slices
        for i in range(len(eff)):
            for j in range(i + 1, len(eff)):
                yield eff[i], eff[j]

    def is_2path_symmetric(self):
        """Decide two-path-symmetry.

        Every component (meeting the real axis) of a pairwise pullback
        intersection must be contained in every other pullback.  Returns
        (verdict, certificate); on failure the certificate carries the pair,
        a witness point of the offending component, the slice missing it,
        and a piecewise-linear witness path from the real axis.
        """
        if self._2ps is not None:
            return self._2ps
        verdict, cert = True, TwoPSCertificate(True, None, None, None, None)
        for pk, pl in self._slice_pairs():
            inter = self.pullback(pk).intersection(self.pullback(pl))
            for comp in inter.components():
                if not comp.meets_real_axis():
                    continue
                # containment in the generic pullback implies containment in
                # every pullback (the generic one is the common core)
                if comp.subset_witness(self.pullback(self.generic_units[0])) is None:
                    continue
                for m in self.effective_slices:
                    if m is pk or m is pl:
                        continue
                    w = comp.subset_witness(self.pullback(m))
                    if w is not None:
                        path = _path_from_real_axis(comp, w)
                        cert = TwoPSCertificate(False, (pk, pl),
                                                complex(float(w[0]), float(w[1])),
                                                m, path)
                        verdict = False
                        self._2ps = (verdict, cert)
                        return self._2ps
        self._2ps = (verdict, cert)
        return self._2ps

    def require_2ps(self):
        ok, _ = self.is_2path_symmetric()
        if not ok:
            raise Requires2PS("domain is not two-path-symmetric")

    def s_omega_2ps(self) -> tuple[ImaginaryUnit, ...]:
        """Named units whose slice trace exceeds the shared region."""
        if self._s_omega is not None:
            return self._s_omega
        omega = self.omega_2ps()
        out = [u for u in self.named_units if not self.pullback(u).set_equal(omega)]
        self._s_omega = tuple(out)
        return self._s_omega

    # -- classes, distance, completion --------------------------------------------

    def approx_class(self, q: Quaternion) -> PointClass:
        if not self.contains_q(q):
            raise NotInDomain(f"{q} is not in the domain")
        x, y, unit = slice_decompose(q)
        if unit is None:
            return PointClass.singleton(q)
        z = complex(x, y)
        if self.omega_2ps().contains(z):
            return PointClass.sphere(z)
        return PointClass.singleton(q)

    def sigma2_boundary(self, q: Quaternion) -> Fraction:
        """Exact squared distance from q to the complement, via the planar
        distance on the slice of q (valid for two-path-symmetric domains)."""
        x, y, unit = slice_decompose(q)
        if unit is None:
            z = complex(x, 0.0)
            vals = [self.pullback(u).dist2_to_complement(z)
                    for u in self.effective_slices]
            return min(vals) if vals else Fraction(0)
        return self.pullback(self.resolve_unit(unit)).dist2_to_complement(
            _chart_coord(q, unit))

    def in_omega_t(self, q: Quaternion, t: float, strict: bool = False) -> bool:
        self.require_2ps()
        if not self.contains_q(q):
            return False
        d2 = self.sigma2_boundary(q)
        t2 = frac(t) * frac(t)
        return d2 > t2 if strict else d2 >= t2

    def completion_2ps(self, points) -> set[PointClass]:
        """Orbit completion of a finite set: spheres with two or more
        distinct realizations complete to the full sphere class."""
        spheres: dict[complex, list[Quaternion]] = {}
        out: set[PointClass] = set()
        for q in points:
            cls = self.approx_class(q)  # raises NotInDomain
            if cls.is_sphere:
                spheres.setdefault(cls.sphere_z, []).append(q)
            else:
                out.add(cls)
        for z, reps in spheres.items():
            distinct = []
            for q in reps:
                if not any(q.isclose(p) for p in distinct):
                    distinct.append(q)
            if len(distinct) >= 2:
                out.add(PointClass.sphere(z))
            else:
                out.add(PointClass.singleton(distinct[0]))
        return out

    def __repr__(self):
        return (f"SliceDomain({len(self.pieces)} pieces, "
                f"{len(self.named_units)} named units)")


@dataclass(frozen=True)
class TwoPSCertificate:
    ok: bool
    pair: tuple[ImaginaryUnit, ImaginaryUnit] | None
    witness_point: complex | None
    missing_slice: ImaginaryUnit | None
    witness_path: PlPath | None


def _chart_coord(q: Quaternion, unit: ImaginaryUnit) -> complex:
    x, y, iq = slice_decompose(q)
    if iq is None:
        return complex(x, 0.0)
    return complex(x, y) if iq.isclose(unit, UNIT_MATCH_TOL) else complex(x, -y)


def _interval_covered(a, b, cover) -> bool:
    """Open interval (a, b) inside a merged list of open intervals."""
    return any(u <= a and b <= v for u, v in cover)


def _uncovered_point(a, b, cover):
    from .planar import _open_cover_gap
    g = _open_cover_gap(a, b, cover)
    return g if g is not None else (a + b) / 2


def _path_from_real_axis(comp: PlanarSet, target) -> PlPath | None:
    """Piecewise-linear path inside the component from a real point to the
    witness point, threading rectangle overlap centers."""
    tx, ty = target
    rects = comp.rects
    start_idx = next((i for i, r in enumerate(rects) if r.ay < 0 < r.by), None)
    end_idx = next((i for i, r in enumerate(rects) if r.contains(tx, ty)), None)
    if start_idx is None or end_idx is None:
        return None
    adj: dict[int, list[int]] = {i: [] for i in range(len(rects))}
    from .planar import _xy_overlap_pairs
    for i, j in _xy_overlap_pairs(rects, (), same=True):
        adj[i].append(j)
        adj[j].append(i)
    prev = {start_idx: None}
    queue = [start_idx]
    while queue:
        cur = queue.pop(0)
        if cur == end_idx:
            break
        for nxt in adj[cur]:
            if nxt not in prev:
                prev[nxt] = cur
                queue.append(nxt)
    if end_idx not in prev:
        return None
    chain = []
    cur = end_idx
    while cur is not None:
        chain.append(cur)
        cur = prev[cur]
    chain.reverse()
    r0 = rects[chain[0]]
    pts = [((r0.ax + r0.bx) / 2, Fraction(0))]
    for i, j in zip(chain[:-1], chain[1:]):
        ri, rj = rects[i], rects[j]
        pts.append(((ri.ax + ri.bx) / 2, (ri.ay + ri.by) / 2))
        ov = ri.intersect(rj)
        pts.append(((ov.ax + ov.bx) / 2, (ov.ay + ov.by) / 2))
    rl = rects[chain[-1]]
    pts.append(((rl.ax + rl.bx) / 2, (rl.ay + rl.by) / 2))
    pts.append((tx, ty))
    return PlPath(tuple(pts))


def realize(z: complex, unit: ImaginaryUnit) -> Quaternion:
    """Convenience: the quaternion z^unit."""
    return psi(z, unit)
