"""The Riemann domain over C associated with a two-path-symmetric domain.

Points are never materialized as a set: a stem point is a projection z plus
a sheet tag (shared sheet over the two-path region, or a single-slice sheet).
All queries reduce to per-slice planar computations on the pullbacks, with
two generic units standing in for the cofinitely many unexceptional slices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .domain import NotInDomain, SliceDomain, UNIT_MATCH_TOL
from .planar import frac
from .quat import ImaginaryUnit, Quaternion, psi, slice_decompose


class ChartMismatch(ValueError):
    pass


class RadiusTooLarge(ValueError):
    pass


# -- slice sets -----------------------------------------------------------------


@dataclass(frozen=True)
class SliceSet:
    """Finite set of units, or the complement of a finite set.

    ``AllBut(())`` is the full unit sphere.  Units are compared exactly, so
    members should come from a domain's effective slices.
    """

    cofinite: bool
    units: frozenset[ImaginaryUnit]

    @staticmethod
    def finite(units) -> "SliceSet":
        return SliceSet(False, frozenset(units))

    @staticmethod
    def all_but(units) -> "SliceSet":
        return SliceSet(True, frozenset(units))

    @staticmethod
    def all_slices() -> "SliceSet":
        return SliceSet(True, frozenset())

    @property
    def is_all(self) -> bool:
        return self.cofinite and not self.units

    def contains(self, unit: ImaginaryUnit) -> bool:
        inside = any(unit.isclose(u, UNIT_MATCH_TOL) for u in self.units)
        return (not inside) if self.cofinite else inside

    def negate(self, domain: SliceDomain) -> "SliceSet":
        """Image under I -> -I; generic representatives stay generic."""
        return SliceSet(self.cofinite,
                        frozenset(_neg_effective(domain, u) for u in self.units))


def _neg_effective(domain: SliceDomain, unit: ImaginaryUnit) -> ImaginaryUnit:
    neg = -unit
    return neg if domain.is_named(neg) else domain.resolve_unit(neg)


# -- stem points ------------------------------------------------------------------


@dataclass(frozen=True)
class StemPoint:
    """A point of the Riemann domain: projection plus sheet tag.

    ``tag`` is None on the shared sheet (projection in the two-path region)
    and the carrying unit on a single-slice sheet.
    """

    z: complex
    tag: ImaginaryUnit | None

    @property
    def shared(self) -> bool:
        return self.tag is None


def make_stem(domain: SliceDomain, q: Quaternion, chart: ImaginaryUnit) -> StemPoint:
    """Stem point of q read through the given chart."""
    if not domain.contains_q(q):
        raise NotInDomain(f"{q} is not in the domain")
    x, y, unit = slice_decompose(q)
    if unit is None:
        return StemPoint(complex(x, 0.0), None)
    if unit.isclose(chart, UNIT_MATCH_TOL):
        z = complex(x, y)
    elif unit.isclose(-chart, UNIT_MATCH_TOL):
        z = complex(x, -y)
    else:
        raise ChartMismatch("quaternion does not lie on the chart's plane")
    if domain.omega_2ps().contains(z):
        return StemPoint(z, None)
    return StemPoint(z, domain.resolve_unit(chart))


def project(mu: StemPoint) -> complex:
    return mu.z


def s_mu(domain: SliceDomain, mu: StemPoint) -> SliceSet:
    if mu.shared:
        return SliceSet.all_slices()
    return SliceSet.finite([mu.tag])


def conj_stem(domain: SliceDomain, mu: StemPoint) -> StemPoint:
    z = complex(mu.z.real, -mu.z.imag)
    return StemPoint(z, None if mu.shared else domain.resolve_unit(-mu.tag))


def realizations(domain: SliceDomain, mu: StemPoint):
    """Representative quaternion realizations of a stem point, one per
    effective slice (all of them for a shared point, one otherwise)."""
    if mu.shared:
        return [(u, psi(mu.z, u)) for u in domain.effective_slices]
    return [(mu.tag, psi(mu.z, mu.tag))]


# -- radii -------------------------------------------------------------------------


@dataclass(frozen=True)
class StemRadii:
    by_slice: tuple            # ((unit-or-"generic", radius float), ...)
    r_plus: float
    r_minus: float
    s_plus: SliceSet
    s_minus: SliceSet
    exact2: tuple              # matching exact squared radii (Fractions)


def stem_radii(domain: SliceDomain, mu: StemPoint) -> StemRadii:
    """Per-slice boundary radii of a stem point and their extremes.

    On the shared sheet the radius on slice K is the planar distance from z
    to the complement of the K pullback; off the shared sheet every foreign
    slice contributes 0.  One generic entry stands for all unnamed units.
    """
    entries: list[tuple[object, Fraction]] = []
    generic_val = Fraction(0)
    if mu.shared:
        for u in domain.named_units:
            entries.append((u, domain.pullback(u).dist2_to_complement(mu.z)))
        generic_val = domain.pullback(domain.generic_units[0]).dist2_to_complement(mu.z)
    else:
        d2 = domain.pullback(mu.tag).dist2_to_complement(mu.z)
        for u in domain.named_units:
            entries.append((u, d2 if u.isclose(mu.tag, UNIT_MATCH_TOL) else Fraction(0)))
        if not domain.is_named(mu.tag):
            entries.append((mu.tag, d2))
    entries.append(("generic", generic_val))

    vals = [v for _, v in entries]
    vmax, vmin = max(vals), min(vals)

    def attain(target: Fraction, generic_attains: bool) -> SliceSet:
        named_at = [k for k, v in entries if isinstance(k, ImaginaryUnit) and v == target]
        named_off = [k for k, v in entries if isinstance(k, ImaginaryUnit) and v != target]
        if generic_attains:
            return SliceSet.all_but(named_off)
        return SliceSet.finite(named_at)

    s_plus = attain(vmax, generic_val == vmax)
    s_minus = attain(vmin, generic_val == vmin)
    return StemRadii(
        by_slice=tuple((k, math.sqrt(float(v))) for k, v in entries),
        r_plus=math.sqrt(float(vmax)),
        r_minus=math.sqrt(float(vmin)),
        s_plus=s_plus,
        s_minus=s_minus,
        exact2=tuple(vals),
    )


def r_plus(domain: SliceDomain, mu: StemPoint) -> float:
    return stem_radii(domain, mu).r_plus


def _r_plus2(domain: SliceDomain, mu: StemPoint) -> Fraction:
    if mu.shared:
        vals = [domain.pullback(u).dist2_to_complement(mu.z)
                for u in domain.named_units]
        vals.append(domain.pullback(domain.generic_units[0]).dist2_to_complement(mu.z))
        return max(vals)
    return domain.pullback(mu.tag).dist2_to_complement(mu.z)


# -- balls --------------------------------------------------------------------------


@dataclass(frozen=True)
class StemBall:
    center: StemPoint
    radius: float
    chart: ImaginaryUnit


def stem_ball(domain: SliceDomain, mu: StemPoint, r: float,
              chart: ImaginaryUnit | None = None) -> StemBall:
    """Schlicht ball around a stem point; the realizing chart must carry a
    full planar disc of radius r."""
    if r <= 0:
        raise RadiusTooLarge("ball radius must be positive")
    r2 = frac(r) * frac(r)
    if chart is not None:
        if not s_mu(domain, mu).contains(chart):
            raise ChartMismatch("chart does not carry the stem point")
        cands = [domain.snap_unit(chart)]
    elif mu.shared:
        cands = list(domain.effective_slices)
    else:
        cands = [mu.tag]
    for u in cands:
        if domain.pullback(u).dist2_to_complement(mu.z) >= r2:
            return StemBall(mu, r, u)
    raise RadiusTooLarge(f"no slice carries a disc of radius {r} at {mu.z}")


def ball_contains(domain: SliceDomain, ball: StemBall, nu: StemPoint) -> bool:
    dz = nu.z - ball.center.z
    if abs(dz) >= ball.radius:
        return False
    return nu == make_stem(domain, psi(nu.z, ball.chart), ball.chart)


# -- psi / phi maps -----------------------------------------------------------------


def psi_set(domain: SliceDomain, points, slices: SliceSet | None = None) -> frozenset[StemPoint]:
    """Stem image of a finite set of quaternions over the given slices."""
    if slices is None:
        slices = SliceSet.all_slices()
    out = set()
    for q in points:
        x, y, unit = slice_decompose(q)
        if unit is None:
            # a real point sits on every chart; any allowed chart gives the
            # same shared stem
            out.add(StemPoint(complex(x, 0.0), None))
            continue
        for chart in (unit, -unit):
            if slices.contains(chart):
                out.add(make_stem(domain, q, chart))
    return frozenset(out)


def phi_breve(domain: SliceDomain, stems, t: float, strict: bool = False) -> frozenset[StemPoint]:
    """Conjugation closure filtered by the r+ threshold."""
    t2 = frac(t) * frac(t)
    out = set()
    for mu in stems:
        for nu in (mu, conj_stem(domain, mu)):
            d2 = _r_plus2(domain, nu)
            if (d2 > t2) if strict else (d2 >= t2):
                out.add(nu)
    return frozenset(out)


@dataclass(frozen=True)
class OrbitSet:
    """Realizations { z^K : K in units } of one projection, canonicalized
    so that Im z >= 0 (real z uses the full slice set)."""

    z: complex
    units: SliceSet

    def contains(self, domain: SliceDomain, q: Quaternion) -> bool:
        x, y, unit = slice_decompose(q)
        if unit is None:
            return complex(x, 0.0) == self.z
        if complex(x, y) != self.z:
            return False
        return self.units.contains(unit)


def _canonical_orbit(domain: SliceDomain, z: complex, kept: SliceSet) -> OrbitSet | None:
    if not kept.cofinite and not kept.units:
        return None
    if z.imag == 0:
        return OrbitSet(z, SliceSet.all_slices())
    if z.imag > 0:
        return OrbitSet(z, kept)
    return OrbitSet(complex(z.real, -z.imag), kept.negate(domain))


def _threshold_pass(domain: SliceDomain, unit: ImaginaryUnit, z: complex,
                    t2: Fraction, strict: bool) -> bool:
    d2 = domain.pullback(unit).dist2_to_complement(z)
    return (d2 > t2) if strict else (d2 >= t2)


def varphi(domain: SliceDomain, stems, t: float, strict: bool = False) -> frozenset[OrbitSet]:
    """Quaternionic shadow of a stem set at a sigma threshold.

    Each stem contributes the realizations of its projection whose slice
    clears the threshold, encoded per effective slice with one generic
    representative standing for the cofinite rest.
    """
    t2 = frac(t) * frac(t)
    out = set()
    for mu in stems:
        z = mu.z
        if mu.shared:
            if z.imag == 0:
                vals = [_threshold_pass(domain, u, z, t2, strict)
                        for u in domain.effective_slices]
                if any(vals):
                    out.add(OrbitSet(z, SliceSet.all_slices()))
                continue
            named_bad = [u for u in domain.named_units
                         if not _threshold_pass(domain, u, z, t2, strict)]
            generic_ok = _threshold_pass(domain, domain.generic_units[0], z, t2, strict)
            if generic_ok:
                kept = SliceSet.all_but(named_bad)
            else:
                kept = SliceSet.finite([u for u in domain.named_units
                                        if u not in named_bad])
                if not kept.units:
                    continue
            orb = _canonical_orbit(domain, z, kept)
            if orb is not None:
                out.add(orb)
        else:
            if _threshold_pass(domain, mu.tag, z, t2, strict):
                orb = _canonical_orbit(domain, z, SliceSet.finite([mu.tag]))
                if orb is not None:
                    out.add(orb)
    return frozenset(out)


def orbit_realizations(domain: SliceDomain, orbit: OrbitSet):
    """Representative quaternions of an orbit over the effective slices."""
    if orbit.z.imag == 0:
        return [Quaternion(orbit.z.real)]
    reps = []
    for u in domain.effective_slices:
        if orbit.units.contains(u):
            reps.append(psi(orbit.z, u))
    return reps


def psi_set_orbits(domain: SliceDomain, orbits) -> frozenset[StemPoint]:
    """Stem image of a union of orbit sets (enumerated over effective slices).

    Stems are built from the orbits' chart coordinates directly, so that
    projections round-trip exactly."""
    out = set()
    for orbit in orbits:
        z = orbit.z
        if z.imag == 0:
            out.add(StemPoint(z, None))
            continue
        zc = complex(z.real, -z.imag)
        if domain.omega_2ps().contains(z):
            out.add(StemPoint(z, None))
            out.add(StemPoint(zc, None))
            continue
        for u in domain.effective_slices:
            if orbit.units.contains(u):
                out.add(StemPoint(z, domain.resolve_unit(u)))
                out.add(StemPoint(zc, domain.resolve_unit(-u)))
    return frozenset(out)


def phi_omega_rho(domain: SliceDomain, points, t: float, strict: bool = False) -> frozenset[OrbitSet]:
    """Direct route: orbit closure of a quaternion set cut at a threshold,
    computed from point classes without passing through stem points."""
    t2 = frac(t) * frac(t)
    out = set()
    for q in points:
        cls = domain.approx_class(q)
        if cls.is_sphere:
            z = cls.sphere_z
            named_ok = [u for u in domain.named_units
                        if _threshold_pass(domain, u, z, t2, strict)]
            if _threshold_pass(domain, domain.generic_units[0], z, t2, strict):
                kept = SliceSet.all_but([u for u in domain.named_units
                                         if u not in named_ok])
            else:
                kept = SliceSet.finite(named_ok)
            if kept.cofinite or kept.units:
                out.add(OrbitSet(z, kept))
        else:
            x, y, unit = slice_decompose(q)
            if unit is None:
                if any(_threshold_pass(domain, u, complex(x, 0.0), t2, strict)
                       for u in domain.effective_slices):
                    out.add(OrbitSet(complex(x, 0.0), SliceSet.all_slices()))
            else:
                chart = domain.resolve_unit(unit)
                if _threshold_pass(domain, chart, complex(x, y), t2, strict):
                    orb = _canonical_orbit(domain, complex(x, y),
                                           SliceSet.finite([chart]))
                    if orb is not None:
                        out.add(orb)
    return frozenset(out)


# -- stem-finiteness and invariance ---------------------------------------------------


@dataclass(frozen=True)
class InvarianceReport:
    conj_symmetric: bool
    threshold_ok: bool
    hull_consistent: bool
    approximate: bool
    stem_count: int


def is_stem_finite(domain: SliceDomain, points) -> tuple[bool, int]:
    stems = psi_set(domain, points)
    return (True, len(stems))


def is_invariant(domain: SliceDomain, points, r: float,
                 ambient=None) -> InvarianceReport:
    """Invariance of a finite sample: exact conjugation symmetry of the stem
    image and the sigma threshold, plus a conservative hull surrogate.

    The holomorphic-hull condition is approximated: the convex hull of the
    sample's projections must contain no ambient candidate outside the
    sample.  With no ambient candidates this is vacuous; the report is
    always flagged approximate.
    """
    stems = psi_set(domain, points)
    conj_ok = all(conj_stem(domain, mu) in stems for mu in stems)
    t2 = frac(r) * frac(r)
    thr_ok = all(_r_plus2(domain, mu) >= t2 for mu in stems)
    hull_ok = True
    if ambient:
        projs = [mu.z for mu in stems]
        for cand in ambient:
            if cand not in projs and _in_convex_hull(cand, projs):
                hull_ok = False
                break
    return InvarianceReport(conj_ok, thr_ok, hull_ok, True, len(stems))


def _in_convex_hull(p: complex, pts) -> bool:
    hull = convex_hull(pts)
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        cross = (b.real - a.real) * (p.imag - a.imag) - (b.imag - a.imag) * (p.real - a.real)
        if abs(cross) > 1e-12:
            return False
        dot = (p.real - a.real) * (b.real - a.real) + (p.imag - a.imag) * (b.imag - a.imag)
        return 0 <= dot <= abs(b - a) ** 2
    for a, b in zip(hull, hull[1:] + hull[:1]):
        cross = (b.real - a.real) * (p.imag - a.imag) - (b.imag - a.imag) * (p.real - a.real)
        if cross < 0:
            return False
    return True


def convex_hull(pts) -> list[complex]:
    """Monotone chain hull, counterclockwise, of a finite complex point set."""
    uniq = sorted(set((p.real, p.imag) for p in pts))
    if len(uniq) <= 2:
        return [complex(*p) for p in uniq]

    def half(points):
        out = []
        for p in points:
            while len(out) >= 2:
                (ax, ay), (bx, by) = out[-2], out[-1]
                if (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax) <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(uniq)
    upper = half(list(reversed(uniq)))
    return [complex(*p) for p in lower[:-1] + upper[:-1]]


# -- slice-restricted subdomains -------------------------------------------------------


@dataclass(frozen=True)
class SubDomainView:
    """The part of the Riemann domain reachable without the -I chart."""

    domain: SliceDomain
    unit: ImaginaryUnit

    def contains(self, mu: StemPoint) -> bool:
        if mu.shared:
            return True
        return not mu.tag.isclose(-self.unit, UNIT_MATCH_TOL)

    def dist_lower_bound(self, mu: StemPoint) -> float:
        """Radius of a schlicht ball around mu staying inside the view."""
        if not self.contains(mu):
            return 0.0
        if not mu.shared:
            return math.sqrt(float(self.domain.pullback(mu.tag)
                                   .dist2_to_complement(mu.z)))
        best = Fraction(0)
        for u in list(self.domain.named_units) + [self.domain.generic_units[0]]:
            if u.isclose(-self.unit, UNIT_MATCH_TOL):
                continue
            best = max(best, self.domain.pullback(u).dist2_to_complement(mu.z))
        return math.sqrt(float(best))


def sub_domain_I(domain: SliceDomain, unit: ImaginaryUnit) -> SubDomainView:
    return SubDomainView(domain, domain.snap_unit(unit))
