"""Constructive interpolation by slice regular functions, at desk scale.

Building block: a holomorphic function of the base coordinate that is 1 at a
target projection, 0 at prescribed others, and small on the projections of a
finite invariant sample.  It is assembled from an exact Lagrange factor, an
optional rational damping factor centered on the sample, and an exponential
peak whose direction comes from a separating line; the peak exponent and
damping order are chosen against sampled sups.

Orbit construction cases (sphere orbits through the shared region):
  (i)   singleton class: one block on the support chart, scaled by the value;
  (ii)  orbit meets the sample in exactly one point: block on the chart
        opposite the sample point, scaled so the sample point gets 0;
  (iii) disjoint orbit, one support value: as (i);
  (iv)  disjoint orbit, several support values: average of the two one-sided
        constructions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .domain import NotInDomain, SliceDomain, UNIT_MATCH_TOL
from .functions import (GENERIC, GOmegaI, HoloSheetFn, PathSliceFn, RightMul,
                        SliceRegularExpr, Sum, extend_path_slice, group_orbits,
                        validate_path_slice)
from .holo import Const, Div, HoloExpr, LagrangeNode, Mul, Pow, PowExp, Sub, Var, Z
from .quat import ImaginaryUnit, Quaternion, psi, rep_solve, slice_decompose
from .riemann import convex_hull, psi_set

NODE_MATCH_RTOL = 1e-9
DOMAIN_SUP_CAP = 1e5


class NotSeparable(ValueError):
    pass


class DuplicateProjection(ValueError):
    pass


class CaseHypothesisViolated(ValueError):
    pass


class NodeGenerationFailed(RuntimeError):
    pass


# -- peak functions ------------------------------------------------------------------


@dataclass(frozen=True)
class PeakFn:
    """h(z) = exp(a*(z - z0))**lam; modulus 1 at the anchor and strictly
    below 1 on the half plane Re(a*(z - z0)) < 0."""

    a: complex
    z0: complex
    lam: int

    def eval(self, z: complex) -> complex:
        import cmath
        return cmath.exp(self.lam * self.a * (z - self.z0))

    def as_expr(self) -> HoloExpr:
        return PowExp(self.a, self.z0, self.lam)


def _closest_hull_point(z0: complex, hull) -> complex:
    """Closest point of a convex polygon (or segment/point) to z0."""
    if len(hull) == 1:
        return hull[0]
    best = None
    pts = hull if len(hull) > 2 else [hull[0], hull[1]]
    m = len(hull)
    segs = [(hull[i], hull[(i + 1) % m]) for i in range(m)] if m > 2 \
        else [(hull[0], hull[1])]
    for a, b in segs:
        ab = b - a
        denom = abs(ab) ** 2
        t = 0.0 if denom == 0 else max(0.0, min(1.0, ((z0 - a).real * ab.real
                                                      + (z0 - a).imag * ab.imag) / denom))
        p = a + t * ab
        if best is None or abs(z0 - p) < abs(z0 - best):
            best = p
    return best


def _strictly_outside_hull(z0: complex, pts) -> bool:
    hull = convex_hull(pts)
    if len(hull) == 1:
        return z0 != hull[0]
    if len(hull) == 2:
        a, b = hull
        cross = (b.real - a.real) * (z0.imag - a.imag) - (b.imag - a.imag) * (z0.real - a.real)
        if abs(cross) > 0:
            return True
        dot = (z0.real - a.real) * (b.real - a.real) + (z0.imag - a.imag) * (b.imag - a.imag)
        return dot < 0 or dot > abs(b - a) ** 2
    # counterclockwise hull: strictly outside iff some edge sees the point
    # on its right
    for a, b in zip(hull, hull[1:] + hull[:1]):
        cross = (b.real - a.real) * (z0.imag - a.imag) - (b.imag - a.imag) * (z0.real - a.real)
        if cross < 0:
            return True
    return False


def peak_separate(z0: complex, k_proj, eps: float) -> PeakFn:
    """Peak of modulus 1 at z0 whose sup over the sample projections is
    below eps; the direction is the outward normal of a separating line.

    Raises NotSeparable when z0 lies in the convex hull of the projections.
    """
    pts = list(k_proj)
    if not pts:
        return PeakFn(1 + 0j, z0, 1)
    if not _strictly_outside_hull(z0, pts):
        raise NotSeparable(f"{z0} is not strictly outside the sample hull")
    hull = convex_hull(pts)
    c = _closest_hull_point(z0, hull)
    u = (z0 - c) / abs(z0 - c)
    a = u.conjugate()
    worst = max((a * (w - z0)).real for w in pts)
    if worst >= 0:
        raise NotSeparable("separating direction failed (degenerate hull)")
    lam = 1
    while math.exp(lam * worst) >= eps:
        lam += 1
        if lam > 10 ** 6:
            raise NotSeparable("cannot achieve the requested smallness")
    return PeakFn(a, z0, lam)


# -- Lagrange interpolation in the base coordinate -------------------------------------


def lagrange_z(nodes) -> HoloExpr:
    """Polynomial through (projection, value) pairs; node values are
    reproduced exactly.  Duplicate projections are an error."""
    zs = [complex(n[0]) for n in nodes]
    vs = [complex(n[1]) for n in nodes]
    if len(set(zs)) != len(zs):
        raise DuplicateProjection("node projections must be pairwise distinct")
    if len(zs) == 1:
        return Const(vs[0]) if True else None
    return LagrangeNode(tuple(zs), tuple(vs))


# -- the building block ------------------------------------------------------------------


@dataclass
class BlockInfo:
    expr: HoloExpr
    peak: PeakFn | None
    damping_order: int
    k_sup: float
    domain_bound: float


def _bbox_corners(domain: SliceDomain):
    ax = bx = ay = by = None
    for u in domain.effective_slices:
        box = domain.pullback(u).bbox()
        if box is None:
            continue
        a, b, c, d = (float(v) for v in box)
        ax = a if ax is None else min(ax, a)
        bx = b if bx is None else max(bx, b)
        ay = c if ay is None else min(ay, c)
        by = d if by is None else max(by, d)
    if ax is None:
        return []
    return [complex(ax, ay), complex(bx, ay), complex(ax, by), complex(bx, by)]


def _holo_block(domain: SliceDomain, z_target: complex, zero_zs, k_projs,
                sup_target: float) -> BlockInfo:
    """1 at the target projection, 0 at the listed projections, sup over the
    sample projections below the target, modulus kept small over the domain.

    The domain-wide modulus is controlled through an analytic bound over the
    bounding box of the pullbacks; among configurations meeting the sample
    target, the one with the smallest bound wins.
    """
    zeros = []
    for z in zero_zs:
        if z == z_target:
            raise DuplicateProjection(
                f"target projection {z_target} collides with a zero node")
        if z not in zeros:
            zeros.append(z)
    lag: HoloExpr = (LagrangeNode((z_target, *zeros), (1 + 0j,) + (0j,) * len(zeros))
                     if zeros else Const(1 + 0j))
    corners = _bbox_corners(domain)

    def lag_bound() -> float:
        # |prod (z - z_j)/(z0 - z_j)| <= prod max_corner|z - z_j| / |z0 - z_j|
        total = 1.0
        for zj in zeros:
            num = max((abs(w - zj) for w in corners), default=0.0)
            total *= num / abs(z_target - zj)
        return total

    k_pts = [w for w in k_projs if w != z_target]
    if not k_pts:
        return BlockInfo(lag, None, 0, 0.0, lag_bound())
    peak = peak_separate(z_target, k_pts, 0.5)
    a = peak.a
    c = sum(k_pts) / len(k_pts)
    d0 = abs(z_target - c)
    lag_at = [abs(lag.eval(w)) for w in k_pts]
    ratio = [abs(w - c) / d0 for w in k_pts] if d0 > 0 else [1.0] * len(k_pts)
    decay = [(a * (w - z_target)).real for w in k_pts]  # all < 0 by separation
    lb = lag_bound()
    damp_max = max((abs(w - c) / d0 for w in corners), default=1.0) if d0 > 0 else 1.0
    exp_max = max(((a * (w - z_target)).real for w in corners), default=0.0)

    def lam_needed(m: int) -> int:
        lam = 0
        for lk, rk, sk in zip(lag_at, ratio, decay):
            base = lk * (rk ** m)
            if base < sup_target:
                continue
            lam = max(lam, int(math.ceil((math.log(base) - math.log(sup_target))
                                         / (-sk))) + 1)
        return lam

    # selection score: estimated worst finite-difference residual at the
    # reference step (1e-4), combining rounding noise (scales with the
    # modulus bound) and truncation (scales with the cubed derivative rate)
    fd_ref = 1e-4
    noise = 4 * 2.3e-16 / (2 * fd_ref)

    def score(bound, m, lam):
        rate = lam * abs(a) + (m / d0 if d0 > 0 else 0.0)
        return bound * (noise + (fd_ref ** 2) / 3 * rate ** 3)

    best = None
    for m in range(0, 81):
        if d0 == 0 and m > 0:
            break
        lam = lam_needed(m)
        bound = lb * (damp_max ** m) * math.exp(lam * max(exp_max, 0.0))
        sc = score(bound, m, lam)
        if best is not None and sc >= best[0]:
            continue
        expr: HoloExpr = lag
        if m > 0:
            expr = Mul(expr, Pow(Div(Sub(Z, Const(c)), Const(z_target - c)), m))
        pk = None
        if lam > 0:
            pk = PeakFn(a, z_target, lam)
            expr = Mul(expr, pk.as_expr())
        sup_k = max((abs(expr.eval(w)) for w in k_pts), default=0.0)
        if sup_k >= sup_target:
            continue
        best = (sc, BlockInfo(expr, pk, m, sup_k, bound))
    if best is None:
        raise NotSeparable("no block configuration met the smallness target")
    return best[1]


# -- problems and orbit data -----------------------------------------------------------


@dataclass(frozen=True)
class InterpolationProblem:
    domain: SliceDomain
    support: PathSliceFn
    k_sample: tuple[Quaternion, ...] = ()
    eps: float = 1e-2


@dataclass
class OrbitPlan:
    key: tuple
    entries: list           # [(q, value)]
    charts: list            # [(unit, value)] in target coordinates
    z: complex | None       # canonical projection for sphere orbits
    k_hits: list            # K points on this orbit, as (unit in target coords)


@dataclass
class InterpolationReport:
    cases: list = field(default_factory=list)
    node_errors: list = field(default_factory=list)
    k_sup: float = 0.0
    eps: float = 0.0
    budgets: list = field(default_factory=list)
    approximate: tuple = ("sampled-sups",)


@dataclass
class InterpolationResult:
    expr: SliceRegularExpr
    report: InterpolationReport


def _chart_in_orbit_coords(z: complex, q: Quaternion) -> ImaginaryUnit | None:
    """Unit G with q = z^G, for q on the sphere orbit of z (None for real)."""
    x, y, uq = slice_decompose(q)
    if uq is None:
        return None
    return uq if complex(x, y) == z else -uq


def _restricted_projections(domain: SliceDomain, base: ImaginaryUnit, points,
                            exclude: complex | None = None):
    """Projections of the stem images of ``points`` through charts other
    than the opposite of ``base``, optionally minus a target projection."""
    from .riemann import SliceSet
    zs = []
    for mu in psi_set(domain, points, SliceSet.all_but([-base])):
        if mu.z != exclude and mu.z not in zs:
            zs.append(mu.z)
    return zs


def _plan_orbits(domain: SliceDomain, problem: InterpolationProblem):
    plans = []
    orbits = group_orbits(domain, problem.support)
    k_classes = []
    for qk in problem.k_sample:
        cls = domain.approx_class(qk)
        k_classes.append((cls, qk))
    for key, entries in orbits.items():
        if key[0] == "pt":
            q = key[1]
            x, y, uq = slice_decompose(q)
            z = complex(x, y) if uq is not None else complex(x, 0.0)
            hits = []
            for cls, qk in k_classes:
                if not cls.is_sphere and cls.point.isclose(q):
                    hits.append(None)
            plans.append(OrbitPlan(key, entries, [(uq, entries[0][1])], z, hits))
        else:
            z = key[1]
            charts = []
            for q, v in entries:
                g = _chart_in_orbit_coords(z, q)
                if not any(g.isclose(c, UNIT_MATCH_TOL) for c, _ in charts):
                    charts.append((g, v))
            hits = []
            for cls, qk in k_classes:
                if cls.is_sphere and cls.sphere_z == z:
                    hits.append(_chart_in_orbit_coords(z, qk))
            plans.append(OrbitPlan(key, entries, charts, z, hits))
    return plans


def orbit_interpolant(domain: SliceDomain, plan: OrbitPlan, rest_points,
                      k_sample, eps: float,
                      report: InterpolationReport | None = None) -> SliceRegularExpr | None:
    """Slice regular function matching one orbit's values, vanishing on the
    other support points, with sampled sup over the sample below eps."""
    if report is None:
        report = InterpolationReport()
    own_points = [q for q, _ in plan.entries]
    # the orbit's own sample points are handled by exact zeros, not smallness
    k_rest = [qk for qk in k_sample if not _on_orbit(domain, plan, qk)]

    def block(base_unit, z_target, extra_zeros=(), budget=eps, scale=1.0):
        zero_zs = _restricted_projections(domain, base_unit,
                                          list(rest_points) + own_points,
                                          exclude=z_target)
        for e in extra_zeros:
            if e not in zero_zs:
                if e == z_target:
                    raise DuplicateProjection("conjugate node collides with target")
                zero_zs.append(e)
        k_projs = _restricted_projections(domain, base_unit, k_rest)
        info = _holo_block(domain, z_target, zero_zs, k_projs,
                           budget / (abs(scale) + 1.0))
        h = HoloSheetFn.uniform(domain, base_unit, info.expr)
        return info, h

    is_singleton = plan.key[0] == "pt" or plan.z is None or len(plan.charts) == 0

    # drop orbits whose prescription is identically zero
    if all(abs(v) <= 1e-15 for _, v in plan.charts):
        report.cases.append((str(plan.z), "zero"))
        return None

    if plan.key[0] == "pt":
        if plan.k_hits:
            raise CaseHypothesisViolated(
                "a sample point carries a nonzero prescribed value")
        q, v = plan.entries[0]
        x, y, uq = slice_decompose(q)
        base = uq if uq is not None else domain.effective_slices[0]
        info, h = block(base, plan.z, budget=eps, scale=abs(v))
        report.cases.append((str(plan.z), "i"))
        return RightMul(GOmegaI(h, h.base_unit), v)

    # sphere orbit
    if len(plan.k_hits) >= 2:
        raise CaseHypothesisViolated(
            "an invariant sample meets a sphere orbit in two points but the "
            "prescribed values do not vanish")
    if len(plan.k_hits) == 1:
        g_unit = plan.k_hits[0]          # sample point is z^{g_unit}
        j_unit = -g_unit
        target = next(((c, v) for c, v in plan.charts
                       if not c.isclose(g_unit, UNIT_MATCH_TOL)), None)
        if target is None:
            report.cases.append((str(plan.z), "zero"))
            return None
        i_unit, v = target
        c = rep_solve(j_unit, i_unit, -j_unit, v, Quaternion())
        zc = complex(plan.z.real, -plan.z.imag)
        info, h = block(j_unit, plan.z, extra_zeros=(zc,), budget=eps, scale=abs(c))
        report.cases.append((str(plan.z), "ii"))
        return RightMul(GOmegaI(h, h.base_unit), c)

    if len(plan.charts) == 1:
        i_unit, v = plan.charts[0]
        info, h = block(i_unit, plan.z, budget=eps, scale=abs(v))
        report.cases.append((str(plan.z), "iii"))
        return RightMul(GOmegaI(h, h.base_unit), v)

    # case (iv): two one-sided constructions, averaged.  Both blocks peak at
    # the projection z and vanish at its conjugate; they differ in the base
    # chart, so each one feeds one of the two opposite slice values.
    ext = extend_path_slice(domain, PathSliceFn(tuple(plan.entries)))
    i_unit, v_i = plan.charts[0]
    v_conj = ext.eval(psi(plan.z, -i_unit))
    zc = complex(plan.z.real, -plan.z.imag)
    info3, h3 = block(i_unit, plan.z, extra_zeros=(zc,), budget=eps, scale=abs(v_i))
    info4, h4 = block(-i_unit, plan.z, extra_zeros=(zc,), budget=eps, scale=abs(v_conj))
    f3 = RightMul(GOmegaI(h3, h3.base_unit), 2.0 * v_i)
    f4 = RightMul(GOmegaI(h4, h4.base_unit), 2.0 * v_conj)
    report.cases.append((str(plan.z), "iv"))
    return RightMul(Sum((f3, f4)), Quaternion(0.5))


def _on_orbit(domain: SliceDomain, plan: OrbitPlan, q: Quaternion) -> bool:
    cls = domain.approx_class(q)
    if plan.key[0] == "pt":
        return (not cls.is_sphere) and cls.point.isclose(plan.key[1])
    return cls.is_sphere and cls.sphere_z == plan.z


def interpolate(problem: InterpolationProblem) -> InterpolationResult:
    """Sum of per-orbit constructions matching all support values, vanishing
    across orbits, with sampled sup over the sample below eps."""
    domain = problem.domain
    domain.require_2ps()
    validate_path_slice(domain, problem.support)
    _check_k_vanishing(domain, problem)
    plans = _plan_orbits(domain, problem)
    active = [p for p in plans if any(abs(v) > 1e-15 for _, v in p.charts)]
    m = max(len(active), 1)
    budget = problem.eps / (2 * m)
    report = InterpolationReport(eps=problem.eps)
    report.budgets = [budget] * len(active)
    parts = []
    all_points = [q for q, _ in problem.support.support]
    for plan in plans:
        rest = [q for q in all_points if q not in [p for p, _ in plan.entries]]
        expr = orbit_interpolant(domain, plan, rest, problem.k_sample,
                                 budget, report)
        if expr is not None:
            parts.append(expr)
    result = Sum(tuple(parts)) if parts else Poly((Quaternion(),))
    for q, v in problem.support.support:
        err = abs(result.eval(q) - v)
        report.node_errors.append(err)
        if err > NODE_MATCH_RTOL * (1 + abs(v)):
            raise CaseHypothesisViolated(
                f"interpolant misses a node by {err} at {q}")
    for qk in problem.k_sample:
        report.k_sup = max(report.k_sup, abs(result.eval(qk)))
    return InterpolationResult(result, report)


def _check_k_vanishing(domain: SliceDomain, problem: InterpolationProblem):
    """The prescribed data must vanish where the completed support meets the
    sample (per-orbit hypothesis of the construction)."""
    plans = _plan_orbits(domain, problem)
    for plan in plans:
        if not plan.k_hits:
            continue
        if plan.key[0] == "pt":
            if any(abs(v) > 1e-15 for _, v in plan.charts):
                raise CaseHypothesisViolated(
                    "prescribed value at a sample point must vanish")
            continue
        if len(plan.k_hits) >= 2:
            if any(abs(v) > 1e-15 for _, v in plan.charts):
                raise CaseHypothesisViolated(
                    "sample meets an orbit twice; prescribed values must vanish")
            continue
        g_unit = plan.k_hits[0]
        direct = next((v for c, v in plan.charts
                       if c.isclose(g_unit, UNIT_MATCH_TOL)), None)
        if direct is not None and abs(direct) > 1e-12:
            raise CaseHypothesisViolated(
                "prescribed value at the sample point must vanish")
        if direct is None and len(plan.charts) >= 2:
            ext = extend_path_slice(domain, PathSliceFn(tuple(plan.entries)))
            val = ext.eval(psi(plan.z, g_unit))
            if abs(val) > 1e-9:
                raise CaseHypothesisViolated(
                    "the unique extension does not vanish at the sample point")


# -- exhaustion ---------------------------------------------------------------------------


@dataclass
class ExhaustionLevel:
    threshold: float
    points: tuple[Quaternion, ...]
    approximate: bool = True


def exhaustion(domain: SliceDomain, count: int, pitch: float = 0.25) -> list[ExhaustionLevel]:
    """Nested conjugation-closed samples at strictly decreasing sigma
    thresholds (hull closure approximated by construction)."""
    domain.require_2ps()
    grid: list[tuple[complex, ImaginaryUnit, Fraction]] = []
    for u in domain.effective_slices:
        pb = domain.pullback(u)
        for z in pb.grid_points(pitch):
            grid.append((z, u, pb.dist2_to_complement(z)))
    if not grid:
        return [ExhaustionLevel(0.0, ()) for _ in range(count)]
    rmax = math.sqrt(float(max(d2 for _, _, d2 in grid)))
    levels = []
    for level in range(count):
        r = rmax / (level + 2)
        r2 = Fraction(r) * Fraction(r)
        pts = tuple(psi(z, u) for z, u, d2 in grid if d2 >= r2)
        levels.append(ExhaustionLevel(r, pts))
    return levels


# -- boundary witness ----------------------------------------------------------------------


@dataclass
class WitnessNode:
    point: Quaternion
    sigma: float
    value: float


@dataclass
class WitnessResult:
    expr: SliceRegularExpr
    nodes: list[WitnessNode]
    report: InterpolationReport


def boundary_witness(domain: SliceDomain, n_nodes: int, seed: int = 0,
                     budget: int = 4000, min_gap: float = 0.3) -> WitnessResult:
    """Nodes marching toward the boundary with escalating values.

    Node l lies within the boundary ball of a random anchor, has sigma
    distance below 1/(l+1), is orbit-distinct from the previous nodes, and
    receives the value l; the returned function interpolates them.
    """
    domain.require_2ps()
    rng = random.Random(seed)
    units = list(domain.s_omega_2ps()) + [domain.generic_units[0]]
    if not units:
        units = [domain.generic_units[0]]
    nodes: list[WitnessNode] = []
    used_proj: list[complex] = []
    tries = 0
    level = 0
    while len(nodes) < n_nodes:
        tries += 1
        if tries > budget:
            raise NodeGenerationFailed(
                f"could not place node {level} within the sampling budget")
        unit = units[level % len(units)]
        pb = domain.pullback(unit)
        anchors = pb.sample(rng, 1)
        if not anchors:
            continue
        za = anchors[0]
        ra = math.sqrt(float(pb.dist2_to_complement(za)))
        if ra == 0:
            continue
        t = rng.random()
        ang = rng.random() * 2 * math.pi
        zb = za + t * ra * complex(math.cos(ang), math.sin(ang))
        if not pb.contains(zb):
            continue
        sig = math.sqrt(float(pb.dist2_to_complement(zb)))
        if sig >= 1.0 / (level + 1) or sig == 0.0:
            continue
        zc = complex(zb.real, -zb.imag)
        if any(abs(zb - p) < min_gap or abs(zc - p) < min_gap for p in used_proj):
            continue
        q = psi(zb, unit) if zb.imag != 0 else Quaternion(zb.real)
        nodes.append(WitnessNode(q, sig, float(level)))
        used_proj.extend([zb, zc])
        level += 1
        tries = 0
    support = PathSliceFn(tuple((n.point, Quaternion(n.value)) for n in nodes))
    problem = InterpolationProblem(domain, support, (), eps=1e-2)
    result = interpolate(problem)
    return WitnessResult(result.expr, nodes, result.report)
