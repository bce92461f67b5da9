"""Slice regular functions: evaluation, construction from holomorphic sheet
data, and numerical verification.

The central constructor takes a holomorphic function g on the part of the
Riemann domain that avoids the -I chart and produces a slice regular
function on the whole domain: on the I slice it is the chart image of g, on
every other slice the value is reconstructed from the stem pair (mu, conj mu)
by the 2x2 representation solve.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .domain import NotInDomain, SliceDomain, UNIT_MATCH_TOL
from .holo import HoloExpr, expr_from_json
from .quat import (ImaginaryUnit, Quaternion, psi, rep_solve, slice_decompose)

SHEET_CONSISTENCY_TOL = 1e-9
SHEET_CONSISTENCY_SAMPLES = 200


class InconsistentSheafData(ValueError):
    pass


class NotPathSlice(ValueError):
    pass


class ClearanceViolation(ValueError):
    pass


GENERIC = "generic"


class HoloSheetFn:
    """Holomorphic data on the sub-Riemann-domain avoiding the -I chart.

    ``exprs`` maps effective slices (or the key "generic") to expressions in
    the base coordinate; entries must agree on the shared region, where all
    sheets are identified.
    """

    def __init__(self, domain: SliceDomain, base_unit: ImaginaryUnit, exprs,
                 validate: bool = True, seed: int = 0):
        self.domain = domain
        self.base_unit = domain.snap_unit(base_unit)
        table = {}
        for key, e in exprs.items():
            if isinstance(e, str):
                e = expr_from_json(e)
            table[key if key == GENERIC else domain.snap_unit(key)] = e
        if GENERIC not in table:
            raise InconsistentSheafData("sheet table needs a 'generic' entry")
        self.exprs = table
        if validate:
            self.validate(seed=seed)

    @staticmethod
    def uniform(domain: SliceDomain, base_unit: ImaginaryUnit, expr) -> "HoloSheetFn":
        """One expression of the base coordinate on every sheet."""
        return HoloSheetFn(domain, base_unit, {GENERIC: expr}, validate=False)

    def expr_for(self, unit: ImaginaryUnit) -> HoloExpr:
        u = self.domain.snap_unit(unit)
        if u.isclose(-self.base_unit, UNIT_MATCH_TOL):
            raise InconsistentSheafData("the opposite chart carries no sheet data")
        return self.exprs.get(u, self.exprs[GENERIC])

    def eval_sheet(self, unit: ImaginaryUnit, z: complex) -> complex:
        return self.expr_for(unit).eval(z)

    def validate(self, seed: int = 0):
        """Sampled consistency on the shared region and finiteness on each
        pullback (branch cuts must stay outside)."""
        rng = random.Random(seed)
        omega = self.domain.omega_2ps()
        keys = list(self.exprs.keys())
        if omega and len(keys) > 1:
            pts = omega.sample(rng, SHEET_CONSISTENCY_SAMPLES)
            for i in range(len(keys)):
                for j in range(i + 1, len(keys)):
                    ei, ej = self.exprs[keys[i]], self.exprs[keys[j]]
                    for z in pts:
                        vi, vj = ei.eval(z), ej.eval(z)
                        if not (abs(vi - vj) <= SHEET_CONSISTENCY_TOL
                                * (1 + abs(vi) + abs(vj))):
                            raise InconsistentSheafData(
                                f"sheets {keys[i]} and {keys[j]} disagree at {z}: "
                                f"{vi} vs {vj}")
        for unit in self.domain.effective_slices:
            if unit.isclose(-self.base_unit, UNIT_MATCH_TOL):
                continue
            expr = self.expr_for(unit)
            for z in self.domain.pullback(unit).sample(rng, 32):
                try:
                    v = expr.eval(z)
                except (ValueError, ZeroDivisionError, OverflowError) as exc:
                    raise InconsistentSheafData(
                        f"sheet data not evaluable at {z}: {exc}") from exc
                if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                    raise InconsistentSheafData(f"sheet data not finite at {z}")
        return self


def eval_g_omega_I(domain: SliceDomain, h: HoloSheetFn, unit: ImaginaryUnit,
                   q: Quaternion, via_conj: bool = False,
                   check_domain: bool = True) -> Quaternion:
    """Value at q of the slice regular function built from sheet data h.

    For q on the base slice the value is the chart image of h; elsewhere it
    is the representation solve of the stem pair values.  ``via_conj``
    forces the evaluation through the conjugate chart (the result is the
    same; exposed so chart independence can be checked externally).
    """
    base = domain.snap_unit(unit)
    if check_domain and not domain.contains_q(q):
        raise NotInDomain(f"{q} is not in the domain")
    x, y, uq = slice_decompose(q)
    if uq is None:
        return psi(h.eval_sheet(base, complex(x, 0.0)), base)
    z = complex(x, y)
    if uq.isclose(base, UNIT_MATCH_TOL):
        chart_j, zj = base, z
    elif uq.isclose(-base, UNIT_MATCH_TOL):
        chart_j, zj = base, complex(x, -y)
    else:
        chart_j, zj = uq, z
    if via_conj and not chart_j.isclose(base, UNIT_MATCH_TOL):
        chart_j, zj = -chart_j, complex(zj.real, -zj.imag)
    if chart_j.isclose(base, UNIT_MATCH_TOL):
        return psi(h.eval_sheet(base, zj), base)
    v_mu = h.eval_sheet(chart_j, zj)
    v_mu_conj = h.eval_sheet(-chart_j, complex(zj.real, -zj.imag))
    return rep_solve(chart_j, base, -base, psi(v_mu, base), psi(v_mu_conj, base))


# -- expression trees over the domain ---------------------------------------------


class SliceRegularExpr:
    def eval(self, q: Quaternion) -> Quaternion:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self):  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Poly(SliceRegularExpr):
    """q |-> sum q^n * a_n with right coefficients."""

    coeffs: tuple[Quaternion, ...]

    def eval(self, q: Quaternion) -> Quaternion:
        acc = Quaternion()
        p = Quaternion(1.0)
        for a in self.coeffs:
            acc = acc + p * a
            p = p * q
        return acc

    def to_json(self):
        return {"kind": "poly", "coeffs": [list(c.components()) for c in self.coeffs]}


@dataclass(frozen=True)
class GOmegaI(SliceRegularExpr):
    h: HoloSheetFn
    unit: ImaginaryUnit

    def eval(self, q: Quaternion) -> Quaternion:
        return eval_g_omega_I(self.h.domain, self.h, self.unit, q,
                              check_domain=False)

    def to_json(self):
        sheets = {}
        for key, e in self.h.exprs.items():
            name = "generic" if key == GENERIC else repr(list(key.axis()))
            sheets[name] = e.to_json()
        return {"kind": "g_omega_i", "unit": list(self.unit.axis()), "sheets": sheets}


@dataclass(frozen=True)
class Sum(SliceRegularExpr):
    parts: tuple[SliceRegularExpr, ...]

    def eval(self, q: Quaternion) -> Quaternion:
        acc = Quaternion()
        for p in self.parts:
            acc = acc + p.eval(q)
        return acc

    def to_json(self):
        return {"kind": "sum", "parts": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class RightMul(SliceRegularExpr):
    expr: SliceRegularExpr
    c: Quaternion

    def eval(self, q: Quaternion) -> Quaternion:
        return self.expr.eval(q) * self.c

    def to_json(self):
        return {"kind": "rmul", "expr": self.expr.to_json(), "c": list(self.c.components())}


def eval_poly(coeffs, q: Quaternion) -> Quaternion:
    return Poly(tuple(coeffs)).eval(q)


# -- verification --------------------------------------------------------------------


@dataclass
class VerifyReport:
    passed: bool
    max_residual: float
    tol: float
    fd_step: float
    points_checked: int
    per_slice: dict = field(default_factory=dict)
    worst_point: tuple | None = None


def _cr_residual(f, z: complex, unit: ImaginaryUnit, fd: float) -> float:
    x, y = z.real, z.imag
    fxp = f.eval(psi(complex(x + fd, y), unit))
    fxm = f.eval(psi(complex(x - fd, y), unit))
    fyp = f.eval(psi(complex(x, y + fd), unit))
    fym = f.eval(psi(complex(x, y - fd), unit))
    r = (fxp - fxm) + unit.u * (fyp - fym)
    return abs(r) / (2 * fd)


def verify_slice_regular(domain: SliceDomain, f, slices=None,
                         grid_pitch: float = 0.25, fd_step: float = 1e-4,
                         tol: float = 1e-6, points=None) -> VerifyReport:
    """Check the slice-wise Cauchy-Riemann operator by central differences.

    Grid points keep clearance 2*fd_step from each slice's boundary; an
    explicit point violating the clearance raises ClearanceViolation.
    """
    if slices is None:
        slices = list(domain.effective_slices)
    report = VerifyReport(True, 0.0, tol, fd_step, 0)
    for unit in slices:
        pb = domain.pullback(unit)
        if points is None:
            zs = pb.grid_points(grid_pitch, margin=2 * fd_step)
        else:
            zs = points
            from .planar import frac
            for z in zs:
                if pb.dist2_to_complement(z) < (2 * frac(fd_step)) ** 2:
                    raise ClearanceViolation(
                        f"{z} closer than twice the step to the boundary")
        worst = 0.0
        for z in zs:
            res = _cr_residual(f, z, unit, fd_step)
            if res > worst:
                worst = res
            if res > report.max_residual:
                report.max_residual = res
                report.worst_point = (z, unit.axis())
            report.points_checked += 1
        report.per_slice[unit.axis()] = worst
    report.passed = report.max_residual < tol
    return report


@dataclass
class RepresentationReport:
    passed: bool
    max_error: float
    tol: float
    samples: int


def verify_representation(domain: SliceDomain, f, n_samples: int = 50,
                          tol: float = 1e-9, seed: int = 0,
                          triples=None) -> RepresentationReport:
    """Check the three-slice reconstruction identity on the shared region."""
    rng = random.Random(seed)
    omega = domain.omega_2ps()
    if not omega:
        return RepresentationReport(True, 0.0, tol, 0)

    def rand_unit():
        while True:
            v = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
            n = math.sqrt(sum(c * c for c in v))
            if n > 1e-3:
                return ImaginaryUnit.of(*v)

    worst = 0.0
    count = 0
    pts = omega.sample(rng, n_samples)
    for z in pts:
        if z.imag == 0:
            continue
        if triples is None:
            iu, ju, ku = rand_unit(), rand_unit(), rand_unit()
        else:
            iu, ju, ku = triples[count % len(triples)]
        if abs(ju.u - ku.u) < 1e-6:
            continue
        lhs = f.eval(psi(z, iu))
        rhs = rep_solve(iu, ju, ku, f.eval(psi(z, ju)), f.eval(psi(z, ku)))
        err = abs(lhs - rhs)
        worst = max(worst, err)
        count += 1
    return RepresentationReport(worst < tol, worst, tol, count)


def sup_norm(domain: SliceDomain, f, sample) -> float:
    worst = 0.0
    for q in sample:
        worst = max(worst, abs(f.eval(q)))
    return worst


@dataclass
class SupBoundReport:
    passed: bool
    lhs: float
    rhs: float
    slack: float


def check_sup_bound(domain: SliceDomain, h: HoloSheetFn, unit: ImaginaryUnit,
                    u_sample, slack: float = 1e-9) -> SupBoundReport:
    """Sampled sup of the built function against the sup of the sheet data
    over the stem image of the sample (conjugate charts included)."""
    base = domain.snap_unit(unit)
    lhs = 0.0
    rhs = 0.0
    for q in u_sample:
        lhs = max(lhs, abs(eval_g_omega_I(domain, h, base, q, check_domain=False)))
        x, y, uq = slice_decompose(q)
        if uq is None:
            rhs = max(rhs, abs(h.eval_sheet(base, complex(x, 0.0))))
            continue
        for chart in (uq, -uq):
            if chart.isclose(-base, UNIT_MATCH_TOL):
                continue
            zc = complex(x, y) if chart is uq else complex(x, -y)
            rhs = max(rhs, abs(h.eval_sheet(chart, zc)))
    return SupBoundReport(lhs <= rhs + slack, lhs, rhs, slack)


# -- path-slice functions ---------------------------------------------------------------


@dataclass(frozen=True)
class PathSliceFn:
    """Finite support data (q, value) compatible with the representation
    identity on every orbit carrying three or more charts."""

    support: tuple[tuple[Quaternion, Quaternion], ...]

    def values(self):
        return self.support


def group_orbits(domain: SliceDomain, g: PathSliceFn):
    """Support grouped by point class; keys are canonical projections for
    spheres and the points themselves for singletons."""
    orbits: dict = {}
    for q, v in g.support:
        cls = domain.approx_class(q)
        key = ("sphere", cls.sphere_z) if cls.is_sphere else ("pt", q)
        orbits.setdefault(key, []).append((q, v))
    return orbits


def validate_path_slice(domain: SliceDomain, g: PathSliceFn, tol: float = 1e-9):
    """Representation compatibility on orbits with >= 3 support charts."""
    for key, entries in group_orbits(domain, g).items():
        if key[0] != "sphere" or len(entries) < 3:
            continue
        charts = []
        for q, v in entries:
            x, y, uq = slice_decompose(q)
            chart = uq if complex(x, y) == key[1] else -uq
            charts.append((chart, v))
        (ju, vj), (ku, vk) = charts[0], charts[1]
        for lu, vl in charts[2:]:
            pred = rep_solve(lu, ju, ku, vj, vk)
            if abs(pred - vl) > tol * (1 + abs(vl)):
                raise NotPathSlice(
                    f"support on orbit {key[1]} is not representation-"
                    f"compatible: expected {pred}, got {vl}")
    return g


@dataclass
class PathSliceExtension:
    """Unique path-slice extension of finite support to its orbit completion."""

    domain: SliceDomain
    singles: dict
    spheres: dict  # z -> (ju, vj, ku, vk) or (single chart, value)

    def eval(self, q: Quaternion) -> Quaternion:
        x, y, uq = slice_decompose(q)
        if uq is None:
            for (p, v) in self.singles.items():
                if p.isclose(q):
                    return v
            raise NotInDomain(f"{q} is outside the extension's carrier")
        z = complex(x, y)
        data = self.spheres.get(z) or self.spheres.get(complex(x, -y))
        if data is not None:
            zkey = z if z in self.spheres else complex(x, -y)
            chart = uq if zkey == z else -uq
            if len(data) == 2:
                cu, cv = data
                if cu.isclose(chart, UNIT_MATCH_TOL):
                    return cv
                raise NotInDomain(f"{q} is outside the extension's carrier")
            ju, vj, ku, vk = data
            return rep_solve(chart, ju, ku, vj, vk)
        for (p, v) in self.singles.items():
            if p.isclose(q):
                return v
        raise NotInDomain(f"{q} is outside the extension's carrier")

    def carrier(self):
        return self.domain.completion_2ps(
            [p for p in self.singles] +
            [psi(z, d[0]) if len(d) == 2 else psi(z, d[0]) for z, d in self.spheres.items()])


def extend_path_slice(domain: SliceDomain, g: PathSliceFn) -> PathSliceExtension:
    """Extension per the matrix formula: any two support charts of a sphere
    orbit determine the value on every other chart."""
    validate_path_slice(domain, g)
    singles: dict = {}
    spheres: dict = {}
    for key, entries in group_orbits(domain, g).items():
        if key[0] == "pt":
            singles[key[1]] = entries[0][1]
            continue
        z = key[1]
        charts = []
        for q, v in entries:
            x, y, uq = slice_decompose(q)
            chart = uq if complex(x, y) == z else -uq
            if not any(chart.isclose(c, UNIT_MATCH_TOL) for c, _ in charts):
                charts.append((chart, v))
        if len(charts) == 1:
            spheres[z] = (charts[0][0], charts[0][1])
        else:
            (ju, vj), (ku, vk) = charts[0], charts[1]
            spheres[z] = (ju, vj, ku, vk)
    return PathSliceExtension(domain, singles, spheres)
