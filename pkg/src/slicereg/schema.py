"""JSON schemas: domain files, function files, interpolation problems.

Domain file:
    {"schema_version": 1,
     "pieces": [
        {"region": {"rects": [["0", "1", "-1/2", "1/2"], ...]}, "slices": "all"},
        {"region": {"sector": {"center": [0.0, 3.0], "rmin": 2, "rmax": 4,
                               "thmin": 0.0, "thmax": 9.42, "eps": 0.05}},
         "slices": [[0, 0, 1]]}]}

Rectangle endpoints may be numbers or exact fraction strings; saving always
writes fraction strings, so load -> save -> load is the identity on the
normalized model.  Sectors are rasterized at load time (an approximation,
flagged in reports).

Function file: {"function": <expr>} with <expr> one of
    {"kind": "poly", "coeffs": [[x0,x1,x2,x3], ...]}
    {"kind": "g_omega_i", "unit": [u1,u2,u3],
     "sheets": {"generic": <holo>, "[u1, u2, u3]": <holo>}}
    {"kind": "sum", "parts": [...]}, {"kind": "rmul", "expr": ..., "c": [...]}
where <holo> is a structured holomorphic expression or an infix string
(grammar: z, numbers, i, + - * / **, exp, log[cut=t], sqrt[cut=t]).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .domain import ALL_SLICES, SliceDomain, SliceSpec
from .functions import GENERIC, GOmegaI, HoloSheetFn, Poly, RightMul, SliceRegularExpr, Sum
from .holo import expr_from_json
from .planar import PlanarSet, Rect, frac, rasterize_sector
from .quat import ImaginaryUnit, Quaternion

SCHEMA_VERSION = 1
UNIT_NORM_TOL = 1e-9


class SchemaError(ValueError):
    pass


def _parse_unit(data) -> ImaginaryUnit:
    if not (isinstance(data, (list, tuple)) and len(data) == 3):
        raise SchemaError(f"a unit must be a triple, got {data!r}")
    x1, x2, x3 = (float(v) for v in data)
    n2 = x1 * x1 + x2 * x2 + x3 * x3
    if n2 == 0:
        raise SchemaError("unit triple must be nonzero")
    if abs(n2 - 1.0) > UNIT_NORM_TOL:
        raise SchemaError(f"unit triple {data!r} is not normalized")
    return ImaginaryUnit.of(x1, x2, x3)


def _parse_region(data):
    if "rects" in data:
        rects = []
        for entry in data["rects"]:
            if len(entry) != 4:
                raise SchemaError(f"rectangle needs 4 endpoints, got {entry!r}")
            try:
                rects.append(Rect.of(*entry))
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"bad rectangle {entry!r}: {exc}") from exc
        return PlanarSet(rects), False
    if "sector" in data:
        s = data["sector"]
        try:
            ps = rasterize_sector(complex(s["center"][0], s["center"][1]),
                                  s["rmin"], s["rmax"],
                                  float(s["thmin"]), float(s["thmax"]),
                                  float(s["eps"]))
        except KeyError as exc:
            raise SchemaError(f"sector missing field {exc}") from exc
        return ps, True
    raise SchemaError("region must contain 'rects' or 'sector'")


def load_domain(data, validate: bool = True):
    """Build a domain from parsed JSON; returns (domain, approximate_flag)."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {data.get('schema_version')!r}")
    pieces = []
    approx = False
    if not data.get("pieces"):
        raise SchemaError("domain file has no pieces")
    for entry in data["pieces"]:
        region, is_approx = _parse_region(entry.get("region", {}))
        approx = approx or is_approx
        slices = entry.get("slices")
        if slices == "all":
            spec = SliceSpec.all_slices()
        elif isinstance(slices, list) and slices:
            units = [_parse_unit(u) for u in slices]
            try:
                spec = SliceSpec.of(*units)
            except ValueError as exc:
                raise SchemaError(str(exc)) from exc
        else:
            raise SchemaError(f"bad slices entry {slices!r}")
        pieces.append((region, spec))
    return SliceDomain(pieces, validate=validate), approx


def save_domain(domain: SliceDomain) -> dict:
    """Normalized model: every region as exact rectangle strings."""
    pieces = []
    for region, spec in domain.pieces:
        rects = [[str(r.ax), str(r.bx), str(r.ay), str(r.by)]
                 for r in region.rects]
        slices = "all" if spec.is_all else [list(u.axis()) for u in spec.units]
        pieces.append({"region": {"rects": rects}, "slices": slices})
    return {"schema_version": SCHEMA_VERSION, "pieces": pieces}


def load_function(data, domain: SliceDomain) -> SliceRegularExpr:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if "function" in data:
        data = data["function"]
    return _parse_function(data, domain)


def _parse_function(data, domain: SliceDomain) -> SliceRegularExpr:
    kind = data.get("kind")
    if kind == "poly":
        coeffs = tuple(Quaternion(*(float(x) for x in c)) for c in data["coeffs"])
        return Poly(coeffs)
    if kind == "g_omega_i":
        unit = _parse_unit(data["unit"])
        sheets = {}
        for key, e in data["sheets"].items():
            if key == GENERIC:
                sheets[GENERIC] = expr_from_json(e)
            else:
                sheets[_parse_unit(json.loads(key))] = expr_from_json(e)
        h = HoloSheetFn(domain, unit, sheets)
        return GOmegaI(h, h.base_unit)
    if kind == "sum":
        return Sum(tuple(_parse_function(p, domain) for p in data["parts"]))
    if kind == "rmul":
        return RightMul(_parse_function(data["expr"], domain),
                        Quaternion(*(float(x) for x in data["c"])))
    raise SchemaError(f"unknown function kind {kind!r}")


def save_function(expr: SliceRegularExpr) -> dict:
    return {"function": expr.to_json()}
