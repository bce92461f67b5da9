"""Quaternion arithmetic, slice decomposition, plane maps and the 2x2 solve.

Everything here is plain double precision; the exact rational layer lives in
``planar``.  Values are immutable and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

UNIT_TOL = 1e-12


class DegeneratePair(ValueError):
    """The two sampling units of a representation solve coincide."""


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Element x0 + x1*i + x2*j + x3*k of the quaternions."""

    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.x0 - other.x0, self.x1 - other.x1,
                          self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 * other, self.x1 * other,
                              self.x2 * other, self.x3 * other)
        a0, a1, a2, a3 = self.x0, self.x1, self.x2, self.x3
        b0, b1, b2, b3 = other.x0, other.x1, other.x2, other.x3
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other) -> "Quaternion":
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def conj(self) -> "Quaternion":
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm2(self) -> float:
        return self.x0 ** 2 + self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("inverse of zero quaternion")
        return self.conj() * (1.0 / n2)

    def imag_norm(self) -> float:
        return math.sqrt(self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2)

    def is_real(self, tol: float = 0.0) -> bool:
        return self.imag_norm() <= tol

    def components(self) -> tuple[float, float, float, float]:
        return (self.x0, self.x1, self.x2, self.x3)

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return abs(self - other) <= tol


ONE = Quaternion(1.0)
QI = Quaternion(0.0, 1.0, 0.0, 0.0)
QJ = Quaternion(0.0, 0.0, 1.0, 0.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True, slots=True)
class ImaginaryUnit:
    """A quaternion imaginary unit: purely imaginary with modulus 1."""

    u: Quaternion

    def __post_init__(self):
        if abs(self.u.x0) > UNIT_TOL:
            raise ValueError(f"imaginary unit has nonzero real part: {self.u}")
        if abs(self.u.norm2() - 1.0) > 64 * UNIT_TOL:
            raise ValueError(f"imaginary unit is not normalized: {self.u}")

    @staticmethod
    def of(x1: float, x2: float, x3: float) -> "ImaginaryUnit":
        n = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector to a unit")
        return ImaginaryUnit(Quaternion(0.0, x1 / n, x2 / n, x3 / n))

    def __neg__(self) -> "ImaginaryUnit":
        return ImaginaryUnit(Quaternion(0.0, -self.u.x1, -self.u.x2, -self.u.x3))

    def axis(self) -> tuple[float, float, float]:
        return (self.u.x1, self.u.x2, self.u.x3)

    def isclose(self, other: "ImaginaryUnit", tol: float = 1e-9) -> bool:
        return self.u.isclose(other.u, tol)

    def same_plane(self, other: "ImaginaryUnit", tol: float = 1e-9) -> bool:
        return self.isclose(other, tol) or self.isclose(-other, tol)


UI = ImaginaryUnit(QI)
UJ = ImaginaryUnit(QJ)
UK = ImaginaryUnit(QK)


@dataclass(frozen=True, slots=True)
class SlicePoint:
    """Canonical (z, unit) coordinates of a quaternion: z = x + y*i, y >= 0.

    ``unit`` is None exactly when the point is real.
    """

    z: complex
    unit: ImaginaryUnit | None

    def __post_init__(self):
        if self.z.imag < 0:
            raise ValueError("canonical slice point needs Im z >= 0")
        if (self.z.imag == 0.0) != (self.unit is None):
            raise ValueError("unit must be None iff the point is real")

    def realize(self) -> Quaternion:
        if self.unit is None:
            return Quaternion(self.z.real)
        return psi(self.z, self.unit)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product; kept as a named operation next to the basis table."""
    return a * b


def slice_decompose(q: Quaternion) -> tuple[float, float, ImaginaryUnit | None]:
    """Write q = x + y*I with y >= 0; I is None exactly for real q."""
    y = q.imag_norm()
    if y == 0.0:
        return (q.x0, 0.0, None)
    return (q.x0, y, ImaginaryUnit(Quaternion(0.0, q.x1 / y, q.x2 / y, q.x3 / y)))


def to_slice_point(q: Quaternion) -> SlicePoint:
    x, y, unit = slice_decompose(q)
    return SlicePoint(complex(x, y), unit)


def psi(z: complex, unit: ImaginaryUnit) -> Quaternion:
    """The plane map x + y*i  |->  x + y*I."""
    u = unit.u
    y = z.imag
    return Quaternion(z.real, y * u.x1, y * u.x2, y * u.x3)


def psi_inv(q: Quaternion, chart: ImaginaryUnit, tol: float = 1e-9) -> complex:
    """Coordinates of q in the chart spanned by 1 and ``chart``.

    Requires q to lie in that plane; the returned imaginary part is signed.
    """
    x, y, unit = slice_decompose(q)
    if unit is None:
        return complex(x, 0.0)
    if unit.isclose(chart, tol):
        return complex(x, y)
    if unit.isclose(-chart, tol):
        return complex(x, -y)
    raise ValueError("quaternion does not lie in the requested slice plane")


def psi_between(q: Quaternion, src: ImaginaryUnit, dst: ImaginaryUnit) -> Quaternion:
    """x + y*src |-> x + y*dst, the composite of the two chart maps."""
    return psi(psi_inv(q, src), dst)


def sigma(p: Quaternion, q: Quaternion) -> float:
    """Quaternionic distance: Euclidean inside a common slice plane, and
    sqrt(Re(q-p)^2 + |Im q|^2 + |Im p|^2) across planes."""
    yp = p.imag_norm()
    yq = q.imag_norm()
    same_plane = False
    if yp == 0.0 or yq == 0.0:
        same_plane = True
    else:
        # parallel imaginary parts (either orientation) mean a shared plane
        cx = p.x2 * q.x3 - p.x3 * q.x2
        cy = p.x3 * q.x1 - p.x1 * q.x3
        cz = p.x1 * q.x2 - p.x2 * q.x1
        cross = math.sqrt(cx * cx + cy * cy + cz * cz)
        same_plane = cross <= 1e-12 * yp * yq
    if same_plane:
        return abs(q - p)
    dre = q.x0 - p.x0
    return math.sqrt(dre * dre + yq * yq + yp * yp)


def rep_solve(i_unit: ImaginaryUnit, j_unit: ImaginaryUnit, k_unit: ImaginaryUnit,
              v_j: Quaternion, v_k: Quaternion) -> Quaternion:
    """Reconstruct the value on slice I from values on slices J and K.

    Solves [[1, J], [1, K]] (w1, w2)^T = (vJ, vK)^T and returns w1 + I*w2.
    The difference J - K is purely imaginary, so its inverse is
    -(J - K)/|J - K|^2.
    """
    d = j_unit.u - k_unit.u
    n2 = d.norm2()
    if n2 <= UNIT_TOL:
        raise DegeneratePair("rep_solve needs two distinct sampling units")
    d_inv = -d * (1.0 / n2)
    w2 = d_inv * (v_j - v_k)
    w1 = v_j - j_unit.u * w2
    return w1 + i_unit.u * w2
