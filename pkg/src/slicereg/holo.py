"""Holomorphic expression trees in one complex variable.

Small closed grammar: constants, z, arithmetic, integer powers, exp, and
principal log / sqrt with a declared branch-cut ray.  Expressions evaluate
at any point off their cuts and differentiate symbolically.

Two special node types support the interpolation machinery:

* ``LagrangeNode`` interpolates prescribed (node, value) pairs and is built
  so that evaluation at a node reproduces its value exactly (zero factors
  annihilate the other terms; the diagonal term is a ratio of identically
  computed products).
* ``PowExp`` evaluates exp(a*(z-z0))**n as exp(n*a*(z-z0)), avoiding
  premature overflow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


class HoloParseError(ValueError):
    pass


class HoloExpr:
    def eval(self, z: complex) -> complex:  # pragma: no cover - abstract
        raise NotImplementedError

    def deriv(self) -> "HoloExpr":  # pragma: no cover - abstract
        raise NotImplementedError

    def __add__(self, o):
        return Add(self, _coerce(o))

    def __sub__(self, o):
        return Sub(self, _coerce(o))

    def __mul__(self, o):
        return Mul(self, _coerce(o))

    def __truediv__(self, o):
        return Div(self, _coerce(o))


def _coerce(v) -> HoloExpr:
    if isinstance(v, HoloExpr):
        return v
    if isinstance(v, (int, float, complex)):
        return Const(complex(v))
    raise TypeError(f"cannot use {v!r} in an expression")


@dataclass(frozen=True)
class Const(HoloExpr):
    c: complex

    def eval(self, z):
        return self.c

    def deriv(self):
        return Const(0j)

    def to_json(self):
        return {"kind": "const", "re": self.c.real, "im": self.c.imag}


@dataclass(frozen=True)
class Var(HoloExpr):
    def eval(self, z):
        return z

    def deriv(self):
        return Const(1 + 0j)

    def to_json(self):
        return {"kind": "var"}


Z = Var()


@dataclass(frozen=True)
class Add(HoloExpr):
    a: HoloExpr
    b: HoloExpr

    def eval(self, z):
        return self.a.eval(z) + self.b.eval(z)

    def deriv(self):
        return Add(self.a.deriv(), self.b.deriv())

    def to_json(self):
        return {"kind": "add", "a": self.a.to_json(), "b": self.b.to_json()}


@dataclass(frozen=True)
class Sub(HoloExpr):
    a: HoloExpr
    b: HoloExpr

    def eval(self, z):
        return self.a.eval(z) - self.b.eval(z)

    def deriv(self):
        return Sub(self.a.deriv(), self.b.deriv())

    def to_json(self):
        return {"kind": "sub", "a": self.a.to_json(), "b": self.b.to_json()}


@dataclass(frozen=True)
class Mul(HoloExpr):
    a: HoloExpr
    b: HoloExpr

    def eval(self, z):
        return self.a.eval(z) * self.b.eval(z)

    def deriv(self):
        return Add(Mul(self.a.deriv(), self.b), Mul(self.a, self.b.deriv()))

    def to_json(self):
        return {"kind": "mul", "a": self.a.to_json(), "b": self.b.to_json()}


@dataclass(frozen=True)
class Div(HoloExpr):
    a: HoloExpr
    b: HoloExpr

    def eval(self, z):
        return self.a.eval(z) / self.b.eval(z)

    def deriv(self):
        num = Sub(Mul(self.a.deriv(), self.b), Mul(self.a, self.b.deriv()))
        return Div(num, Mul(self.b, self.b))

    def to_json(self):
        return {"kind": "div", "a": self.a.to_json(), "b": self.b.to_json()}


@dataclass(frozen=True)
class Pow(HoloExpr):
    a: HoloExpr
    n: int

    def eval(self, z):
        return self.a.eval(z) ** self.n

    def deriv(self):
        return Mul(Mul(Const(complex(self.n)), Pow(self.a, self.n - 1)), self.a.deriv())

    def to_json(self):
        return {"kind": "pow", "a": self.a.to_json(), "n": self.n}


@dataclass(frozen=True)
class Exp(HoloExpr):
    a: HoloExpr

    def eval(self, z):
        return cmath.exp(self.a.eval(z))

    def deriv(self):
        return Mul(self, self.a.deriv())

    def to_json(self):
        return {"kind": "exp", "a": self.a.to_json()}


def _arg_with_cut(w: complex, cut: float) -> float:
    """Argument of w in (cut - 2*pi, cut), i.e. cut along the ray angle ``cut``."""
    a = cmath.phase(w * cmath.exp(complex(0, -(cut - math.pi))))
    return a + (cut - math.pi)


@dataclass(frozen=True)
class Log(HoloExpr):
    a: HoloExpr
    cut: float = math.pi  # default: principal branch, cut on the negative reals

    def eval(self, z):
        w = self.a.eval(z)
        return complex(math.log(abs(w)), _arg_with_cut(w, self.cut))

    def deriv(self):
        return Div(self.a.deriv(), self.a)

    def to_json(self):
        return {"kind": "log", "a": self.a.to_json(), "cut": self.cut}


@dataclass(frozen=True)
class Sqrt(HoloExpr):
    a: HoloExpr
    cut: float = math.pi

    def eval(self, z):
        w = self.a.eval(z)
        return cmath.exp(0.5 * complex(math.log(abs(w)), _arg_with_cut(w, self.cut)))

    def deriv(self):
        return Div(self.a.deriv(), Mul(Const(2 + 0j), self))

    def to_json(self):
        return {"kind": "sqrt", "a": self.a.to_json(), "cut": self.cut}


@dataclass(frozen=True)
class PowExp(HoloExpr):
    """exp(a*(z - z0))**n computed as exp(n*a*(z - z0)); exact 1 at z0."""

    a: complex
    z0: complex
    n: int

    def eval(self, z):
        return cmath.exp(self.n * self.a * (z - self.z0))

    def deriv(self):
        return Mul(Const(self.n * self.a), self)

    def to_json(self):
        return {"kind": "powexp", "a": [self.a.real, self.a.imag],
                "z0": [self.z0.real, self.z0.imag], "n": self.n}


@dataclass(frozen=True)
class LagrangeNode(HoloExpr):
    """Polynomial through (node_i, value_i) with exact node reproduction.

    Each term is value_i * prod_{j != i}(z - node_j) / den_i where den_i is
    the same product evaluated at node_i: at z = node_i every other term has
    an exactly-zero factor and the diagonal ratio is den_i/den_i = 1.
    """

    nodes: tuple[complex, ...]
    values: tuple[complex, ...]

    def eval(self, z):
        total = 0j
        for i, (ni, vi) in enumerate(zip(self.nodes, self.values)):
            num = 1 + 0j
            den = 1 + 0j
            for j, nj in enumerate(self.nodes):
                if j == i:
                    continue
                num *= (z - nj)
                den *= (ni - nj)
            total += vi * (num / den)
        return total

    def deriv(self):
        expr: HoloExpr = Const(0j)
        for i, (ni, vi) in enumerate(zip(self.nodes, self.values)):
            den = 1 + 0j
            others = [nj for j, nj in enumerate(self.nodes) if j != i]
            for nj in others:
                den *= (ni - nj)
            term: HoloExpr = Const(0j)
            for k in range(len(others)):
                prod: HoloExpr = Const(1 + 0j)
                for m, nj in enumerate(others):
                    if m != k:
                        prod = Mul(prod, Sub(Z, Const(nj)))
                term = Add(term, prod)
            expr = Add(expr, Mul(Const(vi / den), term))
        return expr

    def to_json(self):
        return {"kind": "lagrange",
                "nodes": [[n.real, n.imag] for n in self.nodes],
                "values": [[v.real, v.imag] for v in self.values]}


# -- (de)serialization -----------------------------------------------------------


def expr_from_json(data) -> HoloExpr:
    if isinstance(data, str):
        return parse_expr(data)
    kind = data["kind"]
    if kind == "const":
        return Const(complex(data["re"], data["im"]))
    if kind == "var":
        return Z
    if kind in ("add", "sub", "mul", "div"):
        cls = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[kind]
        return cls(expr_from_json(data["a"]), expr_from_json(data["b"]))
    if kind == "pow":
        return Pow(expr_from_json(data["a"]), int(data["n"]))
    if kind == "exp":
        return Exp(expr_from_json(data["a"]))
    if kind == "log":
        return Log(expr_from_json(data["a"]), float(data.get("cut", math.pi)))
    if kind == "sqrt":
        return Sqrt(expr_from_json(data["a"]), float(data.get("cut", math.pi)))
    if kind == "powexp":
        return PowExp(complex(*data["a"]), complex(*data["z0"]), int(data["n"]))
    if kind == "lagrange":
        return LagrangeNode(tuple(complex(*n) for n in data["nodes"]),
                            tuple(complex(*v) for v in data["values"]))
    raise HoloParseError(f"unknown expression kind {kind!r}")


# -- a small infix parser ----------------------------------------------------------
#
# grammar: numbers (42, 3.5, 2e-3, optionally suffixed i), z, + - * / **,
# parentheses, exp(...), log(...), sqrt(...), log[cut=theta](...),
# sqrt[cut=theta](...)


def _tokenize(src: str):
    out = []
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < len(src) and src[i + 1].isdigit()):
            j = i
            while j < len(src) and (src[j].isdigit() or src[j] == "."):
                j += 1
            if j < len(src) and src[j] in "eE" and j + 1 < len(src) \
                    and (src[j + 1].isdigit() or src[j + 1] in "+-"):
                j += 2
                while j < len(src) and src[j].isdigit():
                    j += 1
            text = src[i:j]
            if j < len(src) and src[j] == "i":
                out.append(("num", complex(0, float(text))))
                j += 1
            else:
                out.append(("num", complex(float(text), 0)))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < len(src) and src[j].isalnum():
                j += 1
            out.append(("name", src[i:j]))
            i = j
            continue
        if src.startswith("**", i):
            out.append(("op", "**"))
            i += 2
            continue
        if c in "+-*/()[]=,":
            out.append(("op", c))
            i += 1
            continue
        raise HoloParseError(f"bad character {c!r} in expression")
    out.append(("end", ""))
    return out


def parse_expr(src: str) -> HoloExpr:
    tokens = _tokenize(src)
    pos = [0]

    def peek():
        return tokens[pos[0]]

    def take(expect=None):
        tok = tokens[pos[0]]
        if expect is not None and tok != expect:
            raise HoloParseError(f"expected {expect}, got {tok}")
        pos[0] += 1
        return tok

    def atom() -> HoloExpr:
        kind, val = peek()
        if kind == "num":
            take()
            return Const(val)
        if kind == "name":
            take()
            if val == "z":
                return Z
            if val == "i":
                return Const(1j)
            if val in ("exp", "log", "sqrt"):
                cut = math.pi
                if peek() == ("op", "["):
                    take()
                    take(("name", "cut"))
                    take(("op", "="))
                    sign = 1.0
                    if peek() == ("op", "-"):
                        take()
                        sign = -1.0
                    k, v = take()
                    if k != "num":
                        raise HoloParseError("cut needs a numeric angle")
                    cut = sign * v.real
                    take(("op", "]"))
                take(("op", "("))
                inner = expr()
                take(("op", ")"))
                if val == "exp":
                    return Exp(inner)
                if val == "log":
                    return Log(inner, cut)
                return Sqrt(inner, cut)
            raise HoloParseError(f"unknown name {val!r}")
        if (kind, val) == ("op", "("):
            take()
            inner = expr()
            take(("op", ")"))
            return inner
        if (kind, val) == ("op", "-"):
            take()
            return Sub(Const(0j), factor())
        if (kind, val) == ("op", "+"):
            take()
            return factor()
        raise HoloParseError(f"unexpected token {peek()}")

    def factor() -> HoloExpr:
        base = atom()
        if peek() == ("op", "**"):
            take()
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            k, v = take()
            if k != "num" or v.imag or v.real != int(v.real):
                raise HoloParseError("power must be an integer")
            return Pow(base, sign * int(v.real))
        return base

    def term() -> HoloExpr:
        node = factor()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def expr() -> HoloExpr:
        node = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    result = expr()
    take(("end", ""))
    return result
