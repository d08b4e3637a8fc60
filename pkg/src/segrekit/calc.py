"""A small expression language over Chow classes of P^n.

Statements are separated by newlines or ``;``; ``NAME = expr`` binds a name,
a bare expression is evaluated and reported.  Values are integers, integer
lists, classes and series in H.  A list ``[a0, ..., an]`` used where a class
is expected means ``sum a_i [P^i]`` in P^n.  Series may be divided when the
divisor has constant term +-1.

    C = [0, 3, -10, 0]
    dual(dual(C))
    integral(cap(ci_segre(3, [2, 2, 2]), series((1+2H)^3)))

Functions: class(n, [..]), P(n, k), tensor(C, e), dual(C[, upper]),
cap(C, S), series(S), residual(delta, C), ci_segre(n, [d..]), integral(C),
convert(C, from, to, d) with from/to among segre, le, milnor.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Union

from .charcls import lms_convert
from .chow import ChowClass, HSeries, cap, ci_segre, dual, integral, residual_segre, tensor_line
from .errors import ParseError


@dataclass(frozen=True)
class Series:
    """A power series in H whose truncation level is fixed when it meets a class."""

    build: Callable[[int], HSeries]

    def at(self, n: int) -> HSeries:
        return self.build(n)


Value = Union[int, List[int], ChowClass, Series, str]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokens(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],=":
                raise ParseError(f"unexpected character {ch!r}", pos=start)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _as_series(v: Value) -> Series:
    if isinstance(v, Series):
        return v
    if isinstance(v, int):
        return Series(lambda n, v=v: HSeries(n, (v,)))
    raise TypeError(f"expected a series, got {_kind(v)}")


def _as_class(v: Value) -> ChowClass:
    if isinstance(v, ChowClass):
        return v
    if isinstance(v, list) and v:
        return ChowClass(len(v) - 1, tuple(v))
    raise TypeError(f"expected a class, got {_kind(v)}")


def _as_int(v: Value) -> int:
    if isinstance(v, int):
        return v
    raise TypeError(f"expected an integer, got {_kind(v)}")


def _kind(v) -> str:
    return {int: "integer", list: "list", ChowClass: "class", Series: "series",
            str: "word"}.get(type(v), type(v).__name__)


def _add(a: Value, b: Value, sign: int) -> Value:
    if isinstance(a, int) and isinstance(b, int):
        return a + sign * b
    if isinstance(a, Series) or isinstance(b, Series):
        sa, sb = _as_series(a), _as_series(b)
        return Series(lambda n: sa.at(n) + sb.at(n) * sign)
    ca, cb = _as_class(a), _as_class(b)
    return ca + cb * sign


def _mul(a: Value, b: Value) -> Value:
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    if isinstance(a, Series) or isinstance(b, Series):
        if isinstance(a, (ChowClass, list)) or isinstance(b, (ChowClass, list)):
            raise TypeError("use cap(C, S) to apply a series to a class")
        sa, sb = _as_series(a), _as_series(b)
        return Series(lambda n: sa.at(n) * sb.at(n))
    if isinstance(a, int):
        return _as_class(b) * a
    if isinstance(b, int):
        return _as_class(a) * b
    raise TypeError("classes cannot be multiplied together")


def _pow(a: Value, k: int) -> Value:
    if isinstance(a, (ChowClass, list)):
        raise TypeError("classes cannot be raised to powers")
    if isinstance(a, int) and k >= 0:
        return a ** k
    s = _as_series(a)
    return Series(lambda n: s.at(n) ** k)


def _f_class(n, coeffs):
    return ChowClass(_as_int(n), tuple(coeffs))


def _f_P(n, k):
    return ChowClass.linear_space(_as_int(n), _as_int(k))


def _f_tensor(c, e):
    return tensor_line(_as_class(c), _as_int(e))


def _f_dual(c, variant="lower"):
    return dual(_as_class(c), variant)


def _f_cap(c, s):
    c = _as_class(c)
    return cap(c, _as_series(s).at(c.n))


def _f_series(s):
    return _as_series(s)


def _f_residual(delta, c):
    c = _as_class(c)
    return residual_segre(c.n, _as_int(delta), c)


def _f_ci_segre(n, degrees):
    if not isinstance(degrees, list):
        raise TypeError("ci_segre expects a list of degrees")
    return ci_segre(_as_int(n), degrees)


def _f_integral(c):
    return integral(_as_class(c))


def _f_convert(c, src, dst, d):
    c = _as_class(c)
    return lms_convert(c, src, dst, c.n, _as_int(d))


FUNCTIONS: Dict[str, Callable] = {
    "class": _f_class, "P": _f_P, "tensor": _f_tensor, "dual": _f_dual, "cap": _f_cap,
    "series": _f_series, "residual": _f_residual, "ci_segre": _f_ci_segre,
    "integral": _f_integral, "convert": _f_convert,
}

WORDS = {"upper", "lower", "segre", "le", "milnor"}


class _Parser:
    def __init__(self, text: str, env: Dict[str, Value], line: int):
        self.toks = _tokens(text)
        self.i = 0
        self.env = env
        self.line = line

    def err(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        return ParseError(msg, pos=tok[2], line=self.line)

    def peek(self, value=None):
        t = self.toks[self.i]
        return t if value is None or t[1] == value and t[0] == "op" else None

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[0] != "op" or t[1] != value:
            raise self.err(f"expected {value!r}", t)

    def statement(self):
        t0, t1 = self.toks[self.i], self.toks[self.i + 1]
        name = None
        if t0[0] == "name" and t1[0] == "op" and t1[1] == "=":
            name = t0[1]
            if name in FUNCTIONS or name in WORDS or name == "H":
                raise self.err(f"cannot assign to reserved name {name!r}", t0)
            self.i += 2
        value = self.expr()
        if self.toks[self.i][0] != "end":
            raise self.err("unexpected trailing input")
        return name, value

    def expr(self):
        v = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.take()
            w = self.term()
            v = self.apply(lambda: _add(v, w, 1 if op[1] == "+" else -1), op)
        return v

    def term(self):
        v = self.unary()
        while self.peek("*") or self.peek("/") or self.toks[self.i][:2] == ("name", "H"):
            # "2H" reads as 2*H
            op = self.take() if self.peek("*") or self.peek("/") else self.toks[self.i]
            w = self.unary()
            if op[1] == "/":
                v = self.apply(lambda: _mul(v, _pow(w, -1)), op)
            else:
                v = self.apply(lambda: _mul(v, w), op)
        return v

    def unary(self):
        if self.peek("-"):
            op = self.take()
            v = self.unary()
            return self.apply(lambda: _mul(-1, v), op)
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek("^"):
            op = self.take()
            sign = 1
            if self.peek("-"):
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "int":
                raise self.err("exponent must be an integer literal", t)
            v = self.apply(lambda: _pow(v, sign * t[1]), op)
        return v

    def atom(self):
        t = self.take()
        kind, val, _ = t
        if kind == "int":
            return val
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "op" and val == "[":
            items: List[int] = []
            if not self.peek("]"):
                while True:
                    items.append(self.apply(lambda: _as_int(self.expr()), t))
                    if self.peek(","):
                        self.take()
                        continue
                    break
            self.expect("]")
            return items
        if kind == "name":
            if val == "H":
                return Series(HSeries.H)
            if val in FUNCTIONS:
                self.expect("(")
                args = []
                if not self.peek(")"):
                    while True:
                        args.append(self.expr())
                        if self.peek(","):
                            self.take()
                            continue
                        break
                self.expect(")")
                return self.apply(lambda: FUNCTIONS[val](*args), t)
            if val in WORDS:
                return val
            if val in self.env:
                return self.env[val]
            raise self.err(f"unknown name {val!r}", t)
        if kind == "end":
            raise self.err("unexpected end of input", t)
        raise self.err(f"unexpected {val!r}", t)

    def apply(self, fn, tok):
        try:
            return fn()
        except ParseError:
            raise
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise self.err(str(exc), tok) from exc


def _statements(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        for piece in content.split(";"):
            if piece.strip():
                yield no, piece


def evaluate(text: str) -> List[Value]:
    """Run a chow-calc program; returns the values of its bare expressions in order."""
    env: Dict[str, Value] = {}
    out: List[Value] = []
    for no, piece in _statements(text):
        name, value = _Parser(piece, env, no).statement()
        if name is None:
            if isinstance(value, Series):
                raise ParseError("a bare series has no ambient space; cap it with a class", line=no)
            out.append(value)
        else:
            env[name] = value
    return out


def chow_calc(expr: str) -> Value:
    """Evaluate a single expression (or a program, returning its last value)."""
    values = evaluate(expr)
    if not values:
        raise ParseError("nothing to evaluate")
    return values[-1]
