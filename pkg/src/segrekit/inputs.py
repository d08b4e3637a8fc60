"""Input files: a ``vars`` header followed by one polynomial per line.

    # comment
    vars x0..x3;
    x1*x2
    x1*x3

The header also accepts an explicit list, ``vars x, y, z, w;``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple

from .errors import ParseError
from .ffpoly import DEFAULT_PRIME, Polynomial, Ring, parse_polynomial

_RANGE = re.compile(r"^([A-Za-z_]\w*?)(\d+)\s*\.\.\s*([A-Za-z_]\w*?)?(\d+)$")
_NAME = re.compile(r"^[A-Za-z_]\w*$")


def parse_vars(spec: str, line: int = None) -> List[str]:
    """Variable names from the body of a ``vars`` header (without ``vars`` and ``;``)."""
    spec = spec.strip()
    m = _RANGE.match(spec)
    if m:
        stem, lo, stem2, hi = m.group(1), int(m.group(2)), m.group(3), int(m.group(4))
        if stem2 not in (None, stem) or hi < lo:
            raise ParseError(f"bad variable range {spec!r}", line=line)
        return [f"{stem}{i}" for i in range(lo, hi + 1)]
    names = [t for t in re.split(r"[,\s]+", spec) if t]
    if not names:
        raise ParseError("empty variable list", line=line)
    for t in names:
        if not _NAME.match(t):
            raise ParseError(f"bad variable name {t!r}", line=line)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names", line=line)
    return names


@dataclass
class SourceLine:
    text: str
    line: int


def split_header(text: str) -> Tuple[List[str], List[SourceLine]]:
    """Split a file into its variable names and the remaining content lines."""
    names = None
    body: List[SourceLine] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if names is None:
            if not content.startswith("vars"):
                raise ParseError("file must start with a 'vars ...;' header", line=no)
            rest = content[4:]
            if ";" not in rest:
                raise ParseError("header must end with ';'", line=no)
            spec, tail = rest.split(";", 1)
            names = parse_vars(spec, line=no)
            if tail.strip():
                body.append(SourceLine(tail.strip(), no))
            continue
        body.append(SourceLine(content, no))
    if names is None:
        raise ParseError("missing 'vars ...;' header")
    return names, body


def parse_line(src: SourceLine, ring: Ring) -> Polynomial:
    text = src.text.rstrip(";,").strip()
    try:
        return parse_polynomial(text, ring)
    except ParseError as exc:
        raise ParseError(exc.message, pos=exc.pos, line=src.line) from exc


def read_polynomials(text: str, prime: int = DEFAULT_PRIME) -> Tuple[Ring, List[Polynomial]]:
    names, body = split_header(text)
    ring = Ring(names, prime)
    polys = [parse_line(src, ring) for src in body]
    if not polys:
        raise ParseError("no polynomials after the header")
    return ring, polys
