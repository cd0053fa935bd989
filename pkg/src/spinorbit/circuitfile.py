"""Line-oriented text format for circuits.

Grammar (one statement per line, '#' starts a comment):

    version 1
    source <path> weight=<real> pol=<H|V> mode=<h|v>
    element <KIND>(<args>) on <path> [routes <path>-><path>,<path>]
    sink <path>

Element kinds and arguments mirror the optics.Element catalog; angle
arguments accept a ``deg`` suffix and are stored internally in radians.
The first error aborts parsing with a diagnostic carrying line and column.
"""

from __future__ import annotations

import re

import numpy as np

from .optics import Circuit, Element, Source, source_ket

FORMAT_VERSION = 1


class CircuitParseError(Exception):
    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


_ELEMENT_RE = re.compile(
    r"element\s+(?P<kind>\w+)\s*\((?P<args>[^)]*)\)\s+on\s+(?P<path>\S+)"
    r"(?:\s+routes\s+(?P<rin>\S+?)->(?P<rout1>[^,\s]+),(?P<rout2>\S+))?\s*$"
)
_SOURCE_RE = re.compile(
    r"source\s+(?P<path>\S+)\s+weight=(?P<weight>\S+)\s+pol=(?P<pol>\S+)\s+mode=(?P<mode>\S+)\s*$"
)
_SINK_RE = re.compile(r"sink\s+(?P<path>\S+)\s*$")
_VERSION_RE = re.compile(r"version\s+(?P<ver>\S+)\s*$")


def _parse_real(token, lineno, col, what):
    try:
        return float(token)
    except ValueError:
        raise CircuitParseError(lineno, col, f"expected a real number for {what}, got {token!r}")


def _parse_angle(token, lineno, col):
    token = token.strip()
    if token.endswith("deg"):
        return np.deg2rad(_parse_real(token[:-3], lineno, col, "angle"))
    return _parse_real(token, lineno, col, "angle")


def _split_args(argstr):
    argstr = argstr.strip()
    if not argstr:
        return []
    return [a.strip() for a in argstr.split(",")]


def _parse_element(line, lineno):
    m = _ELEMENT_RE.match(line)
    if m is None:
        raise CircuitParseError(lineno, 1, f"malformed element statement: {line.strip()!r}")
    kind = m.group("kind")
    args = _split_args(m.group("args"))
    path = m.group("path")
    col = m.start("args") + 1
    routes = ()
    if m.group("rin") is not None:
        if m.group("rin") != path:
            raise CircuitParseError(
                lineno, m.start("rin") + 1,
                f"route input {m.group('rin')!r} must match placement {path!r}")
        routes = (m.group("rout1"), m.group("rout2"))

    def need(n):
        if len(args) != n:
            raise CircuitParseError(
                lineno, col, f"{kind} takes {n} argument(s), got {len(args)}")

    def need_routes():
        if not routes:
            raise CircuitParseError(lineno, col, f"{kind} requires a routes clause")

    try:
        if kind in ("HWP", "DP", "PHASE"):
            need(1)
            return Element(kind, path, angle=_parse_angle(args[0], lineno, col))
        if kind == "NF":
            need(1)
            tok = args[0]
            if tok.startswith("t="):
                tok = tok[2:]
            return Element(kind, path, t=_parse_real(tok, lineno, col, "NF transmission"))
        if kind == "BS":
            need(2)
            vals = {}
            for a in args:
                if "=" not in a:
                    raise CircuitParseError(lineno, col, "BS arguments must be r=<real>,t=<real>")
                k, v = a.split("=", 1)
                vals[k.strip()] = _parse_real(v, lineno, col, f"BS {k.strip()}")
            if set(vals) != {"r", "t"}:
                raise CircuitParseError(lineno, col, "BS arguments must be r=<real>,t=<real>")
            need_routes()
            return Element(kind, path, r=vals["r"], t=vals["t"], out=routes)
        if kind == "PBS":
            need(0)
            need_routes()
            return Element(kind, path, out=routes)
        if kind == "MASK":
            need(1)
            return Element(kind, path, mode=args[0])
        if kind == "POLPREP":
            need(1)
            return Element(kind, path, mode=args[0])
        if kind == "BLOCK":
            need(0)
            return Element(kind, path)
        raise CircuitParseError(lineno, m.start("kind") + 1, f"unknown element kind {kind!r}")
    except ValueError as exc:
        raise CircuitParseError(lineno, col, str(exc))


def parse_circuit(text):
    """Parse circuit text into an optics.Circuit.

    Raises CircuitParseError on the first malformed statement; never returns
    a partial circuit.
    """
    sources = []
    elements = []
    sinks = []
    declared = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("version"):
            m = _VERSION_RE.match(stripped)
            if m is None:
                raise CircuitParseError(lineno, 1, "malformed version statement")
            ver = m.group("ver")
            if not ver.isdigit() or int(ver) > FORMAT_VERSION:
                raise CircuitParseError(lineno, 1, f"unsupported format version {ver!r}")
            continue
        if stripped.startswith("source"):
            m = _SOURCE_RE.match(stripped)
            if m is None:
                raise CircuitParseError(lineno, 1, f"malformed source statement: {stripped!r}")
            pol, mode = m.group("pol"), m.group("mode")
            if pol not in ("H", "V"):
                raise CircuitParseError(lineno, m.start("pol") + 1, f"pol must be H or V, got {pol!r}")
            if mode not in ("h", "v"):
                raise CircuitParseError(lineno, m.start("mode") + 1, f"mode must be h or v, got {mode!r}")
            weight = _parse_real(m.group("weight"), lineno, m.start("weight") + 1, "weight")
            path = m.group("path")
            sources.append(Source(path, weight, source_ket(pol, mode)))
            declared.add(path)
            continue
        if stripped.startswith("element"):
            e = _parse_element(stripped, lineno)
            if e.path not in declared:
                raise CircuitParseError(lineno, 1, f"element placed on undeclared path {e.path!r}")
            declared.update(e.out)
            elements.append(e)
            continue
        if stripped.startswith("sink"):
            m = _SINK_RE.match(stripped)
            if m is None:
                raise CircuitParseError(lineno, 1, f"malformed sink statement: {stripped!r}")
            if m.group("path") not in declared:
                raise CircuitParseError(
                    lineno, m.start("path") + 1,
                    f"sink refers to undeclared path {m.group('path')!r}")
            sinks.append(m.group("path"))
            continue
        raise CircuitParseError(lineno, 1, f"unknown statement: {stripped.split()[0]!r}")
    return Circuit(tuple(sources), tuple(elements), tuple(sinks))


def _fmt_angle(rad):
    return f"{np.rad2deg(rad):.6f}deg"


def _fmt_real(x):
    return f"{x:.17g}"


def _source_pol_mode(ket):
    idx = int(np.argmax(np.abs(ket)))
    return "HV"[idx // 2], "hv"[idx % 2]


def serialize_circuit(c: Circuit):
    """Canonical text form; parse(serialize(c)) matches c up to the 6-decimal
    degree rounding of angles."""
    lines = [f"version {FORMAT_VERSION}"]
    for s in c.sources:
        pol, mode = _source_pol_mode(np.asarray(s.ket))
        lines.append(f"source {s.path} weight={_fmt_real(s.weight)} pol={pol} mode={mode}")
    for e in c.elements:
        routes = f" routes {e.path}->{e.out[0]},{e.out[1]}" if e.out else ""
        if e.kind in ("HWP", "DP", "PHASE"):
            args = _fmt_angle(e.angle)
        elif e.kind == "NF":
            args = _fmt_real(e.t)
        elif e.kind == "BS":
            args = f"r={_fmt_real(e.r)},t={_fmt_real(e.t)}"
        elif e.kind in ("MASK", "POLPREP"):
            args = e.mode
        else:
            args = ""
        lines.append(f"element {e.kind}({args}) on {e.path}{routes}")
    for s in c.sinks:
        lines.append(f"sink {s}")
    return "\n".join(lines) + "\n"
