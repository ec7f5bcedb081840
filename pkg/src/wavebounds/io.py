"""File formats: distributions, profiles, wave fields, curves and reports.

Numbers are written with 17 significant digits; infinities as the strings
``"inf"`` and ``"-inf"``.  Distribution files keep the decimal text of
every number they were read from, so load-then-dump reproduces it exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .bounds import WaveField
from .stream import StreamProfile
from .vorticity import Segment, VorticityDistribution


class FormatError(ValueError):
    """Input file does not follow the expected schema."""


class _Token(str):
    """A numeric literal exactly as it appeared in the JSON text."""


def _reject_constant(name):
    raise FormatError(f"non-standard JSON constant {name}; write infinities as \"inf\"")


def loads(text: str):
    return json.loads(text, parse_float=_Token, parse_int=_Token, parse_constant=_reject_constant)


def _number(v, where: str) -> float:
    if isinstance(v, bool) or v is None:
        raise FormatError(f"{where}: expected a number, got {v!r}")
    if isinstance(v, str):
        if v in ("inf", "+inf", "-inf", "nan") or isinstance(v, _Token):
            return float(v)
        raise FormatError(f"{where}: expected a number, got string {v!r}")
    if isinstance(v, (int, float)):
        return float(v)
    raise FormatError(f"{where}: expected a number, got {type(v).__name__}")


def _token(v) -> str:
    return str(v) if isinstance(v, _Token) else fmt(_number(v, "value"))


def _keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected a JSON object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise FormatError(f"{where}: unknown key {extra[0]!r}")
    for k in required:
        if k not in obj:
            raise FormatError(f"{where}: missing key {k!r}")


def _read(src) -> str:
    if isinstance(src, Path) or (isinstance(src, str) and not src.lstrip().startswith(("{", "["))):
        return Path(src).read_text()
    return src


# -- generic writer ------------------------------------------------------------------


def fmt(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return "null"
    return format(x, ".17g")


def dumps(obj) -> str:
    """JSON with 17-digit floats and string infinities; keys keep insertion order."""
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, _Token):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(float(obj))
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_pretty(obj) -> str:
    """One top-level key per line; nested values stay on one line."""
    if isinstance(obj, dict):
        body = ",\n".join(f"  {json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{\n" + body + "\n}\n"
    return dumps(obj) + "\n"


# -- distributions --------------------------------------------------------------------


def load_distribution(src) -> VorticityDistribution:
    """Read ``{"segments": [{"from":, "to":, "coeffs": [...]}], "comment": ...}``."""
    try:
        data = loads(_read(src))
    except json.JSONDecodeError as exc:
        raise FormatError(f"distribution: invalid JSON ({exc})") from exc
    _keys(data, ("segments", "comment"), ("segments",), "distribution")
    segs = data["segments"]
    if not isinstance(segs, list) or not segs:
        raise FormatError("distribution: 'segments' must be a non-empty list")
    out = []
    for i, s in enumerate(segs):
        where = f"segments[{i}]"
        _keys(s, ("from", "to", "coeffs"), ("from", "to", "coeffs"), where)
        if not isinstance(s["coeffs"], list) or not s["coeffs"]:
            raise FormatError(f"{where}.coeffs: expected a non-empty list")
        lo = _number(s["from"], f"{where}.from")
        hi = _number(s["to"], f"{where}.to")
        cs = tuple(_number(c, f"{where}.coeffs[{j}]") for j, c in enumerate(s["coeffs"]))
        toks = tuple(_token(v) if isinstance(v, _Token) else json.dumps(v) if isinstance(v, str) else fmt(float(v))
                     for v in [s["from"], s["to"], *s["coeffs"]])
        out.append(Segment(lo, hi, cs, toks))
    comment = data.get("comment")
    if comment is not None and (not isinstance(comment, str) or isinstance(comment, _Token)):
        raise FormatError("distribution: 'comment' must be a string")
    return VorticityDistribution(tuple(out), comment=comment)


def dumps_distribution(dist: VorticityDistribution) -> str:
    rows = []
    for s in dist.segments:
        if s.tokens is not None:
            lo, hi, *cs = s.tokens
        else:
            lo, hi, cs = fmt(s.lo), fmt(s.hi), [fmt(c) for c in s.coeffs]
        rows.append(f'    {{"from": {lo}, "to": {hi}, "coeffs": [{", ".join(cs)}]}}')
    head = "{\n"
    if dist.comment is not None:
        head += f'  "comment": {json.dumps(dist.comment)},\n'
    return head + '  "segments": [\n' + ",\n".join(rows) + "\n  ]\n}\n"


# -- profiles and families ------------------------------------------------------------


def profile_to_json(p: StreamProfile) -> dict:
    out = {"s": p.s, "kind": p.kind, "grid": p.y_grid, "u": p.u_values, "uprime": p.u_prime}
    if p.period is not None:
        out["period"] = p.period
    return out


def _array(data, key, where):
    v = data[key]
    if not isinstance(v, list):
        raise FormatError(f"{where}.{key}: expected a list")
    return np.array([_number(x, f"{where}.{key}") for x in v], dtype=float)


def profile_from_json(data, where="profile") -> StreamProfile:
    _keys(data, ("s", "kind", "grid", "u", "uprime", "period", "side", "depth", "stationary_point"),
          ("s", "kind", "grid", "u", "uprime"), where)
    period = data.get("period")
    return StreamProfile(
        _number(data["s"], f"{where}.s"),
        _array(data, "grid", where),
        _array(data, "u", where),
        _array(data, "uprime", where),
        str(data["kind"]),
        None if period is None else _number(period, f"{where}.period"),
    )


def load_profile(src) -> StreamProfile:
    return profile_from_json(loads(_read(src)))


# -- wave fields --------------------------------------------------------------------------


def field_to_json(f: WaveField) -> dict:
    return {"x": f.x_grid, "eta": f.eta, "sigma": f.sigma_grid, "psi": f.psi, "r": f.r}


def load_field(src) -> WaveField:
    try:
        data = loads(_read(src))
    except json.JSONDecodeError as exc:
        raise FormatError(f"field: invalid JSON ({exc})") from exc
    _keys(data, ("x", "eta", "sigma", "psi", "r", "comment"), ("x", "eta", "sigma", "psi", "r"), "field")
    psi = data["psi"]
    if not isinstance(psi, list) or not all(isinstance(row, list) for row in psi):
        raise FormatError("field.psi: expected a list of rows")
    rows = [[_number(v, f"field.psi[{i}]") for v in row] for i, row in enumerate(psi)]
    if len({len(r) for r in rows}) > 1:
        raise FormatError("field.psi: rows differ in length")
    return WaveField(
        _array(data, "x", "field"),
        _array(data, "eta", "field"),
        _array(data, "sigma", "field"),
        np.array(rows, dtype=float),
        _number(data["r"], "field.r"),
    )


# -- curves --------------------------------------------------------------------------------


def curve_csv(samples) -> str:
    """``s,h,R,kind`` rows; ``\\n`` line endings, 17 significant digits."""
    lines = ["s,h,R,kind"]
    for s, h, R, branch in samples:
        lines.append(",".join([fmt(s).strip('"'), fmt(h).strip('"'), fmt(R).strip('"'), branch]))
    return "\n".join(lines) + "\n"


def read_curve_csv(text: str) -> list[tuple[float, float, float, str]]:
    lines = text.splitlines()
    if not lines or lines[0] != "s,h,R,kind":
        raise FormatError("curve: header must be 's,h,R,kind'")
    out = []
    for i, ln in enumerate(lines[1:], 2):
        parts = ln.split(",")
        if len(parts) != 4:
            raise FormatError(f"curve line {i}: expected 4 fields")
        out.append((float(parts[0]), float(parts[1]), float(parts[2]), parts[3]))
    return out
