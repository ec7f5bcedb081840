"""Command-line front end.

Every subcommand reads a distribution file (``--dist``) and writes JSON or
CSV to ``--out`` (stdout by default).  Exit status: 0 on success, 2 when
the hypotheses of the requested computation do not hold for the input,
1 on malformed input or any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bernoulli, bounds, counter_current, io, stream, vorticity
from .config import Tolerances, tolerances

CONFIG_KEYS = {
    "dist": str, "field": str, "out": str, "constants": str,
    "tol_quad": float, "tol_root": float, "tol_ode": float,
    "grid": int, "s": float, "r": float, "side": str, "parallel": int, "seed": int,
    "s_min": float, "s_max": float, "y_min": float, "y_max": float, "method": str, "extended": bool,
}


class ConfigError(ValueError):
    pass


def _load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"config: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    out = {}
    for k, v in data.items():
        key = k.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"config: unknown key {k!r}")
        want = CONFIG_KEYS[key]
        if want is float and isinstance(v, int) and not isinstance(v, bool):
            v = float(v)
        if not isinstance(v, want) or (want is int and isinstance(v, bool)):
            raise ConfigError(f"config: {k!r} must be {want.__name__}")
        out[key] = v
    return out


def _settings(args) -> argparse.Namespace:
    """Flags override config-file values, which override defaults."""
    merged = dict(_load_config(args.config)) if args.config else {}
    for k, v in vars(args).items():
        if v is not None or k not in merged:
            merged[k] = v
    ns = argparse.Namespace(**merged)
    if ns.grid is not None and ns.grid < 8:
        raise ConfigError("grid must be at least 8")
    for name in ("tol_quad", "tol_root", "tol_ode"):
        v = getattr(ns, name, None)
        if v is not None and not v > 0:
            raise ConfigError(f"{name.replace('_', '-')} must be positive")
    if ns.parallel is not None and ns.parallel < 1:
        raise ConfigError("parallel must be at least 1")
    return ns


def _tol_overrides(ns) -> dict:
    out = {}
    if ns.tol_quad is not None:
        out["quad_rel"] = ns.tol_quad
    if ns.tol_root is not None:
        out["root_abs"] = ns.tol_root
    if ns.tol_ode is not None:
        out["ode_rtol"] = out["ode_atol"] = ns.tol_ode
    Tolerances(**out)  # validate
    return out


def _need(ns, name):
    v = getattr(ns, name, None)
    if v is None:
        raise ConfigError(f"--{name.replace('_', '-')} is required")
    return v


def _emit(ns, text: str) -> None:
    if ns.out:
        Path(ns.out).write_text(text)
    else:
        sys.stdout.write(text)


class Inapplicable(Exception):
    """Hypotheses fail; exit status 2."""


# -- subcommands ---------------------------------------------------------------------


def cmd_classify(ns) -> int:
    dist = io.load_distribution(_need(ns, "dist"))
    c = vorticity.classify(dist)
    out = {"label": c.label, "witness": c.witness, "warning": c.warning,
           "s0": stream.s0(dist), "h0": stream.h0(dist), "domain": list(dist.domain),
           "lipschitz_bound": dist.lipschitz_bound}
    _emit(ns, io.dumps_pretty(out))
    return 0


def cmd_curve(ns) -> int:
    dist = io.load_distribution(_need(ns, "dist"))
    n = ns.grid or 64
    if ns.s_min is not None or ns.s_max is not None:
        sz = stream.s0(dist)
        a = ns.s_min if ns.s_min is not None else sz + 1e-3 * (1.0 + sz)
        b = ns.s_max if ns.s_max is not None else sz + 4.0 * (1.0 + sz)
        if not sz < a < b:
            raise ConfigError(f"need s0 = {sz!r} < s-min < s-max")
        ss = list(np.linspace(a, b, n))
    else:
        ss = bernoulli.default_grid(dist, n)
    curve = bernoulli.sample_curve(dist, ss, parallel=ns.parallel or 1)
    _emit(ns, io.curve_csv(curve.samples))
    consts = io.dumps_pretty(curve.constants())
    if ns.constants:
        Path(ns.constants).write_text(consts)
    elif ns.out:
        Path(str(ns.out) + ".constants.json").write_text(consts)
    else:
        sys.stderr.write(consts)
    return 0


def cmd_stream(ns) -> int:
    dist = io.load_distribution(_need(ns, "dist"))
    s = _need(ns, "s")
    n = ns.grid or 201
    if ns.y_min is None or ns.y_max is None:
        try:
            top = stream.depth(dist, s)
        except stream.StreamError:
            top = 1.0
    a = ns.y_min if ns.y_min is not None else 0.0
    b = ns.y_max if ns.y_max is not None else top
    if (ns.method or "cauchy") == "implicit":
        p = stream.profile_implicit(dist, s, np.linspace(a, b, n))
    else:
        p = stream.profile_cauchy(dist, s, (a, b), n)
    _emit(ns, io.dumps_pretty(io.profile_to_json(p)))
    return 0


def cmd_family(ns) -> int:
    dist = io.load_distribution(_need(ns, "dist"))
    side, s = _need(ns, "side"), _need(ns, "s")
    n = ns.grid or 201
    try:
        if side == "minus":
            fam = counter_current.family_minus(dist, s, n)
        elif side == "plus":
            fam = counter_current.family_plus(dist, s, n)
        else:
            raise ConfigError("side must be 'minus' or 'plus'")
    except counter_current.FamilyError as exc:
        raise Inapplicable(str(exc)) from exc
    out = io.profile_to_json(fam.profile)
    out.update(side=fam.side, depth=fam.depth, stationary_point=fam.stationary_point)
    out["s"] = fam.s
    _emit(ns, io.dumps_pretty(out))
    return 0


def cmd_conjugate(ns) -> int:
    dist = io.load_distribution(_need(ns, "dist"))
    r = _need(ns, "r")
    try:
        pair = bernoulli.conjugate_streams(dist, r, extended=bool(ns.extended))
    except bernoulli.CurveError as exc:
        raise Inapplicable(str(exc)) from exc
    out = {"r": pair.r, "s_plus": pair.s_plus, "s_minus": pair.s_minus, "H_plus": pair.H_plus,
           "H_minus": pair.H_minus, "plus_exists": pair.plus_exists, "degenerate": pair.degenerate,
           "plus_branch": pair.plus_branch}
    _emit(ns, io.dumps_pretty(out))
    return 0


def cmd_lemmas(ns) -> int:
    dist = io.load_distribution(_need(ns, "dist"))
    label = vorticity.classify(dist).label
    try:
        if label == "II":
            if dist.domain[0] >= 0.0:
                dist = vorticity.extend_left(dist, width=1.0)
            rep = counter_current.verify_lemma1(dist)
        elif label == "III":
            if dist.domain[1] <= 1.0:
                dist = vorticity.extend_right(dist)
            rep = counter_current.verify_lemma2(dist)
        else:
            raise Inapplicable("lemmas need class II (lemma 1) or class III (lemma 2) vorticity")
    except counter_current.FamilyError as exc:
        raise Inapplicable(str(exc)) from exc
    _emit(ns, io.dumps_pretty(rep.to_json()))
    return 0


def cmd_extend(ns) -> int:
    dist = io.load_distribution(_need(ns, "dist"))
    if vorticity.classify(dist).label != "II":
        raise Inapplicable("the negative branch needs class II vorticity")
    if dist.domain[0] >= 0.0:
        raise Inapplicable("omega must be extended below 0 (add segments left of 0)")
    curve = bernoulli.extend_negative(dist, ns.grid or 32)
    _emit(ns, io.curve_csv(curve.samples))
    consts = io.dumps_pretty(curve.constants() | {"boundary": curve.notes.get("s_prime_boundary")})
    if ns.constants:
        Path(ns.constants).write_text(consts)
    elif ns.out:
        Path(str(ns.out) + ".constants.json").write_text(consts)
    else:
        sys.stderr.write(consts)
    return 0


def cmd_check(ns) -> int:
    dist = io.load_distribution(_need(ns, "dist"))
    field = io.load_field(_need(ns, "field"))
    rep = bounds.check_all(field, dist)
    _emit(ns, io.dumps_pretty(rep.to_json()))
    return 0 if rep.any_applicable else 2


COMMANDS = {
    "classify": cmd_classify,
    "curve": cmd_curve,
    "stream": cmd_stream,
    "family": cmd_family,
    "conjugate": cmd_conjugate,
    "lemmas": cmd_lemmas,
    "extend": cmd_extend,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wavebounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dist")
    common.add_argument("--out")
    common.add_argument("--config")
    common.add_argument("--tol-quad", type=float)
    common.add_argument("--tol-root", type=float)
    common.add_argument("--tol-ode", type=float)
    common.add_argument("--grid", type=int)
    common.add_argument("--parallel", type=int)
    common.add_argument("--seed", type=int)
    extra = {
        "curve": [("--s-min", float), ("--s-max", float), ("--constants", str)],
        "stream": [("--s", float), ("--y-min", float), ("--y-max", float), ("--method", str)],
        "family": [("--s", float), ("--side", str)],
        "conjugate": [("--r", float)],
        "extend": [("--constants", str)],
        "check": [("--field", str)],
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        for flag, typ in extra.get(name, []):
            sp.add_argument(flag, type=typ)
        if name == "conjugate":
            sp.add_argument("--extended", action="store_true", default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ns = _settings(args)
        for k in CONFIG_KEYS:
            if not hasattr(ns, k):
                setattr(ns, k, None)
        with tolerances(**_tol_overrides(ns)):
            return COMMANDS[ns.command](ns)
    except Inapplicable as exc:
        sys.stderr.write(f"inapplicable: {exc}\n")
        return 2
    except (stream.StreamError,) as exc:
        sys.stderr.write(f"inapplicable: {exc}\n")
        return 2
    except (io.FormatError, ConfigError, vorticity.DistributionError, bounds.FieldError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
