"""Numerical tolerances shared by the solvers.

The active set lives in a context variable so that callers (the CLI in
particular) can tighten or loosen everything at once without threading
keyword arguments through every call::

    with tolerances(quad_rel=1e-10):
        h = depth(dist, 2.0)
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    quad_rel: float = 1e-12
    root_abs: float = 1e-14
    ode_rtol: float = 1e-12
    ode_atol: float = 1e-12
    sign: float = 1e-12

    def __post_init__(self):
        for name in ("quad_rel", "root_abs", "ode_rtol", "ode_atol", "sign"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")


_current: contextvars.ContextVar[Tolerances] = contextvars.ContextVar("wavebounds_tol", default=Tolerances())


def current() -> Tolerances:
    return _current.get()


@contextlib.contextmanager
def tolerances(**overrides):
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
