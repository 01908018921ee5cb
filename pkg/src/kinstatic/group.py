"""The one-dimensional static group, its 2-cocycles and its central extension.

Group elements are parameter triples ``(v, x, t)`` (boost velocity, space
translation, time translation) multiplied componentwise.  The extended group
adds central parameters ``(xi, zeta, y)`` paired with the generators M, F, Y.
"""

from __future__ import annotations

import itertools
from dataclasses import astuple, dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionError, KinstaticError


@dataclass(frozen=True)
class GroupElement:
    v: float = 0.0
    x: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if not all(np.isfinite(astuple(self))):
            raise KinstaticError(f"non-finite group element {astuple(self)}")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.v, -self.x, -self.t)

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    def to_json(self) -> dict:
        return {"v": self.v, "x": self.x, "t": self.t}

    @classmethod
    def from_json(cls, doc: Mapping) -> "GroupElement":
        return cls(float(doc.get("v", 0.0)), float(doc.get("x", 0.0)), float(doc.get("t", 0.0)))


IDENTITY = GroupElement()


@dataclass(frozen=True)
class ExtGroupElement:
    xi: float = 0.0
    zeta: float = 0.0
    y: float = 0.0
    g: GroupElement = IDENTITY

    @classmethod
    def from_params(cls, xi, zeta, y, v, x, t) -> "ExtGroupElement":
        return cls(float(xi), float(zeta), float(y), GroupElement(float(v), float(x), float(t)))

    def params(self) -> tuple[float, ...]:
        return (self.xi, self.zeta, self.y, self.g.v, self.g.x, self.g.t)

    def as_array(self) -> np.ndarray:
        return np.array(self.params(), dtype=float)

    def __mul__(self, other: "ExtGroupElement") -> "ExtGroupElement":
        return ext_multiply(self, other)

    def to_json(self) -> dict:
        return {"xi": self.xi, "zeta": self.zeta, "y": self.y, **self.g.to_json()}

    @classmethod
    def from_json(cls, doc: Mapping) -> "ExtGroupElement":
        return cls(float(doc.get("xi", 0.0)), float(doc.get("zeta", 0.0)),
                   float(doc.get("y", 0.0)), GroupElement.from_json(doc))


EXT_IDENTITY = ExtGroupElement()


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    return GroupElement(g.v + h.v, g.x + h.x, g.t + h.t)


# A cocycle value is an array of three reals in the (xi, zeta, y) slots.

def c1(g: GroupElement, h: GroupElement) -> np.ndarray:
    """Antisymmetric cocycle produced by the BCH product."""
    return 0.5 * np.array([g.v * h.x - h.v * g.x,
                           g.x * h.t - h.x * g.t,
                           g.v * h.t - h.v * g.t])


def c2(g: GroupElement, h: GroupElement) -> np.ndarray:
    """Symmetric cocycle; the coboundary of :func:`b_map`."""
    return 0.5 * np.array([g.v * h.x + h.v * g.x,
                           g.x * h.t + h.x * g.t,
                           g.v * h.t + h.v * g.t])


def c(g: GroupElement, h: GroupElement) -> np.ndarray:
    return np.array([g.v * h.x, g.x * h.t, g.v * h.t], dtype=float)


def zero_cocycle(g: GroupElement, h: GroupElement) -> np.ndarray:
    return np.zeros(3)


COCYCLES = {"c1": c1, "c2": c2, "c": c, "zero": zero_cocycle}


def cocycle(kind: str, g: GroupElement, h: GroupElement) -> np.ndarray:
    try:
        fn = COCYCLES[kind]
    except KeyError:
        raise KinstaticError(f"unknown cocycle kind {kind!r}; expected one of {sorted(COCYCLES)}") from None
    return fn(g, h)


def cocycle_batch(kind: str, g: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Vectorized cocycle on arrays whose last axis holds (v, x, t); broadcasts like numpy."""
    v, x, t = np.moveaxis(np.asarray(g, dtype=float), -1, 0)
    v2, x2, t2 = np.moveaxis(np.asarray(h, dtype=float), -1, 0)
    if kind == "c":
        out = [v * x2, x * t2, v * t2]
    elif kind == "c1":
        out = [0.5 * (v * x2 - v2 * x), 0.5 * (x * t2 - x2 * t), 0.5 * (v * t2 - v2 * t)]
    elif kind == "c2":
        out = [0.5 * (v * x2 + v2 * x), 0.5 * (x * t2 + x2 * t), 0.5 * (v * t2 + v2 * t)]
    elif kind == "zero":
        out = [np.zeros(np.broadcast(v, v2).shape)] * 3
    else:
        raise KinstaticError(f"unknown cocycle kind {kind!r}; expected one of {sorted(COCYCLES)}")
    return np.stack(np.broadcast_arrays(*out), axis=-1)


def b_map(g: GroupElement) -> np.ndarray:
    return 0.5 * np.array([g.v * g.x, g.x * g.t, g.v * g.t])


def coboundary_of_b(g: GroupElement, h: GroupElement) -> np.ndarray:
    """(delta b)(g, h) = b(gh) - b(g) - b(h)."""
    return b_map(g * h) - b_map(g) - b_map(h)


def verify_cocycle_identity(kind: str, g1: GroupElement, g2: GroupElement, g3: GroupElement) -> np.ndarray:
    """Residual of c(g1,g2) + c(g1 g2, g3) - c(g1, g2 g3) - c(g2, g3)."""
    return (cocycle(kind, g1, g2) + cocycle(kind, g1 * g2, g3)
            - cocycle(kind, g1, g2 * g3) - cocycle(kind, g2, g3))


def integer_grid(lo: int = -2, hi: int = 2) -> list[GroupElement]:
    r = range(lo, hi + 1)
    return [GroupElement(float(v), float(x), float(t)) for v, x, t in itertools.product(r, r, r)]


def random_elements(rng: np.random.Generator, n: int, scale: float = 1.0) -> list[GroupElement]:
    return [GroupElement(*map(float, row)) for row in rng.normal(scale=scale, size=(n, 3))]


@dataclass(frozen=True)
class EquivalenceReport:
    a: str
    b: str
    equivalent: bool
    max_residual: float
    worst_pair: tuple[GroupElement, GroupElement] | None


def coboundary_equivalent(a: str, b: str, samples: Iterable[tuple[GroupElement, GroupElement]] | None = None,
                          tol: float = 1e-9, rng: np.random.Generator | None = None,
                          trials: int = 1000) -> EquivalenceReport:
    """Check whether a(g,h) - b(g,h) = b_map(gh) - b_map(g) - b_map(h).

    The check runs on the supplied pairs, or by default on all pairs from the
    {-1, 0, 1}^3 integer grid plus ``trials`` random pairs.
    """
    if samples is None:
        grid = integer_grid(-1, 1)
        pairs = list(itertools.product(grid, grid))
        rng = rng if rng is not None else np.random.default_rng(0)
        rand = random_elements(rng, 2 * trials)
        pairs += list(zip(rand[::2], rand[1::2]))
    else:
        pairs = list(samples)
    worst, worst_pair = 0.0, None
    for g, h in pairs:
        diff = cocycle(a, g, h) - cocycle(b, g, h) - coboundary_of_b(g, h)
        r = float(np.max(np.abs(diff)))
        if r > worst or worst_pair is None:
            worst, worst_pair = r, (g, h)
    return EquivalenceReport(a, b, worst <= tol, worst, worst_pair)


def ext_multiply(gh: ExtGroupElement, hh: ExtGroupElement) -> ExtGroupElement:
    central = np.array([gh.xi + hh.xi, gh.zeta + hh.zeta, gh.y + hh.y]) + c(gh.g, hh.g)
    return ExtGroupElement(*map(float, central), gh.g * hh.g)


def ext_inverse(gh: ExtGroupElement) -> ExtGroupElement:
    v, x, t = gh.g.v, gh.g.x, gh.g.t
    return ExtGroupElement(-gh.xi + v * x, -gh.zeta + x * t, -gh.y + v * t, gh.g.inverse())


def adjoint(g: GroupElement, delta) -> np.ndarray:
    """Adjoint action on the extended algebra, coordinates (dxi, dzeta, dy, dv, dx, dt)."""
    d = np.asarray(delta, dtype=float)
    if d.shape != (6,):
        raise DimensionError(f"extended algebra vectors have 6 components, got shape {d.shape}")
    dxi, dzeta, dy, dv, dx, dt = d
    v, x, t = g.v, g.x, g.t
    return np.array([dxi + v * dx - x * dv,
                     dzeta + x * dt - t * dx,
                     dy + v * dt - t * dv,
                     dv, dx, dt])
