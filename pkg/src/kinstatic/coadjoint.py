"""Dual of the extended static algebra: coadjoint action, Kirillov form, orbits.

A dual vector ``(m, f, I, k, p, e)`` pairs with an algebra vector
``(dxi, dzeta, dy, dv, dx, dt)`` by the plain dot product.  The central
components (m, f, I) are fixed by the coadjoint action and their zero
pattern selects one of eight orbit classes.
"""

from __future__ import annotations

import enum
from dataclasses import astuple, dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .algebra import bracket, static_ext
from .errors import ChartError, DimensionError, KinstaticError
from .group import GroupElement

DEFAULT_CLASSIFY_TOL = 1e-12


@dataclass(frozen=True)
class DualVector:
    m: float = 0.0
    f: float = 0.0
    I: float = 0.0
    k: float = 0.0
    p: float = 0.0
    e: float = 0.0

    def __post_init__(self):
        if not all(np.isfinite(astuple(self))):
            raise KinstaticError(f"non-finite dual vector {astuple(self)}")

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, arr) -> "DualVector":
        return cls(*map(float, arr))

    def to_json(self) -> dict:
        return dict(zip("m f I k p e".split(), astuple(self)))

    @classmethod
    def from_json(cls, doc: Mapping) -> "DualVector":
        unknown = set(doc) - set("m f I k p e".split())
        if unknown:
            raise KinstaticError(f"unknown dual-vector fields: {sorted(unknown)}")
        return cls(**{key: float(val) for key, val in doc.items()})


class OrbitClass(enum.Enum):
    ABS = "ABS"      # accelerated boosted massive
    ASS = "ASS"      # accelerated static massive
    BFS_M = "BFS_M"  # boosted free massive
    FSS_M = "FSS_M"  # free static massive
    BSF = "BSF"      # boosted massless under a force
    SSF = "SSF"      # static massless under a force
    BFS_0 = "BFS_0"  # boosted free massless
    FSS_0 = "FSS_0"  # free static massless (a point)


class ChartKind(enum.Enum):
    PQ = "PQ"
    ETAU = "ETAU"
    POINT = "POINT"

    @property
    def coord_names(self) -> tuple[str, ...]:
        return {"PQ": ("p", "q"), "ETAU": ("e", "tau"), "POINT": ()}[self.value]


# (m != 0, f != 0, I != 0) -> class
_PATTERN = {
    (True, True, True): OrbitClass.ABS,
    (True, True, False): OrbitClass.ASS,
    (True, False, True): OrbitClass.BFS_M,
    (True, False, False): OrbitClass.FSS_M,
    (False, True, True): OrbitClass.BSF,
    (False, True, False): OrbitClass.SSF,
    (False, False, True): OrbitClass.BFS_0,
    (False, False, False): OrbitClass.FSS_0,
}
PATTERN_OF = {cls: pat for pat, cls in _PATTERN.items()}

INVARIANT_NAMES = {
    OrbitClass.ABS: ("m", "f", "I", "U"),
    OrbitClass.ASS: ("m", "f", "U"),
    OrbitClass.BFS_M: ("m", "I", "U"),
    OrbitClass.FSS_M: ("m", "e"),
    OrbitClass.BSF: ("f", "I", "k0"),
    OrbitClass.SSF: ("f", "k"),
    OrbitClass.BFS_0: ("I", "p"),
    OrbitClass.FSS_0: ("k", "p", "e"),
}

MASSIVE = (OrbitClass.ABS, OrbitClass.ASS, OrbitClass.BFS_M, OrbitClass.FSS_M)
MASSLESS = (OrbitClass.BSF, OrbitClass.SSF, OrbitClass.BFS_0, OrbitClass.FSS_0)


def chart_kind_of(cls: OrbitClass) -> ChartKind:
    if cls is OrbitClass.BFS_0:
        return ChartKind.ETAU
    if cls is OrbitClass.FSS_0:
        return ChartKind.POINT
    return ChartKind.PQ


@dataclass(frozen=True)
class Orbit:
    """A classified coadjoint orbit: class tag plus its invariant record."""

    cls: OrbitClass
    invariants: Mapping[str, float]
    derived: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "invariants", MappingProxyType(dict(self.invariants)))
        object.__setattr__(self, "derived", MappingProxyType(dict(self.derived)))

    @classmethod
    def of(cls, orbit_class: OrbitClass | str, **invariants: float) -> "Orbit":
        """Build an orbit from its invariants, e.g. ``Orbit.of("ABS", m=1, f=2, I=3, U=-1)``."""
        orbit_class = OrbitClass(orbit_class)
        expected = INVARIANT_NAMES[orbit_class]
        if set(invariants) != set(expected):
            raise KinstaticError(f"{orbit_class.value} takes invariants {expected}, got {sorted(invariants)}")
        inv = {name: float(invariants[name]) for name in expected}
        for name, nonzero in zip("mfI", PATTERN_OF[orbit_class]):
            if nonzero and inv[name] == 0.0:
                raise KinstaticError(f"{orbit_class.value} requires {name} != 0")
        return cls(orbit_class, inv, _derived(inv))

    @property
    def chart_kind(self) -> ChartKind:
        return chart_kind_of(self.cls)

    @property
    def dim(self) -> int:
        return len(self.chart_kind.coord_names)

    def central(self) -> tuple[float, float, float]:
        """(m, f, I) with zeros filled in for the components the class forces to vanish."""
        return tuple(self.invariants.get(name, 0.0) if nz else 0.0
                     for name, nz in zip("mfI", PATTERN_OF[self.cls]))

    def to_json(self) -> dict:
        return {
            "class": self.cls.value,
            "invariants": dict(self.invariants),
            "derived": dict(self.derived),
            "chart_kind": self.chart_kind.value,
            "orbit_dim": self.dim,
        }


def _derived(inv: Mapping[str, float]) -> dict[str, float]:
    out = {}
    m = inv.get("m")
    if m:
        if "I" in inv:
            out["u"] = inv["I"] / m
        if "f" in inv:
            out["a"] = inv["f"] / m
    if "m" not in inv and "f" in inv and "I" in inv:
        out["omega"] = inv["f"] / inv["I"]
    return out


@dataclass(frozen=True)
class ChartPoint:
    kind: ChartKind
    coords: tuple[float, ...] = ()

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if len(coords) != len(self.kind.coord_names):
            raise ChartError(f"{self.kind.value} chart points have {len(self.kind.coord_names)} coordinates")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def pq(cls, p: float, q: float) -> "ChartPoint":
        return cls(ChartKind.PQ, (p, q))

    @classmethod
    def etau(cls, e: float, tau: float) -> "ChartPoint":
        return cls(ChartKind.ETAU, (e, tau))

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, **dict(zip(self.kind.coord_names, self.coords))}


POINT = ChartPoint(ChartKind.POINT)

_EXT = static_ext()


def pair(mu: DualVector, delta) -> float:
    d = np.asarray(delta, dtype=float)
    if d.shape != (6,):
        raise DimensionError(f"extended algebra vectors have 6 components, got shape {d.shape}")
    return float(mu.as_array() @ d)


def coadjoint_act(g: GroupElement, mu: DualVector) -> DualVector:
    m, f, I, k, p, e = astuple(mu)
    v, x, t = g.v, g.x, g.t
    return DualVector(m, f, I, k + m * x + I * t, p - m * v + f * t, e - f * x - I * v)


def kirillov(mu: DualVector) -> np.ndarray:
    """Matrix of <mu, [X_i, X_j]> over the generators (K, P, E)."""
    gens = [_EXT.basis(label) for label in ("K", "P", "E")]
    return np.array([[pair(mu, bracket(_EXT, a, b)) for b in gens] for a in gens])


def _nonzero(val: float, tol: float) -> bool:
    return abs(val) > tol


def classify(mu: DualVector, tol: float = DEFAULT_CLASSIFY_TOL) -> Orbit:
    if tol < 0:
        raise KinstaticError("classification tolerance must be >= 0")
    m, f, I, k, p, e = astuple(mu)
    cls = _PATTERN[(_nonzero(m, tol), _nonzero(f, tol), _nonzero(I, tol))]
    if cls is OrbitClass.ABS:
        q = k / m
        inv = {"m": m, "f": f, "I": I, "U": e - p * (I / m) + f * q}
    elif cls is OrbitClass.ASS:
        inv = {"m": m, "f": f, "U": e + f * k / m}
    elif cls is OrbitClass.BFS_M:
        inv = {"m": m, "I": I, "U": e - p * (I / m)}
    elif cls is OrbitClass.FSS_M:
        inv = {"m": m, "e": e}
    elif cls is OrbitClass.BSF:
        inv = {"f": f, "I": I, "k0": k - p / (f / I)}
    elif cls is OrbitClass.SSF:
        inv = {"f": f, "k": k}
    elif cls is OrbitClass.BFS_0:
        inv = {"I": I, "p": p}
    else:
        inv = {"k": k, "p": p, "e": e}
    return Orbit(cls, inv, _derived(inv))


def to_chart(orbit: Orbit, mu: DualVector, tol: float = DEFAULT_CLASSIFY_TOL,
             check_invariants: float | None = 1e-9) -> ChartPoint:
    """Canonical chart coordinates of ``mu`` on ``orbit``.

    ``check_invariants`` is a relative tolerance for confirming that ``mu``
    lies on ``orbit``; pass None to skip that check.
    """
    found = classify(mu, tol)
    if found.cls is not orbit.cls:
        raise ChartError(f"dual vector lies on a {found.cls.value} orbit, not {orbit.cls.value}")
    if check_invariants is not None:
        for name, val in orbit.invariants.items():
            if abs(found.invariants[name] - val) > check_invariants * (1 + abs(val)):
                raise ChartError(f"invariant {name}={found.invariants[name]!r} differs from orbit value {val!r}")
    cls = orbit.cls
    if cls in MASSIVE:
        return ChartPoint.pq(mu.p, mu.k / mu.m)
    if cls in (OrbitClass.BSF, OrbitClass.SSF):
        return ChartPoint.pq(mu.p, -mu.e / mu.f)
    if cls is OrbitClass.BFS_0:
        return ChartPoint.etau(mu.e, mu.k / mu.I)
    return POINT


def from_chart(orbit: Orbit, z: ChartPoint) -> DualVector:
    if z.kind is not orbit.chart_kind:
        raise ChartError(f"{orbit.cls.value} uses {orbit.chart_kind.value} charts, got {z.kind.value}")
    inv = orbit.invariants
    cls = orbit.cls
    if cls is OrbitClass.FSS_0:
        return DualVector(0.0, 0.0, 0.0, inv["k"], inv["p"], inv["e"])
    c1, c2 = z.coords
    if cls is OrbitClass.BFS_0:
        e, tau = c1, c2
        return DualVector(0.0, 0.0, inv["I"], inv["I"] * tau, inv["p"], e)
    p, q = c1, c2
    if cls is OrbitClass.ABS:
        m, f, I = inv["m"], inv["f"], inv["I"]
        return DualVector(m, f, I, m * q, p, inv["U"] + p * (I / m) - f * q)
    if cls is OrbitClass.ASS:
        m, f = inv["m"], inv["f"]
        return DualVector(m, f, 0.0, m * q, p, inv["U"] - f * q)
    if cls is OrbitClass.BFS_M:
        m, I = inv["m"], inv["I"]
        return DualVector(m, 0.0, I, m * q, p, inv["U"] + p * (I / m))
    if cls is OrbitClass.FSS_M:
        m = inv["m"]
        return DualVector(m, 0.0, 0.0, m * q, p, inv["e"])
    if cls is OrbitClass.BSF:
        f, I = inv["f"], inv["I"]
        return DualVector(0.0, f, I, inv["k0"] + p / (f / I), p, -f * q)
    f = inv["f"]  # SSF
    return DualVector(0.0, f, 0.0, inv["k"], p, -f * q)


def connecting_element(mu1: DualVector, mu2: DualVector, tol: float = 1e-9) -> GroupElement:
    """A group element g with coadjoint_act(g, mu1) == mu2.

    Both vectors must share (m, f, I); the (k, p, e) shift is linear in
    (v, x, t) with the Kirillov matrix as coefficient matrix, so a
    least-squares solve either hits the target or the vectors lie on
    different orbits.
    """
    a, b = mu1.as_array(), mu2.as_array()
    if np.max(np.abs(a[:3] - b[:3])) > tol:
        raise KinstaticError("dual vectors have different central components")
    kmat = kirillov(mu1)
    sol, *_ = np.linalg.lstsq(kmat, b[3:] - a[3:], rcond=None)
    g = GroupElement(*map(float, sol))
    miss = np.max(np.abs(coadjoint_act(g, mu1).as_array() - b))
    if miss > tol * (1 + np.max(np.abs(b))):
        raise KinstaticError(f"dual vectors lie on different orbits (residual {miss:.3g})")
    return g


def random_orbit(rng: np.random.Generator, cls: OrbitClass, low: float = 0.5, high: float = 2.0) -> Orbit:
    """Random orbit of ``cls``: nonzero central charges have magnitude in [low, high]."""
    inv = {}
    for name in INVARIANT_NAMES[cls]:
        if name in ("m", "f", "I"):
            inv[name] = float(rng.choice([-1.0, 1.0]) * rng.uniform(low, high))
        else:
            inv[name] = float(rng.normal())
    return Orbit.of(cls, **inv)


def random_point(rng: np.random.Generator, orbit: Orbit) -> ChartPoint:
    return ChartPoint(orbit.chart_kind, tuple(map(float, rng.normal(size=orbit.dim))))
