"""Symplectic realizations of the static group on its coadjoint orbits.

Every orbit of positive dimension carries a two-coordinate chart, ``(p, q)``
with symplectic form dp^dq or ``(e, tau)`` with de^dtau, and the group acts by
translations that depend linearly on ``(v, x, t)``.  The realization stores the
*pullback* map of each element, so that ``(D_g psi)(z) = psi(pullback_g(z))``;
the point action is its inverse, ``act_point(g, z) = pullback_{g^-1}(z)``.

Poisson brackets use ``{F, G} = dF/dc2 dG/dc1 - dF/dc1 dG/dc2`` for chart
coordinates ``(c1, c2)``; with this sign the momentum components close on the
central charges ``(m, I, f)`` and observables evolve as ``dF/dt = {F, H}``.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np
import scipy.linalg

from .coadjoint import ChartKind, ChartPoint, Orbit, OrbitClass
from .errors import ChartError, KinstaticError
from .group import GroupElement

GENERATORS = ("K", "P", "E")


@dataclass(frozen=True)
class AffineObservable:
    """alpha * c1 + beta * c2 + gamma on a two-coordinate chart."""

    kind: ChartKind
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __call__(self, z: ChartPoint) -> float:
        if z.kind is not self.kind:
            raise ChartError(f"observable lives on {self.kind.value} charts, got {z.kind.value}")
        c1, c2 = z.coords
        return self.alpha * c1 + self.beta * c2 + self.gamma

    @property
    def gradient(self) -> np.ndarray:
        return np.array([self.alpha, self.beta])

    def is_constant(self) -> bool:
        return self.alpha == 0.0 and self.beta == 0.0


def coordinate(kind: ChartKind, index: int) -> AffineObservable:
    """The observable returning chart coordinate ``index`` (0 or 1)."""
    return AffineObservable(kind, float(index == 0), float(index == 1), 0.0)


def poisson(F: AffineObservable, G: AffineObservable) -> AffineObservable:
    if F.kind is not G.kind:
        raise ChartError("Poisson bracket of observables on different charts")
    val = F.beta * G.alpha - F.alpha * G.beta + 0.0  # no signed zeros in reports
    return AffineObservable(F.kind, 0.0, 0.0, val)


@dataclass(frozen=True, eq=False)
class Realization:
    """Pullback maps of an orbit: ``pullback_g(z) = z + coeffs @ (v, x, t)``."""

    orbit: Orbit
    coeffs: np.ndarray  # shape (chart dim, 3)

    @property
    def kind(self) -> ChartKind:
        return self.orbit.chart_kind

    def pullback(self, g: GroupElement, z: ChartPoint) -> ChartPoint:
        _check_kind(self.orbit, z)
        return ChartPoint(z.kind, tuple(z.as_array() + self.coeffs @ g.as_array()))

    def to_json(self) -> dict:
        names = self.kind.coord_names
        return {
            "class": self.orbit.cls.value,
            "pullback": {
                name: {"coord": name, "dv": float(row[0]), "dx": float(row[1]),
                       "dt": float(row[2]), "const": 0.0}
                for name, row in zip(names, self.coeffs)
            },
        }


def _check_kind(orbit: Orbit, z: ChartPoint) -> None:
    if z.kind is not orbit.chart_kind:
        raise ChartError(f"{orbit.cls.value} uses {orbit.chart_kind.value} charts, got {z.kind.value}")


def _require_chart(orbit: Orbit) -> None:
    if orbit.chart_kind is ChartKind.POINT:
        raise ChartError(f"{orbit.cls.value} is a single point; no chart dynamics")


def realize(orbit: Orbit) -> Realization:
    m, f, I = orbit.central()
    u = I / m if m else 0.0
    cls = orbit.cls
    if cls in (OrbitClass.ABS, OrbitClass.ASS, OrbitClass.BFS_M, OrbitClass.FSS_M):
        # (p + m v - f t, q - x - u t)
        rows = [[m, 0.0, -f], [0.0, -1.0, -u]]
    elif cls is OrbitClass.BSF:
        # (p - f t, q - v/omega - x)
        rows = [[0.0, 0.0, -f], [-1.0 / orbit.derived["omega"], -1.0, 0.0]]
    elif cls is OrbitClass.SSF:
        rows = [[0.0, 0.0, -f], [0.0, -1.0, 0.0]]
    elif cls is OrbitClass.BFS_0:
        # (e + I v, tau - t)
        rows = [[I, 0.0, 0.0], [0.0, 0.0, -1.0]]
    else:
        rows = np.zeros((0, 3))
    coeffs = np.array(rows, dtype=float).reshape(-1, 3)
    coeffs.setflags(write=False)
    return Realization(orbit, coeffs)


def act_point(orbit: Orbit, g: GroupElement, z: ChartPoint) -> ChartPoint:
    return realize(orbit).pullback(g.inverse(), z)


def vector_field(orbit: Orbit, generator: str) -> np.ndarray:
    """Constant vector field D(X) realizing generator X on the chart."""
    _require_chart(orbit)
    if generator not in GENERATORS:
        raise KinstaticError(f"generator must be one of {GENERATORS}, got {generator!r}")
    return realize(orbit).coeffs[:, GENERATORS.index(generator)].copy()


def normalize_constant(orbit: Orbit) -> Orbit:
    """Same orbit data with the additive constant (U or k0) set to zero."""
    inv = dict(orbit.invariants)
    for name in ("U", "k0"):
        if name in inv:
            inv[name] = 0.0
    return Orbit(orbit.cls, inv, orbit.derived)


def momentum_observables(orbit: Orbit) -> dict[str, AffineObservable]:
    """Momentum components mu(K), mu(P), mu(E) with the orbit's additive constant set to zero."""
    _require_chart(orbit)
    m, f, I = orbit.central()
    inv = orbit.invariants
    kind = orbit.chart_kind
    cls = orbit.cls
    if cls is OrbitClass.BFS_0:
        return {"K": AffineObservable(kind, 0.0, I, 0.0),
                "P": AffineObservable(kind, 0.0, 0.0, inv["p"]),
                "E": AffineObservable(kind, 1.0, 0.0, 0.0)}
    if m:
        mu_k = AffineObservable(kind, 0.0, m, 0.0)
        energy = AffineObservable(kind, I / m, -f, inv["e"] if cls is OrbitClass.FSS_M else 0.0)
    elif cls is OrbitClass.BSF:
        mu_k = AffineObservable(kind, 1.0 / orbit.derived["omega"], 0.0, 0.0)
        energy = AffineObservable(kind, 0.0, -f, 0.0)
    else:  # SSF
        mu_k = AffineObservable(kind, 0.0, 0.0, inv["k"])
        energy = AffineObservable(kind, 0.0, -f, 0.0)
    return {"K": mu_k, "P": AffineObservable(kind, 1.0, 0.0, 0.0), "E": energy}


def momentum_map(orbit: Orbit, z: ChartPoint) -> np.ndarray:
    """(k, p, e) = (mu(K), mu(P), mu(E)) evaluated at z."""
    _check_kind(orbit, z)
    obs = momentum_observables(orbit)
    return np.array([obs[g](z) for g in GENERATORS])


def hamiltonian(orbit: Orbit) -> AffineObservable:
    return momentum_observables(orbit)["E"]


def hamiltonian_vector_field(orbit: Orbit, H: AffineObservable | None = None) -> np.ndarray:
    """Velocity (dc1/dt, dc2/dt) = ({c1, H}, {c2, H})."""
    H = H if H is not None else hamiltonian(orbit)
    kind = orbit.chart_kind
    return np.array([poisson(coordinate(kind, i), H).gamma for i in range(2)])


METHODS = ("exact", "euler", "rk4")


def _step(method: str, rhs, z: np.ndarray, h: float) -> np.ndarray:
    if method == "euler":
        return z + h * rhs(z)
    k1 = rhs(z)
    k2 = rhs(z + 0.5 * h * k1)
    k3 = rhs(z + 0.5 * h * k2)
    k4 = rhs(z + h * k3)
    return z + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def trajectory(orbit: Orbit, z0: ChartPoint, t: float, steps: int = 1,
               method: str = "exact") -> list[tuple[float, ChartPoint]]:
    """``(time, point)`` pairs at ``steps + 1`` uniform times from 0 to t (a single row if t == 0)."""
    _require_chart(orbit)
    _check_kind(orbit, z0)
    if method not in METHODS:
        raise KinstaticError(f"method must be one of {METHODS}, got {method!r}")
    if steps < 1:
        raise KinstaticError("steps must be >= 1")
    rows = [(0.0, z0)]
    if t == 0:
        return rows
    h = t / steps
    velocity = hamiltonian_vector_field(orbit)

    def rhs(z):
        # affine Hamiltonian: the field does not depend on z
        return velocity

    z = z0.as_array()
    for i in range(1, steps + 1):
        ti = t if i == steps else i * h
        if method == "exact":
            rows.append((ti, act_point(orbit, GroupElement(0.0, 0.0, ti), z0)))
        else:
            z = _step(method, rhs, z, h)
            rows.append((ti, ChartPoint(z0.kind, tuple(z))))
    return rows


def flow(orbit: Orbit, z0: ChartPoint, t: float, steps: int = 1, method: str = "exact") -> ChartPoint:
    return trajectory(orbit, z0, t, steps, method)[-1][1]


@dataclass(frozen=True, eq=False)
class KernelReport:
    dim: int
    basis: np.ndarray  # rows span the kernel in (v, x, t) space

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [[float(c) for c in row] for row in self.basis]}


def _orient(vec: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    vec = np.where(np.abs(vec) < tol, 0.0, vec)
    nz = np.flatnonzero(vec)
    return -vec if nz.size and vec[nz[-1]] < 0 else vec


def action_kernel(orbit: Orbit) -> KernelReport:
    """Group elements acting trivially on the orbit's chart (a linear subspace of (v, x, t))."""
    coeffs = realize(orbit).coeffs
    if coeffs.shape[0] == 0:
        return KernelReport(3, np.eye(3))
    basis = scipy.linalg.null_space(coeffs).T
    basis = np.array([_orient(row) for row in basis]).reshape(-1, 3)
    return KernelReport(basis.shape[0], basis)
