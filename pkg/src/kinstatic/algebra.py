"""Finite-dimensional Lie algebras stored as structure-constant tables.

The registry covers the eleven one-dimensional kinematical algebras on the
basis (K, P, E) and the six-dimensional central extension of the static
algebra on the basis (M, F, Y, K, P, E).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionError, NotNilpotentError, ParameterError, UnknownAlgebraError

KINEMATICAL_BASIS = ("K", "P", "E")
STATIC_EXT_BASIS = ("M", "F", "Y", "K", "P", "E")

# Physical dimension of each generator (L = length, T = duration). Metadata only.
STATIC_EXT_DIMENSIONS = {
    "M": "L^-2 T",
    "F": "L^-1 T^-1",
    "Y": "L^-1",
    "K": "L^-1 T",
    "P": "L^-1",
    "E": "T^-1",
}


@dataclass(frozen=True, eq=False)
class BracketTable:
    """Structure constants ``c[i, j, k]``: coefficient of basis k in [e_i, e_j]."""

    name: str
    basis_labels: tuple[str, ...]
    c: np.ndarray
    params: Mapping[str, float] = field(default_factory=dict)
    dimensions: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        n = len(self.basis_labels)
        if c.shape != (n, n, n):
            raise DimensionError(f"structure constants have shape {c.shape}, expected {(n, n, n)}")
        if not np.array_equal(c, -c.transpose(1, 0, 2)):
            raise ValueError(f"{self.name}: structure constants are not antisymmetric")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))
        object.__setattr__(self, "dimensions", MappingProxyType(dict(self.dimensions)))

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a basis element of {self.name}") from None

    def basis(self, label: str) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.index(label)] = 1.0
        return out

    def vector(self, **coeffs: float) -> np.ndarray:
        """Build an algebra vector from label=coefficient pairs, e.g. ``vector(K=2, E=3)``."""
        out = np.zeros(self.dim)
        for label, val in coeffs.items():
            out[self.index(label)] = val
        return out

    def nonzero_brackets(self) -> list[tuple[str, str, dict[str, float]]]:
        out = []
        for i, j in itertools.combinations(range(self.dim), 2):
            coeffs = {self.basis_labels[k]: float(self.c[i, j, k])
                      for k in range(self.dim) if self.c[i, j, k] != 0}
            if coeffs:
                out.append((self.basis_labels[i], self.basis_labels[j], coeffs))
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "basis": list(self.basis_labels),
            "brackets": [{"i": i, "j": j, "coeffs": coeffs}
                         for i, j, coeffs in self.nonzero_brackets()],
            "params": dict(self.params),
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "BracketTable":
        return from_brackets(doc.get("name", "custom"), doc["basis"],
                             {(b["i"], b["j"]): b["coeffs"] for b in doc["brackets"]},
                             params=doc.get("params", {}))


def from_brackets(name: str, basis: Sequence[str],
                  brackets: Mapping[tuple[str, str], Mapping[str, float]],
                  params: Mapping[str, float] | None = None,
                  dimensions: Mapping[str, str] | None = None) -> BracketTable:
    """Build a table from ``{(X, Y): {Z: coeff}}``; the antisymmetric partner is filled in."""
    basis = tuple(basis)
    n = len(basis)
    c = np.zeros((n, n, n))
    for (a, b), coeffs in brackets.items():
        i, j = basis.index(a), basis.index(b)
        if i == j:
            raise ValueError(f"[{a},{a}] must vanish")
        for label, val in coeffs.items():
            k = basis.index(label)
            c[i, j, k] = val
            c[j, i, k] = -val
    return BracketTable(name, basis, c, params or {}, dimensions or {})


def _require(params: Mapping[str, float], key: str) -> float:
    if key not in params:
        raise ParameterError(f"missing parameter {key!r}")
    val = float(params[key])
    if not np.isfinite(val) or val <= 0:
        raise ParameterError(f"parameter {key!r} must be a positive real, got {params[key]!r}")
    return val


def _kinematical(name: str, kp: bool, ke: bool, pe_sign: int, params: Mapping[str, float]):
    """[K,P] = E/c^2 if kp, [K,E] = P if ke, [P,E] = pe_sign * omega^2 K if pe_sign."""
    used = {}
    brackets = {}
    if kp:
        cv = used["c_vel"] = _require(params, "c_vel")
        brackets[("K", "P")] = {"E": 1.0 / cv**2}
    if ke:
        brackets[("K", "E")] = {"P": 1.0}
    if pe_sign:
        w = used["omega"] = _require(params, "omega")
        used["sign"] = pe_sign
        brackets[("P", "E")] = {"K": pe_sign * w**2}
    return from_brackets(name, KINEMATICAL_BASIS, brackets, used)


# name -> (has [K,P], has [K,E], sign of [P,E] or 0)
_KINEMATICAL_SHAPES = {
    "dS+": (True, True, +1),
    "dS-": (True, True, -1),
    "NH+": (False, True, +1),
    "NH-": (False, True, -1),
    "Poincare": (True, True, 0),
    "ParaPoincare+": (True, False, +1),
    "ParaPoincare-": (True, False, -1),
    "Galilei": (False, True, 0),
    "Carroll": (True, False, 0),
    "ParaGalilei": (False, False, +1),
    "Static": (False, False, 0),
}

ALGEBRA_NAMES = tuple(_KINEMATICAL_SHAPES) + ("StaticExt",)


def static_ext() -> BracketTable:
    return from_brackets(
        "StaticExt", STATIC_EXT_BASIS,
        {("K", "P"): {"M": 1.0}, ("K", "E"): {"Y": 1.0}, ("P", "E"): {"F": 1.0}},
        dimensions=STATIC_EXT_DIMENSIONS,
    )


def registry_get(name: str, params: Mapping[str, float] | None = None) -> BracketTable:
    """Return the bracket table of a registered algebra.

    ``params`` supplies ``c_vel`` and ``omega`` for the algebras whose brackets
    use them; unused parameters are ignored.
    """
    params = params or {}
    name = name.replace("−", "-")
    if name == "StaticExt":
        return static_ext()
    if name not in _KINEMATICAL_SHAPES:
        raise UnknownAlgebraError(f"unknown algebra {name!r}; known: {', '.join(ALGEBRA_NAMES)}")
    return _kinematical(name, *_KINEMATICAL_SHAPES[name], params)


def _check_conforms(tbl: BracketTable, *vecs: np.ndarray) -> None:
    for v in vecs:
        if np.shape(v) != (tbl.dim,):
            raise DimensionError(f"vector of shape {np.shape(v)} does not conform to {tbl.name} (dim {tbl.dim})")


def bracket(tbl: BracketTable, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_conforms(tbl, a, b)
    return np.einsum("i,j,ijk->k", a, b, tbl.c)


@dataclass(frozen=True)
class JacobiReport:
    residual: float
    worst: tuple[str, ...]  # labels of the worst triple; empty when the residual is 0
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def check_jacobi(tbl: BracketTable, tol: float = 1e-9) -> JacobiReport:
    n = tbl.dim
    eye = np.eye(n)
    worst = (0.0, (0, 0, 0))
    for i, j, k in itertools.product(range(n), repeat=3):
        ei, ej, ek = eye[i], eye[j], eye[k]
        cyc = (bracket(tbl, ei, bracket(tbl, ej, ek))
               + bracket(tbl, ej, bracket(tbl, ek, ei))
               + bracket(tbl, ek, bracket(tbl, ei, ej)))
        r = float(np.max(np.abs(cyc))) if n else 0.0
        if r > worst[0]:
            worst = (r, (i, j, k))
    labels = tuple(tbl.basis_labels[x] for x in worst[1]) if worst[0] > 0 else ()
    return JacobiReport(worst[0], labels, tol)


def step2_violation(tbl: BracketTable) -> tuple[str, str, str] | None:
    """First basis triple with [[X, Y], Z] != 0, or None if the algebra is step-2 nilpotent."""
    # nested[i, j, k, m] = coefficient of e_m in [[e_i, e_j], e_k]
    nested = np.einsum("ijl,lkm->ijkm", tbl.c, tbl.c)
    hits = np.argwhere(nested != 0)
    if hits.size == 0:
        return None
    i, j, k = hits[0][:3]
    return tbl.basis_labels[i], tbl.basis_labels[j], tbl.basis_labels[k]


def bch2(tbl: BracketTable, a, b) -> np.ndarray:
    """Baker-Campbell-Hausdorff product truncated after the first bracket.

    Exact for algebras nilpotent of step at most 2; anything else is refused.
    """
    bad = step2_violation(tbl)
    if bad is not None:
        x, y, z = bad
        raise NotNilpotentError(f"{tbl.name} is not step-2 nilpotent: [[{x},{y}],{z}] != 0")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a + b + 0.5 * bracket(tbl, a, b)


def ad_matrix(tbl: BracketTable, x) -> np.ndarray:
    """Matrix of ad_x: column j is [x, e_j]."""
    x = np.asarray(x, dtype=float)
    _check_conforms(tbl, x)
    return np.einsum("i,ijk->kj", x, tbl.c)
