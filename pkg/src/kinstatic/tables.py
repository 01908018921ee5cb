"""Summary tables of the orbit realizations, motion equations and Hamiltonians.

The reference cells are kept verbatim (LaTeX).  Cells that disagree with
Hamilton's equations are replaced and flagged with an erratum id.  Every
emitted cell can be parsed back and evaluated against the dynamics module,
which is how :func:`check_consistency` audits both the reference and the
corrected tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import (
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .coadjoint import ChartPoint, Orbit, OrbitClass, random_orbit, random_point
from .dynamics import hamiltonian, hamiltonian_vector_field, realize
from .group import GroupElement

COLUMNS = ("realization", "motion", "hamiltonian")

# (class, label used by the reference table, realization, motion equations, hamiltonian)
REFERENCE_MASSIVE = (
    (OrbitClass.ABS, "ABS", r"\psi(p+mv-ft,q-ut-x)", r"f=\frac{dp}{dq}~,~I=m\frac{dq}{dt}", "H=pu-fq"),
    (OrbitClass.ASS, "ASS", r"\psi(p+mv-ft,q-x)", r"f=\frac{dp}{dq}~,~\frac{dq}{dt}=0", "H=-fq"),
    (OrbitClass.BFS_M, "BFS", r"\psi(p+mv,q-ut-x)", r"\frac{dp}{dq}=0~,~I=m\frac{dq}{dt}", "H=pu"),
    (OrbitClass.FSS_M, "FSS", r"\psi(p+mv,q-x)", r"\frac{dp}{dq}=0~,~\frac{dq}{dt}=0", "H=e"),
)
REFERENCE_MASSLESS = (
    (OrbitClass.BSF, "BSF", r"\psi(p-ft,q-\frac{v}{\omega}-x)", r"f=\frac{dp}{dq}~,~\frac{dq}{dt}=0", "H=-fq"),
    (OrbitClass.SSF, "SSF", r"\psi(p-ft,q-x)", r"f=\frac{dp}{dq}~,~\frac{dq}{dt}=0", "H=-fq"),
    (OrbitClass.BFS_0, "BFS", r"\psi(e+Iv,\tau-t)", r"\frac{de}{dt}=0~,~\frac{d\tau}{dt}=0", "H=e"),
)

CORRECTIONS = {
    (OrbitClass.ABS, "motion"): (r"f=\frac{dp}{dt}~,~I=m\frac{dq}{dt}", "E3-b"),
    (OrbitClass.ASS, "motion"): (r"f=\frac{dp}{dt}~,~\frac{dq}{dt}=0", "E3-b"),
    (OrbitClass.BSF, "motion"): (r"f=\frac{dp}{dt}~,~\frac{dq}{dt}=0", "E3-b"),
    (OrbitClass.SSF, "motion"): (r"f=\frac{dp}{dt}~,~\frac{dq}{dt}=0", "E3-b"),
    (OrbitClass.BFS_0, "motion"): (r"\frac{de}{dt}=0~,~\frac{d\tau}{dt}=1", "E3-b"),
}

# Kept verbatim: read as a ratio of rates, dp/dq = 0 holds on BFS_M and is 0/0 on FSS_M.
ADVISORIES = {
    (OrbitClass.BFS_M, "motion"): r"equations of motion read \frac{dp}{dt}=0~,~I=m\frac{dq}{dt}",
    (OrbitClass.FSS_M, "motion"): r"equations of motion read \frac{dp}{dt}=0~,~\frac{dq}{dt}=0",
}

FIXED_POINT_ROW = (OrbitClass.FSS_0, "FSS", r"\psi(k,p,e)", "fixed point", "none")


@dataclass(frozen=True)
class Flag:
    column: str
    erratum: str
    reference: str
    note: str = ""

    @property
    def is_correction(self) -> bool:
        return self.erratum not in ("added", "advisory")


@dataclass(frozen=True)
class TableRow:
    table: str
    system: OrbitClass
    reference_label: str
    realization: str
    motion: str
    hamiltonian: str
    flags: tuple[Flag, ...] = ()
    note: str = ""

    def cell(self, column: str) -> str:
        return getattr(self, column)

    def to_json(self) -> dict:
        return {
            "table": self.table,
            "system": self.system.value,
            "reference_label": self.reference_label,
            "realization": self.realization,
            "motion": self.motion,
            "hamiltonian": self.hamiltonian,
            "errata": [{"column": f.column, "erratum": f.erratum, "reference": f.reference,
                        "note": f.note}
                       for f in self.flags],
            "note": self.note,
        }


def _corrected(table: str, ref) -> TableRow:
    cls, label, *cells = ref
    cells = dict(zip(COLUMNS, cells))
    flags = []
    for col in COLUMNS:
        fix = CORRECTIONS.get((cls, col))
        if fix is not None:
            flags.append(Flag(col, fix[1], cells[col]))
            cells[col] = fix[0]
        note = ADVISORIES.get((cls, col))
        if note is not None:
            flags.append(Flag(col, "advisory", cells[col], note))
    return TableRow(table, cls, label, flags=tuple(flags), **cells)


def summary_tables() -> dict[str, list[TableRow]]:
    massive = [_corrected("massive", ref) for ref in REFERENCE_MASSIVE]
    massless = [_corrected("massless", ref) for ref in REFERENCE_MASSLESS]
    cls, label, *cells = FIXED_POINT_ROW
    massless.append(TableRow("massless", cls, label, *cells, flags=(Flag("system", "added", ""),),
                             note="fixed point; the group acts trivially"))
    return {"massive": massive, "massless": massless}


# --- parsing cells back into sympy -------------------------------------------

_NAMES = "p q m v f t u x e I k a U omega tau k0".split()
_SYMS = {n: sp.Symbol(n) for n in _NAMES}
_TRANSFORMS = standard_transformations + (implicit_multiplication_application,)
_FRAC = re.compile(r"\\frac\{([^{}]*)\}\{([^{}]*)\}")
_DERIV = re.compile(r"\\frac\{d(\\?\w+)\}\{d(\\?\w+)\}")


def _latex_to_py(expr: str) -> str:
    expr = _FRAC.sub(r"((\1)/(\2))", expr)
    return expr.replace(r"\omega", "omega").replace(r"\tau", "tau").replace("~", "")


def parse_expression(expr: str) -> sp.Expr:
    return parse_expr(_latex_to_py(expr), local_dict=dict(_SYMS), transformations=_TRANSFORMS)


def parse_hamiltonian(cell: str) -> sp.Expr:
    lhs, rhs = cell.split("=", 1)
    if lhs.strip() != "H":
        raise ValueError(f"not a Hamiltonian cell: {cell!r}")
    return parse_expression(rhs)


def parse_realization(cell: str) -> tuple[sp.Expr, ...]:
    m = re.fullmatch(r"\\psi\((.*)\)", cell.strip())
    if not m:
        raise ValueError(f"not a realization cell: {cell!r}")
    parts, depth, cur = [], 0, ""
    for ch in m.group(1):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return tuple(parse_expression(p) for p in parts)


def parse_motion(cell: str) -> list[tuple[sp.Expr, dict[str, tuple[str, str]]]]:
    """Each equation as ``lhs - rhs`` plus a map from derivative symbols to (numerator, denominator)."""
    out = []
    for eq in cell.split("~,~"):
        derivs = {}

        def sub(match):
            num, den = (s.lstrip("\\") for s in match.groups())
            name = f"d{num}_d{den}"
            derivs[name] = (num, den)
            return f" {name} "

        text = _DERIV.sub(sub, eq)
        lhs, rhs = text.split("=")
        local = dict(_SYMS) | {n: sp.Symbol(n) for n in derivs}
        expr = (parse_expr(_latex_to_py(lhs), local_dict=local, transformations=_TRANSFORMS)
                - parse_expr(_latex_to_py(rhs), local_dict=local, transformations=_TRANSFORMS))
        out.append((expr, derivs))
    return out


# --- consistency against the dynamics module ---------------------------------

def _values(orbit: Orbit, z: ChartPoint, g: GroupElement | None = None) -> dict[sp.Symbol, float]:
    vals = dict(zip("mfI", orbit.central()))
    vals.update(orbit.invariants)
    vals.update(orbit.derived)
    vals.update(zip(z.kind.coord_names, z.coords))
    if g is not None:
        vals.update(v=g.v, x=g.x, t=g.t)
    return {_SYMS[k]: val for k, val in vals.items() if k in _SYMS}


def _rate(velocity: dict[str, float], num: str, den: str) -> float | None:
    """d(num)/d(den) along the motion; None when undefined."""
    if num not in velocity:
        return None
    if den == "t":
        return velocity[num]
    if den not in velocity or velocity[den] == 0.0:
        return None
    return velocity[num] / velocity[den]


def check_cell(cls: OrbitClass, column: str, cell: str, rng: np.random.Generator,
               samples: int = 20, tol: float = 1e-9) -> bool:
    """True iff ``cell`` agrees with the dynamics module on random orbits and points of ``cls``."""
    for _ in range(samples):
        orbit = random_orbit(rng, cls)
        z = random_point(rng, orbit)
        g = GroupElement(*map(float, rng.normal(size=3)))
        vals = _values(orbit, z, g)
        if column == "hamiltonian":
            got = float(parse_hamiltonian(cell).subs(vals))
            if abs(got - hamiltonian(orbit)(z)) > tol:
                return False
        elif column == "realization":
            got = [float(e.subs(vals)) for e in parse_realization(cell)]
            want = realize(orbit).pullback(g, z).coords
            if len(got) != len(want) or max(abs(a - b) for a, b in zip(got, want)) > tol:
                return False
        elif column == "motion":
            velocity = dict(zip(z.kind.coord_names, hamiltonian_vector_field(orbit)))
            for expr, derivs in parse_motion(cell):
                dvals = {}
                for name, (num, den) in derivs.items():
                    rate = _rate(velocity, num, den)
                    if rate is None:
                        return False
                    dvals[sp.Symbol(name)] = rate
                if abs(float(expr.subs(vals).subs(dvals))) > tol:
                    return False
        else:
            raise ValueError(f"unknown column {column!r}")
    return True


@dataclass
class ConsistencyReport:
    """Which reference and emitted cells fail the dynamics check.

    Corrections are justified when every corrected reference cell fails and
    the other failures are confined to advisory cells; the emitted tables pass
    when only advisory cells fail.
    """

    failing_reference: list[tuple[OrbitClass, str]] = field(default_factory=list)
    failing_emitted: list[tuple[OrbitClass, str]] = field(default_factory=list)

    @property
    def corrections_justified(self) -> bool:
        failing = set(self.failing_reference)
        return set(CORRECTIONS) <= failing <= set(CORRECTIONS) | set(ADVISORIES)

    @property
    def emitted_ok(self) -> bool:
        return set(self.failing_emitted) <= set(ADVISORIES)

    @property
    def passed(self) -> bool:
        return self.emitted_ok and self.corrections_justified


def check_consistency(rng: np.random.Generator | None = None) -> ConsistencyReport:
    rng = rng if rng is not None else np.random.default_rng(0)
    report = ConsistencyReport()
    for ref in REFERENCE_MASSIVE + REFERENCE_MASSLESS:
        cls, _, *cells = ref
        for col, cell in zip(COLUMNS, cells):
            if not check_cell(cls, col, cell, rng):
                report.failing_reference.append((cls, col))
    for rows in summary_tables().values():
        for row in rows:
            if row.system is OrbitClass.FSS_0:
                continue
            for col in COLUMNS:
                if not check_cell(row.system, col, row.cell(col), rng):
                    report.failing_emitted.append((row.system, col))
    return report
