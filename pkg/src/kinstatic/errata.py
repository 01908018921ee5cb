"""Registry of corrections applied to the reference formulas.

Each entry names what the reference text prints, what this package
implements instead, and which check demonstrates the correction.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Erratum:
    id: str
    printed: str
    implemented: str
    evidence: str

    def to_json(self) -> dict:
        return asdict(self)


ERRATA = (
    Erratum(
        "E1",
        "middle components of 2*c1 and 2*c2 printed as xt'-t'x and xt'+t'x",
        "xt'-x't and xt'+x't",
        "cocycle suite: c2 equals the coboundary of b and the BCH central part equals c1 "
        "only with the x't reading",
    ),
    Erratum(
        "E2",
        "internal energy of ASS printed as U=e-fq",
        "U=e+fq (the ABS invariant at I=0)",
        "coadjoint suite: e-fq shifts by -2fx under g=(0,x,0); e+fq is invariant",
    ),
    Erratum(
        "E3-a",
        "vector field D(E) printed with the term -u d/q",
        "-u d/dq",
        "dynamics suite: derivative of the ABS pullback in t gives (-f, -u)",
    ),
    Erratum(
        "E3-b",
        "summary tables print f=dp/dq for ABS, ASS, BSF and SSF, and dtau/dt=0 for BFS_0",
        "f=dp/dt and dtau/dt=1; the dp/dq=0 cells of BFS_M and FSS_M are kept with an advisory",
        "tables suite: Hamilton's equations of each row's Hamiltonian",
    ),
    Erratum(
        "E4",
        "acronyms BFS and FSS each name one massive and one massless class",
        "tags BFS_M, FSS_M (massive) and BFS_0, FSS_0 (massless)",
        "classify: the zero pattern of (m, f, I) separates them",
    ),
    Erratum(
        "E5",
        "Poisson bracket sign convention not stated",
        "{F,G} = dF/dc2 dG/dc1 - dF/dc1 dG/dc2",
        "dynamics suite: momentum brackets equal (+m, +I, +f)",
    ),
    Erratum(
        "E6",
        "Hamiltonian defined up to an additive constant",
        "momentum map and Hamiltonian normalize U and k0 to zero; invariants reported separately",
        "dynamics suite: momentum-map equivariance is exact",
    ),
)

BY_ID = {e.id: e for e in ERRATA}
