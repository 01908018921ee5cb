import numpy as np
import pytest

from kinstatic.coadjoint import (
    POINT,
    ChartKind,
    ChartPoint,
    Orbit,
    OrbitClass,
    coadjoint_act,
    from_chart,
    random_orbit,
    random_point,
)
from kinstatic.dynamics import (
    AffineObservable,
    act_point,
    action_kernel,
    coordinate,
    flow,
    hamiltonian,
    hamiltonian_vector_field,
    momentum_map,
    momentum_observables,
    normalize_constant,
    poisson,
    realize,
    trajectory,
    vector_field,
)
from kinstatic.errors import ChartError, KinstaticError
from kinstatic.group import IDENTITY, GroupElement

G = GroupElement
PQ = ChartPoint.pq
CHART_CLASSES = [c for c in OrbitClass if c is not OrbitClass.FSS_0]
ABS = Orbit.of("ABS", m=1, f=2, I=3, U=-1)


def test_realize_examples():
    r = realize(ABS)
    assert r.pullback(G(1, 0, 0), PQ(0, 0)) == PQ(1, 0)
    assert r.pullback(G(0, 1, 0), PQ(0, 0)) == PQ(0, -1)
    assert r.pullback(G(0, 0, 1), PQ(0, 0)) == PQ(-2, -3)
    assert r.pullback(G(0.5, 2, -1), PQ(1, 1)) == PQ(1 + 0.5 + 2, 1 + 3 - 2)
    r = realize(Orbit.of("FSS_M", m=1, e=7))
    assert r.pullback(G(1.5, 2, 9), PQ(1, 1)) == PQ(2.5, -1)
    r = realize(Orbit.of("BFS_0", I=2, p=0))
    assert r.pullback(G(1.5, 2, 9), ChartPoint.etau(1, 1)) == ChartPoint.etau(4, -8)
    assert realize(Orbit.of("FSS_0", k=1, p=2, e=3)).coeffs.shape == (0, 3)


def test_realization_json():
    doc = realize(ABS).to_json()
    assert doc["class"] == "ABS"
    assert doc["pullback"]["p"] == {"coord": "p", "dv": 1.0, "dx": 0.0, "dt": -2.0, "const": 0.0}
    assert doc["pullback"]["q"] == {"coord": "q", "dv": 0.0, "dx": -1.0, "dt": -3.0, "const": 0.0}


def test_act_point_examples():
    assert act_point(ABS, G(0, 0, 1), PQ(0, 0)) == PQ(2, 3)
    assert act_point(ABS, IDENTITY, PQ(1.5, -2)) == PQ(1.5, -2)
    bsf = Orbit.of("BSF", f=2, I=1, k0=0)
    assert act_point(bsf, G(2, 0, 0), PQ(4, 3)) == PQ(4, 4)
    with pytest.raises(ChartError):
        act_point(ABS, IDENTITY, ChartPoint.etau(0, 0))


@pytest.mark.parametrize("cls", CHART_CLASSES)
def test_act_point_is_action(cls, rng):
    for _ in range(100):
        orbit = random_orbit(rng, cls)
        z = random_point(rng, orbit)
        g, h = G(*rng.normal(size=3)), G(*rng.normal(size=3))
        lhs = act_point(orbit, g * h, z).as_array()
        rhs = act_point(orbit, g, act_point(orbit, h, z)).as_array()
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_momentum_map_examples():
    assert np.array_equal(momentum_map(ABS, PQ(5, 4)), [4, 5, 7])
    assert np.array_equal(momentum_map(ABS, PQ(0, 0)), [0, 0, 0])
    z = act_point(ABS, G(0, 0, 1), PQ(0, 0))
    assert z == PQ(2, 3)
    want = coadjoint_act(G(0, 0, 1), from_chart(normalize_constant(ABS), PQ(0, 0))).as_array()[3:]
    assert np.array_equal(momentum_map(ABS, z), want)
    assert np.array_equal(want, [3, 2, 0])
    with pytest.raises(ChartError):
        momentum_map(Orbit.of("FSS_0", k=0, p=0, e=0), POINT)


@pytest.mark.parametrize("cls", CHART_CLASSES)
def test_momentum_map_matches_embedding(cls, rng):
    for _ in range(100):
        orbit = random_orbit(rng, cls)
        z = random_point(rng, orbit)
        emb = from_chart(normalize_constant(orbit), z).as_array()[3:]
        assert np.allclose(momentum_map(orbit, z), emb, atol=1e-12)


@pytest.mark.parametrize("cls", CHART_CLASSES)
def test_momentum_map_equivariance(cls, rng):
    for _ in range(200):
        orbit = random_orbit(rng, cls)
        z = random_point(rng, orbit)
        g = G(*rng.normal(size=3))
        lhs = momentum_map(orbit, act_point(orbit, g, z))
        rhs = coadjoint_act(g, from_chart(normalize_constant(orbit), z)).as_array()[3:]
        assert np.allclose(lhs, rhs, atol=1e-9)


def test_hamiltonian_examples():
    h = hamiltonian(ABS)
    assert (h.alpha, h.beta, h.gamma) == (3, -2, 0)
    h = hamiltonian(Orbit.of("FSS_M", m=1, e=7))
    assert h.is_constant() and h(PQ(3, 4)) == 7
    h = hamiltonian(Orbit.of("BSF", f=2, I=1, k0=5))
    assert (h.alpha, h.beta, h.gamma) == (0, -2, 0)
    h = hamiltonian(Orbit.of("BFS_0", I=2, p=1))
    assert (h.alpha, h.beta, h.gamma) == (1, 0, 0)
    h = hamiltonian(Orbit.of("ASS", m=2, f=3, U=1))
    assert (h.alpha, h.beta, h.gamma) == (0, -3, 0)
    h = hamiltonian(Orbit.of("BFS_M", m=2, I=3, U=1))
    assert (h.alpha, h.beta, h.gamma) == (1.5, 0, 0)
    with pytest.raises(ChartError):
        hamiltonian(Orbit.of("FSS_0", k=0, p=0, e=0))


def test_vector_field_examples():
    assert np.array_equal(vector_field(ABS, "E"), [-2, -3])
    assert np.array_equal(vector_field(ABS, "K"), [1, 0])
    assert np.array_equal(vector_field(ABS, "P"), [0, -1])
    assert np.array_equal(vector_field(Orbit.of("FSS_M", m=1, e=0), "K"), [1, 0])
    assert np.array_equal(vector_field(Orbit.of("BFS_0", I=2, p=0), "E"), [0, -1])
    with pytest.raises(KinstaticError):
        vector_field(ABS, "M")
    with pytest.raises(ChartError):
        vector_field(Orbit.of("FSS_0", k=0, p=0, e=0), "K")


def test_poisson_examples():
    obs = momentum_observables(ABS)
    assert poisson(obs["K"], obs["P"]).gamma == 1
    assert poisson(obs["K"], obs["E"]).gamma == 3
    assert poisson(obs["P"], obs["E"]).gamma == 2
    f = AffineObservable(ChartKind.PQ, 1.5, -2, 4)
    assert poisson(f, f).gamma == 0
    with pytest.raises(ChartError):
        poisson(f, AffineObservable(ChartKind.ETAU, 1, 0, 0))


def test_poisson_sign_convention():
    p, q = coordinate(ChartKind.PQ, 0), coordinate(ChartKind.PQ, 1)
    assert poisson(q, p).gamma == 1 and poisson(p, q).gamma == -1


@pytest.mark.parametrize("cls", CHART_CLASSES)
def test_central_charge_table(cls, rng):
    # dyadic charges keep every product exact
    for _ in range(20):
        m, f, I = (float(rng.choice([-2, -1, -0.5, 0.5, 1, 2])) for _ in range(3))
        inv = {"m": m, "f": f, "I": I, "U": 0.25, "e": 0.25, "k0": 0.25, "k": 0.25, "p": 0.25}
        names = {OrbitClass.ABS: "mfIU", OrbitClass.ASS: "mfU", OrbitClass.BFS_M: "mIU",
                 OrbitClass.FSS_M: "me", OrbitClass.BSF: ["f", "I", "k0"], OrbitClass.SSF: "fk",
                 OrbitClass.BFS_0: "Ip"}[cls]
        orbit = Orbit.of(cls, **{n: inv[n] for n in names})
        obs = momentum_observables(orbit)
        got = tuple(poisson(obs[a], obs[b]).gamma for a, b in (("K", "P"), ("K", "E"), ("P", "E")))
        mm, ff, II = orbit.central()
        assert got == (mm, II, ff)


@pytest.mark.parametrize("cls", CHART_CLASSES)
@pytest.mark.parametrize("gen", ["K", "P", "E"])
def test_generator_consistency(cls, gen, rng):
    # D(X) c = {mu(X), c} on each coordinate observable
    orbit = random_orbit(rng, cls)
    mu = momentum_observables(orbit)[gen]
    field = vector_field(orbit, gen)
    for i in range(2):
        assert poisson(mu, coordinate(orbit.chart_kind, i)).gamma == pytest.approx(field[i], abs=1e-12)


@pytest.mark.parametrize("cls", CHART_CLASSES)
def test_hamiltonian_field_is_time_translation(cls, rng):
    orbit = random_orbit(rng, cls)
    z = random_point(rng, orbit)
    step = act_point(orbit, G(0, 0, 1), z).as_array() - z.as_array()
    assert np.allclose(hamiltonian_vector_field(orbit), step, atol=1e-12)


def test_flow_examples():
    assert flow(ABS, PQ(0, 0), 2) == PQ(4, 6)
    assert flow(ABS, PQ(1, 2), 0) == PQ(1, 2)
    assert flow(Orbit.of("BFS_0", I=2, p=0), ChartPoint.etau(5, 1), 3) == ChartPoint.etau(5, 4)


def test_trajectory_rows():
    rows = trajectory(ABS, PQ(0, 0), 2, steps=4)
    assert [t for t, _ in rows] == [0, 0.5, 1, 1.5, 2]
    assert rows[-1][1] == PQ(4, 6)
    assert trajectory(ABS, PQ(0, 0), 0, steps=4) == [(0.0, PQ(0, 0))]


def test_flow_errors():
    with pytest.raises(KinstaticError):
        flow(ABS, PQ(0, 0), 1, steps=0)
    with pytest.raises(KinstaticError):
        flow(ABS, PQ(0, 0), 1, method="leapfrog")
    with pytest.raises(ChartError):
        flow(Orbit.of("FSS_0", k=0, p=0, e=0), POINT, 1)


@pytest.mark.parametrize("cls", CHART_CLASSES)
def test_energy_conserved(cls, rng):
    orbit = random_orbit(rng, cls)
    z = random_point(rng, orbit)
    H = hamiltonian(orbit)
    for method in ("exact", "euler", "rk4"):
        energies = [H(p) for _, p in trajectory(orbit, z, 3.0, steps=16, method=method)]
        assert max(energies) - min(energies) <= 1e-12 * (1 + abs(energies[0]))


@pytest.mark.parametrize("cls", CHART_CLASSES)
@pytest.mark.parametrize("method", ["euler", "rk4"])
def test_numeric_matches_exact(cls, method, rng):
    for _ in range(20):
        orbit = random_orbit(rng, cls)
        z = random_point(rng, orbit)
        t = float(rng.uniform(-3, 3))
        exact = trajectory(orbit, z, t, steps=8)
        num = trajectory(orbit, z, t, steps=8, method=method)
        for (t1, a), (t2, b) in zip(exact, num):
            assert t1 == t2
            assert np.max(np.abs(a.as_array() - b.as_array())) <= 1e-12


def test_kernel_examples():
    k = action_kernel(ABS)
    assert k.dim == 1
    assert np.allclose(k.basis[0], np.array([2, -3, 1]) / np.sqrt(14))
    k = action_kernel(Orbit.of("FSS_M", m=1, e=0))
    assert k.dim == 1 and np.allclose(k.basis[0], [0, 0, 1])
    k = action_kernel(Orbit.of("FSS_0", k=0, p=0, e=0))
    assert k.dim == 3


@pytest.mark.parametrize("cls", CHART_CLASSES)
def test_kernel_acts_trivially(cls, rng):
    orbit = random_orbit(rng, cls)
    k = action_kernel(orbit)
    assert k.dim == 1
    assert np.isclose(np.linalg.norm(k.basis[0]), 1)
    z = random_point(rng, orbit)
    g = G(*(2.5 * k.basis[0]))
    assert np.allclose(act_point(orbit, g, z).as_array(), z.as_array(), atol=1e-12)


def test_abs_kernel_direction(rng):
    # (a, -u, 1) up to scale
    for _ in range(20):
        orbit = random_orbit(rng, OrbitClass.ABS)
        want = np.array([orbit.derived["a"], -orbit.derived["u"], 1.0])
        assert np.allclose(action_kernel(orbit).basis[0], want / np.linalg.norm(want))
