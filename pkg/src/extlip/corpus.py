"""Named instances shipped with the package, with their expected values.

Each fixture points at a file under ``fixtures/`` and lists the quantities
the pipeline must reproduce, as closed intervals ``[lo, hi]``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import io
from .dual import adjoint_norm, lambda_norm
from .extbound import e_constant, gamma_embed, reciprocal_space_check
from .metric import RealFunctionSample, VectorMap, induced_space, restrict_to_ball, validate_space
from .moduli import lip_at, lip_const, norm_Lx, omega, sampled_lip_quantities
from .transfer import transfer_compose, vanishing_check

EXACT = 1e-9


@dataclass(frozen=True)
class Expect:
    quantity: str
    lo: float
    hi: float
    provenance: str

    @classmethod
    def value(cls, quantity, v, provenance, tol=EXACT):
        return cls(quantity, v - tol, v + tol, provenance)

    def holds(self, actual):
        return actual is not None and self.lo <= actual <= self.hi


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    file: str
    claim: str
    expected: tuple = field(default_factory=tuple)
    notes: tuple = ()


def corrupted_phi(x, h):
    """Deliberately wrong base-point transfer (distance factor squared).

    Used to show that the isometry checks can fail.
    """
    x = h.src.index(x)
    d = h.src.dist[:, x]
    return h.with_values((d**2)[:, None] * h.values + h.values[x])


MUTATIONS = {"phi": corrupted_phi}

POWER_NS = tuple(range(1, 11))
XSINX_RADIUS = 8 * math.pi


def _power_expectations():
    out = []
    for n in POWER_NS:
        out.append(Expect.value(f"e_const[n={n}]", 1.0, "published", 0.0))
        out.append(Expect(f"lip_est[n={n}]", n * (1 - 1e-3), float(n), "published"))
    return tuple(out)


def corpus():
    return [
        Fixture("m3", "space", "m3.space.json", "three-point space {0,a,b} with d(a,b)=1.5",
                (Expect.value("violations", 0, "derived", 0),)),
        Fixture("m3-bad", "space", "m3-bad.space.json", "d(a,b)=5 breaks the triangle inequality through 0",
                (Expect.value("triangle_violations", 1, "trivial", 0),)),
        Fixture("swap", "map", "swap.map.json", "swap a<->b on m3",
                (Expect.value("lip_const", 2.0, "derived"), Expect.value("lip_at[0]", 2.0, "derived"),
                 Expect.value("e_constant", 2.0, "derived"), Expect.value("omega[t=1]", 2.0, "derived"),
                 Expect.value("adjoint_norm", 2.0, "derived"))),
        Fixture("identity", "map", "identity.map.json", "identity on m3",
                (Expect.value("lip_const", 1.0, "trivial"), Expect.value("e_constant", 1.0, "trivial"))),
        Fixture("constant", "map", "constant.map.json", "everything to the base point",
                (Expect.value("lip_const", 0.0, "trivial"), Expect.value("e_constant", 0.0, "trivial"))),
        Fixture("m3-lx", "map", "m3-lx.map.json", "f(0)=3, f(a)=4, f(b)=-1",
                (Expect.value("norm_Lx[0]", 3.0, "derived"),)),
        Fixture("m3-transfer", "map", "m3-transfer.map.json", "transfer from base a to base b",
                (Expect.value("composed[0]", 10 / 3, "derived"),)),
        Fixture("m3-lambda", "map", "m3-lambda.map.json", "T(a)=(1,0), T(b)=(0,2)",
                (Expect.value("lambda[two]", 1.0, "derived"), Expect.value("lambda[sup]", 1.0, "derived"))),
        Fixture("r2-support", "map", "r2-support.map.json",
                "7 times the indicator of a point equidistant from x1 and x2",
                (Expect.value("is_fixed_point", 1, "derived", 0), Expect.value("vanishing_holds", 1, "derived", 0))),
        Fixture("r2-indicator", "map", "r2-indicator.map.json", "indicator of x2",
                (Expect.value("is_fixed_point", 0, "derived", 0), Expect.value("implication_holds", 1, "derived", 0))),
        Fixture("line-ball", "space", "line-ball.space.json", "{0, +-0.5, +-1, +-2} in R",
                (Expect.value("gamma[2]-f[1]", 0.0, "derived", 0), Expect.value("e_gap", 0.0, "published"))),
        Fixture("xn-power", "sample", "xn-power.sample.json",
                "x^n on [0,1]: e-norm 1 but Lipschitz constant n", _power_expectations()),
        Fixture("xsinx", "sample", "xsinx.sample.json", "x sin x on [-8pi, 8pi] has e-norm 1",
                (Expect("e_const", 1 - 1e-3, 1.0, "published"),),
                ("f(2n pi + 1/n) - f(2n pi) tends to 2 pi, so x sin x is not uniformly continuous",)),
        Fixture("square", "sample", "square.sample.json", "x^2 on [-10, 10]: e-constant equals the radius",
                (Expect.value("e_const", 10.0, "derived"),)),
        Fixture("reciprocal", "reciprocal", "reciprocal.json", "sequences on {1/n} u {0}",
                (Expect.value("K[inv_n]", 1.0, "trivial"), Expect.value("K[alt_inv_n2]", 1.0, "derived"),
                 Expect.value("K[inv_sqrt_n]", 10.0, "derived"))),
        Fixture("corrupted-phi", "mutation", "corrupted-phi.json",
                "broken base-point transfer; isometry checks must catch it"),
    ]


def get(name):
    for fx in corpus():
        if fx.name == name:
            return fx
    raise KeyError(name)


def path_of(fx):
    return io.fixtures_dir() / fx.file


RECIPROCAL_SEQUENCES = {
    "inv_n": lambda n: 1.0 / n,
    "alt_inv_n2": lambda n: (-1.0) ** n / n**2,
    "inv_sqrt_n": lambda n: 1.0 / np.sqrt(n),
}


def reciprocal_values(name, N):
    return RECIPROCAL_SEQUENCES[name](np.arange(1, N + 1, dtype=np.float64))


def xsinx_oscillation(ns=(1, 10, 100, 1000)):
    """``f(2n pi + 1/n) - f(2n pi)`` for ``f(x) = x sin x``."""
    f = lambda x: x * np.sin(x)
    return {n: float(f(2 * n * np.pi + 1.0 / n) - f(2 * n * np.pi)) for n in ns}


def xsinx_lip_growth(radii=(2 * math.pi, 4 * math.pi, 8 * math.pi, 16 * math.pi), step=1e-4):
    """Sampled Lipschitz lower bounds of ``x sin x`` on growing symmetric ranges."""
    out = {}
    for r in radii:
        half = int(round(r / step))
        grid = r * (np.arange(-half, half + 1) / half)
        out[r] = sampled_lip_quantities(RealFunctionSample(grid, grid * np.sin(grid))).lip_est
    return out


def measure(fx):
    """Compute the quantities a fixture declares; returns ``{quantity: value}``."""
    path = path_of(fx)
    if fx.name in ("m3", "m3-bad"):
        v = validate_space(io.load_space(path))
        return {"violations": len(v), "triangle_violations": sum(x.axiom == "triangle" for x in v)}
    if fx.kind == "map":
        f, src_raw = io.load_map(path)
        if fx.name in ("swap", "identity", "constant"):
            out = {"lip_const": lip_const(f).value, "e_constant": e_constant(f).value,
                   "lip_at[0]": lip_at(f, 0).value, "omega[t=1]": omega(f, 1.0).value}
            out["adjoint_norm"] = adjoint_norm(f).closed_form
            return out
        if fx.name == "m3-lx":
            return {"norm_Lx[0]": norm_Lx(f, "0")}
        if fx.name == "m3-transfer":
            return {"composed[0]": float(transfer_compose("a", "b", f).composed.values[0, 0])}
        if fx.name == "m3-lambda":
            return {f"lambda[{q}]": lambda_norm(f, q).lambda_opnorm for q in ("two", "sup")}
        res = vanishing_check(f, src_raw, "x1", "x2")
        return {"is_fixed_point": int(res.is_fixed_point), "vanishing_holds": int(res.vanishing_holds),
                "implication_holds": int(res.passed)}
    if fx.name == "line-ball":
        space = io.load_space(path)
        ball, keep = restrict_to_ball(space)
        f = VectorMap(induced_space(ball), ball.coords[:, 0] ** 3 + ball.coords[:, 0])
        g = gamma_embed(f, space)
        lab = list(ball.labels)
        return {"gamma[2]-f[1]": float(g.values[g.src.index("2"), 0] - f.values[lab.index("1"), 0]),
                "e_gap": abs(e_constant(g).value - e_constant(f).value)}
    if fx.name == "xn-power":
        out = {}
        for n in POWER_NS:
            q = sampled_lip_quantities(io.load_sample(path, n=n))
            out[f"e_const[n={n}]"] = q.e_const
            out[f"lip_est[n={n}]"] = q.lip_est
        return out
    if fx.kind == "sample":
        return {"e_const": sampled_lip_quantities(io.load_sample(path)).e_const}
    if fx.kind == "reciprocal":
        spec = io.read_json(path)["sequences"]
        return {f"K[{name}]": reciprocal_space_check(reciprocal_values(name, int(p["N"]))).K
                for name, p in spec.items()}
    return {}


def evaluate(fx):
    """``[(expect, actual, ok)]`` for every expectation of the fixture."""
    got = measure(fx)
    return [(e, got.get(e.quantity), e.holds(got.get(e.quantity))) for e in fx.expected]
