"""Randomized property suite over every invariant of the library.

Each property draws its instances from its own generator, seeded by the
suite seed and the property name, so running a subset of properties gives
the same instances as a full run.
"""

import math
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import generate as gen
from . import tolerance
from .corpus import MUTATIONS
from .dual import (
    VERTEX_CAP,
    Functional,
    adjoint,
    adjoint_norm,
    dual_distance,
    dual_distance_oracle,
    lambda_norm,
    p_continuity_check,
    second_adjoint_eval,
)
from .extbound import de_distance, e_constant, eta_restrict, gamma_embed
from .metric import CoordSpace, PointMap, compose, induced_space, restrict_to_ball, validate_space, vector_norm
from .moduli import lip_at, lip_const, norm_Lx, omega, omega_at, sup_omega_ratio
from .report import AnalysisReport
from .sequences import (
    SequencePoint,
    dilate,
    dilation_certificates,
    dp_distance,
    dp_norm,
    sampled_de_hat,
    singletons,
    tx_operator_norm,
)
from .transfer import phi, phi_inv, transfer_compose

P_VALUES = (1.0, 1.5, 2.0, 3.0, math.inf)
DILATION_PS = (1.0, 2.0, math.inf)
DILATION_PAIRS = 50


@dataclass
class SuiteConfig:
    seed: int = 0
    counts: dict = field(default_factory=dict)
    max_points: int = 10
    max_seq_len: int = 6
    max_k: int = 4
    tol: float = None
    vertex_cap: int = VERTEX_CAP
    mutation: str = None
    properties: tuple = None

    def __post_init__(self):
        self.tol = tolerance.resolve(self.tol)
        if not 2 <= self.max_points <= 10:
            raise ValueError("max_points must lie in [2, 10]")
        if not 1 <= self.max_seq_len <= 6:
            raise ValueError("max_seq_len must lie in [1, 6]")
        if not 1 <= self.max_k <= 4:
            raise ValueError("max_k must lie in [1, 4]")
        if self.max_points - 1 > self.vertex_cap:
            raise ValueError("max_points exceeds the vertex cap")
        if self.mutation is not None and self.mutation not in MUTATIONS:
            raise ValueError(f"unknown mutation {self.mutation!r}; known: {sorted(MUTATIONS)}")
        unknown = set(self.counts) - set(PROPERTIES)
        if self.properties:
            unknown |= set(self.properties) - set(PROPERTIES)
        if unknown:
            raise ValueError(f"unknown properties {sorted(unknown)}")

    def count(self, name):
        return int(self.counts.get(name, PROPERTIES[name][0]))

    def phi(self):
        return MUTATIONS[self.mutation] if self.mutation else phi


def _space(rng, cfg, lo=2, hi=None):
    return gen.random_space(rng, lo, hi or cfg.max_points)


def _any_map(rng, cfg, space, base_preserving=True):
    if rng.random() < 0.5:
        dst = _space(rng, cfg)
        return gen.random_point_map(rng, space, dst, base_preserving)
    tag = gen.NORM_TAGS[int(rng.integers(3))]
    return gen.random_vector_map(rng, space, int(rng.integers(1, cfg.max_k + 1)), tag, base_preserving)


def _t_values(rng, space):
    realized = np.unique(space.dist[space.dist > 0])
    t = list(rng.choice(realized, size=min(3, realized.size), replace=False)) if realized.size else []
    t += list(rng.uniform(0.01, 1.2 * (realized.max() if realized.size else 1.0), size=3))
    return sorted(float(v) for v in t)


# -- metric core -------------------------------------------------------------

def prop_induced_valid(rng, cfg):
    c = CoordSpace(
        np.vstack([np.zeros(3), rng.normal(size=(int(rng.integers(0, cfg.max_points)), 3))]),
        gen.NORM_TAGS[int(rng.integers(3))],
    )
    v = validate_space(induced_space(c), cfg.tol)
    return [("", not v, len(v), 0, [str(x) for x in v[:3]])]


def prop_ball_idempotent(rng, cfg):
    c = CoordSpace(
        np.vstack([np.zeros(2), rng.normal(size=(int(rng.integers(1, cfg.max_points)), 2))]),
        gen.NORM_TAGS[int(rng.integers(3))],
    )
    once, _ = restrict_to_ball(c, cfg.tol)
    twice, _ = restrict_to_ball(once, cfg.tol)
    ok = np.array_equal(once.coords, twice.coords)
    return [("", ok, once.n, twice.n, None)]


def prop_graph_valid(rng, cfg):
    s = gen.graph_space(rng, int(rng.integers(1, cfg.max_points + 1)))
    v = validate_space(s, cfg.tol)
    return [("", not v, len(v), 0, [str(x) for x in v[:3]])]


# -- moduli ------------------------------------------------------------------

def prop_omega_monotone(rng, cfg):
    space = _space(rng, cfg)
    f = _any_map(rng, cfg, space, base_preserving=False)
    ts = _t_values(rng, space)
    x0 = int(rng.integers(space.n))
    w = [omega(f, t).value for t in ts]
    wa = [omega_at(f, x0, t).value for t in ts]
    ok = all(a <= b for a, b in zip(w, w[1:])) and all(a <= b for a, b in zip(wa, wa[1:]))
    return [("", ok, w, wa, {"t": ts, "x0": x0})]


def prop_omega_dominates(rng, cfg):
    space = _space(rng, cfg)
    f = _any_map(rng, cfg, space, base_preserving=False)
    worst = (0.0, None)
    ok = True
    for t in _t_values(rng, space):
        w = omega(f, t).value
        for x0 in range(space.n):
            gap = omega_at(f, x0, t).value - w
            if gap > 0:
                ok = False
            if gap >= worst[0]:
                worst = (gap, (t, x0))
    return [("", ok, worst[0], 0.0, worst[1])]


def prop_sup_omega_equals_lip_at(rng, cfg):
    space = _space(rng, cfg)
    f = _any_map(rng, cfg, space, base_preserving=False)
    x0 = int(rng.integers(space.n))
    a = sup_omega_ratio(f, x0).value
    b = lip_at(f, x0).value
    return [("", a == b, a, b, {"x0": x0})]


def prop_lip_bounds(rng, cfg):
    space = _space(rng, cfg)
    f = gen.random_vector_map(rng, space, int(rng.integers(1, cfg.max_k + 1)),
                              gen.NORM_TAGS[int(rng.integers(3))], base_zero=False)
    L = lip_const(f).value
    pointwise = [lip_at(f, x).value for x in range(space.n)]
    lhs = max(norm_Lx(f, x) for x in range(space.n))
    rhs = max(L, float(np.max(vector_norm(f.values, f.norm_tag))))
    ok = max(pointwise) <= L and abs(lhs - rhs) <= cfg.tol
    return [("", ok, lhs, rhs, {"lip_const": L, "max_lip_at": max(pointwise)})]


# -- transfer ----------------------------------------------------------------

def _phi_instance(rng, cfg):
    space = _space(rng, cfg, 1, min(cfg.max_points, 8))
    k = int(rng.integers(1, min(cfg.max_k, 3) + 1))
    h = gen.random_vector_map(rng, space, k, gen.NORM_TAGS[int(rng.integers(3))], base_zero=False)
    return space, h, int(rng.integers(space.n))


def prop_phi_isometry(rng, cfg):
    space, h, x = _phi_instance(rng, cfg)
    lhs = norm_Lx(cfg.phi()(x, h), x)
    rhs = float(np.max(vector_norm(h.values, h.norm_tag)))
    return [("", abs(lhs - rhs) <= cfg.tol, lhs, rhs, {"x": x, "n": space.n})]


def prop_phi_roundtrip(rng, cfg):
    space, h, x = _phi_instance(rng, cfg)
    fwd = phi_inv(x, cfg.phi()(x, h))
    back = cfg.phi()(x, phi_inv(x, h))
    e1 = float(np.max(np.abs(fwd.values - h.values)))
    e2 = float(np.max(np.abs(back.values - h.values)))
    return [("", max(e1, e2) <= cfg.tol, max(e1, e2), 0.0, {"x": x})]


def prop_phi_linearity(rng, cfg):
    space, h, x = _phi_instance(rng, cfg)
    g = h.with_values(rng.normal(size=h.values.shape))
    a, b = rng.normal(size=2)
    lhs = cfg.phi()(x, a * h + b * g).values
    rhs = (a * cfg.phi()(x, h) + b * cfg.phi()(x, g)).values
    gap = float(np.max(np.abs(lhs - rhs)))
    return [("", gap <= cfg.tol * max(1.0, float(np.max(np.abs(rhs)))), gap, 0.0, {"x": x})]


def prop_transfer_selfcheck(rng, cfg):
    space = _space(rng, cfg)
    f = gen.random_vector_map(rng, space, int(rng.integers(1, cfg.max_k + 1)), base_zero=False)
    x1, x2 = (int(i) for i in rng.choice(space.n, size=2, replace=False))
    res = transfer_compose(x1, x2, f)
    scale = max(1.0, float(np.max(np.abs(res.closed_form.values))))
    return [("", res.max_gap <= cfg.tol * scale, res.max_gap, 0.0, {"x1": x1, "x2": x2})]


# -- extensively bounded maps ------------------------------------------------

def _map_triple(rng, cfg):
    src, dst = _space(rng, cfg), _space(rng, cfg)
    maps = [gen.random_point_map(rng, src, dst) for _ in range(3)]
    if rng.random() < 0.25:
        maps[1] = PointMap(src, dst, maps[0].table.copy())
    return maps


def prop_de_metric(rng, cfg):
    T, S, U = _map_triple(rng, cfg)
    ts, st = de_distance(T, S), de_distance(S, T)
    tu, us = de_distance(T, U), de_distance(U, S)
    same = np.array_equal(T.table, S.table)
    tri = ts <= tu + us + cfg.tol
    ok = ts == st and tri and ((ts == 0.0) == same) and de_distance(T, T) == 0.0
    return [("", ok, ts, tu + us, {"symmetric": ts == st, "equal_tables": bool(same)})]


def prop_norm_laws(rng, cfg):
    space = _space(rng, cfg)
    k = int(rng.integers(1, cfg.max_k + 1))
    tag = gen.NORM_TAGS[int(rng.integers(3))]
    f = gen.random_vector_map(rng, space, k, tag)
    g = gen.random_vector_map(rng, space, k, tag)
    alpha = float(rng.normal() * 3)
    ef, eg = e_constant(f).value, e_constant(g).value
    scaled = e_constant(alpha * f).value
    homog = abs(scaled - abs(alpha) * ef) <= cfg.tol * max(1.0, scaled)
    sub = e_constant(f + g).value <= ef + eg + cfg.tol
    return [("", homog and sub, scaled, abs(alpha) * ef, {"subadditive": sub})]


def prop_e_le_lip(rng, cfg):
    space = _space(rng, cfg)
    f = _any_map(rng, cfg, space)
    e, L = e_constant(f).value, lip_const(f).value
    return [("", e <= L + cfg.tol, e, L, None)]


def prop_identity_e_one(rng, cfg):
    space = _space(rng, cfg)
    e = e_constant(PointMap.identity(space)).value
    return [("", e == 1.0, e, 1.0, None)]


def prop_gamma_isometry(rng, cfg):
    tag = gen.NORM_TAGS[int(rng.integers(3))]
    space = gen.retraction_closed_sample(rng, int(rng.integers(1, 4)), tag,
                                         int(rng.integers(1, 4)), cfg.max_points)
    ball, _ = restrict_to_ball(space, cfg.tol)
    f = gen.random_vector_map(rng, induced_space(ball), int(rng.integers(1, cfg.max_k + 1)), tag)
    g = gamma_embed(f, space, cfg.tol)
    back = eta_restrict(g, space, cfg.tol)
    ef, eg = e_constant(f).value, e_constant(g).value
    ok = abs(ef - eg) <= cfg.tol and np.array_equal(back.values, f.values)
    return [("", ok, eg, ef, {"eta_gamma_identity": bool(np.array_equal(back.values, f.values))})]


# -- dual --------------------------------------------------------------------

def prop_evaluation_functionals(rng, cfg):
    space = _space(rng, cfg)
    r = space.radii
    norm_ok = all(dual_distance(space, x, 0) == r[x] for x in range(space.n))
    worst_gap = math.inf
    oracle_gap = 0.0
    for x in range(space.n):
        for y in range(x + 1, space.n):
            dd = dual_distance(space, x, y)
            worst_gap = min(worst_gap, dd - space.dist[x, y])
            oracle_gap = max(oracle_gap, abs(dd - dual_distance_oracle(space, x, y, cfg.vertex_cap).value))
    ok = norm_ok and worst_gap >= -cfg.tol and oracle_gap <= cfg.tol
    return [("", ok, worst_gap, 0.0, {"norm_equal": norm_ok, "oracle_gap": oracle_gap})]


def prop_unit_functional(rng, cfg):
    space = _space(rng, cfg)
    e = Functional.distance_to_base(space).e_norm()
    return [("", e == 1.0, e, 1.0, None)]


def prop_adjoint_norm(rng, cfg):
    src, dst = _space(rng, cfg), _space(rng, cfg)
    T = gen.random_point_map(rng, src, dst)
    res = adjoint_norm(T, cfg.vertex_cap)
    e = e_constant(T).value
    ok = res.oracle is not None and abs(res.closed_form - res.oracle) <= cfg.tol and abs(res.closed_form - e) <= cfg.tol
    return [("", ok, res.oracle, res.closed_form, {"e_constant": e})]


def prop_functoriality(rng, cfg):
    a, b, c = (_space(rng, cfg) for _ in range(3))
    T = gen.random_point_map(rng, a, b)
    S = gen.random_point_map(rng, b, c)
    lhs = adjoint(compose(S, T)).matrix
    rhs = (adjoint(T) @ adjoint(S)).matrix
    return [("", np.array_equal(lhs, rhs), lhs.tolist(), rhs.tolist(), None)]


def prop_adjoint_linearity(rng, cfg):
    src, dst = _space(rng, cfg), _space(rng, cfg)
    A = adjoint(gen.random_point_map(rng, src, dst))
    f = Functional(dst, rng.normal(size=dst.n - 1))
    g = Functional(dst, rng.normal(size=dst.n - 1))
    a, b = rng.normal(size=2)
    lhs = A.apply(Functional(dst, a * f.v + b * g.v)).v
    rhs = a * A.apply(f).v + b * A.apply(g).v
    gap = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
    return [("", gap <= cfg.tol, gap, 0.0, None)]


def prop_second_adjoint(rng, cfg):
    src, dst = _space(rng, cfg), _space(rng, cfg)
    T = gen.random_point_map(rng, src, dst)
    f = Functional(dst, rng.normal(size=dst.n - 1))
    x = int(rng.integers(src.n))
    lhs, rhs = second_adjoint_eval(T, x, f)
    return [("", lhs == rhs, lhs, rhs, {"x": x})]


def prop_lambda_isometry(rng, cfg):
    space = _space(rng, cfg)
    T = gen.random_vector_map(rng, space, int(rng.integers(1, cfg.max_k + 1)))
    out = []
    for q in gen.NORM_TAGS:
        res = lambda_norm(T, q)
        ok = abs(res.t_e_norm - res.lambda_opnorm) <= cfg.tol and p_continuity_check(T)
        out.append((f"[q={q}]", ok, res.lambda_opnorm, res.t_e_norm, {"y": res.witness_y}))
    return out


# -- sequences ---------------------------------------------------------------

def _seq(rng, cfg, space):
    return gen.random_sequence(rng, space, cfg.max_seq_len)


def _p(rng):
    return P_VALUES[int(rng.integers(len(P_VALUES)))]


def prop_dp_metric(rng, cfg):
    space = _space(rng, cfg)
    p = _p(rng)
    s, t, u = (_seq(rng, cfg, space) for _ in range(3))
    st = dp_distance(p, s, t, cfg.vertex_cap).value
    ts = dp_distance(p, t, s, cfg.vertex_cap).value
    su = dp_distance(p, s, u, cfg.vertex_cap).value
    ut = dp_distance(p, u, t, cfg.vertex_cap).value
    ss = dp_distance(p, s, s, cfg.vertex_cap).value
    ok = st == ts and st <= su + ut + cfg.tol and ss == 0.0 and ((st == 0.0) == (s == t))
    return [("", ok, st, su + ut, {"p": p, "s": s.labels(), "t": t.labels(), "u": u.labels()})]


def prop_p_monotone(rng, cfg):
    space = _space(rng, cfg)
    s, t = _seq(rng, cfg, space), _seq(rng, cfg, space)
    d1 = dp_distance(1, s, t, cfg.vertex_cap).value
    d2 = dp_distance(2, s, t, cfg.vertex_cap).value
    dinf = dp_distance(math.inf, s, t, cfg.vertex_cap)
    chain = dinf.value <= d2 + cfg.tol and d2 <= d1 + cfg.tol
    closed = abs(dinf.closed_form - dinf.value) <= cfg.tol
    return [("", chain and closed, [dinf.value, d2, d1], dinf.closed_form,
             {"s": s.labels(), "t": t.labels(), "closed_form_matches": closed})]


def prop_tx_isometry(rng, cfg):
    space = _space(rng, cfg)
    p = _p(rng)
    s, t = _seq(rng, cfg, space), _seq(rng, cfg, space)
    op = tx_operator_norm(p, s, t, cfg.vertex_cap)
    d = dp_distance(p, s, t, cfg.vertex_cap).value
    op0 = tx_operator_norm(p, s, SequencePoint(space, ()), cfg.vertex_cap)
    n0 = dp_norm(p, s, cfg.vertex_cap)
    ok = abs(op - d) <= cfg.tol and abs(op0 - n0) <= cfg.tol
    return [("", ok, op, d, {"p": p, "s": s.labels(), "t": t.labels(), "norm": [op0, n0]})]


def prop_dilation_sandwich(rng, cfg):
    src, dst = _space(rng, cfg), _space(rng, cfg)
    T = gen.random_point_map(rng, src, dst)
    pairs = [(_seq(rng, cfg, src), _seq(rng, cfg, src)) for _ in range(DILATION_PAIRS)]
    out = []
    for p in DILATION_PS:
        rep = dilation_certificates(p, T, pairs, cfg.tol, cfg.vertex_cap)
        out.append((f"[p={p:g}]", rep.passed, [rep.worst_ratio, rep.singleton_max, rep.de_hat_est],
                    rep.e_const, rep.violations[:3] or None))
    return out


def prop_dilation_injective(rng, cfg):
    src, dst = _space(rng, cfg), _space(rng, cfg)
    T = gen.random_point_map(rng, src, dst)
    table = T.table.copy()
    x = int(rng.integers(1, src.n))
    table[x] = (table[x] + int(rng.integers(1, dst.n))) % dst.n
    S = PointMap(src, dst, table)
    differs = [s.idx[0] for s in singletons(src) if dilate(T, s) != dilate(S, s)]
    return [("", bool(differs), differs, [x], None)]


def prop_de_hat_lower(rng, cfg):
    src, dst = _space(rng, cfg), _space(rng, cfg)
    T, S = gen.random_point_map(rng, src, dst), gen.random_point_map(rng, src, dst)
    p = DILATION_PS[int(rng.integers(len(DILATION_PS)))]
    lhs = de_distance(T, S)
    rhs = sampled_de_hat(p, T, S, singletons(src), cfg.vertex_cap)
    return [("", lhs <= rhs + cfg.tol, lhs, rhs, {"p": p})]


# name -> (default instance count, generator)
PROPERTIES = {
    "metric.induced_valid": (50, prop_induced_valid),
    "metric.graph_valid": (50, prop_graph_valid),
    "metric.ball_idempotent": (50, prop_ball_idempotent),
    "moduli.omega_monotone": (50, prop_omega_monotone),
    "moduli.omega_dominates_pointwise": (50, prop_omega_dominates),
    "moduli.sup_omega_equals_lip_at": (200, prop_sup_omega_equals_lip_at),
    "moduli.lip_bounds": (50, prop_lip_bounds),
    "transfer.phi_isometry": (200, prop_phi_isometry),
    "transfer.phi_roundtrip": (200, prop_phi_roundtrip),
    "transfer.phi_linearity": (50, prop_phi_linearity),
    "transfer.compose_selfcheck": (50, prop_transfer_selfcheck),
    "extbound.de_metric": (200, prop_de_metric),
    "extbound.norm_laws": (50, prop_norm_laws),
    "extbound.e_le_lip": (50, prop_e_le_lip),
    "extbound.identity_e_one": (20, prop_identity_e_one),
    "extbound.gamma_isometry": (100, prop_gamma_isometry),
    "dual.evaluation_functionals": (100, prop_evaluation_functionals),
    "dual.unit_functional": (20, prop_unit_functional),
    "dual.adjoint_norm": (200, prop_adjoint_norm),
    "dual.functoriality": (200, prop_functoriality),
    "dual.adjoint_linearity": (50, prop_adjoint_linearity),
    "dual.second_adjoint": (50, prop_second_adjoint),
    "dual.lambda_isometry": (100, prop_lambda_isometry),
    "sequences.dp_metric": (50, prop_dp_metric),
    "sequences.p_monotone": (100, prop_p_monotone),
    "sequences.tx_isometry": (100, prop_tx_isometry),
    "sequences.dilation_sandwich": (100, prop_dilation_sandwich),
    "sequences.dilation_injective": (50, prop_dilation_injective),
    "sequences.de_hat_lower_bound": (50, prop_de_hat_lower),
}


def property_rng(seed, name):
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def run_suite(cfg=None, command=None):
    cfg = cfg or SuiteConfig()
    names = list(cfg.properties) if cfg.properties else list(PROPERTIES)
    names.sort(key=list(PROPERTIES).index)
    report = AnalysisReport(
        command or ["suite"],
        AnalysisReport.digest({
            "seed": cfg.seed, "counts": {n: cfg.count(n) for n in names}, "max_points": cfg.max_points,
            "max_seq_len": cfg.max_seq_len, "max_k": cfg.max_k, "tol": cfg.tol,
            "vertex_cap": cfg.vertex_cap, "mutation": cfg.mutation,
        }),
    )
    if cfg.mutation:
        report.notes.append(f"mutation active: {cfg.mutation}")
    for name in names:
        rng = property_rng(cfg.seed, name)
        fn = PROPERTIES[name][1]
        for i in range(cfg.count(name)):
            for suffix, ok, lhs, rhs, witness in fn(rng, cfg):
                report.check(name + suffix, bool(ok), lhs, rhs, cfg.tol, i, witness)
    return report
