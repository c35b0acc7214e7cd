import pytest

from extlip import corpus
from extlip.suite import PROPERTIES, SuiteConfig, run_suite


def test_small_full_suite_passes():
    cfg = SuiteConfig(seed=3, counts={name: 3 for name in PROPERTIES})
    rep = run_suite(cfg)
    assert rep.passed, [c for c in rep.failures()][:3]
    assert {c.property.split("[")[0] for c in rep.checks} == set(PROPERTIES)


def test_report_order_follows_property_index():
    cfg = SuiteConfig(counts={n: 1 for n in PROPERTIES},
                      properties=("sequences.dp_metric", "metric.induced_valid"))
    rep = run_suite(cfg)
    assert [c.property for c in rep.checks] == ["metric.induced_valid", "sequences.dp_metric"]


def test_byte_identical_reports():
    cfg = dict(seed=0, counts={n: 2 for n in PROPERTIES})
    assert run_suite(SuiteConfig(**cfg)).to_json() == run_suite(SuiteConfig(**cfg)).to_json()


def test_different_seeds_differ():
    counts = {"transfer.phi_isometry": 5}
    a = run_suite(SuiteConfig(seed=0, counts=counts, properties=tuple(counts)))
    b = run_suite(SuiteConfig(seed=1, counts=counts, properties=tuple(counts)))
    assert a.to_json() != b.to_json()


@pytest.mark.parametrize("kw", [{"max_points": 1}, {"max_seq_len": 7}, {"max_k": 0}, {"mutation": "x"},
                                {"counts": {"nope": 1}}])
def test_config_bounds(kw):
    with pytest.raises(ValueError):
        SuiteConfig(**kw)


FIXTURES = [fx.name for fx in corpus.corpus() if fx.expected]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_expectations(name):
    for expect, actual, ok in corpus.evaluate(corpus.get(name)):
        assert ok, (expect, actual)


def test_every_fixture_file_exists():
    for fx in corpus.corpus():
        assert corpus.path_of(fx).is_file(), fx.file


def test_xsinx_oscillation_tends_to_two_pi():
    import math

    osc = corpus.xsinx_oscillation()
    assert abs(osc[1000] - 2 * math.pi) < 1e-4
    assert abs(osc[10] - 2 * math.pi) > abs(osc[1000] - 2 * math.pi)


def test_xsinx_lipschitz_estimates_grow():
    growth = list(corpus.xsinx_lip_growth(step=1e-3).values())
    assert all(a < b for a, b in zip(growth, growth[1:]))
