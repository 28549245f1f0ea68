"""Sampler and Monte Carlo tests.

Every test uses a fixed seed, so results are reproducible; the statistical
bands are 3 standard errors and chi-square tests use the 1% level.
"""

import math

import numpy as np
import pytest

from infowidth import (
    DomainError,
    ExpDecay,
    FunctionClass,
    Identity,
    InfeasibleSamplingError,
    LabeledSample,
    Ld,
    UnsupportedMethodError,
    Vd,
    VdC,
    VdSample,
    property_report,
)
from infowidth import random_classes as rc

import oracles


def _bernoulli(hits, trials):
    return rc._bernoulli_estimate(hits, trials, 0)


def test_rng_streams_are_reproducible_and_distinct():
    h = rc.RngHandle(7, stream=3)
    a = h.generator(2).random(5)
    assert np.array_equal(a, rc.RngHandle(7, stream=3).generator(2).random(5))
    assert not np.array_equal(a, h.generator(3).random(5))
    assert not np.array_equal(a, h.substream(4).generator(2).random(5))
    with pytest.raises(DomainError):
        rc.RngHandle(1, algorithm="MT19937")


def test_binomial_sampler():
    gen = rc.RngHandle(11).generator()
    trials = 20_000
    one = sum(len(rc.sample_class_binomial(1, 0.5, gen)) == 1 for _ in range(trials))
    assert _bernoulli(one, trials).within(0.5)
    target = FunctionClass(2, [1, 2])
    hits = sum(rc.sample_class_binomial(2, 0.5, gen) == target for _ in range(trials))
    assert _bernoulli(hits, trials).within(1 / 16)
    sizes = [len(rc.sample_class_binomial(10, 0.5, gen)) for _ in range(2000)]
    assert abs(np.mean(sizes) - 512) <= 3 * np.std(sizes, ddof=1) / math.sqrt(len(sizes))
    with pytest.raises(DomainError):
        rc.sample_class_binomial(21, 0.5)


def test_uniform_k_sampler():
    assert rc.sample_class_uniform_k(3, 8, 0) == FunctionClass.full(3)
    batch = rc.batch_uniform_k(2, 1, 40_000, rc.RngHandle(3).generator())
    for f in range(4):
        assert _bernoulli(int((batch[:, 0] == f).sum()), batch.shape[0]).within(0.25)
    pairs = rc.batch_uniform_k(2, 2, 60_000, rc.RngHandle(4).generator())
    freq = rc.class_frequencies(pairs, 2)
    assert len(freq) == 6
    for count in freq.values():
        assert _bernoulli(count, 60_000).within(1 / 6)
    assert rc.uniformity_pvalue(2, 2, freq) > 0.01


def test_batch_rows_are_distinct_classes():
    for n, k in [(3, 5), (6, 10), (13, 7)]:
        batch = rc.batch_uniform_k(n, k, 50, 0)
        assert batch.shape == (50, k)
        assert all(len(set(row.tolist())) == k for row in batch)
        assert batch.min() >= 0 and batch.max() < 1 << n


def test_simple_matrix_sampler():
    cls, attempts = rc.sample_simple_matrix(2, 3, 5)
    assert len(cls) == 3 and attempts >= 1
    assert rc.acceptance_probability(2, 2) == 0.75
    assert rc.acceptance_probability(2, 4) == pytest.approx(0.09375, abs=1e-15)
    with pytest.raises(InfeasibleSamplingError):
        rc.sample_simple_matrix(10, 300)
    with pytest.raises(InfeasibleSamplingError):
        rc.simple_matrix_classes(10, 300, 5)


def test_simple_matrix_equals_direct_sampler():
    for n, k in [(2, 2), (2, 3), (3, 2)]:
        direct = rc.class_frequencies(rc.batch_uniform_k(n, k, 50_000, rc.RngHandle(5).generator()), n)
        matrix = rc.class_frequencies(rc.simple_matrix_classes(n, k, 50_000, seed=5), n)
        assert rc.two_sample_pvalue(direct, matrix) > 0.01
        assert rc.uniformity_pvalue(n, k, matrix) > 0.01


def test_property_prob_examples():
    assert rc.mc_property_prob(2, 1, Vd(1), 5000).estimate == 1.0
    est = rc.mc_property_prob(2, 2, Ld(1), 100_000, seed=2)
    assert est.within(4 / 6)
    assert rc.mc_property_prob(10, 1, Ld(2), 10_000).estimate == 1.0
    assert rc.mc_property_prob(10, 10, Ld(2), 10_000).estimate < 0.01
    with pytest.raises(UnsupportedMethodError):
        rc.mc_property_prob(3, 2, ExpDecay(0.5), 10)


def test_cardinality_threshold():
    for k in (1, 2, 3):
        assert rc.mc_property_prob(10, k, VdC(2), 5000).estimate == 0.0
    assert rc.mc_property_prob(10, 64, VdC(2), 5000).estimate >= 0.9


@pytest.mark.parametrize("n", [1, 2, 3])
def test_property_prob_matches_exhaustive_counts(n):
    sample = LabeledSample([(1, 1)])
    label_ok = lambda c: all(f[0] == 1 for f in c)  # noqa: E731
    specs = [
        (Vd(1), lambda c: oracles.naive_vc(c, n) < 1),
        (VdC(1), lambda c: oracles.naive_vc(c, n) >= 1),
        (Ld(1), lambda c: oracles.naive_l(c, n) >= 1),
        (VdSample(2, sample), lambda c: oracles.naive_vc(c, n) < 2 and label_ok(c)),
    ]
    if n >= 2:
        specs += [
            (Vd(2), lambda c: oracles.naive_vc(c, n) < 2),
            (Ld(2), lambda c: oracles.naive_l(c, n) >= 2),
        ]
    nf = 1 << n
    for spec, pred in specs:
        counts = oracles.naive_counts(n, pred)
        for k in range(1, nf + 1):
            exact = counts.get(k, 0) / math.comb(nf, k)
            est = rc.mc_property_prob(n, k, spec, 20_000, seed=9)
            assert est.within(exact, floor=1e-12), (spec, k, est, exact)


def test_identity_probability():
    g = FunctionClass(2, [0, 3])
    est = rc.mc_property_prob(2, 2, Identity(g), 60_000, seed=1)
    assert est.within(1 / 6)


def test_thread_count_does_not_change_results():
    a = rc.mc_property_prob(4, 6, Vd(2), 50_000, seed=3, threads=1)
    b = rc.mc_property_prob(4, 6, Vd(2), 50_000, seed=3, threads=4)
    assert a == b
    r1 = rc.mc_info_report(3, Ld(1), trials=20_000, seed=4, threads=1)
    r2 = rc.mc_info_report(3, Ld(1), trials=20_000, seed=4, threads=3)
    assert r1 == r2 and r1.stderr == r2.stderr


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("INFOWIDTH_THREADS", "3")
    assert rc.resolve_threads(None) == 3
    monkeypatch.delenv("INFOWIDTH_THREADS")
    assert rc.resolve_threads(None) == 1
    with pytest.raises(DomainError):
        rc.resolve_threads(0)


def test_mc_report_examples():
    for spec, keys in [(Vd(2), ("I",)), (Ld(1), ("l",))]:
        exact = property_report(3, spec)
        est = rc.mc_info_report(3, spec, trials=100_000, seed=0)
        if "I" in keys:
            assert abs(est.information_bits - exact.information_bits) <= 3 * est.stderr["I"]
        if "l" in keys:
            assert abs(est.description_bits - exact.description_bits) <= 3 * est.stderr["l"]


def test_mc_report_identity_is_exact():
    spec = Identity(FunctionClass(2, [0, 3]))
    mc = property_report(2, spec, "mc")
    exact = property_report(2, spec)
    assert (mc.information_bits, mc.description_bits, mc.cost, mc.efficiency) == (
        exact.information_bits,
        exact.description_bits,
        exact.cost,
        exact.efficiency,
    )
    assert mc.stderr == {"I": 0.0, "H": 0.0, "l": 0.0}


def test_mc_report_limits_and_errors():
    with pytest.raises(DomainError):
        rc.mc_info_report(17, Vd(2))
    with pytest.raises(DomainError):
        rc.mc_info_report(3, Identity(FunctionClass(2, [0])))


def test_mc_report_larger_n_is_finite():
    rep = rc.mc_info_report(6, Ld(2), trials=2000, seed=0)
    assert math.isfinite(rep.information_bits) and math.isfinite(rep.description_bits)
    assert 0 < rep.description_bits <= 64


def test_estimate_json():
    est = rc.McEstimate(0.25, 0.01, 100, 3)
    assert est.to_dict() == {"estimate": 0.25, "stderr": 0.01, "trials": 100, "seed": 3}


def test_validation_suite_default_seed():
    results = rc.validation_suite(trials=100_000, seed=1)
    failed = [r for r in results if not r.passed]
    assert not failed, failed
