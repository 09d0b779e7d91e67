import json

import numpy as np
import pytest

import slnrobust as sr


def test_losses():
    unhinged = sr.loss("unhinged")
    assert unhinged(1, 0.5) == pytest.approx(0.5)
    assert unhinged(-1, 0.5) == pytest.approx(1.5)
    assert sr.is_strongly_sln_robust(unhinged)
    assert not sr.is_strongly_sln_robust(sr.loss("hinge"))
    corrected = sr.noise_correct(sr.loss("logistic"), 0.2)
    assert np.isfinite(corrected(1, 0.3))
    assert "tangentboost" in sr.catalog_names()
    with pytest.raises(ValueError):
        sr.loss("nope")


def test_centroid_on_failure_population():
    pop = sr.unhinged_failure_population()
    w = sr.fit_centroid(pop, 1.0).weights
    np.testing.assert_allclose(w, [1.0, -1.0], atol=1e-12)
    fld = sr.fit_fld(pop, 1e-10).weights
    np.testing.assert_allclose(fld, [1.0, 0.0], atol=1e-4)


def test_noise_scales_centroid():
    pop = sr.long_servedio_population(0.5)
    noisy = sr.corrupt_population(pop, 0.3)
    np.testing.assert_allclose(
        sr.fit_centroid(noisy, 1.0).weights, 0.4 * sr.fit_centroid(pop, 1.0).weights, atol=1e-12
    )


def test_sample_pipeline():
    data = sr.gaussian_blobs(200, 2, 3.0, 1)
    assert len(data) == 200
    noisy = sr.corrupt_sample(data, 0.2, 5)
    assert len(noisy.labels) == 200
    model = sr.train("unhinged", noisy, lambda_=1.0)
    assert sr.zero_one_risk(model, data) < 0.15
    assert sr.auc(model, data) > 0.9
    hinge = sr.train("hinge", noisy, lambda_=0.01, optimizer="grad")
    assert hinge.scores(data.instances).shape == (200,)
    back = sr.Scorer.from_json(model.to_json())
    np.testing.assert_array_equal(back.scores(data.instances), model.scores(data.instances))
    model.threshold = sr.tune_threshold(model, noisy)
    assert set(model.classify(data.instances)) <= {-1, 1}


def test_dataset_validation():
    with pytest.raises(ValueError):
        sr.SampleDataset(np.zeros((2, 1)), [1, 0])


def test_experiment_and_verify():
    cfg = {
        "losses": ["unhinged"],
        "rhos": [0.0, 0.2],
        "trials": 2,
        "n_train": 50,
        "n_test": 50,
        "lambda": 1.0,
        "generator": {"kind": "blobs", "dim": 2, "separation": 2.0},
    }
    rows = sr.run_experiment(json.dumps(cfg))
    assert len(rows) == 2
    assert all(0.0 <= r["mean"] <= 1.0 for r in rows)
    passed, text = sr.verify("failure-example")
    assert passed
    assert "PASS" in text
    assert "long-experiment" in sr.suite_names()
