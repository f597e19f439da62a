"""Smoke tests for the python bindings: one pass over the whole pipeline."""

import math

import pytest

import coxflow as cx


@pytest.fixture(scope="module")
def dataset():
    model = cx.scenario_by_name("affine-1d")
    cfg = cx.SimConfig()
    cfg.seed = 5
    cfg.n = 80
    cfg.u = 6
    cfg.grid_steps = 8
    return model, cfg, cx.simulate_dataset(model, cfg)


def test_tau_and_stop_pair():
    x = cx.CountingPath(horizon=1.0, jump_times=[0.1, 0.5], cap=2)
    assert cx.tau(x) == 0.5
    z = cx.CovariatePath(grid=[0.0, 0.4, 1.0], values=[0.2, 0.8], dim=1)
    xs, zs = cx.stop_pair(x, z)
    assert zs.grid == [0.0, 0.4, 0.5, 1.0]
    assert zs.value_at(0.9) == [0.8]


def test_dictionary_and_features(dataset):
    model, cfg, data = dataset
    d = cx.cosine_dictionary(1, 1.0)
    assert d.eval(1, 0.3, [0.5]) == pytest.approx(1.0)
    assert d.sup_bound(5) >= d.sup_bound(1)
    fm = cx.feature_matrix(data, d, 3, cfg.u)
    assert fm.n == 80 and fm.B == 3
    assert fm.bound_U == pytest.approx(1.0 + (1.0 + cfg.u) * d.sup_bound(3))


def test_fit_and_select(dataset):
    model, cfg, data = dataset
    d = cx.cosine_dictionary(1, 1.0)
    fm = cx.feature_matrix(data, d, 2, cfg.u)
    rep = cx.fit_erm(fm, 2)
    assert rep.converged
    assert rep.risk <= 1.0 + 1e-12  # no worse than the zero coefficients
    assert rep.risk == pytest.approx(cx.empirical_risk(rep.coef, fm))

    sel = cx.fit_penalized(data, d, k_max=2, selector="holdout", u=cfg.u)
    assert 1 <= sel.k_hat <= 2
    assert sel.trace[sel.k_hat - 1].chosen


def test_losses_and_projection():
    assert cx.logit_loss(0.0) == pytest.approx(1.0)
    assert cx.logit_loss(1.0) == pytest.approx(1.8946361239720116)
    assert cx.logit_loss_deriv(0.0) == pytest.approx(1 / (2 * math.log(2)))
    assert cx.project_l1([3.0, 0.0], 1.0) == [1.0, 0.0]


def test_schedule_and_penalty():
    assert [cx.default_schedule(1.0, k) for k in range(1, 5)] == [2, 7, 15, 27]
    pinned = cx.penalty_for_B(1, 1.0, 0.0, 1.0, 1.0, math.exp(2.0))
    assert pinned == pytest.approx(1.80185146206044027, rel=1e-13)


def test_oracle(dataset):
    model, cfg, data = dataset
    s = data[0]
    post = cx.posterior(s.x, s.z, model)
    assert post.eta_plus + post.eta_minus == 1.0
    assert cx.eta_from_xi(cx.xi(s.x, s.z, model), 0.5) == pytest.approx(
        post.eta_plus
    )
    assert cx.bayes_classify(s.x, s.z, model) in (-1, 1)
    lstar = cx.mc_bayes_risk(model, data)
    assert 0.0 <= lstar.value <= 0.5

    # posterior via the two Girsanov weights w.r.t. the unit-rate law
    wp = math.exp(-cx.girsanov_log_weight(model, True, s.x, s.z))
    wm = math.exp(-cx.girsanov_log_weight(model, False, s.x, s.z))
    assert post.eta_plus == pytest.approx(wp / (wp + wm), abs=1e-10)


def test_dataset_io(dataset, tmp_path):
    _, _, data = dataset
    path = str(tmp_path / "data.txt")
    cx.write_dataset(path, data)
    back = cx.read_dataset(path)
    assert cx.dataset_to_string(back) == cx.dataset_to_string(data)
