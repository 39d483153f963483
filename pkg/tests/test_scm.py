import numpy as np
import pytest

from causalsteer import (
    Dag,
    DagGenConfig,
    NoiseSpec,
    Scm,
    analytic_means,
    estimate_noise_means,
    generate_random_scm,
    sample,
    sample_interventional,
)
from causalsteer.errors import IndexOutOfRange
from causalsteer.scm import noise_means

from .conftest import constant_scm, uniform_scm


class TestNoiseSpec:
    def test_means(self):
        assert NoiseSpec.gaussian(2.0, 3.0).mean() == 2.0
        assert NoiseSpec.uniform(0.0, 1.0).mean() == 0.5
        assert NoiseSpec.constant(7.0).mean() == 7.0

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            NoiseSpec.gaussian(0.0, -1.0)
        with pytest.raises(ValueError):
            NoiseSpec.uniform(2.0, 1.0)
        with pytest.raises(ValueError):
            NoiseSpec("pareto", (1.0,))

    def test_draw_matches_family(self):
        rng = np.random.default_rng(0)
        draws = NoiseSpec.uniform(3.0, 4.0).draw(rng, 1000)
        assert draws.min() >= 3.0 and draws.max() <= 4.0
        assert (NoiseSpec.constant(-2.0).draw(rng, 5) == -2.0).all()


class TestSample:
    def test_chain_with_constant_noise(self):
        dag = Dag(np.array([[0.0, 0.0], [2.0, 0.0]]))
        data = sample(constant_scm(dag, (1.0, 1.0)), 1, seed=0)
        assert data.rows.tolist() == [[1.0, 3.0]]

    def test_edgeless_constant_rows(self):
        scm = constant_scm(Dag(np.zeros((3, 3))), (1.0, 2.0, 3.0))
        data = sample(scm, 4, seed=1)
        assert (data.rows == [1.0, 2.0, 3.0]).all()

    def test_chain_uniform_mean(self):
        # X2 = 2*X1 + N2 with both noises U(0,1): E[X2] = 2*0.5 + 0.5 = 1.5
        dag = Dag(np.array([[0.0, 0.0], [2.0, 0.0]]))
        scm = Scm(dag, (NoiseSpec.uniform(0, 1), NoiseSpec.uniform(0, 1)))
        data = sample(scm, 100_000, seed=2)
        assert data.rows[:, 1].mean() == pytest.approx(1.5, abs=0.02)

    def test_seed_reproducibility(self):
        scm = uniform_scm(Dag(np.array([[0.0, 0.0], [1.0, 0.0]])))
        a = sample(scm, 50, seed=42).rows
        b = sample(scm, 50, seed=42).rows
        c = sample(scm, 50, seed=43).rows
        assert (a == b).all()
        assert (a != c).any()

    def test_rejects_zero_rows(self):
        with pytest.raises(ValueError):
            sample(uniform_scm(Dag(np.zeros((1, 1)))), 0, seed=0)


class TestSampleInterventional:
    def test_chain_do_root(self):
        dag = Dag(np.array([[0.0, 0.0], [2.0, 0.0]]))
        data = sample_interventional(constant_scm(dag, (0.0, 0.0)), 1, 3.0, 1, seed=0)
        assert data.rows.tolist() == [[3.0, 6.0]]

    def test_do_on_leaf_leaves_other_columns_untouched(self, chain3):
        scm = uniform_scm(chain3)
        plain = sample(scm, 200, seed=5).rows
        intervened = sample_interventional(scm, 3, 99.0, 200, seed=5).rows
        assert (intervened[:, 2] == 99.0).all()
        assert (intervened[:, :2] == plain[:, :2]).all()

    def test_seven_vertex_two_paths(self, seven_vertex_dag):
        # do(X1=1) reaches X4 via X2 and X3, so E[X4] = 2 with zero-mean noise
        scm = uniform_scm(seven_vertex_dag)
        data = sample_interventional(scm, 1, 1.0, 100_000, seed=6)
        assert data.rows[:, 3].mean() == pytest.approx(2.0, abs=0.03)

    def test_index_out_of_range(self, chain3):
        with pytest.raises(IndexOutOfRange):
            sample_interventional(uniform_scm(chain3), 4, 0.0, 1, seed=0)


class TestAnalyticMeans:
    def test_chain(self):
        dag = Dag(np.array([[0.0, 0.0], [2.0, 0.0]]))
        scm = Scm(dag, (NoiseSpec.constant(1.0), NoiseSpec.constant(0.5)))
        assert analytic_means(scm).tolist() == [1.0, 2.5]

    def test_zero_noise_means(self, seven_vertex_dag):
        assert (analytic_means(uniform_scm(seven_vertex_dag)) == 0.0).all()

    def test_against_monte_carlo_on_random_scm(self):
        scm = generate_random_scm(DagGenConfig(seed=11))
        mu = analytic_means(scm)
        data = sample(scm, 100_000, seed=12)
        se = data.rows.std(axis=0, ddof=1) / np.sqrt(data.m)
        assert (np.abs(data.rows.mean(axis=0) - mu) <= 3 * se + 1e-12).all()


class TestEstimateNoiseMeans:
    def test_chain_direct(self):
        dag = Dag(np.array([[0.0, 0.0], [2.0, 0.0]]))
        est = estimate_noise_means(dag, np.array([1.0, 2.5]))
        assert est.tolist() == [0.0, 0.5]

    def test_round_trip_recovers_non_root_means(self):
        scm = generate_random_scm(DagGenConfig(n_roots=4, n_descendants=12, seed=3))
        est = estimate_noise_means(scm.dag, analytic_means(scm))
        truth = noise_means(scm)
        from causalsteer.graph import root_mask

        non_root = ~root_mask(scm.dag)
        assert est[non_root] == pytest.approx(truth[non_root], abs=1e-12)
        assert (est[~non_root] == 0.0).all()

    def test_edgeless_all_zero(self):
        est = estimate_noise_means(Dag(np.zeros((3, 3))), np.array([5.0, -2.0, 0.5]))
        assert (est == 0.0).all()

    def test_observation_specific_values(self, chain3):
        # one observation (1, 4, x3): noise of X2 recovered as 4 - 2*1 = 2
        est = estimate_noise_means(chain3, np.array([1.0, 4.0, 3.0]))
        assert est[1] == pytest.approx(2.0)
        assert est[2] == pytest.approx(3.0 - 0.5 * 4.0)

    def test_length_check(self, chain3):
        with pytest.raises(ValueError):
            estimate_noise_means(chain3, np.zeros(2))
