from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest  # type: ignore[import]
import scipy.sparse as sp

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from trustrec.core.errors import ConfigurationError, ShapeError, SingularSystemError  # noqa: E402
from trustrec.core.graph import Convention, DegreeMode, build_trust_graph, degree_vector  # noqa: E402
from trustrec.core.similarity import (  # noqa: E402
    BoostDiagonal,
    BoostSource,
    KatzConfig,
    RowNorm,
    SimilarityMatrix,
    boost_propagated,
    build_similarity,
    degree_normalize,
    katz_closed_form_oracle,
    katz_truncated,
    load_similarity,
    row_normalize,
    save_similarity,
    truncation_error_bound,
)

ALPHA = 0.008


def random_adjacency(rng, n, p):
    dense = (rng.random((n, n)) < p).astype(np.float64)
    np.fill_diagonal(dense, 0.0)
    return dense


def path_graph():
    # 0 -> 1 -> 2, so A[1][0] = A[2][1] = 1
    return build_trust_graph([(0, 1), (1, 2)], 3)


class TestKatzTruncated:
    def test_zero_adjacency_gives_identity(self):
        sigma = katz_truncated(sp.csr_matrix((4, 4)), ALPHA, 2)
        assert np.array_equal(sigma.matrix.toarray(), np.eye(4))

    def test_one_step_is_identity_plus_scaled_adjacency(self):
        dense = random_adjacency(np.random.default_rng(0), 8, 0.3)
        sigma = katz_truncated(sp.csr_matrix(dense), ALPHA, 1)
        assert np.array_equal(sigma.matrix.toarray(), np.eye(8) + ALPHA * dense)
        assert sigma.label == "KS_NNNN"
        assert sigma.k_max == 1

    def test_two_steps_match_dense_polynomial(self):
        dense = random_adjacency(np.random.default_rng(1), 6, 0.4)
        alpha = 0.1
        expected = np.eye(6) + alpha * dense + alpha ** 2 * dense @ dense
        sigma = katz_truncated(sp.csr_matrix(dense), alpha, 2)
        assert np.max(np.abs(sigma.matrix.toarray() - expected)) <= 1e-12

    def test_each_step_adds_the_next_power(self):
        dense = random_adjacency(np.random.default_rng(2), 100, 0.2)
        adjacency = sp.csr_matrix(dense)
        for k in range(1, 5):
            previous = katz_truncated(adjacency, ALPHA, k).matrix.toarray()
            current = katz_truncated(adjacency, ALPHA, k + 1).matrix.toarray()
            term = np.linalg.matrix_power(ALPHA * dense, k + 1)
            assert np.max(np.abs(current - previous - term)) <= 1e-12

    def test_similarity_is_asymmetric_for_one_way_trust(self):
        sigma = katz_truncated(path_graph().adjacency, ALPHA, 2).matrix
        assert sigma[1, 0] == pytest.approx(ALPHA)
        assert sigma[0, 1] == 0.0
        assert sigma[2, 0] == pytest.approx(ALPHA ** 2)

    def test_density_grows_with_path_length(self):
        adjacency = sp.csr_matrix(random_adjacency(np.random.default_rng(4), 40, 0.05))
        densities = [katz_truncated(adjacency, ALPHA, k).offdiagonal_density for k in (1, 2, 3)]
        assert densities[0] <= densities[1] <= densities[2]

    def test_rejects_bad_arguments(self):
        with pytest.raises(ConfigurationError):
            katz_truncated(sp.csr_matrix((2, 2)), 0.0, 2)
        with pytest.raises(ShapeError):
            katz_truncated(sp.csr_matrix((2, 3)), ALPHA, 2)


class TestClosedFormOracle:
    def test_zero_adjacency(self):
        assert np.array_equal(katz_closed_form_oracle(np.zeros((3, 3)), 0.5), np.eye(3))

    def test_single_node_geometric_series(self):
        assert katz_closed_form_oracle(np.array([[2.0]]), 0.1)[0, 0] == pytest.approx(1.0 / 0.8)

    def test_alpha_above_the_spectral_bound_is_rejected(self):
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(ConfigurationError, match="1/lambda_A"):
            katz_closed_form_oracle(swap, 1.5)
        with pytest.raises(ConfigurationError):
            katz_closed_form_oracle(np.array([[1.0]]), 1.0)
        assert np.all(katz_closed_form_oracle(swap, 0.5) > 0.0)

    def test_singular_system_raises(self):
        # an understated spectral radius lets the solve itself hit the singular system
        with pytest.raises(SingularSystemError):
            katz_closed_form_oracle(np.array([[1.0]]), 1.0, spectral_radius=0.5)

    def test_truncated_sum_converges_to_oracle_on_random_graphs(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = int(rng.integers(2, 51))
            dense = random_adjacency(rng, n, float(rng.uniform(0.1, 0.3)))
            # A Hamiltonian cycle keeps lambda >= 1 and away from defective zero eigenvalues.
            dense[np.arange(n), (np.arange(n) + 1) % n] = 1.0
            lam = max(abs(np.linalg.eigvals(dense)))
            alpha = 0.5 / lam
            truncated = katz_truncated(sp.csr_matrix(dense), alpha, 60).matrix.toarray()
            assert np.max(np.abs(truncated - katz_closed_form_oracle(dense, alpha))) < 1e-8

    def test_error_shrinks_as_k_max_grows(self):
        dense = random_adjacency(np.random.default_rng(5), 10, 0.4)
        lam = max(abs(np.linalg.eigvals(dense)))
        alpha = 0.9 / lam
        oracle = katz_closed_form_oracle(dense, alpha)
        errors = [
            np.max(np.abs(katz_truncated(sp.csr_matrix(dense), alpha, k).matrix.toarray() - oracle))
            for k in (1, 2, 4, 8, 16)
        ]
        assert errors == sorted(errors, reverse=True)

    def test_truncation_error_bound(self):
        assert truncation_error_bound(0.5, 1.0, 1) == pytest.approx(0.5)
        assert truncation_error_bound(0.01, 120.54, 2) == float("inf")


class TestNormalization:
    def test_degree_normalization_example(self):
        sigma = SimilarityMatrix(matrix=sp.csr_matrix(np.array([[1.0, 0.5], [0.5, 1.0]])))
        result = degree_normalize(sigma, np.array([2, 1]))
        assert np.allclose(result.matrix.toarray(), [[0.25, 0.25], [0.25, 1.0]])

    def test_unit_degrees_leave_sigma_unchanged(self):
        dense = np.eye(3) + ALPHA * random_adjacency(np.random.default_rng(6), 3, 0.7)
        sigma = SimilarityMatrix(matrix=sp.csr_matrix(dense))
        assert np.array_equal(degree_normalize(sigma, np.ones(3)).matrix.toarray(), dense)

    def test_zero_degree_row_survives(self):
        sigma = SimilarityMatrix(matrix=sp.csr_matrix(np.array([[1.0, 0.3], [0.0, 1.0]])))
        result = degree_normalize(sigma, np.array([0, 2])).matrix.toarray()
        assert result[0, 1] == pytest.approx(0.15)
        assert result[0, 0] == pytest.approx(1.0)

    def test_degree_vector_length_must_match(self):
        sigma = SimilarityMatrix(matrix=sp.identity(3, format="csr"))
        with pytest.raises(ShapeError):
            degree_normalize(sigma, np.ones(2))

    @pytest.mark.parametrize(
        "row, norm, expected",
        [
            ([0.0, 0.4, 0.8], RowNorm.MAX, [0.0, 0.5, 1.0]),
            ([1.0, 1.0, 2.0], RowNorm.L1, [0.25, 0.25, 0.5]),
            ([3.0, 4.0, 0.0], RowNorm.L2, [0.6, 0.8, 0.0]),
        ],
    )
    def test_row_normalization_examples(self, row, norm, expected):
        sigma = SimilarityMatrix(matrix=sp.csr_matrix(np.array([row, [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]])))
        result = row_normalize(sigma, norm).matrix.toarray()
        assert np.allclose(result[0], expected)
        assert np.array_equal(result[1], [0.0, 0.0, 0.0])

    def test_row_norm_bounds(self):
        dense = np.eye(15) + 0.3 * random_adjacency(np.random.default_rng(8), 15, 0.3)
        sigma = SimilarityMatrix(matrix=sp.csr_matrix(dense))
        assert np.allclose(row_normalize(sigma, "l1").matrix.sum(axis=1), 1.0)
        assert np.allclose(row_normalize(sigma, "max").matrix.max(axis=1).toarray(), 1.0)
        assert np.allclose(np.linalg.norm(row_normalize(sigma, "l2").matrix.toarray(), axis=1), 1.0)
        assert row_normalize(sigma, RowNorm.NONE) is sigma

    @pytest.mark.parametrize("norm", [RowNorm.L1, RowNorm.L2, RowNorm.MAX])
    def test_row_norms_ignore_positive_row_scaling(self, norm):
        rng = np.random.default_rng(21)
        dense = np.eye(20) + 0.3 * random_adjacency(rng, 20, 0.25)
        scales = sp.diags(rng.uniform(0.01, 50.0, size=20))
        plain = row_normalize(SimilarityMatrix(matrix=sp.csr_matrix(dense)), norm).matrix.toarray()
        scaled = row_normalize(SimilarityMatrix(matrix=sp.csr_matrix(scales @ dense)), norm).matrix.toarray()
        assert np.allclose(scaled, plain, rtol=1e-12, atol=1e-15)


class TestBoost:
    def test_path_graph_example(self):
        graph = path_graph()
        sigma3 = katz_truncated(graph.adjacency, ALPHA, 2)
        boosted = boost_propagated(graph.adjacency, sigma3, RowNorm.MAX).matrix.toarray()
        assert boosted[2, 0] == 1.0
        assert boosted[2, 1] == 1.0
        assert boosted[1, 0] == 1.0
        assert boosted[0].tolist() == [0.0, 0.0, 0.0]

    @pytest.mark.parametrize("seed, n, p", [(9, 30, 0.1), (10, 8, 0.4), (11, 60, 0.05), (12, 25, 0.3), (13, 100, 0.02)])
    def test_direct_trust_is_exactly_one_and_values_stay_in_range(self, seed, n, p):
        adjacency = sp.csr_matrix(random_adjacency(np.random.default_rng(seed), n, p))
        sigma3 = katz_truncated(adjacency, ALPHA, 2)
        for norm in (RowNorm.L1, RowNorm.L2, RowNorm.MAX):
            boosted = boost_propagated(adjacency, sigma3, norm).matrix
            rows, cols = adjacency.nonzero()
            assert np.all(np.asarray(boosted[rows, cols]).ravel() == 1.0)
            assert boosted.min() >= 0.0
            assert boosted.max() <= 1.0
            two_hop_only = ((adjacency @ adjacency).toarray() > 0) & (adjacency.toarray() == 0)
            np.fill_diagonal(two_hop_only, False)
            assert np.all(boosted.toarray()[two_hop_only] > 0.0)

    def test_unreachable_pairs_stay_zero(self):
        graph = build_trust_graph([(0, 1), (2, 3)], 4)
        sigma3 = katz_truncated(graph.adjacency, ALPHA, 2)
        boosted = boost_propagated(graph.adjacency, sigma3, RowNorm.MAX).matrix.toarray()
        assert boosted[3, 0] == 0.0
        assert boosted[0, 3] == 0.0

    def test_keep_diagonal_leaves_self_similarity(self):
        graph = path_graph()
        sigma3 = katz_truncated(graph.adjacency, ALPHA, 2)
        boosted = boost_propagated(graph.adjacency, sigma3, RowNorm.MAX, BoostDiagonal.KEEP).matrix.toarray()
        assert boosted[0, 0] == 1.0
        assert boosted[2, 0] == pytest.approx(ALPHA ** 2)

    def test_rejects_wrong_path_length_and_missing_norm(self):
        graph = path_graph()
        with pytest.raises(ConfigurationError):
            boost_propagated(graph.adjacency, katz_truncated(graph.adjacency, ALPHA, 3), RowNorm.MAX)
        with pytest.raises(ConfigurationError):
            boost_propagated(graph.adjacency, katz_truncated(graph.adjacency, ALPHA, 2), RowNorm.NONE)
        with pytest.raises(ShapeError):
            boost_propagated(sp.csr_matrix((2, 2)), katz_truncated(graph.adjacency, ALPHA, 2), RowNorm.MAX)


class TestKatzConfig:
    def test_labels(self):
        assert KatzConfig(k_max=2, degree_norm="combined", row_norm="max", boost=True).label == "KS_PCMB"
        assert KatzConfig(k_max=1, degree_norm="in").label == "KS_NINN"
        assert KatzConfig(k_max=2, row_norm="l2", boost=True).label == "KS_PNL2B"
        assert KatzConfig(k_max=3).label == "KS_P3NNN"
        assert KatzConfig(convention=Convention.TRANSPOSED).label == "KS_PNNN-T"
        assert KatzConfig(alpha=0.01).label == "KS_PNNN-a0.01"
        assert (
            KatzConfig(row_norm="max", boost=True, boost_diag="keep", boost_source="raw").label
            == "KS_PNMB-keepdiag-rawboost"
        )

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(k_max=1, row_norm="max", boost=True),
            dict(k_max=2, boost=True),
            dict(alpha=-0.1),
            dict(k_max=0),
            dict(k_max=5),
        ],
    )
    def test_invalid_configs(self, kwargs):
        with pytest.raises(ConfigurationError):
            KatzConfig(**kwargs)

    def test_alpha_must_stay_below_inverse_spectral_radius(self):
        with pytest.raises(ConfigurationError):
            KatzConfig(alpha=0.01).validate_against_spectrum(120.54)
        KatzConfig(alpha=ALPHA).validate_against_spectrum(120.54)

    def test_mapping_round_trip(self):
        config = KatzConfig(k_max=2, degree_norm="in", row_norm="l1", boost=True)
        assert KatzConfig.from_mapping(config.to_dict()) == config


class TestBuildSimilarity:
    def test_plain_one_step_config(self):
        graph = build_trust_graph([(0, 1), (1, 2), (2, 0), (3, 0)], 4)
        sigma = build_similarity(graph, config=KatzConfig(k_max=1))
        assert np.array_equal(sigma.matrix.toarray(), np.eye(4) + ALPHA * graph.adjacency.toarray())

    def test_stages_compose_in_order(self):
        graph = build_trust_graph([(0, 1), (1, 2), (2, 0), (3, 0), (0, 3)], 4)
        config = KatzConfig(k_max=2, degree_norm="combined", row_norm="max", boost=True)
        degrees = degree_vector(graph, DegreeMode.COMBINED)

        expected = katz_truncated(graph.adjacency, ALPHA, 2, config=config)
        expected = degree_normalize(expected, degrees)
        expected = row_normalize(expected, RowNorm.MAX)
        expected = boost_propagated(graph.adjacency, expected, RowNorm.MAX)

        sigma = build_similarity(graph, degrees, config)
        assert sigma.label == "KS_PCMB"
        assert np.allclose(sigma.matrix.toarray(), expected.matrix.toarray())

    def test_raw_boost_source_masks_the_unnormalized_sum(self):
        graph = build_trust_graph([(0, 1), (1, 2), (2, 0), (3, 0)], 4)
        config = KatzConfig(k_max=2, degree_norm="in", row_norm="l1", boost=True, boost_source=BoostSource.RAW)
        raw = katz_truncated(graph.adjacency, ALPHA, 2)
        expected = boost_propagated(graph.adjacency, raw, RowNorm.L1)
        assert np.allclose(build_similarity(graph, config=config).matrix.toarray(), expected.matrix.toarray())

    def test_transposed_convention(self):
        graph = build_trust_graph([(0, 1)], 2)
        sigma = build_similarity(graph, config=KatzConfig(k_max=1, convention="transposed"))
        assert sigma.matrix[0, 1] == pytest.approx(ALPHA)
        assert sigma.matrix[1, 0] == 0.0

    def test_mismatched_degree_vector(self):
        graph = build_trust_graph([(0, 1)], 2)
        with pytest.raises(ConfigurationError):
            build_similarity(graph, degree_vector(graph, "in"), KatzConfig(degree_norm="combined"))


def test_similarity_file_round_trip(tmp_path):
    graph = build_trust_graph([(0, 1), (1, 2), (2, 0)], 3)
    config = KatzConfig(k_max=2, degree_norm="combined", row_norm="l2", boost=True)
    sigma = build_similarity(graph, config=config)
    path = save_similarity(sigma, tmp_path / f"similarity_{sigma.label}.txt")

    loaded = load_similarity(path)
    assert loaded.config == config
    assert loaded.label == "KS_PCL2B"
    assert np.array_equal(loaded.matrix.toarray(), sigma.matrix.toarray())
    sidecar = (tmp_path / f"similarity_{sigma.label}.txt.cfg").read_text(encoding="utf-8").splitlines()
    assert sidecar[:3] == ["label=KS_PCL2B", "alpha=0.008", "kmax=2"]
    assert "boost=true" in sidecar
    assert all("=" in line and ": " not in line for line in sidecar)


def test_loading_without_a_sidecar_keeps_the_matrix(tmp_path, caplog):
    sigma = build_similarity(path_graph(), config=KatzConfig(k_max=1, row_norm="none"))
    path = save_similarity(sigma, tmp_path / "sigma.txt")
    (tmp_path / "sigma.txt.cfg").unlink()
    loaded = load_similarity(path)
    assert loaded.config is None
    assert np.array_equal(loaded.matrix.toarray(), sigma.matrix.toarray())
    assert "No provenance sidecar" in caplog.text


def test_row_access_returns_sorted_columns():
    dense = np.array([[0.0, 0.2, 0.0, 0.7], [0.0, 0.0, 0.0, 0.0], [0.5, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]])
    sigma = SimilarityMatrix(matrix=sp.csr_matrix(dense))
    users, values = sigma.row(0)
    assert users.tolist() == [1, 3]
    assert values.tolist() == [0.2, 0.7]
    assert sigma.row(1)[0].size == 0
    assert sigma.row(2)[0].dtype == np.int64
    with pytest.raises(IndexError):
        sigma.row(4)
    with pytest.raises(IndexError):
        sigma.row(-1)


if __name__ == "__main__":
    pytest.main([__file__])
