import numpy as np
import pytest

from sparsegm import (CovarianceSummary, ParameterError, lossless_partition,
                      lossy_neighborhoods)


def corr_from(off, d):
    s = np.eye(d)
    for (i, j), v in off.items():
        s[i, j] = s[j, i] = v
    return CovarianceSummary(s=s, n=100)


def random_summary(d, seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((d + 5, d))
    s = np.corrcoef(x, rowvar=False)
    np.fill_diagonal(s, 1.0)
    return CovarianceSummary(s=s, n=d + 5)


def components_bruteforce(s, lam):
    """Independent oracle: BFS over the |S| > lam graph."""
    d = s.shape[0]
    adj = (np.abs(s) > lam) & ~np.eye(d, dtype=bool)
    seen = set()
    blocks = []
    for start in range(d):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            i = stack.pop()
            if i in comp:
                continue
            comp.add(i)
            stack.extend(np.nonzero(adj[i])[0].tolist())
        seen |= comp
        blocks.append(tuple(sorted(comp)))
    return sorted(blocks)


class TestLosslessPartition:
    def test_all_singletons_above_max(self):
        summary = random_summary(6, 0)
        lam = np.abs(summary.s - np.eye(6)).max() + 0.01
        part = lossless_partition(summary, lam)
        assert sorted(tuple(b) for b in part.blocks) == [(i,) for i in range(6)]

    def test_single_block_at_zero(self):
        summary = corr_from({(0, 1): 0.2, (0, 2): 0.1, (1, 2): 0.05,
                             (0, 3): 0.3, (1, 3): 0.1, (2, 3): 0.2}, 4)
        part = lossless_partition(summary, 0.0)
        assert [sorted(b.tolist()) for b in part.blocks] == [[0, 1, 2, 3]]

    def test_block_diagonal_case(self):
        summary = corr_from({(0, 1): 0.5, (2, 3): 0.5, (0, 2): 0.1,
                             (0, 3): 0.1, (1, 2): 0.1, (1, 3): 0.1}, 4)
        part = lossless_partition(summary, 0.2)
        assert sorted(tuple(b.tolist()) for b in part.blocks) == [(0, 1), (2, 3)]

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("lam", [0.05, 0.2, 0.5, 0.9])
    def test_matches_bruteforce_components(self, seed, lam):
        summary = random_summary(12, seed)
        part = lossless_partition(summary, lam)
        assert (sorted(tuple(b.tolist()) for b in part.blocks)
                == components_bruteforce(summary.s, lam))

    def test_partition_covers_all_nodes_disjointly(self):
        summary = random_summary(15, 3)
        part = lossless_partition(summary, 0.3)
        all_nodes = np.concatenate([b for b in part.blocks])
        assert sorted(all_nodes.tolist()) == list(range(15))

    def test_larger_lambda_refines(self):
        summary = random_summary(14, 7)
        coarse = lossless_partition(summary, 0.1).blocks
        fine = lossless_partition(summary, 0.4).blocks
        coarse_sets = [set(b.tolist()) for b in coarse]
        for b in fine:
            assert any(set(b.tolist()) <= c for c in coarse_sets)

    def test_relabeling_equivariance(self):
        summary = random_summary(10, 9)
        perm = np.random.default_rng(1).permutation(10)
        s2 = summary.s[np.ix_(perm, perm)]
        a = lossless_partition(summary, 0.25)
        b = lossless_partition(CovarianceSummary(s=s2, n=summary.n), 0.25)
        # position p of the permuted matrix holds original node perm[p],
        # so mapping b's blocks through perm recovers a's partition
        assert sorted(tuple(sorted(perm[blk].tolist())) for blk in b.blocks) \
            == sorted(tuple(blk.tolist()) for blk in a.blocks)

    def test_negative_lambda_rejected(self):
        with pytest.raises(ParameterError):
            lossless_partition(random_summary(4, 0), -0.1)


class TestLossyNeighborhoods:
    def test_full_k_keeps_everyone(self):
        summary = random_summary(6, 2)
        plan = lossy_neighborhoods(summary, 5)
        for j in range(6):
            assert plan.candidates[j].tolist() == [i for i in range(6) if i != j]

    def test_top_k_by_magnitude(self):
        summary = corr_from({(0, 1): 0.9, (0, 2): 0.2, (0, 3): 0.5,
                             (1, 2): 0.1, (1, 3): 0.1, (2, 3): 0.1}, 4)
        plan = lossy_neighborhoods(summary, 2)
        assert plan.candidates[0].tolist() == [1, 3]

    def test_tie_breaks_to_smaller_index(self):
        summary = corr_from({(0, 1): 0.4, (0, 2): 0.4, (1, 2): 0.1}, 3)
        plan = lossy_neighborhoods(summary, 1)
        assert plan.candidates[0].tolist() == [1]

    def test_self_excluded_and_sizes(self):
        summary = random_summary(9, 5)
        for k in (1, 4, 8):
            plan = lossy_neighborhoods(summary, k)
            for j in range(9):
                assert j not in plan.candidates[j]
                assert len(plan.candidates[j]) == k

    @pytest.mark.parametrize("seed", range(4))
    def test_monotone_in_k(self, seed):
        summary = random_summary(10, seed + 20)
        prev = None
        for k in range(1, 10):
            plan = lossy_neighborhoods(summary, k)
            if prev is not None:
                for j in range(10):
                    assert set(prev[j].tolist()) <= set(plan.candidates[j].tolist())
            prev = plan.candidates

    def test_k_out_of_range(self):
        summary = random_summary(5, 1)
        with pytest.raises(ParameterError):
            lossy_neighborhoods(summary, 0)
        with pytest.raises(ParameterError):
            lossy_neighborhoods(summary, 5)

    def test_edge_mask_is_symmetric_union(self):
        summary = random_summary(7, 8)
        plan = lossy_neighborhoods(summary, 2)
        mask = plan.edge_mask()
        assert np.array_equal(mask, mask.T)
        assert not mask.diagonal().any()
        for j in range(7):
            assert mask[j, plan.candidates[j]].all()
