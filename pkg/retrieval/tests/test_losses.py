import math

import pytest
import torch

from cipher_retrieval import batch_hard_triplets, total_loss, triplet_loss


def _v(*xs):
    return torch.tensor([[float(x)] for x in xs])


def test_printed_formula_closed_form():
    # margin + d(a,n) - d(a,p) = 0.3 + 2 - 1
    a, p, n = _v(0.0), _v(1.0), _v(2.0)
    loss = triplet_loss(a, p, n, margin=0.3)
    assert torch.allclose(loss, torch.tensor([1.3]))


def test_degenerate_triplet_equals_margin():
    a = _v(0.7)
    assert torch.allclose(triplet_loss(a, a, a, margin=0.3), torch.tensor([0.3]))


def test_clamp_at_zero():
    # the hinge clamps once the subtracted distance dominates
    a, p, n = _v(0.0), _v(10.0), _v(0.1)
    assert torch.equal(triplet_loss(a, p, n, margin=0.3), torch.tensor([0.0]))


def test_nonnegative_for_random_inputs():
    g = torch.Generator().manual_seed(0)
    for _ in range(200):
        f = torch.randn(3, 16, generator=g)
        assert triplet_loss(f[0:1], f[1:2], f[2:3], margin=0.3).item() >= 0.0


def test_batch_hard_picks_extremes():
    feats = torch.tensor([[0.0], [1.0], [5.0], [6.0]])
    labels = torch.tensor([0, 0, 1, 1])
    pos_idx, neg_idx = batch_hard_triplets(feats, labels)
    assert pos_idx.tolist() == [1, 0, 3, 2]       # farthest same-class
    assert neg_idx.tolist() == [2, 2, 1, 1]       # nearest other-class


def test_batch_hard_requires_two_classes():
    feats = torch.randn(4, 8)
    with pytest.raises(ValueError):
        batch_hard_triplets(feats, torch.tensor([0, 0, 0, 0]))
    with pytest.raises(ValueError):
        batch_hard_triplets(feats, torch.tensor([0, 1, 2, 3]))


def test_uniform_logits_give_log_k():
    k = 10
    feats = torch.tensor([[0.0, 0.0], [10.0, 10.0], [0.0, 1.0], [10.0, 11.0]])
    labels = torch.tensor([0, 0, 1, 1])
    logits = torch.zeros(4, k)
    _, _, ce = total_loss(feats, logits, labels, margin=0.3, beta=1.0)
    assert abs(ce.item() - math.log(k)) < 1e-6


def test_perfect_prediction_and_separated_clusters_give_zero():
    feats = torch.tensor([[0.0, 0.0], [0.0, 0.0], [100.0, 0.0], [100.0, 0.0]])
    labels = torch.tensor([0, 0, 1, 1])
    logits = torch.full((4, 3), -50.0)
    logits[torch.arange(4), labels] = 50.0
    loss, tl, ce = total_loss(feats, logits, labels, margin=0.3, beta=1.0)
    assert tl.item() == 0.0
    assert loss.item() < 1e-6


def test_beta_zero_drops_ce_term():
    g = torch.Generator().manual_seed(1)
    feats = torch.randn(6, 8, generator=g)
    logits = torch.randn(6, 3, generator=g)
    labels = torch.tensor([0, 0, 1, 1, 2, 2])
    loss, tl, _ = total_loss(feats, logits, labels, margin=0.3, beta=0.0)
    assert torch.equal(loss, tl)


def test_loss_decomposition_is_exact():
    g = torch.Generator().manual_seed(2)
    feats = torch.randn(6, 8, generator=g, dtype=torch.double)
    logits = torch.randn(6, 3, generator=g, dtype=torch.double)
    labels = torch.tensor([0, 0, 1, 1, 2, 2])
    loss, tl, ce = total_loss(feats, logits, labels, margin=0.3, beta=1.0)
    assert loss.item() == tl.item() + ce.item()


def test_literal_and_standard_modes_swap_roles():
    g = torch.Generator().manual_seed(3)
    feats = torch.randn(6, 8, generator=g)
    logits = torch.randn(6, 3, generator=g)
    labels = torch.tensor([0, 0, 1, 1, 2, 2])
    _, tl_std, _ = total_loss(feats, logits, labels, 0.3, 1.0, "standard")
    _, tl_lit, _ = total_loss(feats, logits, labels, 0.3, 1.0, "literal")
    pos_idx, neg_idx = batch_hard_triplets(feats, labels)
    manual_std = triplet_loss(feats, feats[neg_idx], feats[pos_idx], 0.3).mean()
    manual_lit = triplet_loss(feats, feats[pos_idx], feats[neg_idx], 0.3).mean()
    assert torch.equal(tl_std, manual_std)
    assert torch.equal(tl_lit, manual_lit)
