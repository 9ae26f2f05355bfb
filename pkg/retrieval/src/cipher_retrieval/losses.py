"""Training objective: triplet term plus cross entropy.

`triplet_loss` is the margin hinge exactly as published, with sim() the
Euclidean distance:

    max(margin + sim(f_a, f_n) - sim(f_a, f_p), 0)

Note the sign: written this way the hinge *rewards* pulling negatives
inside the positive radius, which is what the formula literally says
when sim is a distance; read as a similarity it is the conventional
triplet loss.  The trainer's "standard" mode therefore feeds the mined
positive in the negative slot and vice versa, recovering

    max(margin + d(f_a, f_p) - d(f_a, f_n), 0),

while "literal" mode keeps the printed role assignment.  Batch-hard
mining picks, per anchor, the farthest same-class and nearest
other-class sample within the batch.
"""

import torch
import torch.nn.functional as F


def triplet_loss(f_a, f_p, f_n, margin: float):
    """Per-sample hinge, the printed formula taken literally."""
    d_ap = torch.linalg.vector_norm(f_a - f_p, dim=-1)
    d_an = torch.linalg.vector_norm(f_a - f_n, dim=-1)
    return torch.clamp(margin + d_an - d_ap, min=0.0)


def batch_hard_triplets(features, labels):
    """Indices of (hardest positive, hardest negative) per anchor.

    Requires every anchor to have at least one same-class partner and
    one other-class sample in the batch.
    """
    dists = torch.cdist(features, features)
    same = labels[:, None] == labels[None, :]
    eye = torch.eye(len(labels), dtype=torch.bool, device=labels.device)
    pos_mask = same & ~eye
    neg_mask = ~same
    if not pos_mask.any(dim=1).all() or not neg_mask.any(dim=1).all():
        raise ValueError("batch needs >=2 classes and >=2 samples per class")
    pos_idx = torch.where(pos_mask, dists, torch.full_like(dists, -torch.inf)).argmax(dim=1)
    neg_idx = torch.where(neg_mask, dists, torch.full_like(dists, torch.inf)).argmin(dim=1)
    return pos_idx, neg_idx


def total_loss(features, logits, labels, margin: float, beta: float,
               triplet: str = "standard"):
    """L_A = L_TL + beta * L_CE; returns (L_A, L_TL, L_CE)."""
    pos_idx, neg_idx = batch_hard_triplets(features, labels)
    f_p, f_n = features[pos_idx], features[neg_idx]
    if triplet == "standard":
        tl = triplet_loss(features, f_n, f_p, margin)
    elif triplet == "literal":
        tl = triplet_loss(features, f_p, f_n, margin)
    else:
        raise ValueError("triplet must be 'standard' or 'literal'")
    l_tl = tl.mean()
    l_ce = F.cross_entropy(logits, labels)
    return l_tl + beta * l_ce, l_tl, l_ce
