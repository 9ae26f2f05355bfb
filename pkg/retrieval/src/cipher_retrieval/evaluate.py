"""Retrieval evaluation: cosine ranking, mAP, Recall@K."""

import json
from pathlib import Path

import numpy as np
import torch

from .data import CipherImages
from .model import RetrievalNet


def extract_features(model, images, batch_size=64):
    model.eval()
    chunks = []
    with torch.no_grad():
        for start in range(0, len(images), batch_size):
            f_t, _ = model(images[start:start + batch_size])
            chunks.append(f_t)
    return torch.cat(chunks)


def cosine_distances(queries, gallery):
    q = queries / torch.linalg.vector_norm(queries, dim=1, keepdim=True).clamp_min(1e-12)
    g = gallery / torch.linalg.vector_norm(gallery, dim=1, keepdim=True).clamp_min(1e-12)
    return 1.0 - q @ g.T


def rank_gallery(distances):
    """Ascending distance; exact ties broken by gallery id."""
    d = distances.numpy() if isinstance(distances, torch.Tensor) else np.asarray(distances)
    ids = np.arange(d.shape[1])
    return np.stack([np.lexsort((ids, row)) for row in d])


def average_precision(relevant_flags) -> float:
    relevant_flags = np.asarray(relevant_flags, dtype=bool)
    total = relevant_flags.sum()
    if total == 0:
        return 0.0
    hits = np.cumsum(relevant_flags)
    ranks = np.arange(1, len(relevant_flags) + 1)
    return float(np.sum((hits / ranks)[relevant_flags]) / total)


def recall_at_k(relevant_flags, k: int) -> float:
    relevant_flags = np.asarray(relevant_flags, dtype=bool)
    total = relevant_flags.sum()
    if total == 0:
        return 0.0
    return float(relevant_flags[:k].sum() / total)


def evaluate_features(features, labels, ks=(10, 30)):
    """Leave-one-out retrieval over one set: each item queries the rest."""
    if len(features) < 2:
        raise ValueError("need at least two items to evaluate")
    labels = np.asarray(labels)
    dists = cosine_distances(features, features)
    dists.fill_diagonal_(torch.inf)  # leave-one-out: never retrieve self
    order = rank_gallery(dists)
    aps, recalls = [], {k: [] for k in ks}
    for i in range(len(features)):
        ranked_no_self = order[i][order[i] != i]
        flags = labels[ranked_no_self] == labels[i]
        aps.append(average_precision(flags))
        for k in ks:
            recalls[k].append(recall_at_k(flags, k))
    metrics = {"map": float(np.mean(aps))}
    for k in ks:
        metrics[f"recall{k}"] = float(np.mean(recalls[k]))
    return metrics


def evaluate_bundle(bundle, ks=(10, 30), out_path=None):
    """Evaluate a training bundle on its held-out test split."""
    from .data import ManifestEntry

    model = RetrievalNet(bundle["model_cfg"])
    model.load_state_dict(bundle["state_dict"])
    entries = [ManifestEntry(path=Path(p), label=label, width=0, height=0, qf=0)
               for p, label in bundle["test_entries"]]
    data = CipherImages(entries, bundle["classes"])
    images = data.normalized(bundle["mean"], bundle["std"])
    features = extract_features(model, images)
    metrics = evaluate_features(features, data.labels.numpy(), ks)
    if out_path is not None:
        Path(out_path).write_text(json.dumps(metrics, indent=2) + "\n")
    return metrics
