"""Training loop: Adam with linear warmup and stepped decay."""

import csv
from pathlib import Path

import numpy as np
import torch

from .config import ModelConfig, TrainConfig
from .data import CipherImages, balanced_batches, load_manifest, stratified_split
from .losses import total_loss
from .model import RetrievalNet


def lr_at_epoch(cfg: TrainConfig, epoch: int) -> float:
    """Epoch is 0-based; linear warmup then x lr_decay at each decay epoch."""
    if cfg.warmup_epochs > 0 and epoch < cfg.warmup_epochs:
        return cfg.base_lr * (epoch + 1) / cfg.warmup_epochs
    lr = cfg.base_lr
    for boundary in cfg.decay_epochs:
        if epoch + 1 >= boundary:
            lr *= cfg.lr_decay
    return lr


def train(manifest_path, model_cfg: ModelConfig, train_cfg: TrainConfig,
          out_dir=None, progress=None):
    """Train on the manifest's 70% split; returns (model, history, bundle).

    `bundle` carries everything evaluation needs: weights, configs,
    normalization stats, class names and the held-out test entries.
    """
    torch.manual_seed(train_cfg.seed)
    entries = load_manifest(manifest_path)
    train_entries, test_entries = stratified_split(entries, 0.7, train_cfg.seed)
    classes = sorted({e.label for e in entries})
    if model_cfg.num_classes != len(classes):
        raise ValueError(f"manifest has {len(classes)} classes, "
                         f"config says {model_cfg.num_classes}")

    data = CipherImages(train_entries, classes)
    mean, std = data.channel_stats()
    images = data.normalized(mean, std)
    labels = data.labels

    model = RetrievalNet(model_cfg)
    optimizer = torch.optim.Adam(model.parameters(), lr=train_cfg.base_lr)
    rng = np.random.default_rng(train_cfg.seed)

    history = []
    model.train()
    for epoch in range(train_cfg.epochs):
        lr = lr_at_epoch(train_cfg, epoch)
        for group in optimizer.param_groups:
            group["lr"] = lr
        losses = []
        for batch in balanced_batches(labels, train_cfg.batch_classes,
                                      train_cfg.batch_per_class, rng):
            x = images[batch]
            y = labels[batch]
            features, logits = model(x)
            loss, l_tl, l_ce = total_loss(features, logits, y,
                                          train_cfg.margin, train_cfg.beta,
                                          train_cfg.triplet)
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            losses.append((loss.item(), l_tl.item(), l_ce.item()))
        epoch_mean = [float(np.mean([l[i] for l in losses])) for i in range(3)]
        history.append({"epoch": epoch + 1, "lr": lr,
                        "loss": epoch_mean[0], "triplet": epoch_mean[1],
                        "ce": epoch_mean[2]})
        if progress:
            progress(history[-1])

    bundle = {
        "state_dict": model.state_dict(),
        "model_cfg": model_cfg,
        "train_cfg": train_cfg,
        "mean": mean,
        "std": std,
        "classes": classes,
        "test_entries": [(str(e.path), e.label) for e in test_entries],
    }
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        torch.save(bundle, out_dir / "checkpoint.pt")
        with open(out_dir / "loss_log.csv", "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(history[0]))
            writer.writeheader()
            writer.writerows(history)
    return model, history, bundle
