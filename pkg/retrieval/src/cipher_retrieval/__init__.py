"""cipher_retrieval: end-to-end retrieval over encrypted JPEG images.

A gMLP network embeds decoded cipher images (as exported by `cipherjpeg
export-dataset`) into a feature space trained with a combined triplet +
cross-entropy objective; retrieval ranks by cosine distance.
"""

from .config import ModelConfig, TrainConfig
from .data import (CipherImages, balanced_batches, load_manifest,
                   stratified_split)
from .evaluate import (average_precision, cosine_distances, evaluate_bundle,
                       evaluate_features, extract_features, rank_gallery,
                       recall_at_k)
from .losses import batch_hard_triplets, total_loss, triplet_loss
from .model import GmlpBlock, RetrievalNet, SpatialGatingUnit
from .train import lr_at_epoch, train

__version__ = "0.1.0"

__all__ = [
    "CipherImages", "GmlpBlock", "ModelConfig", "RetrievalNet",
    "SpatialGatingUnit", "TrainConfig", "average_precision",
    "balanced_batches", "batch_hard_triplets", "cosine_distances",
    "evaluate_bundle", "evaluate_features", "extract_features",
    "load_manifest", "lr_at_epoch", "rank_gallery", "recall_at_k",
    "stratified_split", "total_loss", "train", "triplet_loss",
]
