"""Model and training configuration."""

from dataclasses import dataclass, field


@dataclass
class ModelConfig:
    num_classes: int
    image_height: int
    image_width: int
    patch_size: int = 8
    depth: int = 12
    dim: int = 128

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.dim % 2:
            raise ValueError("dim must be even (the gating unit splits channels)")
        if (self.image_height * self.image_width) % (self.patch_size ** 2) \
                or self.image_height % self.patch_size or self.image_width % self.patch_size:
            raise ValueError("image dimensions must be divisible by the patch size")

    @property
    def num_patches(self) -> int:
        return (self.image_height * self.image_width) // (self.patch_size ** 2)


@dataclass
class TrainConfig:
    epochs: int = 70
    batch_classes: int = 10      # P
    batch_per_class: int = 5     # Q; P*Q = batch size 50
    margin: float = 0.3
    beta: float = 1.0
    base_lr: float = 3.5e-4
    warmup_epochs: int = 10
    decay_epochs: tuple = (40, 70)
    lr_decay: float = 0.1
    triplet: str = "standard"    # "standard" or "literal" role assignment
    seed: int = 0

    def __post_init__(self):
        if self.margin <= 0:
            raise ValueError("margin must be positive")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if self.triplet not in ("standard", "literal"):
            raise ValueError("triplet must be 'standard' or 'literal'")

    @property
    def batch_size(self) -> int:
        return self.batch_classes * self.batch_per_class
