"""gMLP retrieval backbone.

The cipher image is cut into non-overlapping patches, linearly projected
to `dim`, and a learnable class token is prepended.  Each of the `depth`
blocks normalizes, projects, gates across tokens with a spatial gating
unit, projects back, and adds the residual:

    U = LP(LN(X));  V = gelu(U);  O = LP(SGU(V)) + X

SGU splits channels in half, layer-normalizes the second half, mixes it
across tokens with a learned (S+1)x(S+1) projection, and multiplies the
result into the first half.  The spatial projection starts near zero
with bias one, so a fresh block is close to the identity.

Token 0 after the last block represents the image: the feature head
maps it to the retrieval embedding, the classifier head to logits.
"""

import torch
from torch import nn

from .config import ModelConfig


class SpatialGatingUnit(nn.Module):
    def __init__(self, dim: int, tokens: int):
        super().__init__()
        self.norm = nn.LayerNorm(dim // 2)
        self.proj = nn.Linear(tokens, tokens)
        nn.init.normal_(self.proj.weight, std=1e-4)
        nn.init.ones_(self.proj.bias)

    def forward(self, v):
        gate, mix = v.chunk(2, dim=-1)
        mix = self.norm(mix)
        mix = self.proj(mix.transpose(-1, -2)).transpose(-1, -2)
        return gate * mix


class GmlpBlock(nn.Module):
    def __init__(self, dim: int, tokens: int):
        super().__init__()
        self.norm = nn.LayerNorm(dim)
        self.proj_in = nn.Linear(dim, dim)
        self.act = nn.GELU()
        self.sgu = SpatialGatingUnit(dim, tokens)
        self.proj_out = nn.Linear(dim // 2, dim)

    def forward(self, x):
        u = self.proj_in(self.norm(x))
        v = self.act(u)
        return self.proj_out(self.sgu(v)) + x

    def zero_mixer_path_(self):
        """Make the block exactly the identity map."""
        nn.init.zeros_(self.proj_out.weight)
        nn.init.zeros_(self.proj_out.bias)


class RetrievalNet(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        patch_dim = 3 * cfg.patch_size ** 2
        tokens = cfg.num_patches + 1
        self.patch_embed = nn.Linear(patch_dim, cfg.dim)
        self.cls_token = nn.Parameter(torch.zeros(1, 1, cfg.dim))
        nn.init.normal_(self.cls_token, std=0.02)
        self.blocks = nn.ModuleList(
            GmlpBlock(cfg.dim, tokens) for _ in range(cfg.depth))
        self.feature_head = nn.Linear(cfg.dim, cfg.dim)
        self.feature_norm = nn.BatchNorm1d(cfg.dim)
        self.classifier = nn.Linear(cfg.dim, cfg.num_classes)

    def patchify(self, images):
        """(B, 3, H, W) -> (B, S+1, dim) token sequences with class token."""
        cfg = self.cfg
        b, c, h, w = images.shape
        if (h, w) != (cfg.image_height, cfg.image_width):
            raise ValueError(f"expected {cfg.image_height}x{cfg.image_width} input")
        p = cfg.patch_size
        patches = images.reshape(b, c, h // p, p, w // p, p)
        patches = patches.permute(0, 2, 4, 1, 3, 5).reshape(b, cfg.num_patches, -1)
        tokens = self.patch_embed(patches)
        cls = self.cls_token.expand(b, -1, -1).to(tokens.dtype)
        return torch.cat([cls, tokens], dim=1)

    def forward(self, images):
        """Returns (features f_t, class logits)."""
        x = self.patchify(images)
        for block in self.blocks:
            x = block(x)
        f_t = self.feature_head(x[:, 0])
        pred = self.classifier(self.feature_norm(f_t))
        return f_t, pred
