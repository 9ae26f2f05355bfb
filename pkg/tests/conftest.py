import numpy as np
import pytest

from cipherjpeg import MasterKey, synthetic_image

CORPUS_SIZE = 100
FIDELITY_SIZE = 20


@pytest.fixture(scope="session")
def master_key():
    return MasterKey.from_hex("9f" * 32)


@pytest.fixture(scope="session")
def second_key():
    return MasterKey.from_hex("3c" * 32)


@pytest.fixture(scope="session")
def corpus100():
    """Leakage/compliance corpus; a few non-aligned sizes exercise padding."""
    sizes = [(192, 128)] * 90 + [(201, 147), (160, 120), (128, 128), (100, 84),
                                 (256, 176), (144, 96), (176, 132), (224, 160),
                                 (120, 104), (192, 144)]
    return [synthetic_image(w, h, seed=1000 + i) for i, (w, h) in enumerate(sizes)]


@pytest.fixture(scope="session")
def fidelity20():
    return [synthetic_image(192, 128, seed=2000 + i) for i in range(FIDELITY_SIZE)]
