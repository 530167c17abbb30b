from __future__ import annotations

import numpy as np
import pytest

from bermancodes.gf2 import BitVector


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def random_word(rng):
    def make(length: int) -> BitVector:
        return BitVector.from_bits(rng.integers(0, 2, length).astype(np.uint8))

    return make
