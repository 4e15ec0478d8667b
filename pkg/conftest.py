import os
import random
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.config import DEFAULT_SEED, RunConfig


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def np_rng():
    return np.random.default_rng(DEFAULT_SEED)


@pytest.fixture
def run_config(tmp_path):
    return RunConfig(output_dir=str(tmp_path))
