import random

import pytest
from hypothesis import settings

# Wall-clock deadlines make property tests flaky on loaded machines.
settings.register_profile("ci", deadline=None)
settings.load_profile("ci")

from t9swipe import data
from t9swipe.layout import KeyboardGeometry
from t9swipe.predictor import Lexicon
from t9swipe.session import load_phrase_set


@pytest.fixture(scope="session")
def geometry():
    return KeyboardGeometry()


@pytest.fixture(scope="session")
def lexicon():
    """The bundled full lexicon; loaded once per test session."""
    return Lexicon.from_tsv(data.default_lexicon_path())


@pytest.fixture(scope="session")
def phrase_set():
    return load_phrase_set(data.default_phrase_set_path())


@pytest.fixture
def small_lexicon():
    return Lexicon({"in": 9000, "go": 5000, "ho": 10, "apple": 200, "the": 9500, "dog": 400})


@pytest.fixture(scope="session")
def word_sample(lexicon):
    """1000 lexicon words, fixed across runs."""
    return random.Random(7).sample(sorted(lexicon.words()), 1000)
