import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from reviewkit.labeler import LexiconPosTagger
from reviewkit.sectioner import LexiconTitleClassifier


@pytest.fixture(scope="session")
def tagger():
    return LexiconPosTagger()


@pytest.fixture(scope="session")
def classifier():
    return LexiconTitleClassifier()
