import pytest

import synthdata
from urduseg import FeatureTemplateSet, TrainConfig, split_corpus, train


@pytest.fixture(scope="session")
def synth_split():
    """A 2000-sentence synthetic corpus split 80/20."""
    corpus = synthdata.make_corpus(2000, seed=13)
    return split_corpus(corpus, 0.8, seed=7)


@pytest.fixture(scope="session")
def synth_model(synth_split):
    """Full-template model trained on the synthetic training side."""
    train_corpus, _ = synth_split
    config = TrainConfig(max_iterations=200)
    return train(train_corpus, FeatureTemplateSet(), config)
