import pytest

from montague import data_path, load_grammar, load_lexicon, load_model


@pytest.fixture(scope="session")
def g1():
    return load_grammar(data_path("g1.grammar"))


@pytest.fixture(scope="session")
def french():
    return load_grammar(data_path("francais.grammar"))


@pytest.fixture(scope="session")
def lex():
    return load_lexicon(data_path("francais.lexicon"))


@pytest.fixture(scope="session")
def monde():
    return load_model(data_path("monde.model"))


@pytest.fixture(scope="session")
def monde_alexia():
    return load_model(data_path("monde_alexia.model"))
