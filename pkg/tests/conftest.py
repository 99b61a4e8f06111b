# tests/conftest.py

from pathlib import Path

import pytest

from mil import parse_code
from zspec import parse_specification

FIXTURES = Path(__file__).resolve().parent.parent / 'fixtures'


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def mini_spec_path() -> Path:
    return FIXTURES / 'mini.zs'


@pytest.fixture
def mini_spec(mini_spec_path):
    return parse_specification(mini_spec_path.read_text(encoding='utf-8'), str(mini_spec_path))


@pytest.fixture
def inc_ctr_path() -> Path:
    return FIXTURES / 'inc_ctr.mil'


@pytest.fixture
def inc_ctr_source(inc_ctr_path) -> str:
    return inc_ctr_path.read_text(encoding='utf-8')


@pytest.fixture
def inc_ctr_unit(inc_ctr_source, inc_ctr_path):
    units = parse_code(inc_ctr_source, str(inc_ctr_path))
    assert len(units) == 1
    return units[0]


@pytest.fixture
def corpus_dir() -> Path:
    return FIXTURES / 'corpus'
