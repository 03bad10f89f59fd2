"""Tests for environment-driven settings."""
import pytest

from isingdual.config import DEFAULT_MAX_ENUM_BITS, DEFAULT_SEED, SAMPLE_BLOCK, Settings
from isingdual.errors import UsageError


def test_defaults():
    s = Settings.from_env({})
    assert s == Settings()
    assert s.seed == DEFAULT_SEED == 1729
    assert s.threads == 1
    assert s.log_level == "WARNING"
    assert s.max_enum_bits == DEFAULT_MAX_ENUM_BITS


def test_block_size_is_fixed():
    assert SAMPLE_BLOCK == 4096


def test_environment_overrides():
    s = Settings.from_env({
        'ISINGDUAL_SEED': '0x10',
        'ISINGDUAL_THREADS': '4',
        'ISINGDUAL_LOG_LEVEL': 'debug',
        'ISINGDUAL_MAX_ENUM_BITS': '20',
    })
    assert s.seed == 16
    assert s.threads == 4
    assert s.log_level == "DEBUG"
    assert s.max_enum_bits == 20


def test_blank_values_use_defaults():
    assert Settings.from_env({'ISINGDUAL_SEED': '  '}).seed == DEFAULT_SEED


def test_threads_at_least_one():
    assert Settings.from_env({'ISINGDUAL_THREADS': '0'}).threads == 1


def test_bad_integer():
    with pytest.raises(UsageError, match="ISINGDUAL_SEED"):
        Settings.from_env({'ISINGDUAL_SEED': 'abc'})


def test_reads_process_environment(monkeypatch):
    monkeypatch.setenv('ISINGDUAL_SEED', '99')
    assert Settings.from_env().seed == 99
