"""
Unit tests for settings loading.
"""

from pathlib import Path

import pytest

from taftcleft.errors import ConfigError
from taftcleft.settings import Settings, load_settings
from taftcleft.utils.constants import CONFIG_ENV_VAR, DEFAULT_SETTINGS


class TestSettings:
    """Tests for the Settings dataclass."""

    def test_defaults(self):
        """Defaults mirror DEFAULT_SETTINGS."""
        assert Settings().to_dict() == DEFAULT_SETTINGS

    def test_rejects_non_positive(self):
        """Budgets must be positive."""
        with pytest.raises(ConfigError):
            Settings(workers=0)

    def test_rejects_non_integer(self):
        """Budgets must be integers."""
        with pytest.raises(ConfigError):
            Settings(chunk_size='big')
        with pytest.raises(ConfigError):
            Settings(workers=True)

    def test_seed_may_be_zero(self):
        """The random seed is not a budget."""
        assert Settings(random_seed=0).random_seed == 0

    def test_from_dict_unknown_key(self):
        """Unknown keys are configuration errors."""
        with pytest.raises(ConfigError, match='frobnicate'):
            Settings.from_dict({'frobnicate': 1})

    def test_with_overrides(self):
        """None overrides are ignored."""
        settings = Settings()
        assert settings.with_overrides(workers=None) is settings
        assert settings.with_overrides(workers=4).workers == 4
        assert settings.workers == DEFAULT_SETTINGS['workers']


class TestLoadSettings:
    """Tests for YAML loading."""

    def test_no_file(self, monkeypatch):
        """Without a path or environment variable the defaults apply."""
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        assert load_settings() == Settings()

    def test_section(self, settings_file):
        """Entries under 'taftcleft' merge over the defaults."""
        settings = load_settings(settings_file)
        assert settings.workers == 2
        assert settings.chunk_size == 64
        assert settings.max_ring_elements == DEFAULT_SETTINGS['max_ring_elements']

    def test_flat_file(self, tmp_path):
        """A file without a section is read as flat settings."""
        path = tmp_path / 'flat.yaml'
        path.write_text("max_fingerprint_words: 50\n")
        assert load_settings(path).max_fingerprint_words == 50

    def test_environment_variable(self, settings_file, monkeypatch):
        """TAFTCLEFT_CONFIG names the file when no path is given."""
        monkeypatch.setenv(CONFIG_ENV_VAR, str(settings_file))
        assert load_settings().workers == 2

    def test_unknown_key_in_file(self, tmp_path):
        """Typos in a settings file are reported."""
        path = tmp_path / 'bad.yaml'
        path.write_text("taftcleft:\n  wokers: 3\n")
        with pytest.raises(ConfigError):
            load_settings(path)

    def test_not_a_mapping(self, tmp_path):
        """A list at top level is rejected."""
        path = tmp_path / 'list.yaml'
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            load_settings(path)

    def test_shipped_config(self):
        """The shipped default file loads cleanly."""
        path = Path(__file__).resolve().parents[2] / 'config' / 'taftcleft.default.yaml'
        assert load_settings(path) == Settings()
