"""
Unit tests for exporters and loaders.
"""

import json

import pandas as pd
import pytest

from taftcleft.errors import ConfigError
from taftcleft.io import (
    export_report,
    export_to_csv,
    export_to_json,
    load_polynomial_file,
    load_report,
)


@pytest.fixture
def saved_report():
    """A minimal report dictionary in the verifier's layout."""
    return {
        'schema': 1,
        'ring': 'Z/5',
        'N': 2,
        'q': 4,
        'degree': 5,
        'summary': {'data': 20, 'classes': 10, 'counterexamples': 0},
        'counterexamples': [],
        'errors': [],
        'ok': True,
    }


class TestExporters:
    """Tests for JSON, CSV and summary export."""

    def test_json_is_stable(self, tmp_path, saved_report):
        """Equal inputs give byte-identical files."""
        first, second = tmp_path / 'a.json', tmp_path / 'b.json'
        export_to_json(saved_report, first)
        export_to_json(dict(saved_report), second)
        assert first.read_bytes() == second.read_bytes()
        assert json.loads(first.read_text()) == saved_report

    def test_json_creates_parents(self, tmp_path):
        """Missing directories are created."""
        path = tmp_path / 'nested' / 'out.json'
        export_to_json({'ok': True}, path)
        assert path.exists()

    def test_csv_from_records(self, tmp_path):
        """Lists of dictionaries become rows."""
        path = tmp_path / 'rows.csv'
        export_to_csv([{'u': 1, 'a': 0}, {'u': 2, 'a': 3}], path)
        frame = pd.read_csv(path)
        assert list(frame.columns) == ['u', 'a']
        assert frame['a'].tolist() == [0, 3]

    def test_csv_from_frame(self, tmp_path):
        """DataFrames are written without the index."""
        path = tmp_path / 'frame.csv'
        export_to_csv(pd.DataFrame({'class': [0, 0, 1]}), path)
        assert path.read_text().splitlines() == ['class', '0', '0', '1']

    def test_report_markdown(self, tmp_path, saved_report):
        """The markdown summary carries a table of the counts."""
        path = tmp_path / 'summary.md'
        export_report(saved_report, path)
        text = path.read_text()
        assert text.startswith('# Theorem verification: Z/5, N=2')
        assert '| classes | 10 |' in text

    def test_report_text(self, tmp_path, saved_report):
        """The plain-text summary lists one count per line."""
        path = tmp_path / 'summary.txt'
        export_report(saved_report, path, format='txt')
        assert 'counterexamples: 0' in path.read_text().splitlines()

    def test_report_format(self, tmp_path, saved_report):
        """Only md and txt are supported."""
        with pytest.raises(ValueError):
            export_report(saved_report, tmp_path / 'x.pdf', format='pdf')


class TestLoaders:
    """Tests for polynomial files and saved reports."""

    def test_polynomial_file(self, tmp_path):
        """Comments and blank lines are skipped."""
        path = tmp_path / 'polys.txt'
        path.write_text("# separators\nE1 - 1\n\n  G1^2 - 4*E1  # trailing\n")
        assert load_polynomial_file(path) == ['E1 - 1', 'G1^2 - 4*E1']

    def test_polynomial_file_missing(self, tmp_path):
        """A missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_polynomial_file(tmp_path / 'missing.txt')

    def test_load_report(self, tmp_path, saved_report):
        """Reports written by export_to_json load back."""
        path = tmp_path / 'report.json'
        export_to_json(saved_report, path)
        assert load_report(path)['summary']['classes'] == 10

    def test_load_report_schema(self, tmp_path, saved_report):
        """Unknown schema versions are rejected."""
        path = tmp_path / 'old.json'
        export_to_json({**saved_report, 'schema': 0}, path)
        with pytest.raises(ConfigError):
            load_report(path)
