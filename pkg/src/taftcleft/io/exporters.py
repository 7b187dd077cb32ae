"""
TAFT-CLEFT Data Exporters

Functions for exporting reports in various formats.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

import pandas as pd


def export_to_json(
    data: Any,
    output_path: Union[str, Path],
    indent: int = 2
):
    """
    Export data to JSON file.

    Output is byte-stable for equal inputs: key order is preserved and no
    timestamps are added.

    Args:
        data: Data to export
        output_path: Output file path
        indent: JSON indentation
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    with open(output_path, 'w') as f:
        json.dump(data, f, indent=indent, default=str)
        f.write('\n')


def export_to_csv(
    data: Union[pd.DataFrame, Dict[str, Any], List[Dict[str, Any]]],
    output_path: Union[str, Path],
    include_header: bool = True
):
    """
    Export a table to CSV file.

    Args:
        data: DataFrame, dictionary or list of dictionaries
        output_path: Output file path
        include_header: Whether to include header row
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    if isinstance(data, dict):
        data = [data]
    frame = data if isinstance(data, pd.DataFrame) else pd.DataFrame(data)
    frame.to_csv(output_path, index=False, header=include_header)


def export_report(
    report: Dict[str, Any],
    output_path: Union[str, Path],
    format: str = 'md'
):
    """
    Write a human-readable summary of a verifier report.

    Args:
        report: VerifierReport.to_dict() output
        output_path: Output file path
        format: 'md' (markdown) or 'txt'
    """
    if format not in ('md', 'txt'):
        raise ValueError(f"Unsupported report format: {format}")
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    summary = report.get('summary', {})

    with open(output_path, 'w') as f:
        if format == 'md':
            f.write(f"# Theorem verification: {report.get('ring')}, N={report.get('N')}\n\n")
            f.write("| Metric | Value |\n")
            f.write("|--------|-------|\n")
            f.write(f"| q | {report.get('q')} |\n")
            f.write(f"| Degree bound | {report.get('degree')} |\n")
            for key, value in summary.items():
                f.write(f"| {key} | {value} |\n")
            f.write(f"| ok | {report.get('ok')} |\n")
            if report.get('counterexamples'):
                f.write("\n## Counterexamples\n\n")
                for pair in report['counterexamples']:
                    f.write(f"- {pair['first']} vs {pair['second']} ({pair['method']})\n")
            if report.get('errors'):
                f.write("\n## Errors\n\n")
                for error in report['errors']:
                    f.write(f"- {error}\n")
        else:
            f.write(f"THEOREM VERIFICATION: {report.get('ring')}, N={report.get('N')}\n")
            f.write("=" * 50 + "\n\n")
            for key, value in summary.items():
                f.write(f"{key}: {value}\n")
            f.write(f"ok: {report.get('ok')}\n")
