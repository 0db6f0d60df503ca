#!/usr/bin/env python3
"""Tests for the experiment driver that runs sweeps and collects summaries."""

import sys
from pathlib import Path

import pandas as pd
import pytest

# Add the project root to the Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from experiment.concentration_experiment import runAll, runConcentration, saveFile, sweepFile
from experiment.constants import SUMMARY_COLUMNS, SUMMARY_CSV


def test_sweep_file():
    assert sweepFile(11, "concentration_p%n.csv") == "concentration_p11.csv"


def test_run_concentration(tmp_path):
    summary = runConcentration(11, 100, str(tmp_path), workers=1)
    assert summary['p'] == 11
    assert summary['all_negative']
    assert (tmp_path / "concentration_p11.csv").exists()
    assert (tmp_path / "concentration_p11.json").exists()


def test_run_all_appends_summaries(tmp_path):
    runAll([11], 100, str(tmp_path), workers=1)
    runAll([11], 100, str(tmp_path), workers=1)
    frame = pd.read_csv(tmp_path / SUMMARY_CSV)
    assert list(frame.columns) == SUMMARY_COLUMNS
    assert len(frame) == 2


def test_save_file_concatenates(tmp_path):
    path = str(tmp_path / "rows.csv")
    saveFile(pd.DataFrame({'d': [12]}), path)
    saveFile(pd.DataFrame({'d': [60]}), path)
    assert list(pd.read_csv(path)['d']) == [12, 60]


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
