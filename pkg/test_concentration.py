#!/usr/bin/env python3
"""
Tests for geohom.concentration: qualifying conditions, class sums, the
Hecke genus-character identity and the sweep output.
"""

import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import pandas as pd
import pytest

# Add the project root to the Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from geohom.concentration import (HYPOTHESIS_FAILURE, ConditionReport, ExperimentRecord, class_number_imag,
                                  class_sum, compute_record, condition_report, coset_sums, dilation_check,
                                  eis_coord_maximal, format_fraction, fraction_to_decimal, hecke_identity_check,
                                  l_value_at_zero, level_class_data, pairings_from_identity, principal_genus,
                                  records_to_frame, refute_membership_report, run_sweep, sup_distance,
                                  sweep_summary, verify_pair, write_json)
from geohom.constants import CSV_COLUMNS, FULL_SWEEP_ENV
from geohom.exceptions import InvalidInput
from geohom.geocoding import REFUTED
from geohom.quadforms import GenusCharacter, discriminant_family


def test_format_fraction():
    assert format_fraction(Fraction(-9, 5)) == "-9/5"
    assert format_fraction(Fraction(3)) == "3/1"


def test_fraction_to_decimal():
    assert fraction_to_decimal(Fraction(1, 2)) == "0.500000000000"
    assert fraction_to_decimal(Fraction(-1, 3)) == "-0.333333333333"
    assert fraction_to_decimal(Fraction(2, 3)) == "0.666666666667"
    assert fraction_to_decimal(Fraction(7, 4), 3) == "1.750"


def test_class_number_imag():
    assert class_number_imag(-3) == 1
    assert class_number_imag(-4) == 1
    assert class_number_imag(-20) == 2
    assert class_number_imag(-23) == 3
    assert class_number_imag(-56) == 4
    with pytest.raises(InvalidInput):
        class_number_imag(-12)


def test_l_value_at_zero():
    assert l_value_at_zero(GenusCharacter(-4, -23)) == Fraction(3, 2)
    assert l_value_at_zero(GenusCharacter(-4, -3)) == Fraction(1, 6)
    assert l_value_at_zero(GenusCharacter(1, 92)) == 0


def test_condition_report():
    report = condition_report(11, 92)
    assert report.qualifies
    assert report.failed_condition() is None
    assert (report.r, report.h_plus, report.subgroup_order) == (2, 2, 1)
    assert not condition_report(11, 5).qualifies
    assert "norm -1" in condition_report(11, 5).failed_condition()
    inert = condition_report(7, 12)
    assert not inert.splits and inert.r is None
    assert "does not split" in inert.failed_condition()


def test_condition_report_rejects_square_j():
    report = condition_report(11, 136)
    assert report.splits and report.j_nontrivial
    assert not report.has_norm_minus_one
    assert not report.j_outside_principal_genus
    assert not report.qualifies
    assert "square" in report.failed_condition()
    with pytest.raises(InvalidInput):
        compute_record(11, 136)


def test_principal_genus():
    assert principal_genus(92) == [0]
    assert principal_genus(60) == [0]


def test_level_class_data():
    data = level_class_data(11, 92)
    assert [c.label for c in data] == [0, 1]
    assert data[0].vector == [-2, 1, 0]
    assert data[0].pairing == Fraction(-9, 5)
    assert data[1].pairing == Fraction(9, 5)
    assert data[0].signature == (1,)
    assert data[1].signature == (-1,)


def test_class_sum():
    assert class_sum(11, 92) == [-2, 1, 0]
    with pytest.raises(InvalidInput):
        class_sum(11, 5)


def test_coset_sums():
    sums = coset_sums(11, 92)
    assert sums[(1,)] == [-2, 1, 0]
    assert set(sums) == {(1,), (-1,)}


def test_sup_distance():
    assert sup_distance([-2, 1, 0]) == Fraction(1, 2)
    assert sup_distance([-3, 0, 0]) == 0
    assert sup_distance([3, 0, 0]) == 2
    with pytest.raises(InvalidInput):
        sup_distance([0, 0, 0])


def test_eis_coord_maximal():
    assert eis_coord_maximal([-2, 1, 0])
    assert not eis_coord_maximal([1, 1, 0])
    assert eis_coord_maximal([5])


@pytest.mark.parametrize('d,expected', [(92, Fraction(-18, 5)), (12, Fraction(-2, 5))])
def test_hecke_identity(d, expected):
    report = hecke_identity_check(11, d)
    assert report.holds
    trivial, nontrivial = report.rows
    assert trivial.rhs == 0 and trivial.lhs == 0
    assert nontrivial.rhs == expected
    assert nontrivial.chi_j == -1 and nontrivial.chi_ap == -1


def test_hecke_identity_across_family():
    for d in discriminant_family(11, 400):
        assert hecke_identity_check(11, d).holds


def test_hecke_identity_requires_split_prime():
    with pytest.raises(InvalidInput):
        hecke_identity_check(7, 12)


def test_pairings_from_identity():
    assert pairings_from_identity(11, 92) == {0: Fraction(-9, 5), 1: Fraction(9, 5)}
    assert pairings_from_identity(11, 12)[0] == Fraction(-1, 5)


def test_compute_record():
    record = compute_record(11, 92)
    assert record.d == 92
    assert record.class_sum == [-2, 1, 0]
    assert record.eis_pairing == Fraction(-9, 5)
    assert record.sup_distance == Fraction(1, 2)
    assert record.eis_coord_maximal
    assert record.word_length_total == sum(c.word_length for c in level_class_data(11, 92) if c.signature == (1,))
    row = record.to_row()
    assert row['class_sum'] == "[-2, 1, 0]"
    assert row['eis_pairing'] == "-9/5"
    assert row['sup_distance_dec'] == "0.500000000000"
    assert row['elapsed_ms'] == 0
    assert list(row) == CSV_COLUMNS


def test_run_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    records = run_sweep(11, 200, str(out))
    family = discriminant_family(11, 200)
    assert [r.d for r in records] == family
    assert all(r.eis_pairing < 0 for r in records)
    frame = pd.read_csv(out)
    assert list(frame.columns) == CSV_COLUMNS
    assert list(frame['d']) == family
    assert (frame['elapsed_ms'] == 0).all()


def test_run_sweep_workers_match():
    serial = run_sweep(11, 150)
    threaded = run_sweep(11, 150, workers=3)
    assert [r.to_row() for r in serial] == [r.to_row() for r in threaded]


def test_run_sweep_up_to_400():
    records = run_sweep(11, 400)
    assert 136 not in [r.d for r in records]
    assert all(r.eis_pairing < 0 for r in records)
    assert all(r.conditions.qualifies for r in records)


def test_csv_is_deterministic(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    run_sweep(11, 400, str(first))
    run_sweep(11, 400, str(second), workers=4)
    assert first.read_text() == second.read_text()


def _record(d: int, maximal: bool, distance: Fraction) -> ExperimentRecord:
    conditions = ConditionReport(d, 11, True, 1, False, True, True, True, 2, 1)
    return ExperimentRecord(conditions, [-2, 1, 0], Fraction(-1), distance, maximal, 3)


def test_sweep_summary():
    records = [_record(12, True, Fraction(3, 4)), _record(60, False, Fraction(1, 2)),
               _record(92, True, Fraction(1, 3)), _record(120, True, Fraction(1, 5))]
    summary = sweep_summary(records)
    assert summary['rows'] == 4
    assert summary['d_star'] == 92
    assert summary['spearman'] == pytest.approx(-1.0)
    assert summary['all_negative']
    assert sweep_summary([])['d_star'] is None
    assert sweep_summary([records[0]])['spearman'] is None


def test_write_json(tmp_path):
    path = tmp_path / "sweep.json"
    write_json([_record(12, True, Fraction(1, 2))], str(path))
    payload = json.loads(path.read_text())
    assert payload['summary']['d_star'] == 12
    assert payload['rows'][0]['sup_distance'] == "1/2"
    assert records_to_frame([_record(12, True, Fraction(1, 2))]).shape == (1, len(CSV_COLUMNS))


def test_refute_membership_report():
    report = refute_membership_report(11, 92)
    assert report.status == REFUTED
    assert report.t_exponent == -2
    failure = refute_membership_report(11, 60)
    assert failure.status == HYPOTHESIS_FAILURE
    assert "h+ = 4" in failure.reason
    assert refute_membership_report(11, 5).status == HYPOTHESIS_FAILURE


@pytest.mark.parametrize('d', [12, 60, 92])
def test_dilation_check(d):
    images = dilation_check(11, d)
    assert sorted(images.values()) == list(range(len(images)))


def test_verify_pair():
    report = verify_pair(11, 92)
    assert report.passed, report.failures
    assert report.to_json()['identity']['holds']


@pytest.mark.skipif(not os.getenv(FULL_SWEEP_ENV), reason='set GEOHOM_FULL_SWEEP to run')
def test_full_sweep(tmp_path):
    workers = int(os.getenv('GEOHOM_WORKERS', '4'))
    first, second = tmp_path / "serial.csv", tmp_path / "threaded.csv"
    records = run_sweep(11, 20000, str(first))
    run_sweep(11, 20000, str(second), workers=workers)
    assert first.read_text() == second.read_text()
    assert all(r.eis_pairing < 0 for r in records)
    summary = sweep_summary(records)
    assert summary['all_negative']
    assert summary['spearman'] < 0
    assert summary['d_star'] is not None and summary['d_star'] <= 20000
    row = next(r for r in records if r.d == 92)
    assert row.sup_distance == Fraction(1, 2)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
