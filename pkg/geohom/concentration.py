# Copyright (C) 2024 Alexandre Mitsuru Kaihara
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""
Concentration experiment: which (p, d) qualify, class-genus sums of
geodesic homology classes, the sup-distance statistic, and the exact
Hecke genus-character identity.
"""

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from pandas import DataFrame

from .constants import CSV_COLUMNS, DECIMAL_DIGITS, DEFAULT_WORKERS
from .exactmath import Mat
from .exceptions import InvalidInput, VerificationFailure
from .geocoding import (HomologyVector, decompose, eisenstein_pairing, homology_vector, level_context,
                        membership_refutation, pairing_of_vector, word_length)
from .modcurve import verify_poincare
from .quadforms import (GenusCharacter, QuadForm, check_discriminant, dilate, discriminant_family, gamma_Q,
                        genus_characters, genus_signature, has_norm_minus_one_unit, is_fundamental_negative,
                        j_form, j_in_principal_genus, level_p_classes, narrow_class_group, p_ideal_form,
                        represented_coprime_value, sqrt_mod_4p)

logger = logging.getLogger(__name__)

HYPOTHESIS_FAILURE = "hypothesis-failure"


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_to_decimal(x: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    scaled = round(Fraction(x) * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    whole, rest = divmod(abs(scaled), 10 ** digits)
    return f"{sign}{whole}.{rest:0{digits}d}"


@dataclass
class ConditionReport:
    d: int
    p: int
    splits: bool
    r: Optional[int]
    has_norm_minus_one: bool
    j_nontrivial: bool
    j_outside_principal_genus: bool
    ap_outside_principal_genus: bool
    h_plus: int
    subgroup_order: int

    @property
    def qualifies(self) -> bool:
        return (self.splits and self.j_nontrivial and self.j_outside_principal_genus
                and self.ap_outside_principal_genus)

    def failed_condition(self) -> Optional[str]:
        if not self.splits:
            return f"p={self.p} does not split in discriminant {self.d}"
        if not self.j_nontrivial:
            return f"discriminant {self.d} has a unit of norm -1, so J = I"
        if not self.j_outside_principal_genus:
            return f"J is a square in the narrow class group of discriminant {self.d}"
        if not self.ap_outside_principal_genus:
            return f"the class of the prime above {self.p} lies in the principal genus"
        return None


def class_signatures(d: int) -> List[Tuple[int, ...]]:
    group = narrow_class_group(d)
    return [genus_signature(group.representative(i)) for i in range(group.h_plus)]


def principal_genus(d: int) -> List[int]:
    return [i for i, signature in enumerate(class_signatures(d)) if all(v == 1 for v in signature)]


def condition_report(p: int, d: int) -> ConditionReport:
    check_discriminant(d)
    group = narrow_class_group(d)
    r = None if d % p == 0 else sqrt_mod_4p(d, p)
    splits = r is not None
    ap_outside = splits and any(v == -1 for v in genus_signature(p_ideal_form(d, p, r)))
    return ConditionReport(
        d=d, p=p, splits=splits, r=r,
        has_norm_minus_one=has_norm_minus_one_unit(d),
        j_nontrivial=group.class_of(j_form(d)) != group.identity,
        j_outside_principal_genus=not j_in_principal_genus(d),
        ap_outside_principal_genus=ap_outside,
        h_plus=group.h_plus,
        subgroup_order=len(principal_genus(d)),
    )


@dataclass
class LevelClassData:
    label: int
    form: QuadForm
    gamma: Mat
    vector: HomologyVector
    pairing: Fraction
    word_length: int
    signature: Tuple[int, ...]


def level_class_data(p: int, d: int, r: Optional[int] = None) -> List[LevelClassData]:
    """Geodesic data of every level-p class, indexed by its label."""
    ctx = level_context(p)
    signatures = class_signatures(d)
    data = []
    for label, (_, Q) in enumerate(level_p_classes(d, p, r)):
        gamma = gamma_Q(Q, p)
        word = decompose(gamma, ctx.fs, ctx.gens)
        data.append(LevelClassData(label, Q, gamma, homology_vector(word, ctx.basis),
                                   eisenstein_pairing(gamma, p), word_length(word), signatures[label]))
    return data


def _sum_vectors(vectors: List[HomologyVector], rank: int) -> HomologyVector:
    total = [0] * rank
    for v in vectors:
        total = [x + y for x, y in zip(total, v)]
    return total


def _require_qualifying(p: int, d: int) -> ConditionReport:
    report = condition_report(p, d)
    if not report.qualifies:
        logger.error(f"(p, d) = ({p}, {d}) does not qualify: {report.failed_condition()}")
        raise InvalidInput(f"(p, d) = ({p}, {d}) does not qualify: {report.failed_condition()}")
    return report


def class_sum(p: int, d: int) -> HomologyVector:
    """Sum of the geodesic classes labelled by the principal genus."""
    report = _require_qualifying(p, d)
    data = level_class_data(p, d, report.r)
    rank = level_context(p).basis.rank
    return _sum_vectors([c.vector for c in data if all(v == 1 for v in c.signature)], rank)


def coset_sums(p: int, d: int) -> Dict[Tuple[int, ...], HomologyVector]:
    """Class sums over every genus, keyed by genus signature; no sign is asserted."""
    r = sqrt_mod_4p(d, p)
    if r is None:
        raise InvalidInput(f"p={p} is inert in discriminant {d}")
    rank = level_context(p).basis.rank
    sums: Dict[Tuple[int, ...], HomologyVector] = {}
    for c in level_class_data(p, d, r):
        sums[c.signature] = _sum_vectors([sums.get(c.signature, [0] * rank), c.vector], rank)
    return sums


def sup_distance(v: HomologyVector) -> Fraction:
    """|| v / ||v|| + e_T || in the sup norm."""
    norm = max(abs(x) for x in v)
    if norm == 0:
        raise InvalidInput("sup distance of the zero vector is undefined")
    shifted = [Fraction(x, norm) for x in v]
    shifted[0] += 1
    return max(abs(x) for x in shifted)


def eis_coord_maximal(v: HomologyVector) -> bool:
    return all(abs(v[0]) > abs(x) for x in v[1:])


def class_number_imag(dneg: int) -> int:
    """Number of reduced primitive forms |b| <= a <= c of discriminant dneg < 0."""
    if not is_fundamental_negative(dneg):
        raise InvalidInput(f"{dneg} is not a negative fundamental discriminant")
    count = 0
    a = 1
    while 3 * a * a <= -dneg:
        for b in range(-a + 1, a + 1):
            if (b * b - dneg) % (4 * a):
                continue
            c = (b * b - dneg) // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            if c == a and b < 0:
                continue
            count += 1
        a += 1
    return count


def unit_count(dneg: int) -> int:
    return {-3: 6, -4: 4}.get(dneg, 2)


def l_value_at_zero(chi: GenusCharacter) -> Fraction:
    """L(chi, 0) as a product of two imaginary quadratic class numbers; 0 unless both factors are negative."""
    if chi.d1 > 0 or chi.d2 > 0:
        return Fraction(0)
    return (Fraction(2 * class_number_imag(chi.d1), unit_count(chi.d1))
            * Fraction(2 * class_number_imag(chi.d2), unit_count(chi.d2)))


@dataclass
class IdentityRow:
    character: GenusCharacter
    lhs: Fraction
    rhs: Fraction
    chi_j: int
    chi_ap: int
    l_value: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {'character': [self.character.d1, self.character.d2], 'lhs': format_fraction(self.lhs),
                'rhs': format_fraction(self.rhs), 'chi_J': self.chi_j, 'chi_Ap': self.chi_ap,
                'L_chi_0': format_fraction(self.l_value), 'holds': self.holds}


@dataclass
class HeckeIdentityReport:
    p: int
    d: int
    rows: List[IdentityRow]

    @property
    def holds(self) -> bool:
        return all(row.holds for row in self.rows)

    def to_json(self) -> dict:
        return {'p': self.p, 'd': self.d, 'holds': self.holds, 'rows': [row.to_json() for row in self.rows]}


def _character_value(chi: GenusCharacter, Q: QuadForm) -> int:
    return chi.value(represented_coprime_value(Q, 2 * Q.discriminant))


def hecke_identity_check(p: int, d: int) -> HeckeIdentityReport:
    """
    sum_A <C_A, omega_E> chi(A) against 6/(p-1) (1 - chi(J)) (chi(A_p) - 1) L(chi, 0)
    for every genus character, the trivial one included.
    """
    check_discriminant(d)
    r = None if d % p == 0 else sqrt_mod_4p(d, p)
    if r is None:
        raise InvalidInput(f"p={p} does not split in discriminant {d}")
    group = narrow_class_group(d)
    data = level_class_data(p, d, r)
    ap_form = p_ideal_form(d, p, r)
    rows = []
    for chi in genus_characters(d):
        lhs = sum((c.pairing * _character_value(chi, group.representative(c.label)) for c in data), Fraction(0))
        chi_j = 1 if chi.d1 > 0 and chi.d2 > 0 else -1
        chi_ap = _character_value(chi, ap_form)
        l_value = l_value_at_zero(chi)
        rhs = Fraction(6, p - 1) * (1 - chi_j) * (chi_ap - 1) * l_value
        rows.append(IdentityRow(chi, lhs, rhs, chi_j, chi_ap, l_value))
        logger.debug(f"(p, d) = ({p}, {d}), chi = {chi}: lhs {lhs}, rhs {rhs}")
    return HeckeIdentityReport(p, d, rows)


def pairings_from_identity(p: int, d: int) -> Dict[int, Fraction]:
    """
    Pairing of each class recovered from the right-hand sides alone, by
    character inversion. Needs every genus to be a single class.
    """
    group = narrow_class_group(d)
    characters = genus_characters(d)
    if group.h_plus != len(characters):
        raise InvalidInput(f"d={d}: h+ = {group.h_plus} exceeds the {len(characters)} genus characters")
    report = hecke_identity_check(p, d)
    pairings = {}
    for label in range(group.h_plus):
        Q = group.representative(label)
        total = sum((row.rhs * _character_value(row.character, Q) for row in report.rows), Fraction(0))
        pairings[label] = total / group.h_plus
    return pairings


@dataclass
class ExperimentRecord:
    conditions: ConditionReport
    class_sum: HomologyVector
    eis_pairing: Fraction
    sup_distance: Fraction
    eis_coord_maximal: bool
    word_length_total: int
    elapsed_ms: float = 0.0

    @property
    def d(self) -> int:
        return self.conditions.d

    def to_row(self, timings: bool = False) -> dict:
        c = self.conditions
        return {
            'd': c.d,
            'h_plus': c.h_plus,
            'subgroup_order': c.subgroup_order,
            'splits': c.splits,
            'r': c.r,
            'j_nontrivial': c.j_nontrivial,
            'ap_outside_principal_genus': c.ap_outside_principal_genus,
            'class_sum': json.dumps(self.class_sum),
            'eis_pairing': format_fraction(self.eis_pairing),
            'sup_distance': format_fraction(self.sup_distance),
            'sup_distance_dec': fraction_to_decimal(self.sup_distance),
            'eis_coord_maximal': self.eis_coord_maximal,
            'word_length_total': self.word_length_total,
            'elapsed_ms': round(self.elapsed_ms, 3) if timings else 0,
        }


def compute_record(p: int, d: int) -> ExperimentRecord:
    start = time.perf_counter()
    report = _require_qualifying(p, d)
    rank = level_context(p).basis.rank
    principal = [c for c in level_class_data(p, d, report.r) if all(v == 1 for v in c.signature)]
    total = _sum_vectors([c.vector for c in principal], rank)
    pairing = sum((c.pairing for c in principal), Fraction(0))
    if pairing != pairing_of_vector(total, level_context(p).basis):
        logger.error(f"d={d}: Rademacher pairing {pairing} disagrees with the homology route")
        raise VerificationFailure(f"d={d}: pairing routes disagree")
    if pairing >= 0:
        logger.error(f"d={d}: Eisenstein pairing {pairing} is not negative")
        raise VerificationFailure(f"d={d}: Eisenstein pairing {pairing} is not negative")
    elapsed = (time.perf_counter() - start) * 1000
    return ExperimentRecord(report, total, pairing, sup_distance(total), eis_coord_maximal(total),
                            sum(c.word_length for c in principal), elapsed)


def run_sweep(p: int, d_max: int, out: Optional[str] = None, workers: int = DEFAULT_WORKERS,
              timings: bool = False) -> List[ExperimentRecord]:
    """One record per qualifying fundamental d <= d_max, ascending in d."""
    family = discriminant_family(p, d_max)
    logger.info(f"p={p}: {len(family)} qualifying discriminants up to {d_max}")
    records = []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(compute_record, p, d) for d in family]
            for future in as_completed(futures):
                records.append(future.result())
    else:
        for d in family:
            records.append(compute_record(p, d))
    records.sort(key=lambda record: record.d)
    if out:
        write_csv(records, out, timings)
    return records


def records_to_frame(records: List[ExperimentRecord], timings: bool = False) -> DataFrame:
    return DataFrame([record.to_row(timings) for record in records], columns=CSV_COLUMNS)


def write_csv(records: List[ExperimentRecord], path: str, timings: bool = False):
    records_to_frame(records, timings).to_csv(path, index=False)
    logger.info(f"{len(records)} rows written to {path}")


def sweep_summary(records: List[ExperimentRecord]) -> dict:
    """Spearman correlation of d against sup distance, and the threshold d*."""
    spearman = None
    if len(records) >= 2:
        frame = DataFrame({'d': [r.d for r in records],
                           'sup_distance': [float(r.sup_distance) for r in records]})
        value = frame['d'].rank().corr(frame['sup_distance'].rank())
        spearman = None if value != value else float(value)
    d_star = None
    for record in reversed(records):
        if not record.eis_coord_maximal:
            break
        d_star = record.d
    return {
        'rows': len(records),
        'spearman': spearman,
        'd_star': d_star,
        'all_negative': all(r.eis_pairing < 0 for r in records),
    }


def write_json(records: List[ExperimentRecord], path: str, timings: bool = False):
    payload = {'summary': sweep_summary(records), 'rows': [r.to_row(timings) for r in records]}
    with open(path, 'w') as f:
        json.dump(payload, f, indent=2)


@dataclass
class MembershipReport:
    p: int
    d: int
    status: str
    t_exponent: Optional[int] = None
    reason: Optional[str] = None
    gamma: Optional[Mat] = None

    def to_json(self) -> dict:
        return {'p': self.p, 'd': self.d, 'status': self.status, 't_exponent': self.t_exponent,
                'reason': self.reason, 'gamma': list(self.gamma.as_tuple()) if self.gamma else None}


def refute_membership_report(p: int, d: int) -> MembershipReport:
    """Exponent-sum refutation for the principal class when h+ = 2 and the wide class number is 1."""
    report = condition_report(p, d)
    reason = report.failed_condition()
    if reason is None and report.h_plus != 2:
        reason = f"h+ = {report.h_plus}, expected 2"
    if reason is not None:
        logger.warning(f"(p, d) = ({p}, {d}): {reason}")
        return MembershipReport(p, d, HYPOTHESIS_FAILURE, reason=reason)
    Q = level_p_classes(d, p, report.r)[0][1]
    gamma = gamma_Q(Q, p)
    verdict = membership_refutation(gamma, level_context(p).fs)
    return MembershipReport(p, d, verdict.status, verdict.t_exponent, gamma=gamma)


def dilation_check(p: int, d: int) -> Dict[int, int]:
    """
    Class of the p-dilation of each level-p representative. It must equal
    A J A_p^-1 for the label A, and so run over all of Cl+ exactly once.
    """
    group = narrow_class_group(d)
    r = sqrt_mod_4p(d, p)
    if r is None:
        raise InvalidInput(f"p={p} is inert in discriminant {d}")
    j = group.class_of(j_form(d))
    ap_inverse = group.inverse(group.class_of(p_ideal_form(d, p, r)))
    images = {}
    for label, (_, Q) in enumerate(level_p_classes(d, p, r)):
        image = group.class_of(dilate(Q, p))
        expected = group.multiply(group.multiply(label, j), ap_inverse)
        if image != expected:
            logger.error(f"d={d}: dilation of label {label} lands in {image}, expected {expected}")
            raise VerificationFailure(f"d={d}: dilation of label {label} lands in class {image}, not {expected}")
        images[label] = image
    if sorted(images.values()) != list(range(group.h_plus)):
        raise VerificationFailure(f"d={d}: dilations do not cover the class group")
    return images


@dataclass
class VerificationReport:
    p: int
    d: int
    failures: List[str] = field(default_factory=list)
    identity: Optional[HeckeIdentityReport] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {'p': self.p, 'd': self.d, 'passed': self.passed, 'failures': self.failures,
                'identity': self.identity.to_json() if self.identity else None}


def verify_pair(p: int, d: int) -> VerificationReport:
    """Hecke identity, pairing routes, dilation relation and polygon checks for one (p, d)."""
    report = VerificationReport(p, d)
    poincare = verify_poincare(level_context(p).fs)
    report.failures.extend(f"polygon: {failure}" for failure in poincare.failures)
    report.identity = hecke_identity_check(p, d)
    for row in report.identity.rows:
        if not row.holds:
            report.failures.append(f"identity for {row.character}: {row.lhs} != {row.rhs}")
    basis = level_context(p).basis
    for c in level_class_data(p, d):
        if pairing_of_vector(c.vector, basis) != c.pairing:
            report.failures.append(f"label {c.label}: homology pairing differs from {c.pairing}")
    try:
        dilation_check(p, d)
    except VerificationFailure as e:
        report.failures.append(str(e))
    for failure in report.failures:
        logger.error(f"(p, d) = ({p}, {d}): {failure}")
    return report
