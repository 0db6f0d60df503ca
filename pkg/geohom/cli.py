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

import argparse
import json
import logging
import os
import sys

from .concentration import (format_fraction, level_class_data, refute_membership_report, run_sweep, sweep_summary,
                            verify_pair, write_json)
from .constants import DEFAULT_WORKERS, T_NAME, WORKERS_ENV
from .exceptions import GeohomException, InvalidInput, VerificationFailure
from .geocoding import (decompose, eisenstein_pairing, hecke_operator, level_context, log_height, word_length,
                        word_to_json)
from .modcurve import symbol_to_json, verify_poincare
from .quadforms import check_discriminant, discriminant_family, family_generator, narrow_class_group

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INVALID = 2


def setup_logging(verbose: bool = False):
    """Setup logging configuration."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


def _print_json(payload):
    print(json.dumps(payload, indent=2))


def _default_workers() -> int:
    return int(os.getenv(WORKERS_ENV, DEFAULT_WORKERS))


def main(argv=None):
    """Main CLI entry point."""
    parser = argparse.ArgumentParser(
        description="geohom - homology of closed geodesics on Y0(p) from real quadratic class groups",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Farey symbol and generators of Gamma0(11)
  geohom farey --level 11 --json

  # Geodesic of the principal class of Q(sqrt 23) on Y0(11)
  geohom geodesic --level 11 --disc 92

  # Concentration sweep up to d = 20000, written to CSV
  geohom concentrate --level 11 --max-disc 20000 --out results/concentration_p11.csv

  # Exact Hecke identity and cross-checks for one discriminant
  geohom verify --level 11 --disc 92
        """
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    farey_parser = subparsers.add_parser('farey', help='Farey symbol of level p')
    farey_parser.add_argument('--level', type=int, required=True, help='Prime level p')
    farey_parser.add_argument('--json', action='store_true', help='JSON output')
    farey_parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    geodesic_parser = subparsers.add_parser('geodesic', help='Word and homology class of a closed geodesic')
    geodesic_parser.add_argument('--level', type=int, required=True, help='Prime level p')
    geodesic_parser.add_argument('--disc', type=int, required=True, help='Fundamental discriminant d')
    geodesic_parser.add_argument('--class-index', type=int, default=0, help='Narrow class label (default: 0, the principal class)')
    geodesic_parser.add_argument('--json', action='store_true', help='JSON output')
    geodesic_parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    concentrate_parser = subparsers.add_parser('concentrate', help='Concentration sweep over qualifying discriminants')
    concentrate_parser.add_argument('--level', type=int, required=True, help='Prime level p')
    concentrate_parser.add_argument('--max-disc', type=int, required=True, help='Largest discriminant')
    concentrate_parser.add_argument('--out', help='CSV output file')
    concentrate_parser.add_argument('--json', action='store_true', help='Print rows and summary as JSON')
    concentrate_parser.add_argument('--workers', type=int, default=None, help=f'Worker threads (default: ${WORKERS_ENV} or {DEFAULT_WORKERS})')
    concentrate_parser.add_argument('--timings', action='store_true', help='Write measured elapsed_ms instead of 0')
    concentrate_parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    verify_parser = subparsers.add_parser('verify', help='Hecke identity and cross-checks for one (p, d)')
    verify_parser.add_argument('--level', type=int, required=True, help='Prime level p')
    verify_parser.add_argument('--disc', type=int, required=True, help='Fundamental discriminant d')
    verify_parser.add_argument('--json', action='store_true', help='JSON output')
    verify_parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    classgroup_parser = subparsers.add_parser('classgroup', help='Narrow class group of a discriminant')
    classgroup_parser.add_argument('--disc', type=int, required=True, help='Fundamental discriminant d')
    classgroup_parser.add_argument('--json', action='store_true', help='JSON output')
    classgroup_parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    hecke_parser = subparsers.add_parser('hecke', help='Hecke operator T_n on the homology of Y0(p)')
    hecke_parser.add_argument('--level', type=int, required=True, help='Prime level p')
    hecke_parser.add_argument('--n', type=int, required=True, help='Hecke index n')
    hecke_parser.add_argument('--json', action='store_true', help='JSON output')
    hecke_parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    refute_parser = subparsers.add_parser('refute', help='Exponent-sum membership refutation for the principal class')
    refute_parser.add_argument('--level', type=int, required=True, help='Prime level p')
    refute_parser.add_argument('--disc', type=int, required=True, help='Fundamental discriminant d')
    refute_parser.add_argument('--json', action='store_true', help='JSON output')
    refute_parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    family_parser = subparsers.add_parser('family', help='Qualifying discriminants and the n^2 + p = d m^2 cross-check')
    family_parser.add_argument('--level', type=int, required=True, help='Odd prime level p')
    family_parser.add_argument('--max-disc', type=int, required=True, help='Largest discriminant')
    family_parser.add_argument('--json', action='store_true', help='JSON output')
    family_parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_VERIFICATION

    setup_logging(getattr(args, 'verbose', False))
    logger = logging.getLogger(__name__)

    handlers = {
        'farey': handle_farey,
        'geodesic': handle_geodesic,
        'concentrate': handle_concentrate,
        'verify': handle_verify,
        'classgroup': handle_classgroup,
        'hecke': handle_hecke,
        'refute': handle_refute,
        'family': handle_family,
    }
    try:
        return handlers[args.command](args, logger)
    except KeyboardInterrupt:
        print("\nOperation cancelled by user.")
        return EXIT_VERIFICATION
    except InvalidInput as e:
        logger.error(f"Invalid input: {str(e)}")
        return EXIT_INVALID
    except VerificationFailure as e:
        logger.error(f"Verification failed: {str(e)}")
        return EXIT_VERIFICATION
    except GeohomException as e:
        logger.error(f"geohom error: {str(e)}")
        return EXIT_VERIFICATION
    except Exception as e:
        logger.error(f"Error: {str(e)}")
        return EXIT_VERIFICATION


def handle_farey(args, logger):
    """Handle the farey command."""
    ctx = level_context(args.level)
    report = verify_poincare(ctx.fs)
    payload = symbol_to_json(ctx.fs)
    if args.json:
        _print_json(payload)
    else:
        print(f"Gamma0({args.level}): g={payload['g']}, e2={payload['e2']}, e3={payload['e3']}")
        print(f"Fractions: {' '.join(payload['fractions'])}")
        print(f"Pairings: {payload['pairings']}  EVEN: {payload['even']}  ODD: {payload['odd']}")
        for name, m in payload['generators'].items():
            print(f"  {name}: {m}")
        print(f"Minimal: {payload['minimal']}")
    if not report.passed:
        for failure in report.failures:
            logger.error(failure)
        return EXIT_VERIFICATION
    return EXIT_OK


def handle_geodesic(args, logger):
    """Handle the geodesic command."""
    check_discriminant(args.disc)
    data = level_class_data(args.level, args.disc)
    if not 0 <= args.class_index < len(data):
        raise InvalidInput(f"Class index {args.class_index} out of range 0..{len(data) - 1}")
    c = data[args.class_index]
    ctx = level_context(args.level)
    word = decompose(c.gamma, ctx.fs, ctx.gens)
    payload = {
        'form': c.form.as_list(),
        'gamma': list(c.gamma.as_tuple()),
        'word': word_to_json(word),
        'homology_vector': c.vector,
        'basis': list(ctx.basis.names),
        'eisenstein_pairing': format_fraction(c.pairing),
        'word_length': word_length(word),
        'log_height': round(log_height(c.gamma), 6),
    }
    if args.json:
        _print_json(payload)
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return EXIT_OK


def handle_concentrate(args, logger):
    """Handle the concentrate command."""
    workers = args.workers if args.workers is not None else _default_workers()
    records = run_sweep(args.level, args.max_disc, args.out, workers, args.timings)
    summary = sweep_summary(records)
    if args.json:
        _print_json({'summary': summary, 'rows': [r.to_row(args.timings) for r in records]})
    else:
        logger.info(f"rows={summary['rows']} spearman={summary['spearman']} d*={summary['d_star']}")
        for r in records:
            print(f"d={r.d:>6}  h+={r.conditions.h_plus:>3}  sum={r.class_sum}  "
                  f"pairing={format_fraction(r.eis_pairing)}  sup={format_fraction(r.sup_distance)}")
    if args.out and args.out.endswith('.csv'):
        write_json(records, args.out[:-4] + '.json', args.timings)
    if not summary['all_negative']:
        return EXIT_VERIFICATION
    return EXIT_OK


def handle_verify(args, logger):
    """Handle the verify command."""
    report = verify_pair(args.level, args.disc)
    if args.json:
        _print_json(report.to_json())
    else:
        for row in report.identity.rows:
            status = "ok" if row.holds else "FAILED"
            print(f"chi={row.character}: lhs={format_fraction(row.lhs)} rhs={format_fraction(row.rhs)} [{status}]")
        print("PASSED" if report.passed else "FAILED")
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def handle_classgroup(args, logger):
    """Handle the classgroup command."""
    group = narrow_class_group(args.disc)
    payload = group.to_json()
    if args.json:
        _print_json(payload)
    else:
        print(f"d={group.d}: h+={group.h_plus}")
        for i, fc in enumerate(group.classes):
            print(f"  [{i}] {fc.fingerprint} (cycle length {len(fc.cycle)})")
    return EXIT_OK


def handle_hecke(args, logger):
    """Handle the hecke command."""
    ctx = level_context(args.level)
    rank = ctx.basis.rank
    columns = [hecke_operator([int(i == j) for j in range(rank)], args.n, ctx) for i in range(rank)]
    eisenstein = columns[0]
    pairings = [format_fraction(eisenstein_pairing(m, args.level)) for m in ctx.basis.matrices]
    payload = {'p': args.level, 'n': args.n, 'basis': list(ctx.basis.names), 'columns': columns,
               'basis_pairings': pairings}
    if args.json:
        _print_json(payload)
    else:
        print(f"T_{args.n} on H1(Y0({args.level})) in basis {list(ctx.basis.names)}:")
        for name, column in zip(ctx.basis.names, columns):
            print(f"  T_{args.n} {name} = {column}")
    logger.debug(f"T_{args.n} {T_NAME} = {eisenstein}")
    return EXIT_OK


def handle_refute(args, logger):
    """Handle the refute command."""
    check_discriminant(args.disc)
    report = refute_membership_report(args.level, args.disc)
    if args.json:
        _print_json(report.to_json())
    else:
        print(f"(p, d) = ({args.level}, {args.disc}): {report.status}"
              + (f", T-exponent {report.t_exponent}" if report.t_exponent is not None else "")
              + (f" ({report.reason})" if report.reason else ""))
    return EXIT_OK


def handle_family(args, logger):
    """Handle the family command."""
    family = discriminant_family(args.level, args.max_disc)
    generated = list(family_generator(args.level, args.max_disc))
    missing = [d for _, d, _, _ in generated if d not in family]
    if args.json:
        _print_json({'p': args.level, 'family': family,
                     'generated': [{'n': n, 'd': d, 'm': m, 'q': q} for n, d, m, q in generated],
                     'missing': missing})
    else:
        print(f"{len(family)} qualifying discriminants: {family}")
        print(f"n^2 + {args.level} = d m^2 gives {sorted({d for _, d, _, _ in generated})}")
    if missing:
        logger.error(f"Generated discriminants failing the filters: {missing}")
        return EXIT_VERIFICATION
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
