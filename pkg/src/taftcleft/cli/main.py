#!/usr/bin/env python3
"""
TAFT-CLEFT Command Line Interface

Usage:
    taftcleft ring-info <ring> --N <int> [--q <elt>]
    taftcleft classify <ring> --N <int> [--q <elt>] [--csv <path>]
    taftcleft identity-check <ring> --N <int> --u <elt> --a <elt> (--pa | --qu | --poly <text> | --file <path>)
    taftcleft verify-theorem <ring> --N <int> [--degree <int>] [--json <path>] [--report <path>] [--workers <int>]
    taftcleft report <json> [--output <path>]
    taftcleft doctor
    taftcleft --help
"""

import argparse
import logging
import sys
from typing import List, Tuple

from taftcleft import __version__
from taftcleft.core import IdentityCheckResult, TaftCleft
from taftcleft.io import export_report, export_to_csv, export_to_json, load_polynomial_file, load_report
from taftcleft.settings import load_settings
from taftcleft.utils import check_import, configure_logging, format_class, format_data

logger = logging.getLogger(__name__)

# Library failures all derive from these builtins
CLI_ERRORS = (ValueError, RuntimeError, AssertionError, OSError)


class Colors:
    """ANSI color codes for terminal output."""
    HEADER = '\033[95m'
    BLUE = '\033[94m'
    CYAN = '\033[96m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    RED = '\033[91m'
    END = '\033[0m'
    BOLD = '\033[1m'
    UNDERLINE = '\033[4m'


def print_banner():
    """Print TAFT-CLEFT banner."""
    banner = f"""
{Colors.CYAN}╔════════════════════════════════════════════════════════════════╗
║                      TAFT-CLEFT v{__version__}                          ║
║      Cleft extensions of Taft algebras over finite rings       ║
╚════════════════════════════════════════════════════════════════╝{Colors.END}
    """
    print(banner)


def error(message: str) -> int:
    print(f"{Colors.RED}Error: {message}{Colors.END}")
    return 1


def mark(ok: bool) -> str:
    return f"{Colors.GREEN}✓{Colors.END}" if ok else f"{Colors.RED}✗{Colors.END}"


def make_engine(args) -> TaftCleft:
    settings = load_settings(args.config)
    if getattr(args, 'workers', None) is not None:
        settings = settings.with_overrides(workers=args.workers)
    return TaftCleft(args.ring, args.N, q=args.q, settings=settings)


def ring_info_command(args):
    """Report the ring structure and the standing hypotheses."""
    print_banner()
    try:
        engine = make_engine(args)
        report = engine.ring_report()
    except CLI_ERRORS as e:
        return error(str(e))

    print(f"{Colors.BOLD}Ring {report['ring']}{Colors.END}")
    print(f"  Elements:       {report['order']}")
    print(f"  Units:          {report['units']}")
    print(f"  Characteristic: {report['char']}")
    print(f"  alpha:          {report['alpha']}")
    print(f"  beta:           {report['beta']}")
    print(f"  Idempotents:    {report['idempotents']}")
    print(f"  Max-order generation: {mark(report['max_order_generation'])}")
    print(f"\n{Colors.BOLD}Roots of Phi_{args.N}:{Colors.END} {report['q_candidates'] or 'none'}")

    hyp = report['hypotheses']
    if hyp is None:
        print(f"{Colors.YELLOW}No root of Phi_{args.N}; no Taft algebra over this ring{Colors.END}")
    else:
        print(f"\n{Colors.BOLD}Hypotheses (q={hyp['q']}):{Colors.END}")
        print(f"  N is a unit:        {mark(hyp['n_is_unit'])}")
        print(f"  gcd(N, char) = 1:   {mark(hyp['gcd_ok'])}")
        print(f"  o(q) = N:           {mark(hyp['order_q'] == args.N)} (o(q)={hyp['order_q']})")
        print(f"  1 - q is a unit:    {mark(hyp['one_minus_q_unit'])}")
        if hyp['hypotheses_ok']:
            print(f"\n{Colors.GREEN}Hypotheses ok{Colors.END}")
        else:
            print(f"\n{Colors.YELLOW}Hypotheses fail{Colors.END}")

    if args.json:
        export_to_json(report, args.json)
        print(f"\n{Colors.GREEN}Report exported to {args.json}{Colors.END}")
    return 0


def classify_command(args):
    """List the isomorphism classes of the data (u, a, 0)."""
    print_banner()
    try:
        engine = make_engine(args)
        classes = engine.classify()
    except CLI_ERRORS as e:
        return error(str(e))

    data_count = sum(len(c) for c in classes)
    print(f"{Colors.BOLD}{engine.ring.spec}, N={engine.N}, q={engine.q}:{Colors.END} "
          f"{data_count} data, {len(classes)} classes\n")
    for i, members in enumerate(classes):
        print(f"  [{i:3}] {format_class(members)}")

    if args.json:
        export_to_json({
            'ring': engine.ring.spec,
            'N': engine.N,
            'q': engine.q.to_json(),
            'classes': [[d.to_dict(with_b=False) for d in members] for members in classes],
        }, args.json)
        print(f"\n{Colors.GREEN}Classes exported to {args.json}{Colors.END}")
    if args.csv:
        export_to_csv(engine.classify_frame(), args.csv)
        print(f"{Colors.GREEN}Class table exported to {args.csv}{Colors.END}")
    return 0


def _polynomials(args, engine: TaftCleft, d) -> List[Tuple[str, object]]:
    if args.pa:
        return [('P_a', engine.separator('Pa', d))]
    if args.qu:
        return [('Q_u', engine.separator('Qu', d))]
    if args.poly:
        return [(None, args.poly)]
    return [(None, text) for text in load_polynomial_file(args.file)]


def identity_check_command(args):
    """Check polynomials against every comodule algebra map into B_(u,a,b)."""
    print_banner()
    try:
        engine = make_engine(args)
        d = engine.data(args.u, args.a, args.b)
        results: List[IdentityCheckResult] = [
            engine.identity_check(d, poly, label=label)
            for label, poly in _polynomials(args, engine, d)
        ]
    except CLI_ERRORS as e:
        return error(str(e))

    print(f"{Colors.BOLD}B_{d} over {engine.ring.spec}, N={engine.N}, q={engine.q}{Colors.END}\n")
    for r in results:
        name = f"{r.label}: " if r.label else ''
        print(f"  {name}{r.polynomial}")
        if r.is_identity:
            print(f"    {Colors.GREEN}identity holds (all {r.maps_checked} maps vanish){Colors.END}")
        else:
            print(f"    {Colors.RED}not an identity, witness {r.witness}{Colors.END}")

    if args.json:
        export_to_json([r.to_dict() for r in results], args.json)
        print(f"\n{Colors.GREEN}Results exported to {args.json}{Colors.END}")
    return 0 if all(r.is_identity for r in results) else 1


def verify_theorem_command(args):
    """Run the exhaustive verifier."""
    print_banner()
    try:
        engine = make_engine(args)
        report = engine.verify(degree=args.degree, width=args.width,
                               check_identities=args.check_identities)
    except CLI_ERRORS as e:
        return error(str(e))

    summary = report.summary()
    print(f"{Colors.BOLD}{report.ring_spec}, N={report.N}, q={report.q}, D={report.degree}{Colors.END}\n")
    print(f"  Data:             {summary['data']}")
    print(f"  Classes:          {summary['classes']}")
    print(f"  Pairs:            {summary['pairs']}")
    print(f"  Isomorphic pairs: {summary['isomorphic_pairs']}")
    for method, count in summary['methods'].items():
        print(f"    {method:22} {count}")
    print(f"  iso => equal fingerprints violated:  {summary['iso_but_fingerprints_differ']}")
    print(f"  equal fingerprints => iso violated:  {summary['fingerprints_equal_but_not_iso']}")
    if report.separators_confirmed is None:
        print(f"  Separators confirmed: {Colors.YELLOW}skipped{Colors.END}")
    else:
        print(f"  Separators confirmed: {mark(report.separators_confirmed)}")
    print(f"  Counterexamples:  {summary['counterexamples']}")
    print(f"  Undecided:        {summary['undecided']}")

    for message in report.errors[:10]:
        print(f"  {Colors.RED}{message}{Colors.END}")

    if args.json:
        export_to_json(report.to_dict(), args.json)
        print(f"\n{Colors.GREEN}Report exported to {args.json}{Colors.END}")
    if args.csv:
        export_to_csv(report.to_frame(), args.csv)
        print(f"{Colors.GREEN}Pair table exported to {args.csv}{Colors.END}")
    if args.report:
        export_report(report.to_dict(), args.report, format=_report_format(args.report))
        print(f"{Colors.GREEN}Summary written to {args.report}{Colors.END}")

    if report.ok:
        print(f"\n{Colors.GREEN}✅ 0 counterexamples{Colors.END}")
        return 0
    print(f"\n{Colors.RED}Verification failed{Colors.END}")
    for p in report.counterexamples[:10]:
        print(f"  {format_data(p.first)} vs {format_data(p.second)}: "
              f"fingerprints_equal={p.fingerprints_equal}, isomorphic={p.isomorphic} ({p.method})")
    return 1


def _report_format(path: str) -> str:
    return 'txt' if path.endswith('.txt') else 'md'


def report_command(args):
    """Summarize a saved verifier report."""
    print_banner()
    try:
        report = load_report(args.input)
    except CLI_ERRORS as e:
        return error(str(e))

    print(f"{Colors.BOLD}{report['ring']}, N={report['N']}, q={report['q']}, D={report['degree']}{Colors.END}\n")
    for key, value in report.get('summary', {}).items():
        print(f"  {key:32} {value}")
    print(f"\n  ok: {mark(report.get('ok', False))}")

    if args.output:
        try:
            export_report(report, args.output, format=_report_format(args.output))
        except CLI_ERRORS as e:
            return error(str(e))
        print(f"\n{Colors.GREEN}Summary written to {args.output}{Colors.END}")
    return 0 if report.get('ok') else 1


def doctor_command(args):
    """Run system diagnostics."""
    print_banner()
    print(f"\n{Colors.BOLD}Running system diagnostics...{Colors.END}\n")

    checks = [
        ("Python version", sys.version.split()[0], True),
        ("NumPy", check_import('numpy'), True),
        ("SymPy", check_import('sympy'), True),
        ("PyYAML", check_import('yaml'), True),
        ("Pandas", check_import('pandas'), True),
        ("pytest", check_import('pytest'), None),
        ("Hypothesis", check_import('hypothesis'), None),
    ]

    all_good = True

    for name, version, required in checks:
        if version is True:
            status = f"{Colors.GREEN}✓{Colors.END}"
        elif version:
            status = f"{Colors.GREEN}✓{Colors.END} (v{version})"
        else:
            status = f"{Colors.RED}✗ Not installed{Colors.END}"
            if required:
                all_good = False

        print(f"  {name:20} {status}")

    print(f"\n{Colors.BOLD}Settings:{Colors.END}")
    try:
        settings = load_settings(args.config)
    except CLI_ERRORS as e:
        return error(str(e))
    for key, value in settings.to_dict().items():
        print(f"  {key:24} {value}")

    if all_good:
        print(f"\n{Colors.GREEN}✅ All systems operational!{Colors.END}")
        return 0
    print(f"\n{Colors.YELLOW}⚠️ Required components missing{Colors.END}")
    return 1


def version_command(args):
    """Show version information."""
    print_banner()
    return 0


def _add_ring_arguments(parser):
    parser.add_argument('ring', help='Ring spec, e.g. "Z/5", "GF(2^2)", "F_5[t]/(t^2)", "Z/5 x Z/5"')
    parser.add_argument('--N', type=int, required=True, help='Taft parameter N >= 2')
    parser.add_argument('--q', help='Root of Phi_N (default: first root)')
    parser.add_argument('--json', help='Write a JSON report')


def create_parser():
    """Create argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='Settings YAML (default: $TAFTCLEFT_CONFIG or built-in)')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v INFO, -vv DEBUG')

    parser = argparse.ArgumentParser(
        description="TAFT-CLEFT: cleft extensions of Taft algebras over finite rings",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  taftcleft ring-info Z/5 --N 2                       # Ring structure and hypotheses
  taftcleft classify "GF(2^2)" --N 3                  # Isomorphism classes
  taftcleft identity-check Z/5 --N 2 --u 2 --a 3 --pa # Check P_a on B_(2,3)
  taftcleft verify-theorem Z/7 --N 3 --json out.json  # Exhaustive verifier
        """
    )

    parser.add_argument('--version', action='store_true', help='Show version')

    subparsers = parser.add_subparsers(dest='command', help='Commands')

    # Ring info command
    ring_parser = subparsers.add_parser('ring-info', parents=[common], help='Ring structure and hypotheses')
    _add_ring_arguments(ring_parser)

    # Classify command
    classify_parser = subparsers.add_parser('classify', parents=[common], help='Isomorphism classes')
    _add_ring_arguments(classify_parser)
    classify_parser.add_argument('--csv', help='Write the class table as CSV')

    # Identity check command
    identity_parser = subparsers.add_parser('identity-check', parents=[common],
                                            help='Check polynomial identities')
    _add_ring_arguments(identity_parser)
    identity_parser.add_argument('--u', required=True, help='Unit u')
    identity_parser.add_argument('--a', required=True, help='Element a')
    identity_parser.add_argument('--b', default='0', help='Element b (default 0)')
    which = identity_parser.add_mutually_exclusive_group(required=True)
    which.add_argument('--pa', action='store_true', help='Check P_a')
    which.add_argument('--qu', action='store_true', help='Check Q_u')
    which.add_argument('--poly', help='Check a polynomial, e.g. "E1 - 1"')
    which.add_argument('--file', help='Check every polynomial in a file')

    # Verify theorem command
    verify_parser = subparsers.add_parser('verify-theorem', parents=[common],
                                          help='Exhaustive theorem verifier')
    _add_ring_arguments(verify_parser)
    verify_parser.add_argument('--degree', type=int, help='Degree bound (default max(2N, alpha+beta))')
    verify_parser.add_argument('--width', type=int, default=1, help='Symbol copies in fingerprints')
    verify_parser.add_argument('--csv', help='Write the pair table as CSV')
    verify_parser.add_argument('--report', help='Write a markdown (.md) or text (.txt) summary')
    verify_parser.add_argument('--workers', type=int, help='Worker processes')
    verify_parser.add_argument('--check-identities', action='store_true', default=None,
                               help='Confirm every separator (default)')
    verify_parser.add_argument('--skip-identity-check', dest='check_identities', action='store_false', default=None,
                               help='Skip separator confirmation; separator pairs become undecided')

    # Report command
    report_parser = subparsers.add_parser('report', parents=[common], help='Summarize a saved JSON report')
    report_parser.add_argument('input', help='JSON report written by verify-theorem --json')
    report_parser.add_argument('--output', help='Write a markdown (.md) or text (.txt) summary')

    # Doctor command
    subparsers.add_parser('doctor', parents=[common], help='Run system diagnostics')

    # Version command
    subparsers.add_parser('version', parents=[common], help='Show version')

    return parser


def main(args=None):
    """Main entry point."""
    parser = create_parser()
    args = parser.parse_args(args)
    configure_logging(getattr(args, 'verbose', 0))

    if args.version:
        print_banner()
        return 0

    if not args.command:
        parser.print_help()
        return 0

    # Execute command
    commands = {
        'ring-info': ring_info_command,
        'classify': classify_command,
        'identity-check': identity_check_command,
        'verify-theorem': verify_theorem_command,
        'report': report_command,
        'doctor': doctor_command,
        'version': version_command,
    }

    return commands[args.command](args)


# CLI entry point
def cli():
    """Entry point for console script."""
    sys.exit(main())


if __name__ == '__main__':
    cli()
