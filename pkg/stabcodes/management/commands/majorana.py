# stabcodes/management/commands/majorana.py
"""
Majorana code checks and the exhaustive κ comparison.
Usage: python manage.py majorana --check-code majorana-pairs [--name pairs]
       python manage.py majorana --verify-kappa 3
"""
from django.core.management.base import CommandError

from stabcodes.management.base import StabcodesCommand
from stabcodes.services.corpus import read_source
from stabcodes.services.documents import build_majorana, parse_document
from stabcodes.services.majorana import is_majorana_code, verify_kappa


class Command(StabcodesCommand):
    help = 'Validate Majorana stabilizer codes and the modified commutation rule'
    document_required = False

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--check-code',
            type=str,
            metavar='DOCUMENT',
            help='Document or corpus name with [majorana] sections to check'
        )
        parser.add_argument(
            '--verify-kappa',
            type=int,
            metavar='N',
            help='Compare the modified commutator with κ on all pairs of 2N-bit strings'
        )

    def run(self, document, source, **options):
        if not options['check_code'] and not options['verify_kappa']:
            raise CommandError('Give --check-code and/or --verify-kappa', returncode=2)
        result = {}
        lines = []
        if options['check_code']:
            _, text = read_source(options['check_code'])
            doc = parse_document(text)
            names = [options['name']] if options['name'] else doc.names("majorana")
            codes = []
            for name in names:
                data = build_majorana(doc, name)
                report = is_majorana_code(data.generators)
                codes.append({"name": name, "modes": data.modes, **report.as_dict()})
                lines.append(f"{name}: {'code' if report.ok else 'not a code'}")
                lines.extend(f"  {line}" for line in report.diagnostics)
            result["codes"] = codes

        if options['verify_kappa']:
            n = options['verify_kappa']
            if n < 1:
                raise CommandError('--verify-kappa must be positive', returncode=2)
            pairs, mismatches = verify_kappa(n)
            result["kappa"] = {"n": n, "pairs": pairs, "mismatches": len(mismatches)}
            lines.append(f"n={n}: {pairs} pairs, {len(mismatches)} mismatches")
        return "ok", result, lines
