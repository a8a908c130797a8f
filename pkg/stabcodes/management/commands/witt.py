# stabcodes/management/commands/witt.py
"""
Gauss–Milgram signatures and Witt invariants of finite quadratic forms.
Usage: python manage.py witt witt-corpus [--name z3] [--against z3-bar] [--copies 4 --lagrangian]
"""
from stabcodes.management.base import StabcodesCommand
from stabcodes.services.documents import build_quadratic
from stabcodes.services.witt import copies, find_lagrangian, witt_equivalence, witt_invariants


class Command(StabcodesCommand):
    help = 'Witt invariants of the quadratic forms in a document'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--against',
            type=str,
            help='Decide Witt equivalence of --name against this section'
        )
        parser.add_argument(
            '--copies',
            type=int,
            default=1,
            help='Orthogonal sum of this many copies of the form (default: 1)'
        )
        parser.add_argument(
            '--lagrangian',
            action='store_true',
            help='Search for a lagrangian subgroup'
        )

    def run(self, document, source, **options):
        cap = options['max_group']
        names = [options['name']] if options['name'] else document.names("quadratic")
        forms = []
        lines = []
        result = {"forms": forms}
        for name in names:
            q = build_quadratic(document, name)
            if options['copies'] > 1:
                q = copies(q, options['copies'])
            invariants = witt_invariants(q, cap)
            entry = {"name": name, "copies": options['copies'], "invariants": invariants.as_dict()}
            line = f"{name}: σ = {invariants.sigma} mod 8, |D| = {invariants.group_order}"
            if invariants.per_prime:
                line += ", " + ", ".join(f"p={p}: {v}" for p, v in sorted(invariants.per_prime.items()))
            if options['lagrangian']:
                found = find_lagrangian(q, cap)
                entry["lagrangian"] = [list(g) for g in found] if found is not None else None
                line += f", lagrangian {'found' if found is not None else 'none'}"
            forms.append(entry)
            lines.append(line)

        if options['against']:
            first = build_quadratic(document, names[0])
            other = build_quadratic(document, options['against'])
            outcome = witt_equivalence(first, other, cap)
            result["equivalence"] = outcome
            lines.append(f"{names[0]} vs {options['against']}: {outcome}")
        return "ok", result, lines
