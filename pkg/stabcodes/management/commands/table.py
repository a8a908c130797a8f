# stabcodes/management/commands/table.py
"""
Lookup tables for the classification groups E_d and the L-groups.
Usage: python manage.py table --d 3 [--l-groups]
"""
from stabcodes.management.base import StabcodesCommand
from stabcodes.services.witt import e_d_table, l_group

DEFAULT_DEGREES = range(-1, 9)


class Command(StabcodesCommand):
    help = 'Print E_d (and optionally the L-groups) for the given degrees'
    document_required = False

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--d',
            type=int,
            action='append',
            help='Degree; repeat for several (default: -1 through 8)'
        )
        parser.add_argument(
            '--l-groups',
            action='store_true',
            help='Also print L^q(Z), L^s(Z) and L^s(Q) in the same degrees'
        )

    def run(self, document, source, **options):
        degrees = options['d'] or list(DEFAULT_DEGREES)
        rows = []
        lines = []
        for d in degrees:
            entry = e_d_table(d)
            rows.append({"kind": "E", "degree": d, "group": entry.group, "components": entry.components})
            lines.append(str(entry))
            if options['l_groups']:
                for kind, label in (("q", "L^q_{n}(Z)"), ("s", "L^s_{n}(Z)"), ("Q", "L^s_{n}(Q)")):
                    group = l_group(d, kind)
                    rows.append({"kind": f"L{kind}", "degree": d, "group": group.group,
                                 "components": group.components})
                    lines.append(f"  {label.format(n=d)} = {group.group}")
        return "ok", {"rows": rows}, lines
