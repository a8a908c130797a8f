# stabcodes/management/commands/validate.py
"""
Parse a code document and build every section (or one, with --name).
Usage: python manage.py validate toric [--name toric] [--normalize]
"""
from stabcodes.management.base import StabcodesCommand
from stabcodes.services.documents import build_section, print_document


def summarize(kind: str, value) -> str:
    if kind == "presentation":
        return f"{value.n}x{value.n} over d={value.dimension}, k0={value.k0}"
    if kind == "form":
        return f"ε={value.epsilon:+d} on {value.n} generators, d={value.dimension}"
    if kind == "formation":
        return f"M: {value.m.generators.cols} generators, F: {value.f.generators.cols} generators"
    if kind == "quadratic":
        return f"invariants {list(value.invariants)}"
    return f"{value.modes} modes, {len(value.generators)} generators"


class Command(StabcodesCommand):
    help = 'Parse and validate a code document'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--normalize',
            action='store_true',
            help='Print the document in canonical form'
        )

    def run(self, document, source, **options):
        names = [options['name']] if options['name'] else document.names()
        sections = []
        lines = []
        for name in names:
            kind = document.section(name).kind
            summary = summarize(kind, build_section(document, name))
            sections.append({"name": name, "kind": kind, "summary": summary})
            lines.append(self.style.SUCCESS(f"✓ [{kind} {name}] {summary}"))
        result = {"sections": sections}
        if options['normalize']:
            text = print_document(document)
            result["normalized"] = text
            lines = [text.rstrip("\n")]
        return "ok", result, lines
