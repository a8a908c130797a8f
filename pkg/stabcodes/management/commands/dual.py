# stabcodes/management/commands/dual.py
"""
S-dual of a presentation and the evaluation pairing on generators.
Usage: python manage.py dual z2-chain [--name z4-pair]
"""
from stabcodes.management.base import StabcodesCommand
from stabcodes.services.documents import build_presentation
from stabcodes.services.modules import dual_pairing, s_dual


class Command(StabcodesCommand):
    help = 'Print the S-dual presentation and its pairing with the original generators'

    def run(self, document, source, **options):
        p = build_presentation(document, options['name'])
        dual = s_dual(p)
        pairing = [[str(dual_pairing(f, x)) for x in p.generators()] for f in dual.generators()]
        result = {
            "boundary": str(p.boundary),
            "dual_boundary": str(dual.boundary),
            "k0": dual.k0,
            "unit": str(dual.unit),
            "pairing": pairing,
        }
        lines = [
            f"∂   = {p.boundary}",
            f"∂*  = {dual.boundary}",
            f"k0  = {dual.k0}, unit = {dual.unit}",
            "pairing (rows: dual generators, columns: generators):",
        ]
        lines.extend("  " + "  ".join(row) for row in pairing)
        return "ok", result, lines
