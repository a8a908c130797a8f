# stabcodes/management/commands/check.py
"""
Invertibility verdict for a formation, or nonsingularity for a form.
Usage: python manage.py check toric --ell 2 [--n 4]
"""
from stabcodes.management.base import StabcodesCommand
from stabcodes.services.documents import build_form, build_formation
from stabcodes.services.formations import invertibility_check
from stabcodes.services.linking_forms import nonsingular_check


class Command(StabcodesCommand):
    help = 'Check invertibility of a formation or nonsingularity of a form'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--n',
            type=int,
            help='Ring Z/n for the d = 0 Ext computation (default: the exponent of P)'
        )

    def run(self, document, source, **options):
        section = document.section(options['name'])
        if section.kind == "form":
            return self.check_form(document, section.name, options)
        section = document.section(options['name'], "formation")
        fm = build_formation(document, section.name, cap=options['max_dim'])
        verdict = invertibility_check(fm, options['ell'], options['n'], options['max_dim'])
        lines = [f"{section.name}: {verdict.status}"]
        for item in verdict.evidence:
            details = ", ".join(f"{k}={v}" for k, v in item.items() if k not in ("check", "ok"))
            lines.append(f"  {item['check']}: {'ok' if item['ok'] else 'FAILED'} ({details})")
        if verdict.witness:
            lines.append(self.style.WARNING(f"  witness: {verdict.witness}"))
        return verdict.status, {"evidence": verdict.evidence, "witness": verdict.witness}, lines

    def check_form(self, document, name, options):
        form = build_form(document, name)
        ells = options['ell'] or (1, 2, 3)
        verdict = nonsingular_check(form, ells, options['max_dim'])
        witness = None
        if verdict.witness is not None:
            witness = {"ell": verdict.ell, "coordinates": list(verdict.witness)}
        evidence = [{"check": "radical", "ell": ell, "ok": True} for ell in verdict.checked]
        lines = [f"{name}: {verdict}"]
        if witness:
            lines.append(self.style.WARNING(f"  radical element at ℓ={verdict.ell}: {witness['coordinates']}"))
        return verdict.status, {"evidence": evidence, "witness": witness}, lines
