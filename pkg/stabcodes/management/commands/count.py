# stabcodes/management/commands/count.py
"""
|M_ℓ| for a presentation, checked against k0^(ℓ^d).
Usage: python manage.py count z2-chain --ell 3 [--ell 4]
"""
from django.core.management.base import CommandError

from stabcodes.management.base import StabcodesCommand
from stabcodes.services.documents import build_presentation
from stabcodes.tasks import count_at_ell


class Command(StabcodesCommand):
    help = 'Count the compactified module M_ℓ for each torus size'

    def run(self, document, source, **options):
        build_presentation(document, options['name'])
        pending = [count_at_ell.delay(self.source_text, options['name'], ell, options['max_dim'])
                   for ell in self.ells(options)]
        counts = []
        lines = []
        for outcome in (job.get() for job in pending):
            if outcome["status"] != "success":
                raise CommandError(f"ℓ={outcome['ell']}: {outcome['message']}", returncode=1)
            outcome = {k: outcome[k] for k in ("ell", "order", "expected", "check")}
            counts.append(outcome)
            lines.append(f"ℓ={outcome['ell']}: {outcome['order']} (k0^(ℓ^d) = {outcome['expected']}, "
                         f"check={'ok' if outcome['check'] else 'FAILED'})")
        return "ok", {"counts": counts}, lines
