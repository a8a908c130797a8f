# stabcodes/management/commands/degeneracy.py
"""
Ground-space degeneracy sqrt|F_ℓ^⊥/F_ℓ| of a formation on each torus.
Usage: python manage.py degeneracy toric --ell 2
"""
from django.core.management.base import CommandError

from stabcodes.management.base import StabcodesCommand
from stabcodes.services.documents import build_formation
from stabcodes.tasks import degeneracy_at_ell


class Command(StabcodesCommand):
    help = 'Compute the degeneracy of a formation for each torus size'

    def run(self, document, source, **options):
        fm = build_formation(document, options['name'], cap=options['max_dim'])
        ells = (1,) if fm.dimension == 0 else self.ells(options)
        pending = [degeneracy_at_ell.delay(self.source_text, options['name'], ell, options['max_dim'])
                   for ell in ells]
        degeneracies = []
        lines = []
        for outcome in (job.get() for job in pending):
            if outcome["status"] != "success":
                raise CommandError(f"ℓ={outcome['ell']}: {outcome['message']}", returncode=1)
            outcome = {k: outcome[k] for k in ("ell", "degeneracy", "index")}
            degeneracies.append(outcome)
            lines.append(f"ℓ={outcome['ell']}: degeneracy {outcome['degeneracy']} "
                         f"(|F^⊥/F| = {outcome['index']})")
        return "ok", {"degeneracies": degeneracies}, lines
