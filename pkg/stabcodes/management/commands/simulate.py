# stabcodes/management/commands/simulate.py
"""
Exact diagonalization of the stabilizer Hamiltonian of a formation.
Usage: python manage.py simulate toric --ell 2 --ground-dim [--verify-lfs] [--dump-spectrum spectrum.txt]
"""
from pathlib import Path

from django.core.management.base import CommandError

from stabcodes.management.base import StabcodesCommand
from stabcodes.services.documents import build_formation
from stabcodes.services.weyl import (
    build_hamiltonian,
    checked_ground_dim,
    clock_generators,
    dump_spectrum,
    verify_lfs,
)


class Command(StabcodesCommand):
    help = 'Build the stabilizer Hamiltonian of a formation on a torus and diagonalize it'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--ground-dim',
            action='store_true',
            help='Report the ground-space dimension'
        )
        parser.add_argument(
            '--verify-lfs',
            action='store_true',
            help='Verify that the clocks of M separate the Hilbert space and have flippers'
        )
        parser.add_argument(
            '--dump-spectrum',
            type=str,
            metavar='PATH',
            help='Write the eigenvalue multiplicity table to PATH'
        )
        parser.add_argument(
            '--section',
            choices=['auto', 'minimal'],
            default='auto',
            help='Coset representatives for the basis (default: auto)'
        )
        parser.add_argument(
            '--max-hilbert',
            type=int,
            help='Cap on the Hilbert space dimension (default: STABCODES_MAX_HILBERT_DIM)'
        )

    def run(self, document, source, **options):
        ells = options['ell'] or []
        if len(ells) != 1:
            raise CommandError('simulate takes exactly one --ell', returncode=2)
        ell = ells[0]
        fm = build_formation(document, options['name'], cap=options['max_dim'])
        h = build_hamiltonian(fm, ell, options['section'], options['max_hilbert'], options['max_dim'])
        result = {"ell": ell, "hilbert_dimension": h.rep.dimension, "terms": len(h.terms)}
        lines = [f"ℓ={ell}: Hilbert space dimension {h.rep.dimension}, {len(h.terms)} terms"]

        if options['ground_dim']:
            dimension = checked_ground_dim(h)
            result["ground_dimension"] = dimension
            lines.append(f"ground-space dimension {dimension}")

        if options['verify_lfs']:
            separators, flippers = clock_generators(h.rep)
            report = verify_lfs(h.rep, separators, flippers)
            result["lfs"] = report.as_dict()
            ok = report.commuting and report.joint_spectrum_distinct and report.flip_relations_ok
            lines.append(f"LFS: {len(separators)} separators, "
                         f"{'separating' if ok else 'NOT separating'}")
            lines.extend(f"  {detail}" for detail in report.details)

        if options['dump_spectrum']:
            path = Path(options['dump_spectrum'])
            path.write_text(dump_spectrum(h), encoding="utf-8")
            result["spectrum_path"] = str(path)
            lines.append(f"spectrum written to {path}")
        return "ok", result, lines
