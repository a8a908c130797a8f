# stabcodes/management/base.py
"""
Shared plumbing for the stabcodes management commands.

Each command implements `run(document, **options)` returning
(status, result, lines); the base class prints `lines` or the JSON
report and turns library errors into exit status 1.
"""
import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from stabcodes.exceptions import StabCodeError
from stabcodes.services.corpus import read_source
from stabcodes.services.documents import parse_document
from stabcodes.services.reports import make_report, render_json

logger = logging.getLogger(__name__)


class StabcodesCommand(BaseCommand):
    document_required = True

    def add_arguments(self, parser):
        if self.document_required:
            parser.add_argument(
                'document',
                type=str,
                help='Path to a code document, or the name of a built-in corpus entry'
            )
        parser.add_argument(
            '--name',
            type=str,
            help='Section of the document to use (default: the first of the right kind)'
        )
        parser.add_argument(
            '--json',
            action='store_true',
            help='Emit a machine-readable JSON report'
        )
        parser.add_argument(
            '--ell',
            type=int,
            action='append',
            help='Torus size; repeat for several (default: STABCODES_DEFAULT_ELLS)'
        )
        parser.add_argument(
            '--max-dim',
            type=int,
            help='Cap on n·ℓ^d for compactification (default: STABCODES_MAX_COMPACT_DIM)'
        )
        parser.add_argument(
            '--max-group',
            type=int,
            help='Cap on enumerated group orders (default: STABCODES_MAX_GROUP_ORDER)'
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def ells(self, options) -> tuple:
        ells = options.get('ell') or settings.STABCODES_DEFAULT_ELLS
        if any(ell < 1 for ell in ells):
            raise CommandError('--ell must be positive', returncode=2)
        return tuple(ells)

    def run(self, document, source, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        source = options.pop('document', None)
        document = None
        self.source_text = None
        try:
            if source is not None:
                source, self.source_text = read_source(source)
                document = parse_document(self.source_text)
            status, result, lines = self.run(document, source, **options)
        except StabCodeError as e:
            logger.info("%s failed: %s", self.command_name(), e)
            raise CommandError(str(e), returncode=1) from e

        if options['json']:
            report = make_report(self.command_name(), source, options.get('name'), result, status)
            self.stdout.write(render_json(report), ending='')
        else:
            for line in lines:
                self.stdout.write(line)

    def command_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]
