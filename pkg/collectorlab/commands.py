# collectorlab/commands.py
import logging

from django.core.management.base import BaseCommand, CommandError

from numeric_core.exceptions import DomainError

logger = logging.getLogger(__name__)


class LabCommand(BaseCommand):
    """
    Base for the collectorlab subcommands.

    Arguments are validated by ``request_serializer_class`` (a DRF serializer);
    invalid values and domain errors exit with status 2.
    """
    requires_system_checks = []
    formats = ('csv', 'json')
    default_format = 'csv'
    request_serializer_class = None

    def add_arguments(self, parser):
        parser.add_argument('--format', choices=self.formats, default=self.default_format)
        parser.add_argument('--output', metavar='PATH', default=None,
                            help='Write to PATH instead of standard output')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def request_data(self, options):
        fields = self.request_serializer_class().fields
        return {name: options[name] for name in fields if options.get(name) is not None}

    def validate(self, options):
        serializer = self.request_serializer_class(data=self.request_data(options))
        if not serializer.is_valid():
            raise CommandError(self.format_errors(serializer.errors), returncode=2)
        return serializer.validated_data

    @staticmethod
    def format_errors(errors):
        parts = []
        for field, messages in errors.items():
            label = 'arguments' if field == 'non_field_errors' else f"--{field.replace('_', '-')}"
            parts.append(f"{label}: {' '.join(str(message) for message in messages)}")
        return '; '.join(parts)

    def produce(self, params, fmt):
        """
        Return the rendered document for validated ``params``, or an iterable
        of text chunks to be written as they are produced.
        """
        raise NotImplementedError

    def emit(self, text, output=None):
        chunks = [text] if isinstance(text, str) else text
        if output:
            written = 0
            with open(output, 'w', encoding='utf-8', newline='') as handle:
                for chunk in chunks:
                    handle.write(chunk)
                    written += len(chunk)
            logger.info(f"Wrote {written} characters to {output}")
        else:
            for chunk in chunks:
                self.stdout.write(chunk, ending='')

    def handle(self, *args, **options):
        params = self.validate(options)
        try:
            self.emit(self.produce(params, options['format']), options.get('output'))
        except DomainError as e:
            raise CommandError(str(e), returncode=2)
