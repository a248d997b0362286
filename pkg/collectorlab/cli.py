import logging
import os
import sys

import django
from django.core.management import execute_from_command_line, get_commands

logger = logging.getLogger(__name__)

USAGE = (
    "usage: manage.py {pmf,stirling,egf,simulate,verify} [options]\n"
    "Run 'manage.py help <subcommand>' for the options of a subcommand.\n"
)


def _exit_code(code):
    if code is None:
        return 0
    if isinstance(code, int):
        return code
    # sys.exit("message") prints the message and exits 1
    return 1


def run(argv=None):
    """
    Dispatch ``argv`` (without the program name) to a subcommand and return
    the process exit code: 0 success, 1 verification failure, 2 usage error.
    """
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'collectorlab.settings')
    argv = list(sys.argv[1:] if argv is None else argv)
    django.setup()

    if argv and not argv[0].startswith('-') and argv[0] != 'help':
        if argv[0] not in get_commands():
            sys.stderr.write(f"Unknown subcommand: '{argv[0]}'\n{USAGE}")
            return 2

    try:
        execute_from_command_line(['manage.py', *argv])
    except SystemExit as exc:
        return _exit_code(exc.code)
    return 0
