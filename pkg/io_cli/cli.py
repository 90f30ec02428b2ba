"""
Command Line
Dispatching troplin subcommands to the management commands of the project
"""

import logging
import sys

from django.core.management import call_command
from django.core.management.base import CommandError

from .management.base import EXIT_INVALID_INPUT

logger = logging.getLogger(__name__)

# check is registered as "membership" so Django's own check command stays intact.
COMMANDS = {
    'gens': 'gens',
    'check': 'membership',
    'express': 'express',
    'decompose': 'decompose',
    'quotient': 'quotient',
    'info': 'info',
    'equivalent': 'equivalent',
}

USAGE = 'usage: troplin {%s} [--curve FILE] [--divisor FILE] [--group FILE] [--function FILE] [--pretty]' % (
    ','.join(sorted(COMMANDS))
)


def run_cli(argv, stdout=None, stderr=None):
    """Run one subcommand and return the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in COMMANDS:
        stderr.write(USAGE + '\n')
        return EXIT_INVALID_INPUT
    try:
        call_command(COMMANDS[argv[0]], *argv[1:], stdout=stdout, stderr=stderr)
    except CommandError as exc:
        # argparse failures come back with Django's default return code 1
        logger.debug('%s exited with %s', argv[0], exc.returncode)
        if exc.returncode == 1:
            stderr.write(f'{exc}\n')
            return EXIT_INVALID_INPUT
        return exc.returncode
    return 0
