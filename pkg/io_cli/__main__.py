"""Entry point: python -m io_cli <command> [options]."""
import os
import sys

import django


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'troplin.settings')
    django.setup()
    from .cli import run_cli
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == '__main__':
    main()
