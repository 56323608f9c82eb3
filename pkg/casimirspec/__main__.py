"""``python -m casimirspec <subcommand>``: dispatches to the CLI and exits with its status."""

import sys

from .app.app import run

sys.exit(run(sys.argv[1:]))
