"""Per-subcommand workflows."""
