"""Application layer: CLI entry point and workflows."""
