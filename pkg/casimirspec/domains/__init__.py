"""Physics and learning domains."""
