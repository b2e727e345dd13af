"""Package data: built-in scenario files."""
