"""Command-line front end: expression parsing, matrix files, dispatch."""
