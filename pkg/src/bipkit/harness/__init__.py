"""Exhaustive enumeration, verification suites, and the command-line front end."""
