"""Exact and Monte-Carlo workbench for the Alon-Tarsi / Hadamard-Howe equivalences."""
