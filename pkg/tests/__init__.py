"""Test suite for the Alon-Tarsi workbench."""
