"""Catalog pipeline and command-line front end."""
