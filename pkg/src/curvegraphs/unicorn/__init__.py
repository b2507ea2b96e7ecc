"""Unicorn arcs and paths between arcs in minimal position."""

from .core import NotAPath, UnicornDatum, a_family, slim_check, unicorn_arcs, unicorn_datum, unicorn_path

__all__ = ["NotAPath", "UnicornDatum", "unicorn_datum", "a_family", "slim_check", "unicorn_arcs", "unicorn_path"]
