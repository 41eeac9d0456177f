"""Blind register automata over monoids."""

from ._mra import (
    Agreement,
    Automaton,
    Monoid,
    MraError,
    Report,
    RefuterResult,
    RunResult,
    Scenario,
    dyck,
    refuter,
)

__all__ = [
    "Agreement",
    "Automaton",
    "Monoid",
    "MraError",
    "Report",
    "RefuterResult",
    "RunResult",
    "Scenario",
    "dyck",
    "refuter",
]
