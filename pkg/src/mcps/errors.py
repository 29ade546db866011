"""Exception types shared across the package."""


class McpsError(Exception):
    """Base class for all errors raised by this package."""


class EdgeListParseError(McpsError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class BudgetExceededError(McpsError):
    """A search or enumeration exceeded its step budget.

    Budgets are hard errors, never silent truncation: a partial answer from
    an exhaustive procedure would be wrong, not approximate.
    """


class NotDspError(McpsError):
    """Raised when a graph fails two-terminal series-parallel recognition.

    The witness explains why (cycle, extra sources/sinks, or an embedded
    subdivision of the forbidden graph W).
    """

    def __init__(self, witness):
        super().__init__(f"not a two-terminal series-parallel digraph: {witness.reason}")
        self.witness = witness


class NotLspError(McpsError):
    """Raised when an operation requires a laminar series-parallel graph."""

    def __init__(self, verdict):
        parts = []
        if verdict.p1_witness is not None:
            parts.append(f"P1 fails at pair {verdict.p1_witness}")
        if verdict.p2_witness is not None:
            parts.append(f"P2 fails at edge pair {verdict.p2_witness}")
        super().__init__("not a laminar series-parallel graph: " + "; ".join(parts))
        self.verdict = verdict
