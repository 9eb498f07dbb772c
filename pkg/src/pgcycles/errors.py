"""Exception hierarchy shared by every module."""


class PgCyclesError(Exception):
    """Base class for all errors raised by the package."""


class GraphError(PgCyclesError):
    """A dual graph or cycle failed structural or definiteness validation."""


class GraphMismatch(PgCyclesError):
    """Two cycles (or a cycle and a map) live on different graphs."""


class BlowupError(PgCyclesError):
    """Invalid blow-up center or non-contractible vertex."""


class MissingAnalyticData(PgCyclesError):
    """An operation needs an analytic datum that the graph cannot determine."""

    def __init__(self, datum):
        super().__init__(f"missing analytic datum: {datum}")
        self.datum = datum


class InconsistentAnalyticData(PgCyclesError):
    """Analytic inputs contradict a numeric identity or bound."""


class ConstructionError(PgCyclesError):
    """The p_g-cycle construction was given bad input or failed to terminate."""
