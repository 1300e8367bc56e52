"""Exception hierarchy shared across the package."""


class FeynGKZError(Exception):
    """Base class for all errors raised by feyngkz."""


class GraphStructureError(FeynGKZError, ValueError):
    """The graph is malformed (duplicate ids, dangling endpoints, ...)."""


class S1IError(FeynGKZError, ValueError):
    """An operation requiring an (s1I) graph received one that is not."""

    def __init__(self, report):
        self.report = report
        kinds = ", ".join(f"{v.kind}:{v.item}" for v in report.violations)
        super().__init__(f"graph is not strongly 1-irreducible ({kinds})")


class HypothesisError(FeynGKZError, ValueError):
    """The Feynman genericity hypotheses fail (e.g. no 2-forest term at all)."""


class DegeneracyError(FeynGKZError, ValueError):
    """A declared coefficient degeneracy does not refer to a generic monomial."""


class MatroidError(FeynGKZError, ValueError):
    """Invalid base family or an invalid matroid construction."""
