class ScError(Exception):
    pass


class GrowthError(ScError):
    pass


class DomainError(ScError, ValueError):
    pass


class UnknownModelError(ScError):
    pass


class ScenarioError(ScError):
    pass


class BenchError(ScError):
    pass


class FitError(BenchError):
    pass
