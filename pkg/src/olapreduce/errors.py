"""Exception hierarchy shared by every module."""


class ReductionError(ValueError):
    """Base class for data errors raised by olapreduce."""


class SchemaError(ReductionError):
    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class FactError(ReductionError):
    pass


class MaskError(ReductionError):
    pass


class CodingError(ReductionError):
    pass


class MetricError(ReductionError):
    pass


class OracleError(ReductionError):
    pass


class ReportError(ReductionError):
    pass
