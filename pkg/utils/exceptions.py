def _rebuild(cls, message, state):
    error = cls.__new__(cls)
    Exception.__init__(error, message)
    error.__dict__.update(state)
    return error


class ApplicationError(Exception):
    """Base class for all custom application exceptions."""

    def __init__(
        self,
        message="An application error occurred.",
        exit_code=1,
        context=None,
    ):
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.context = context if context is not None else {}

    @property
    def stage(self):
        return self.context.get("stage")

    def __reduce__(self):
        # Worker processes re-raise through pickle; keep the attribution context
        return (_rebuild, (type(self), self.message, self.__dict__.copy()))


class ConfigurationError(ApplicationError):
    """Raised for config syntax errors, unknown keys and semantic violations."""

    def __init__(
        self,
        message="Invalid configuration.",
        key=None,
        line=None,
        field_errors=None,
        context=None,
    ):
        context = dict(context or {})
        if key is not None:
            context["key"] = key
        if line is not None:
            context["line"] = line
        context.setdefault("stage", "config")
        super().__init__(message, exit_code=2, context=context)
        self.key = key
        self.line = line
        self.field_errors = field_errors if field_errors is not None else {}


class ContractError(ApplicationError):
    """Raised when an operation is called with inputs violating its preconditions."""

    def __init__(self, message="Precondition violated.", context=None):
        super().__init__(message, exit_code=3, context=context)


class NumericalBlowupError(ApplicationError):
    """Raised when a model step produces NaN or Inf values."""

    def __init__(self, message="Numerical blow-up detected.", context=None):
        super().__init__(message, exit_code=4, context=context)


class PositivityLossError(NumericalBlowupError):
    """Raised when density or pressure become non-positive in a compressible step."""

    def __init__(self, message="Loss of positivity detected.", context=None):
        super().__init__(message, context=context)


class LinearAlgebraError(ApplicationError):
    """Raised when the innovation matrix cannot be factorized."""

    def __init__(
        self,
        message="Innovation matrix is singular; increase the observation noise variance or the ensemble size.",
        context=None,
    ):
        super().__init__(message, exit_code=5, context=context)


class AnalysisError(ApplicationError):
    """Raised when a step of an assimilation cycle fails; context carries the stage."""

    def __init__(self, message="An assimilation cycle failed.", stage=None, context=None):
        context = dict(context or {})
        if stage is not None:
            context["stage"] = stage
        super().__init__(message, exit_code=6, context=context)


class StorageError(ApplicationError):
    """Raised for unreadable inputs and failed artifact writes."""

    def __init__(self, message="A storage operation failed.", context=None):
        context = dict(context or {})
        context.setdefault("stage", "storage")
        super().__init__(message, exit_code=7, context=context)
