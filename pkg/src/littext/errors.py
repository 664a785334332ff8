"""Exception types shared across the toolkit."""


class InputError(ValueError):
    """Raised when an input file or argument is malformed beyond recovery."""


class LayoutOverflowError(RuntimeError):
    """Raised when a layout cannot place all text without dropping any.

    Carries the canvas height that would have been required.
    """

    def __init__(self, message: str, required_height: float):
        super().__init__(message)
        self.required_height = required_height


class SceneVersionError(InputError):
    """Raised when a scene file declares an unsupported version."""
