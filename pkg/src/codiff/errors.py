"""Exception types shared across modules."""


class MalformedInput(ValueError):
    """Input file or JSON document does not follow the documented format."""
