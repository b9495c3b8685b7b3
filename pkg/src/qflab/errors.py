from __future__ import annotations


class ParseError(ValueError):
    """Malformed text input; ``pos`` is a 0-based column in ``text``."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(self.annotated())

    def annotated(self) -> str:
        return f"{self.message} at column {self.pos + 1}\n  {self.text}\n  {' ' * self.pos}^"
