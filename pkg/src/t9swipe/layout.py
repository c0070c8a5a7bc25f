"""Physical 9-key layout: geometry, hit-testing, and word-to-digit encoding.

The keyboard is a 3x3 grid of digit keys laid out row-major (1 2 3 / 4 5 6 /
7 8 9).  Coordinates are physical millimeters with the origin at the top-left
corner of the keyboard, x growing rightward and y growing downward, matching
touchscreen conventions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import T9Error, InvalidWordError

# Standard phone-keypad letter assignment: key 1 carries no letters.
LETTER_MAP: dict[int, str] = {
    1: "",
    2: "abc",
    3: "def",
    4: "ghi",
    5: "jkl",
    6: "mno",
    7: "pqrs",
    8: "tuv",
    9: "wxyz",
}

DIGIT_OF_LETTER: dict[str, int] = {
    letter: digit for digit, letters in LETTER_MAP.items() for letter in letters
}

KeySequence = tuple[int, ...]


@dataclass(frozen=True)
class KeyboardGeometry:
    """Physical dimensions of the 3x3 keyboard, in millimeters."""

    width: float = 34.8
    height: float = 28.6
    rows: int = 3
    cols: int = 3
    gap: float = 0.0

    def __post_init__(self):
        if self.rows != 3 or self.cols != 3:
            raise T9Error("layout is fixed at 3x3")
        if self.key_width <= 0 or self.key_height <= 0:
            raise T9Error("keys must have positive size")
        if self.gap < 0:
            raise T9Error("gap must be non-negative")

    @property
    def key_width(self) -> float:
        return (self.width - (self.cols - 1) * self.gap) / self.cols

    @property
    def key_height(self) -> float:
        return (self.height - (self.rows - 1) * self.gap) / self.rows

    def key_bounds(self, digit: int) -> tuple[float, float, float, float]:
        """(x0, y0, x1, y1) of a key's rectangle."""
        if not 1 <= digit <= 9:
            raise T9Error(f"no key {digit}")
        row, col = divmod(digit - 1, 3)
        x0 = col * (self.key_width + self.gap)
        y0 = row * (self.key_height + self.gap)
        return (x0, y0, x0 + self.key_width, y0 + self.key_height)

    def key_center(self, digit: int) -> tuple[float, float]:
        x0, y0, x1, y1 = self.key_bounds(digit)
        return ((x0 + x1) / 2, (y0 + y1) / 2)

    def key_at(self, x: float, y: float) -> int | None:
        """Digit under a point, or None outside the keyboard (or in a gap).

        Points on a shared boundary belong to the key with the lower digit,
        i.e. the left/top neighbour wins.
        """
        if not (0 <= x <= self.width and 0 <= y <= self.height):
            return None
        col = self._axis_cell(x, self.key_width)
        row = self._axis_cell(y, self.key_height)
        if col is None or row is None:
            return None
        return row * 3 + col + 1

    def _axis_cell(self, v: float, cell: float) -> int | None:
        # Scanning in order makes the lower cell claim shared edges.
        for i in range(3):
            lo = i * (cell + self.gap)
            if lo <= v <= lo + cell:
                return i
        return None

    def to_json_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "rows": self.rows,
            "cols": self.cols,
            "gap": self.gap,
            "letter_map": {str(d): LETTER_MAP[d] for d in range(1, 10)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "KeyboardGeometry":
        return cls(
            width=doc["width"],
            height=doc["height"],
            rows=doc.get("rows", 3),
            cols=doc.get("cols", 3),
            gap=doc.get("gap", 0.0),
        )


def code_of(word: str) -> KeySequence:
    """Digit sequence a word maps to, e.g. "apple" -> (2, 7, 7, 5, 3)."""
    word = word.lower()
    try:
        return tuple(DIGIT_OF_LETTER[c] for c in word)
    except KeyError as exc:
        raise InvalidWordError(f"{word!r} contains non-letter {exc.args[0]!r}") from None


def has_consecutive_same_key(word: str) -> bool:
    code = code_of(word)
    return any(a == b for a, b in zip(code, code[1:]))


@dataclass(frozen=True)
class ConsecutiveStats:
    affected_count: int
    total: int

    @property
    def fraction(self) -> float:
        return self.affected_count / self.total

    def __str__(self) -> str:
        return f"{self.affected_count}/{self.total} ({100 * self.fraction:.1f}%)"


def consecutive_same_key_stats(words: list[str]) -> ConsecutiveStats:
    """How many words contain at least one adjacent same-key letter pair."""
    if not words:
        raise T9Error("fraction undefined for an empty word list")
    affected = sum(has_consecutive_same_key(w) for w in words)
    return ConsecutiveStats(affected_count=affected, total=len(words))


def clean_word(raw: str) -> str:
    """Lowercase and strip non-letters (apostrophes, hyphens, spaces)."""
    return "".join(c for c in raw.lower() if "a" <= c <= "z")
