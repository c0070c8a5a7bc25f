"""Unigram candidate generation for ambiguous key sequences, plus the
per-word composer (code buffer, commit with auto-space, keystroke deletes).
"""

from __future__ import annotations

import hashlib
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyCodeError, InvalidSelectionError, InvalidWordError, T9Error
from .layout import KeySequence, code_of


class CandidateOrigin(str, Enum):
    EXACT_CODE = "exact-code"
    PREFIX_COMPLETION = "prefix-completion"


@dataclass(frozen=True)
class Candidate:
    word: str
    origin: CandidateOrigin


class Lexicon:
    """Immutable word -> frequency table with a precomputed code index."""

    def __init__(self, entries: dict[str, int]):
        self._freq: dict[str, int] = {}
        for word, freq in entries.items():
            if freq < 0:
                raise T9Error(f"negative frequency for {word!r}")
            code_of(word)  # raises InvalidWordError for bad words
            self._freq[word.lower()] = freq
        # Sorted (code, rank-key, word) triples; lexicographic order on codes
        # makes every prefix range contiguous.
        self._index = sorted(
            (code_of(w), (-f, w), w) for w, f in self._freq.items()
        )
        self._codes = [c for c, _, _ in self._index]

    @classmethod
    def from_tsv(cls, path) -> "Lexicon":
        """Load `word<TAB>frequency` lines; invalid lines are skipped and
        counted in :attr:`skipped_lines`."""
        entries: dict[str, int] = {}
        skipped = 0
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                try:
                    if len(parts) != 2:
                        raise ValueError
                    word, freq = parts[0].lower(), int(parts[1])
                    if freq < 0:
                        raise ValueError
                    code_of(word)
                except (ValueError, InvalidWordError):
                    skipped += 1
                    continue
                entries[word] = freq
        lex = cls(entries)
        lex.skipped_lines = skipped
        return lex

    skipped_lines: int = 0

    def __len__(self) -> int:
        return len(self._freq)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._freq

    def frequency(self, word: str) -> int:
        return self._freq[word.lower()]

    def words(self):
        return self._freq.keys()

    def words_with_code(self, code: KeySequence) -> list[str]:
        """Words whose code is exactly `code`, best-ranked first."""
        lo = bisect_left(self._codes, code)
        hi = bisect_right(self._codes, code)
        return [w for _, _, w in sorted(self._index[lo:hi], key=lambda e: e[1])]

    def words_extending_code(self, code: KeySequence) -> list[str]:
        """Words whose code strictly extends `code`, best-ranked first."""
        lo = bisect_right(self._codes, code)
        hi = bisect_left(self._codes, code + (10,))
        return [w for _, _, w in sorted(self._index[lo:hi], key=lambda e: e[1])]

    def content_hash(self) -> str:
        h = hashlib.sha256()
        for w in sorted(self._freq):
            h.update(f"{w}\t{self._freq[w]}\n".encode())
        return h.hexdigest()


def candidates(code: KeySequence, k: int | None, lexicon: Lexicon) -> list[Candidate]:
    """Ranked suggestions for a key sequence.

    Exact-code matches come first, then words whose code strictly extends
    the entered code; each class is ordered by descending frequency with
    lexicographic tie-break.  `k=None` returns the full list.
    """
    code = tuple(code)
    if not code:
        raise EmptyCodeError("cannot rank candidates for an empty code")
    if any(d not in range(2, 10) for d in code):
        raise T9Error(f"code {code} contains digits outside 2-9")
    if k is not None and k < 1:
        raise T9Error("k must be >= 1")
    out = [Candidate(w, CandidateOrigin.EXACT_CODE) for w in lexicon.words_with_code(code)]
    if k is None or len(out) < k:
        out.extend(
            Candidate(w, CandidateOrigin.PREFIX_COMPLETION)
            for w in lexicon.words_extending_code(code)
        )
    return out if k is None else out[:k]


class Composer:
    """Per-word-attempt input state: code buffer, committed transcription.

    The buffer holds effective digits (2-9): key-1 duplicates are resolved
    by the caller (or via :meth:`append_emission`) before they land here.
    Committed words are immutable; deletes never cross a commit boundary.
    """

    def __init__(self, lexicon: Lexicon, visible_candidates: int = 5):
        self.lexicon = lexicon
        self.visible_candidates = visible_candidates
        self.buffer: list[int] = []
        self.committed: list[str] = []
        self.noop_deletes = 0

    @property
    def code(self) -> KeySequence:
        return tuple(self.buffer)

    @property
    def transcript(self) -> str:
        """Committed text; every committed word carries its auto-space."""
        return "".join(w + " " for w in self.committed)

    def append_digit(self, digit: int) -> None:
        if digit not in range(2, 10):
            raise T9Error(f"composer buffer takes digits 2-9, got {digit}")
        self.buffer.append(digit)

    def append_emission(self, emission) -> None:
        """Append a keystroke, resolving key-1 duplicates against the buffer."""
        if emission.digit == 1:
            if not self.buffer:
                raise T9Error("key-1 duplicate with empty buffer")
            self.buffer.append(self.buffer[-1])
        else:
            self.buffer.append(emission.digit)

    def delete_keystroke(self) -> bool:
        """Drop the last uncommitted keystroke; returns False on the logged
        no-op of deleting from an empty buffer."""
        if not self.buffer:
            self.noop_deletes += 1
            return False
        self.buffer.pop()
        return True

    def candidates(self, k: int | None = None) -> list[Candidate]:
        """Current candidate list (full list by default; pass k to truncate)."""
        if not self.buffer:
            return []
        return candidates(self.code, k, self.lexicon)

    def commit(self, word: str) -> str:
        """Select a candidate; appends `word ` to the transcription and
        clears the code buffer."""
        word = word.lower()
        if word not in {c.word for c in self.candidates()}:
            raise InvalidSelectionError(f"{word!r} is not in the current candidate list")
        self.committed.append(word)
        self.buffer.clear()
        return self.transcript
