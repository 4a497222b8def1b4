"""Finite switching words.

A word is a non-empty tuple of symbol indices stored in application order:
index 0 names the map applied first.  Concatenation ``u + v`` therefore means
"run u, then run v".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Word:
    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("a word must contain at least one symbol")
        for s in self.symbols:
            if not isinstance(s, int) or s < 0:
                raise ValueError(f"symbols must be non-negative integers, got {s!r}")

    @classmethod
    def of(cls, *symbols: int) -> "Word":
        return cls(tuple(symbols))

    @classmethod
    def from_string(cls, text: str) -> "Word":
        """Parse a compact digit string such as ``"0110"`` (alphabet <= 10)."""
        return cls(tuple(int(c) for c in text))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, idx):
        return self.symbols[idx]

    def __add__(self, other: "Word") -> "Word":
        """Concatenation; ``self`` is applied first, ``other`` afterwards."""
        return Word(self.symbols + other.symbols)

    def prefix(self, n: int) -> "Word":
        if not 1 <= n <= len(self.symbols):
            raise ValueError("prefix length out of range")
        return Word(self.symbols[:n])

    def as_string(self) -> str:
        if any(s > 9 for s in self.symbols):
            return ".".join(str(s) for s in self.symbols)
        return "".join(str(s) for s in self.symbols)

    def __str__(self) -> str:  # pragma: no cover - repr sugar
        return self.as_string()
