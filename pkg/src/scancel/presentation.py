"""Group presentations, symmetrized relator sets and the ``.pres`` text format.

File format::

    # comment
    gens: a, b
    rel: a*b*a^-1*b^-1

Relators are cyclically reduced on ingestion; a :class:`RelatorReducedWarning`
is emitted when that changes a relator.
"""

from __future__ import annotations

import warnings
from functools import cached_property
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .words import (
    Alphabet,
    Word,
    WordError,
    cyclic_reduce,
    cyclic_shifts,
    is_cyclically_reduced,
    rotate,
    visual_inverse,
)


class PresentationError(ValueError):
    """Malformed presentation text, located by 1-based line and column."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class RelatorReducedWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]

    def __post_init__(self):
        rels = tuple(tuple(r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        for k, r in enumerate(rels):
            if not r:
                raise PresentationError(f"relator {k} is empty")
            if not self.alphabet.contains_word(r):
                raise PresentationError(f"relator {k} uses generators outside the alphabet")
            if not is_cyclically_reduced(r):
                raise PresentationError(f"relator {k} is not cyclically reduced")

    @classmethod
    def from_strings(cls, names: Sequence[str], relators: Iterable[str]) -> "Presentation":
        alphabet = Alphabet(tuple(names))
        return cls(alphabet, tuple(alphabet.parse(r) for r in relators))

    def format_relators(self) -> list[str]:
        return [self.alphabet.format(r) for r in self.relators]

    def to_json(self) -> dict:
        return {"generators": list(self.alphabet.names), "relators": self.format_relators()}


class Origin(NamedTuple):
    """Where a symmetrized member comes from: rotate (inverted) relator by ``shift``."""

    relator: int
    shift: int
    inverted: bool


class SymmetrizedSet:
    """Closure of a relator list under cyclic shifts and visual inverses.

    ``members`` lists each distinct word once, in generation order (relator
    index, then the relator before its inverse, then shift). ``origins`` maps
    a member to every position that produces it; more than one origin means
    the same word sits at two distinct relator positions (non-concise input
    or a proper power), which the piece checker treats as a full-length piece.
    """

    def __init__(self, relators: Sequence[Word]):
        self.relators = tuple(relators)
        # origins hold plain (relator, shift, inverted) tuples; Origin is built on access
        origins: dict[Word, list[tuple[int, int, bool]]] = {}
        for k, r in enumerate(self.relators):
            for inverted, base in ((False, r), (True, visual_inverse(r))):
                for s in range(len(base)):
                    m = base[s:] + base[:s]
                    if m in origins:
                        origins[m].append((k, s, inverted))
                    else:
                        origins[m] = [(k, s, inverted)]
        self.origins = origins
        self.members: tuple[Word, ...] = tuple(origins)

    @cached_property
    def index(self) -> dict[Word, int]:
        return {m: i for i, m in enumerate(self.members)}

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w) -> bool:
        return w in self.origins

    def __iter__(self):
        return iter(self.members)

    def origin(self, member: Word) -> Origin:
        return Origin._make(self.origins[member][0])

    def origin_at(self, member: Word, k: int) -> Origin:
        return Origin._make(self.origins[member][k])

    def all_origins(self, member: Word) -> list[Origin]:
        return [Origin._make(o) for o in self.origins[member]]

    def is_closed(self) -> bool:
        return all(
            visual_inverse(m) in self.origins and rotate(m, 1) in self.origins
            for m in self.members
        )

    def to_json(self, alphabet: Alphabet) -> dict:
        return {
            "members": [
                {
                    "word": alphabet.format(m),
                    "relator": self.origin(m).relator,
                    "shift": self.origin(m).shift,
                    "inverted": self.origin(m).inverted,
                }
                for m in self.members
            ]
        }


def symmetrize(p: Presentation | Sequence[Word]) -> SymmetrizedSet:
    relators = p.relators if isinstance(p, Presentation) else p
    return SymmetrizedSet(relators)


def _closure(r: Word) -> set[Word]:
    return set(cyclic_shifts(r)) | set(cyclic_shifts(visual_inverse(r)))


def is_concise(p: Presentation) -> tuple[bool, Optional[tuple[int, int]]]:
    """``(True, None)``, or ``(False, (i, j))`` for the first offending pair."""
    seen: dict[Word, int] = {}
    for j, r in enumerate(p.relators):
        closure = _closure(r)
        hits = [seen[w] for w in closure if w in seen]
        if hits:
            return False, (min(hits), j)
        for w in closure:
            seen[w] = j
    return True, None


def parse_presentation(text: str) -> Presentation:
    alphabet: Optional[Alphabet] = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise PresentationError("expected 'gens:' or 'rel:'", lineno, len(raw) - len(raw.lstrip()) + 1)
        value_col = len(key) + 2 + (len(raw) - len(raw.lstrip()))
        if key == "gens":
            if alphabet is not None:
                raise PresentationError("duplicate 'gens:' line", lineno, 1)
            names = [n.strip() for n in value.split(",")] if value.strip() else []
            try:
                alphabet = Alphabet(tuple(names))
            except WordError as e:
                raise PresentationError(str(e), lineno, value_col) from None
            continue
        if alphabet is None:
            raise PresentationError("'rel:' before 'gens:'", lineno, 1)
        try:
            w = alphabet.parse(value)
        except WordError as e:
            col = value_col + e.column - 1 if e.column else value_col
            raise PresentationError(str(e), lineno, col) from None
        r = cyclic_reduce(w)
        if not r:
            raise PresentationError("relator reduces to the empty word", lineno, value_col)
        if r != w:
            warnings.warn(
                f"line {lineno}: relator cyclically reduced to {alphabet.format(r)}",
                RelatorReducedWarning,
                stacklevel=2,
            )
        relators.append(r)
    if alphabet is None:
        raise PresentationError("missing 'gens:' line")
    return Presentation(alphabet, tuple(relators))


def serialize_presentation(p: Presentation, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append("gens: " + ", ".join(p.alphabet.names))
    lines.extend("rel: " + s for s in p.format_relators())
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as f:
        return parse_presentation(f.read())
