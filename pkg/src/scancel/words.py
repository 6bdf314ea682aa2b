"""Free-group word algebra.

A word is a plain tuple of non-zero ints. Generator number ``g`` (0-based
index into an :class:`Alphabet`) is written as the letter ``g + 1``, its
formal inverse as ``-(g + 1)``. Keeping words as tuples makes them hashable,
cheap to slice and lexicographically sortable, which the piece machinery
relies on.

Reduced-ness is never enforced on construction; use :func:`is_freely_reduced`
and :func:`is_cyclically_reduced` where an operation needs it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_FACTOR_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\^\s*([+-]?\d+))?\s*\Z")


class WordError(ValueError):
    """Raised for malformed word text or words outside an alphabet."""

    def __init__(self, message: str, column: Optional[int] = None):
        super().__init__(message)
        self.column = column


def letter(gen: int, sign: int = 1) -> int:
    if gen < 0:
        raise ValueError(f"generator index must be non-negative, got {gen}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return sign * (gen + 1)


def generator(a: int) -> int:
    """Generator index of a letter."""
    return abs(a) - 1


def sign(a: int) -> int:
    return 1 if a > 0 else -1


@dataclass(frozen=True)
class Alphabet:
    """An ordered list of distinct generator names."""

    names: Tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for name in names:
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise WordError(f"invalid generator name {name!r}")
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise WordError(f"duplicate generator names: {', '.join(dupes)}")
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordError(f"unknown generator {name!r}") from None

    def gen(self, name: str, power: int = 1) -> Word:
        """The word ``name^power``."""
        a = self.index(name) + 1
        return (a,) * power if power >= 0 else (-a,) * (-power)

    def contains_word(self, w: Word) -> bool:
        n = len(self.names)
        return all(0 < abs(a) <= n for a in w)

    def parse(self, text: str) -> Word:
        """Parse ``x*y^7*x^-2`` style text; ``1`` is the empty word."""
        stripped = text.strip()
        if stripped == "1":
            return EMPTY
        if not stripped:
            raise WordError("empty word text (use '1' for the identity)", 0)
        letters = []
        col = 0
        for factor in text.split("*"):
            m = _FACTOR_RE.match(factor)
            if m is None:
                raise WordError(f"malformed factor {factor.strip()!r}", col + 1)
            name, exp = m.group(1), m.group(2)
            if name not in self._index:
                raise WordError(f"unknown generator {name!r}", col + factor.index(name) + 1)
            k = 1 if exp is None else int(exp)
            if k == 0:
                raise WordError(f"zero exponent in factor {factor.strip()!r}", col + 1)
            letters.extend(self.gen(name, k))
            col += len(factor) + 1
        return tuple(letters)

    def format(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for a, run in syllables(w):
            name = self.names[generator(a)]
            k = run * sign(a)
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)


def is_freely_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return is_freely_reduced(w) and (len(w) < 2 or w[0] != -w[-1])


def free_reduce(w: Iterable[int]) -> Word:
    stack = []
    for a in w:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def cyclic_reduce(w: Iterable[int]) -> Word:
    """Freely reduce, then strip inverse pairs from the two ends."""
    r = free_reduce(w)
    i, j = 0, len(r)
    while j - i >= 2 and r[i] == -r[j - 1]:
        i += 1
        j -= 1
    return r[i:j]


def visual_inverse(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def rotate(w: Word, k: int) -> Word:
    """Cyclic shift moving the first ``k`` letters to the end."""
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def cyclic_shifts(w: Word) -> list[Word]:
    """All distinct rotations of a cyclically reduced word, in shift order."""
    if not is_cyclically_reduced(w):
        raise WordError("cyclic_shifts needs a cyclically reduced word")
    if not w:
        return [w]
    # a periodic word repeats its rotations after the smallest period
    return [w[k:] + w[:k] for k in range(cyclic_period(w))]


def smallest_period(w: Sequence[int]) -> int:
    """Smallest p > 0 with w[i] == w[i + p] for all valid i (border method)."""
    n = len(w)
    if n == 0:
        return 0
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return n - fail[-1]


def cyclic_period(w: Sequence[int]) -> int:
    """Number of distinct rotations of ``w``."""
    n = len(w)
    p = smallest_period(w)
    return p if n % p == 0 else n


def is_proper_power(w: Word) -> Optional[tuple[Word, int]]:
    """Return ``(root, exponent)`` if ``w`` is ``root^k`` with ``k >= 2``, else None."""
    if not w:
        raise WordError("is_proper_power is undefined on the empty word")
    n = len(w)
    p = smallest_period(w)
    if p < n and n % p == 0:
        return w[:p], n // p
    return None


def substitute(template: Word, u: Word, v: Word) -> Word:
    """Evaluate a two-variable template (generators 0 and 1) at ``(u, v)``.

    The template is over the alphabet ``{x, y}``: letter ``±1`` is ``x^±1``
    and ``±2`` is ``y^±1``. The result is freely reduced.
    """
    images = {1: tuple(u), -1: visual_inverse(u), 2: tuple(v), -2: visual_inverse(v)}
    out = []
    for a in template:
        try:
            out.extend(images[a])
        except KeyError:
            raise WordError(f"template letter {a} is outside {{x, y}}") from None
    return free_reduce(out)


def syllables(w: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of one repeated letter, as ``(letter, run_length)`` pairs."""
    runs: list[tuple[int, int]] = []
    for a in w:
        if runs and runs[-1][0] == a:
            runs[-1] = (a, runs[-1][1] + 1)
        else:
            runs.append((a, 1))
    return runs


def cyclic_syllables(w: Sequence[int]) -> list[tuple[int, int]]:
    """Syllables of the cyclic word: first and last runs merge on equal letters."""
    runs = syllables(w)
    if len(runs) > 1 and runs[0][0] == runs[-1][0]:
        a, k = runs.pop()
        runs[0] = (a, runs[0][1] + k)
    return runs


def common_prefix_length(u: Sequence[int], v: Sequence[int]) -> int:
    n = min(len(u), len(v))
    i = 0
    while i < n and u[i] == v[i]:
        i += 1
    return i


XY = Alphabet(("x", "y"))
