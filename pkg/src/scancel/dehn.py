"""Dehn's algorithm over presentations certified C'(1/6).

Greendlinger's lemma guarantees that a non-empty cyclically reduced word
that is trivial in a C'(1/6) group contains, as a cyclic subword, more than
half of some symmetrized relator. Replacing that half by the inverse of the
rest strictly shortens the word, so repeating until no step applies decides
triviality. The solver refuses anything without a C'(1/6) certificate.

Every run produces a :class:`DehnTrace` whose steps can be replayed and
checked independently with :func:`replay_trace`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cancellation import PieceReport, piece_report
from .presentation import Origin, Presentation, SymmetrizedSet, symmetrize
from .words import Word, WordError, is_cyclically_reduced, rotate, visual_inverse

SIXTH = Fraction(1, 6)

FREE_CANCEL = "free-cancel"
CYCLIC_ROTATE = "cyclic-rotate"
RELATOR_REPLACE = "relator-replace"


class VerificationError(Exception):
    """The presentation fails C'(1/6); ``report`` carries the violation witness."""

    def __init__(self, report: PieceReport):
        v = report.violation
        super().__init__(
            f"presentation fails C'(1/6): piece of length {len(v.piece)} in a relator of length {len(v.member)}"
            if v
            else "presentation fails C'(1/6)"
        )
        self.report = report


@dataclass(frozen=True)
class Step:
    """One rewriting step on the current word.

    free-cancel: drop the inverse pair at ``position``.
    cyclic-rotate: move the first ``position`` letters to the end.
    relator-replace: read the cyclic word from ``position``; its prefix
    ``removed`` is replaced by ``inserted`` (the word stays rotated).
    """

    kind: str
    position: int
    removed: Word = ()
    inserted: Word = ()
    member_origin: Optional[Origin] = None


@dataclass
class DehnTrace:
    initial: Word
    final: Word = ()
    steps: list[Step] = field(default_factory=list)

    @property
    def trivial(self) -> bool:
        return not self.final

    @property
    def replace_steps(self) -> int:
        return sum(1 for s in self.steps if s.kind == RELATOR_REPLACE)

    def to_json(self, alphabet) -> dict:
        fmt = alphabet.format
        return {
            "initial": fmt(self.initial),
            "final": fmt(self.final),
            "trivial": self.trivial,
            "steps": [
                {
                    "kind": s.kind,
                    "position": s.position,
                    "removed": fmt(s.removed),
                    "inserted": fmt(s.inserted),
                    "member_origin": None if s.member_origin is None else list(s.member_origin),
                }
                for s in self.steps
            ],
        }


class _Node:
    __slots__ = ("children", "members", "min_len")

    def __init__(self):
        self.children: dict[int, _Node] = {}
        self.members: list[int] = []
        self.min_len = 1 << 60


class VerifiedPresentation:
    """A presentation bundled with its symmetrization and C'(1/6) certificate.

    Build with :func:`verify`.
    """

    def __init__(self, presentation: Presentation, symmetrized: SymmetrizedSet, certificate: PieceReport):
        if not certificate.holds or certificate.lam != SIXTH:
            raise VerificationError(certificate)
        self.presentation = presentation
        self.symmetrized = symmetrized
        self.certificate = certificate
        self._trie = _Node()
        for idx, m in enumerate(symmetrized.members):
            node = self._trie
            for a in m:
                node = node.children.setdefault(a, _Node())
                node.members.append(idx)
                node.min_len = min(node.min_len, len(m))

    @property
    def alphabet(self):
        return self.presentation.alphabet

    def longest_half_match(self, w: Word) -> Optional[tuple[int, int, int]]:
        """Best ``(length, start, member index)`` with more than half a member inside cyclic ``w``."""
        n = len(w)
        members = self.symmetrized.members
        best = None
        for p in range(n):
            node = self._trie
            found = None
            for d in range(1, n + 1):
                node = node.children.get(w[(p + d - 1) % n])
                if node is None:
                    break
                if node.min_len < 2 * d:
                    j = next(j for j in node.members if len(members[j]) < 2 * d)
                    found = (d, j)
            if found and (best is None or found[0] > best[0]):
                best = (found[0], p, found[1])
        return best


def verify(p: Presentation) -> VerifiedPresentation:
    s = symmetrize(p)
    report = piece_report(s, SIXTH)
    if not report.holds:
        raise VerificationError(report)
    return VerifiedPresentation(p, s, report)


def _reduce_logged(w: Word, steps: list[Step]) -> Word:
    """Cyclically reduce ``w``, logging each free cancellation and rotation."""
    stack: list[int] = []
    for a in w:
        if stack and stack[-1] == -a:
            steps.append(Step(FREE_CANCEL, len(stack) - 1, (stack[-1], a)))
            stack.pop()
        else:
            stack.append(a)
    while len(stack) >= 2 and stack[0] == -stack[-1]:
        steps.append(Step(CYCLIC_ROTATE, 1))
        first = stack.pop(0)
        steps.append(Step(FREE_CANCEL, len(stack) - 1, (stack[-1], first)))
        stack.pop()
    return tuple(stack)


def dehn_step(w: Word, vp: VerifiedPresentation) -> Optional[tuple[Word, list[Step]]]:
    """Apply one over-half relator replacement to the cyclic word ``w``.

    Returns the new cyclically reduced word and the steps taken, or None
    when no member has more than half its length inside ``w``. Ties are
    broken by longest match, then leftmost start, then lowest member index.
    """
    if not is_cyclically_reduced(w):
        raise WordError("dehn_step needs a cyclically reduced word")
    match = vp.longest_half_match(w)
    if match is None:
        return None
    d, p, j = match
    member = vp.symmetrized.members[j]
    removed, rest = member[:d], member[d:]
    inserted = visual_inverse(rest)
    rotated = rotate(w, p)
    steps = [Step(RELATOR_REPLACE, p, removed, inserted, vp.symmetrized.origin(member))]
    new = _reduce_logged(inserted + rotated[d:], steps)
    return new, steps


def is_trivial(w: Word, vp: VerifiedPresentation) -> tuple[bool, DehnTrace]:
    if not isinstance(vp, VerifiedPresentation):
        raise TypeError("is_trivial needs a VerifiedPresentation; call verify() first")
    trace = DehnTrace(initial=tuple(w))
    cur = _reduce_logged(tuple(w), trace.steps)
    while cur:
        step = dehn_step(cur, vp)
        if step is None:
            break
        cur, more = step
        trace.steps.extend(more)
    trace.final = cur
    return not cur, trace


class ReplayError(Exception):
    pass


def replay_trace(trace: DehnTrace, symmetrized: Optional[SymmetrizedSet] = None) -> Word:
    """Re-run a trace step by step and return the word it ends on.

    Each step is checked to be valid in the free group; relator replacements
    are additionally checked against ``symmetrized`` when given, so a trace
    ending on the empty word certifies membership in the normal closure.
    """
    cur = trace.initial
    for k, s in enumerate(trace.steps):
        if s.kind == FREE_CANCEL:
            i = s.position
            if not (0 <= i < len(cur) - 1 and cur[i] == -cur[i + 1]):
                raise ReplayError(f"step {k}: no cancelling pair at {i}")
            cur = cur[:i] + cur[i + 2 :]
        elif s.kind == CYCLIC_ROTATE:
            cur = rotate(cur, s.position)
        elif s.kind == RELATOR_REPLACE:
            rotated = rotate(cur, s.position)
            d = len(s.removed)
            if d > len(rotated) or rotated[:d] != s.removed:
                raise ReplayError(f"step {k}: removed subword not found at {s.position}")
            if symmetrized is not None:
                full = s.removed + visual_inverse(s.inserted)
                if full not in symmetrized:
                    raise ReplayError(f"step {k}: replacement is not a relator split")
            if len(s.inserted) >= d:
                raise ReplayError(f"step {k}: replacement does not shorten the word")
            cur = s.inserted + rotated[d:]
        else:
            raise ReplayError(f"step {k}: unknown kind {s.kind!r}")
    if cur != trace.final:
        raise ReplayError("replay does not end on the recorded final word")
    return cur


__all__ = [
    "DehnTrace",
    "ReplayError",
    "Step",
    "VerificationError",
    "VerifiedPresentation",
    "dehn_step",
    "is_trivial",
    "replay_trace",
    "verify",
]
