"""Pieces and the metric small-cancellation condition C'(lambda).

A piece of a symmetrized set is a word that is a common prefix of members
at two distinct positions. Pieces are found by prefix analysis only: the
set is closed under cyclic shifts, so any subword ``X`` of a member ``R``
starting at offset ``k`` is a prefix of the rotation of ``R`` by ``k``,
which is again a member of the same length. Checking ``|X| < lambda*|R|``
over member prefixes therefore covers every subword piece.

Longest shared prefixes come from one lexicographic sort: the longest
common prefix of two sorted words is the minimum of the adjacent values
between them, so each member's best partner is one of its two neighbours.
A member produced at two distinct relator positions (a proper power, or a
repeated relator) shares its whole length with itself and is reported as a
full-length piece.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .presentation import Origin, Presentation, SymmetrizedSet, is_concise, symmetrize
from .words import Alphabet, Word, common_prefix_length, is_proper_power


class PrefixPiece(NamedTuple):
    length: int
    partner: Optional[Word]
    partner_origin: Optional[Origin]


def parse_fraction(text: str) -> Fraction:
    """Parse a strict ``p/q`` rational string."""
    num, sep, den = text.strip().partition("/")
    if not sep:
        raise ValueError(f"expected a rational 'p/q', got {text!r}")
    try:
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"expected a rational 'p/q', got {text!r}") from None


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class PrefixIndex:
    """Sorted view of a symmetrized set giving each member's longest prefix piece."""

    def __init__(self, s: SymmetrizedSet):
        self.s = s
        members = s.members
        order = sorted(range(len(members)), key=members.__getitem__)
        sorted_words = [members[i] for i in order]
        adj = [common_prefix_length(u, v) for u, v in zip(sorted_words, sorted_words[1:])]
        best = list(map(max, [0] + adj, adj + [0])) if members else []
        lengths = [0] * len(members)
        for pos, i in enumerate(order):
            lengths[i] = best[pos]
        for i, m in enumerate(members):
            if len(s.origins[m]) > 1:
                lengths[i] = len(m)
        self.order = order
        self.rank = {i: pos for pos, i in enumerate(order)}
        self.adj = adj
        self.lengths = lengths

    def piece(self, i: int) -> PrefixPiece:
        s, m = self.s, self.s.members[i]
        length = self.lengths[i]
        origins = s.origins[m]
        if len(origins) > 1:
            return PrefixPiece(length, m, s.origin_at(m, 1))
        if length == 0:
            return PrefixPiece(0, None, None)
        # members sharing this prefix form a contiguous block in sort order
        adj, pos = self.adj, self.rank[i]
        lo = hi = pos
        while lo > 0 and adj[lo - 1] >= length:
            lo -= 1
        while hi < len(adj) and adj[hi] >= length:
            hi += 1
        j = min(self.order[t] for t in range(lo, hi + 1) if t != pos)
        partner = s.members[j]
        return PrefixPiece(length, partner, s.origin(partner))


def prefix_piece_table(s: SymmetrizedSet) -> list[PrefixPiece]:
    """Longest piece that is a prefix of each member, indexed like ``s.members``.

    The partner is the lowest-index other member sharing that prefix; with no
    shared first letter the partner is None.
    """
    index = PrefixIndex(s)
    return [index.piece(i) for i in range(len(s.members))]


def max_common_prefix_table(s: SymmetrizedSet) -> dict[Word, int]:
    """Member -> length of its longest prefix shared with a different member."""
    return dict(zip(s.members, PrefixIndex(s).lengths))


def max_subword_piece_table(s: SymmetrizedSet) -> dict[Word, int]:
    """Member -> longest piece occurring anywhere in it (max over its rotations)."""
    prefix = max_common_prefix_table(s)
    out = {}
    for m in s.members:
        out[m] = max(prefix[m[k:] + m[:k]] for k in range(len(m)))
    return out


@dataclass
class RelatorPieces:
    relator: int
    length: int
    max_piece: int
    piece: Word
    member: Word
    partner: Optional[Word]


@dataclass
class Violation:
    member: Word
    piece: Word
    partner: Word
    member_origin: Origin
    partner_origin: Origin


@dataclass
class PieceReport:
    lam: Fraction
    holds: bool
    max_ratio: Fraction
    per_relator: list[RelatorPieces]
    violation: Optional[Violation]
    symmetrized_size: int = 0
    max_piece: int = 0

    def to_json(self, alphabet: Alphabet) -> dict:
        fmt = alphabet.format
        v = self.violation
        return {
            "lambda": format_fraction(self.lam),
            "holds": self.holds,
            "max_ratio": format_fraction(self.max_ratio),
            "max_piece": self.max_piece,
            "symmetrized_size": self.symmetrized_size,
            "per_relator": [
                {
                    "relator": r.relator,
                    "length": r.length,
                    "max_piece": r.max_piece,
                    "piece": fmt(r.piece),
                    "member": fmt(r.member),
                    "partner": None if r.partner is None else fmt(r.partner),
                }
                for r in self.per_relator
            ],
            "violation": None
            if v is None
            else {
                "member": fmt(v.member),
                "piece": fmt(v.piece),
                "partner": fmt(v.partner),
                "member_origin": list(v.member_origin),
                "partner_origin": list(v.partner_origin),
            },
        }


def piece_report(s: SymmetrizedSet, lam: Fraction) -> PieceReport:
    lam = Fraction(lam)
    if not 0 < lam <= 1:
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    index = PrefixIndex(s)
    num, den = lam.numerator, lam.denominator
    members, origins = s.members, s.origins
    violation = None
    best_piece, best_len = 0, 1
    max_piece = 0
    # per relator: (piece length, member index) of its first longest piece
    top: dict[int, tuple[int, int]] = {}
    for i, length in enumerate(index.lengths):
        m = members[i]
        size = len(m)
        if violation is None and length * den >= num * size:
            p = index.piece(i)
            violation = Violation(m, m[:length], p.partner, s.origin(m), p.partner_origin)
        if length * best_len > best_piece * size:
            best_piece, best_len = length, size
        if length > max_piece:
            max_piece = length
        for o in origins[m]:
            cur = top.get(o[0])
            if cur is None or length > cur[0]:
                top[o[0]] = (length, i)
    per = {}
    for k, (length, i) in top.items():
        m = members[i]
        per[k] = RelatorPieces(k, len(m), length, m[:length], m, index.piece(i).partner)
    max_ratio = Fraction(best_piece, best_len)
    return PieceReport(
        lam=lam,
        holds=violation is None,
        max_ratio=max_ratio,
        per_relator=[per[k] for k in sorted(per)],
        violation=violation,
        symmetrized_size=len(s),
        max_piece=max_piece,
    )


def check_c_prime(p: Presentation, lam: Fraction) -> PieceReport:
    """Does every piece X of every symmetrized relator R satisfy |X| < lam*|R|?"""
    return piece_report(symmetrize(p), lam)


@dataclass
class AsphericityPreconditions:
    c_prime_one_fifth: bool
    concise: bool
    no_proper_powers: bool
    concise_witness: Optional[tuple[int, int]] = None
    proper_power_witness: Optional[int] = None
    annotations: dict = field(default_factory=dict)

    @property
    def all(self) -> bool:
        return self.c_prime_one_fifth and self.concise and self.no_proper_powers

    def to_json(self) -> dict:
        return {
            "c_prime_one_fifth": self.c_prime_one_fifth,
            "concise": self.concise,
            "no_proper_powers": self.no_proper_powers,
            "all": self.all,
            "annotations": dict(self.annotations),
        }


def check_singular_asphericity_preconditions(p: Presentation) -> AsphericityPreconditions:
    """Check C'(1/5), conciseness and absence of proper powers.

    When all three hold the group is torsion-free, and hyperbolic as well if
    C'(1/6) also holds. Those two are recorded as annotations from standard
    theory; nothing here computes them.
    """
    s = symmetrize(p)
    fifth = piece_report(s, Fraction(1, 5)).holds
    concise, pair = is_concise(p)
    power_at = next((k for k, r in enumerate(p.relators) if is_proper_power(r)), None)
    out = AsphericityPreconditions(fifth, concise, power_at is None, pair, power_at)
    if out.all:
        out.annotations = {
            "torsion_free": True,
            "hyperbolic": piece_report(s, Fraction(1, 6)).holds,
        }
    else:
        out.annotations = {"torsion_free": None, "hyperbolic": None}
    return out
