"""Explicit presentation families and their end-to-end verification.

The independence family for ``n`` has generators ``a1..an`` and one ``b``
per subset of ``{1..n}``. A subset is an n-bit mask with bit ``i-1`` for
element ``i``, and ``b`` is named by the mask written in binary with ``n``
digits (``b011`` is the subset ``{1, 2}`` when ``n = 3``). Relators are the
template word evaluated at ``(a_i, b_sigma)``: all pairs give ``S``, the
pairs with ``i in sigma`` give ``R``. In ``<A | R>`` the template vanishes at
``(a_i, b_sigma)`` exactly when ``i in sigma``; :func:`verify_independence`
checks this with the Dehn solver.

The cycle family puts relators ``w(a_i, a_{i+1 mod n})`` on ``a1..an``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cancellation import (
    AsphericityPreconditions,
    PieceReport,
    check_c_prime,
    check_singular_asphericity_preconditions,
)
from .dehn import VerificationError, is_trivial, verify
from .presentation import Presentation
from .words import XY, Alphabet, Word, substitute

DEFAULT_MAX_N = 12
SIXTH = Fraction(1, 6)

PAPER_WORD_TEXT = "x*y^7*x^2*y^6*x^3*y^5*x^4*y^4*x^5*y^3*x^6*y^2*x^7*y"


def paper_word() -> Word:
    return XY.parse(PAPER_WORD_TEXT)


def max_n() -> int:
    """Resource guard for family size; ``SCANCEL_MAX_N`` overrides the default."""
    value = os.environ.get("SCANCEL_MAX_N")
    return int(value) if value else DEFAULT_MAX_N


def check_family_size(n: int, lowest: int = 1, allow_large: bool = False) -> None:
    if not isinstance(n, int) or n < lowest:
        raise ValueError(f"n must be an integer >= {lowest}, got {n!r}")
    if not allow_large and n > max_n():
        raise ValueError(f"n = {n} exceeds the resource guard {max_n()} (set SCANCEL_MAX_N to override)")


def subset_name(mask: int, n: int) -> str:
    return "b" + format(mask, f"0{n}b")


def subset_members(mask: int, n: int) -> list[int]:
    return [i for i in range(1, n + 1) if mask >> (i - 1) & 1]


@dataclass
class IndependenceFamily:
    n: int
    alphabet: Alphabet
    R: Presentation
    S: Presentation
    sigma_index: dict[int, int]
    word: Word
    pairs_S: list[tuple[int, int]]

    def a(self, i: int) -> Word:
        return (i,)

    def b(self, mask: int) -> Word:
        return (self.sigma_index[mask] + 1,)

    def relator(self, i: int, mask: int) -> Word:
        return substitute(self.word, self.a(i), self.b(mask))


def build_independence_family(n: int, word: Optional[Word] = None, allow_large: bool = False) -> IndependenceFamily:
    check_family_size(n, 1, allow_large)
    word = paper_word() if word is None else word
    names = [f"a{i}" for i in range(1, n + 1)] + [subset_name(m, n) for m in range(2**n)]
    alphabet = Alphabet(tuple(names))
    sigma_index = {m: n + m for m in range(2**n)}
    pairs = [(i, m) for i in range(1, n + 1) for m in range(2**n)]
    rel = {pair: substitute(word, (pair[0],), (sigma_index[pair[1]] + 1,)) for pair in pairs}
    S = Presentation(alphabet, tuple(rel[p] for p in pairs))
    R = Presentation(alphabet, tuple(rel[(i, m)] for i, m in pairs if m >> (i - 1) & 1))
    return IndependenceFamily(n, alphabet, R, S, sigma_index, word, pairs)


@dataclass
class TableEntry:
    i: int
    j: int
    name: str
    trivial: bool
    expected: bool
    replace_steps: int

    @property
    def matches(self) -> bool:
        return self.trivial == self.expected


@dataclass
class IndependenceReport:
    n: int
    c_prime_sixth_on_S: PieceReport
    c_prime_sixth_on_R: PieceReport
    singular_asphericity: AsphericityPreconditions
    relator_lengths: list[int]
    truth_table: list[TableEntry]

    @property
    def matches_membership(self) -> bool:
        return all(e.matches for e in self.truth_table)

    @property
    def ok(self) -> bool:
        return (
            self.matches_membership
            and self.c_prime_sixth_on_S.holds
            and self.c_prime_sixth_on_R.holds
            and self.singular_asphericity.all
        )

    def to_json(self, alphabet: Alphabet) -> dict:
        return {
            "kind": "independence",
            "n": self.n,
            "ok": self.ok,
            "c_prime_sixth_on_S": self.c_prime_sixth_on_S.to_json(alphabet),
            "c_prime_sixth_on_R": self.c_prime_sixth_on_R.to_json(alphabet),
            "singular_asphericity": self.singular_asphericity.to_json(),
            "relator_lengths": sorted(set(self.relator_lengths)),
            "truth_table": [
                {
                    "i": e.i,
                    "sigma": e.j,
                    "b": e.name,
                    "trivial": e.trivial,
                    "expected": e.expected,
                    "replace_steps": e.replace_steps,
                }
                for e in self.truth_table
            ],
            "matches_membership": self.matches_membership,
            "derived_attributes": self.singular_asphericity.annotations,
        }


def verify_independence(n: int, allow_large: bool = False) -> tuple[IndependenceFamily, IndependenceReport]:
    fam = build_independence_family(n, allow_large=allow_large)
    on_S = check_c_prime(fam.S, SIXTH)
    # re-certify R on its own symmetrization instead of inheriting from S
    vp = verify(fam.R)
    aspherical = check_singular_asphericity_preconditions(fam.S)
    table = []
    for i, m in fam.pairs_S:
        trivial, trace = is_trivial(fam.relator(i, m), vp)
        expected = bool(m >> (i - 1) & 1)
        table.append(TableEntry(i, m, subset_name(m, n), trivial, expected, trace.replace_steps))
    report = IndependenceReport(
        n=n,
        c_prime_sixth_on_S=on_S,
        c_prime_sixth_on_R=vp.certificate,
        singular_asphericity=aspherical,
        relator_lengths=[len(r) for r in fam.S.relators],
        truth_table=table,
    )
    return fam, report


def build_sop_cycle_presentation(n: int, word: Optional[Word] = None, allow_large: bool = False) -> Presentation:
    check_family_size(n, 3, allow_large)
    word = paper_word() if word is None else word
    alphabet = Alphabet(tuple(f"a{i}" for i in range(1, n + 1)))
    relators = tuple(substitute(word, (i,), (i % n + 1,)) for i in range(1, n + 1))
    return Presentation(alphabet, relators)


@dataclass
class SopReport:
    n: int
    c_prime_sixth: PieceReport
    truth_table: list[TableEntry]
    refused: bool = False

    @property
    def matches_cycle(self) -> bool:
        return not self.refused and all(e.matches for e in self.truth_table)

    @property
    def ok(self) -> bool:
        return self.c_prime_sixth.holds and self.matches_cycle

    def to_json(self, alphabet: Alphabet) -> dict:
        return {
            "kind": "sop",
            "n": self.n,
            "ok": self.ok,
            "c_prime_sixth": self.c_prime_sixth.to_json(alphabet),
            "refused": self.refused,
            "truth_table": [
                {
                    "i": e.i,
                    "j": e.j,
                    "trivial": e.trivial,
                    "expected": e.expected,
                    "replace_steps": e.replace_steps,
                }
                for e in self.truth_table
            ],
            "true_entries": sum(e.trivial for e in self.truth_table),
            "matches_cycle": self.matches_cycle,
        }


def verify_sop_cycle(n: int, word: Optional[Word] = None, allow_large: bool = False) -> tuple[Presentation, SopReport]:
    p = build_sop_cycle_presentation(n, word, allow_large)
    word = paper_word() if word is None else word
    try:
        vp = verify(p)
    except VerificationError as e:
        return p, SopReport(n, e.report, [], refused=True)
    table = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            trivial, trace = is_trivial(substitute(word, (i,), (j,)), vp)
            table.append(TableEntry(i, j, f"a{j}", trivial, j == i % n + 1, trace.replace_steps))
    return p, SopReport(n, vp.certificate, table)
