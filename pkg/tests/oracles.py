"""Brute-force reference implementations used only by the tests.

Each one follows the textbook definition directly and shares no code with
the library beyond the word encoding (signed ints).
"""

import itertools

LETTERS2 = (1, -1, 2, -2)


def reduce_by_rescanning(w):
    w = list(w)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i : i + 2]
                changed = True
                break
    return tuple(w)


def inverse(w):
    return tuple(-a for a in w[::-1])


def rotations(w):
    return {tuple(w[k:]) + tuple(w[:k]) for k in range(len(w))} if w else {()}


def cyclically_reduced(w):
    if any(w[i] == -w[i + 1] for i in range(len(w) - 1)):
        return False
    return len(w) < 2 or w[0] != -w[-1]


def all_words(letters, length):
    return itertools.product(letters, repeat=length)


def cyclically_reduced_words(length, letters=LETTERS2):
    return [w for w in all_words(letters, length) if cyclically_reduced(w)]


def positions(relators):
    """Every (word, position) of the symmetrized closure, duplicates kept."""
    out = []
    for k, r in enumerate(relators):
        for inv, base in ((False, tuple(r)), (True, inverse(r))):
            for s in range(len(base)):
                out.append((base[s:] + base[:s], (k, s, inv)))
    return out


def lcp(u, v):
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return n


def piece_table(relators):
    """Member word -> longest prefix it shares with the word at another position."""
    pos = positions(relators)
    best = {}
    for (u, pu), (v, pv) in itertools.combinations(pos, 2):
        n = lcp(u, v)
        best[u] = max(best.get(u, 0), n)
        best[v] = max(best.get(v, 0), n)
    for u, _ in pos:
        best.setdefault(u, 0)
    return best


def c_prime_holds(relators, lam):
    table = piece_table(relators)
    return all(table[m] < lam * len(m) for m in table)


def max_piece(relators):
    table = piece_table(relators)
    return max(table.values(), default=0)


def proper_power(w):
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and tuple(w[:d]) * (n // d) == tuple(w):
            return tuple(w[:d]), n // d
    return None


def concise(relators):
    closures = [rotations(r) | rotations(inverse(r)) for r in relators]
    for i, j in itertools.combinations(range(len(relators)), 2):
        if closures[i] & closures[j]:
            return False
    return True


def has_half_match(w, members):
    """Any member with more than half its length inside the cyclic word ``w``."""
    n = len(w)
    for m in members:
        for d in range(len(m) // 2 + 1, min(len(m), n) + 1):
            for p in range(n):
                if all(w[(p + t) % n] == m[t] for t in range(d)):
                    return True
    return False
