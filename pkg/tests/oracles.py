"""Independent brute-force oracles.

Everything here is written directly from the definitions, enumerating cut
vectors, windows, or subsets, deliberately sharing no code with the library
paths it checks.
"""

import itertools


def greater_at_first_difference(u, v):
    m = min(len(u), len(v))
    pu, pv = tuple(u[:m]), tuple(v[:m])
    return pu != pv and pu > pv


def brute_is_n_divisible(letters, n):
    """Enumerate every prefix length and every exact-n cut vector."""
    L = len(letters)
    if n == 1:
        return L >= 1
    for a in range(L - n + 1):
        for cuts in itertools.combinations(range(a + 1, L), n - 1):
            pts = (a,) + cuts + (L,)
            if all(
                greater_at_first_difference(letters[pts[i]:pts[i + 1]], letters[pts[i + 1]:pts[i + 2]])
                for i in range(n - 1)
            ):
                return True
    return False


def brute_earliest_witness(letters, n):
    """Lexicographically smallest (prefix_len, cuts...) vector, or None."""
    L = len(letters)
    candidates = []
    for a in range(L - n + 1):
        for cuts in itertools.combinations(range(a + 1, L), n - 1):
            pts = (a,) + cuts + (L,)
            if all(
                greater_at_first_difference(letters[pts[i]:pts[i + 1]], letters[pts[i + 1]:pts[i + 2]])
                for i in range(n - 1)
            ):
                candidates.append((a,) + cuts)
    return min(candidates) if candidates else None


def brute_max_division_index(letters):
    n = 1
    while n < len(letters) and brute_is_n_divisible(letters, n + 1):
        n += 1
    return n


def brute_is_tail_n_divisible(letters, n):
    L = len(letters)
    for starts in itertools.combinations(range(L), n):
        if all(
            greater_at_first_difference(letters[starts[i]:], letters[starts[i + 1]:])
            for i in range(n - 1)
        ):
            return True
    return False


def brute_find_power(letters, d):
    """All (start, root-length) pairs, letter-by-letter repetition check."""
    L = len(letters)
    hits = []
    for start in range(L):
        for r in range(1, (L - start) // d + 1):
            root = letters[start:start + r]
            if all(letters[start + t * r + i] == root[i] for t in range(d) for i in range(r)):
                hits.append((start, r))
    return min(hits) if hits else None


def brute_max_antichain_size(less, n):
    """Largest subset with no related pair; ``less(i, j)`` is the strict order."""
    best = 0
    for size in range(n, 0, -1):
        for subset in itertools.combinations(range(n), size):
            if all(
                not less(i, j) and not less(j, i)
                for i, j in itertools.combinations(subset, 2)
            ):
                return size
    return best


def brute_word_height(letters, max_root):
    """Minimal number of factors, each a power of a root of length <= max_root."""
    L = len(letters)
    best = [L + 1] * (L + 1)
    best[L] = 0
    for i in range(L - 1, -1, -1):
        for j in range(i + 1, L + 1):
            span = j - i
            qualifies = False
            for p in range(1, min(max_root, span) + 1):
                if span % p == 0 and all(letters[i + t] == letters[i + t % p] for t in range(span)):
                    qualifies = True
                    break
            if qualifies:
                best[i] = min(best[i], 1 + best[j])
    return best[0]


def brute_longest_decreasing(perm):
    best = 1
    for size in range(len(perm), 0, -1):
        for subset in itertools.combinations(range(len(perm)), size):
            if all(perm[a] > perm[b] for a, b in zip(subset, subset[1:])):
                return size
    return best
