"""Brute-force enumeration of six-vertex configurations with domain wall
boundary conditions.

Ground truth for the determinant machinery: a depth-first sweep assigns edge
arrows row by row, propagating the ice rule (two in, two out per vertex), and
tallies each configuration's vertex-type census.  No alternating-sign-matrix
bijection is used, so the count doubles as a check of that correspondence.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mpf

from .precision import Precision, rounded

MAX_ENUM_N = 6

# Edge conventions: horizontal True = arrow points right, vertical True =
# arrow points up.  A vertex sees (h_left, h_right, v_above, v_below); the six
# ice-rule patterns split into the two a-type, two b-type and two c-type
# vertices.  The labeling is pinned functionally by Z_1 = c and
# Z_2 = c^2 (a^2 + b^2), both asserted in the tests.
_A_TYPE = {(True, True, True, True), (False, False, False, False)}
_B_TYPE = {(True, True, False, False), (False, False, True, True)}
_C_TYPE = {(True, False, True, False), (False, True, False, True)}
_VERTEX_KIND = {}
for _pat in _A_TYPE:
    _VERTEX_KIND[_pat] = 0
for _pat in _B_TYPE:
    _VERTEX_KIND[_pat] = 1
for _pat in _C_TYPE:
    _VERTEX_KIND[_pat] = 2

# (h_left, v_above) -> list of (h_right, v_below, kind)
_CHOICES = {}
for _pat, _kind in _VERTEX_KIND.items():
    _CHOICES.setdefault((_pat[0], _pat[2]), []).append((_pat[1], _pat[3], _kind))


@dataclass(frozen=True)
class ArrowGrid:
    """Full edge assignment of one ice state.

    horizontal[r][c] for r < n, c <= n: True = arrow points right.
    vertical[r][c] for r <= n, c < n: True = arrow points up.
    Row index 0 is the top; the DWBC boundary fixes horizontal[r][0] =
    False, horizontal[r][n] = True, vertical[0][c] = False and
    vertical[n][c] = True.
    """

    n: int
    horizontal: tuple
    vertical: tuple


@dataclass(frozen=True)
class EnumResult:
    """Vertex-type census of every DWBC configuration at size n."""

    n: int
    census: tuple          # ((n_a, n_b, n_c), multiplicity) pairs
    config_count: int


@lru_cache(maxsize=None)
def enumerate_dwbc(N: int) -> EnumResult:
    """All DWBC ice states on an N x N lattice (1 <= N <= 6).

    Boundary arrows: horizontal edges point outward (left edge False, right
    edge True), vertical edges point inward (top False = down, bottom True =
    up).
    """
    if not 1 <= N <= MAX_ENUM_N:
        raise ValueError(f"N={N} outside supported enumeration range 1..{MAX_ENUM_N}")
    census = Counter()

    def sweep_row(row, v_above, counts):
        # assign one row, branching on the ice rule; recurse into the next row
        def step(col, h_left, v_below_acc, counts):
            if col == N:
                if h_left is not True:      # right boundary arrow must exit
                    return
                if row == N - 1:
                    if all(v_below_acc):    # bottom boundary arrows enter (up)
                        census[tuple(counts)] += 1
                else:
                    sweep_row(row + 1, tuple(v_below_acc), counts)
                return
            for h_right, v_below, kind in _CHOICES[(h_left, v_above[col])]:
                counts[kind] += 1
                v_below_acc.append(v_below)
                step(col + 1, h_right, v_below_acc, counts)
                v_below_acc.pop()
                counts[kind] -= 1

        step(0, False, [], counts)

    sweep_row(0, (False,) * N, [0, 0, 0])
    ordered = tuple(sorted(census.items()))
    return EnumResult(N, ordered, sum(census.values()))


def configurations(N: int):
    """Yield every DWBC ice state as an explicit ArrowGrid (test-scale N)."""
    if not 1 <= N <= MAX_ENUM_N:
        raise ValueError(f"N={N} outside supported enumeration range 1..{MAX_ENUM_N}")

    def rows(row, v_above, h_rows, v_levels):
        def step(col, h_left, h_acc, v_acc):
            if col == N:
                if h_left is not True:
                    return
                h_done = h_rows + (tuple(h_acc),)
                v_done = v_levels + (tuple(v_acc),)
                if row == N - 1:
                    if all(v_acc):
                        yield ArrowGrid(N, h_done, v_done)
                else:
                    yield from rows(row + 1, tuple(v_acc), h_done, v_done)
                return
            for h_right, v_below, _kind in _CHOICES[(h_left, v_above[col])]:
                h_acc.append(h_right)
                v_acc.append(v_below)
                yield from step(col + 1, h_right, h_acc, v_acc)
                h_acc.pop()
                v_acc.pop()

        yield from step(0, False, [False], [])

    yield from rows(0, (False,) * N, (), ((False,) * N,))


def Z_bruteforce(N: int, a, b, c, p: Precision = Precision()):
    """Partition function sum a^n_a b^n_b c^n_c over the enumerated census."""
    result = enumerate_dwbc(N)
    with p.work():
        a, b, c = mpf(a), mpf(b), mpf(c)
        total = mpf(0)
        for (na, nb, nc), mult in result.census:
            total += mult * a ** na * b ** nb * c ** nc
    return rounded(total, p)


def asm_count(N: int) -> int:
    """Number of DWBC states (equals the alternating-sign-matrix count)."""
    return enumerate_dwbc(N).config_count
