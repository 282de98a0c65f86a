"""Adjacency, Seidel and quotient matrices of a chain graph.

Vertices are ordered cell by cell: U1 (a1 whites), U2 (a2 blacks), ...,
U2h. A white in U(2k-1) is adjacent to a black in U(2j) iff j >= k.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .strings import ChainString


@dataclass(frozen=True)
class EquitablePartition:
    cells: tuple[range, ...]
    white: tuple[bool, ...]

    @property
    def order(self) -> int:
        return sum(len(c) for c in self.cells)


def equitable_partition(g: ChainString) -> EquitablePartition:
    cells, start = [], 0
    for a in g.blocks:
        cells.append(range(start, start + a))
        start += a
    return EquitablePartition(tuple(cells), tuple(i % 2 == 0 for i in range(len(cells))))


def _cell_adjacent(k: int, j: int) -> bool:
    """Are cells k and j (0-based) joined? Whites are even k, blacks odd."""
    if k % 2 == j % 2:
        return False
    white, black = (k, j) if k % 2 == 0 else (j, k)
    return black > white


def cell_of(g: ChainString) -> np.ndarray:
    return np.repeat(np.arange(len(g.blocks)), g.blocks)


def adjacency_matrix(g: ChainString) -> np.ndarray:
    cells = cell_of(g)
    white = cells % 2 == 0
    # u white, v black: adjacent iff black cell index > white cell index
    wb = white[:, None] & ~white[None, :] & (cells[None, :] > cells[:, None])
    a = wb | wb.T
    return a.astype(np.int64)


def seidel_matrix(g: ChainString) -> np.ndarray:
    """S = J - I - 2A, built entrywise."""
    a = adjacency_matrix(g)
    s = 1 - 2 * a
    np.fill_diagonal(s, 0)
    return s


def quotient_adjacency(g: ChainString) -> np.ndarray:
    m = len(g.blocks)
    q = np.zeros((m, m), dtype=np.int64)
    for k in range(m):
        for j in range(m):
            if _cell_adjacent(k, j):
                q[k, j] = g.blocks[j]
    return q


def quotient_seidel(g: ChainString) -> np.ndarray:
    """Row sums of S between cells: a_k - 1 on the diagonal, -a_j across edges, +a_j otherwise."""
    m = len(g.blocks)
    q = np.zeros((m, m), dtype=np.int64)
    for k in range(m):
        for j in range(m):
            if k == j:
                q[k, j] = g.blocks[k] - 1
            elif _cell_adjacent(k, j):
                q[k, j] = -g.blocks[j]
            else:
                q[k, j] = g.blocks[j]
    return q


def characteristic_matrix(p: EquitablePartition) -> np.ndarray:
    c = np.zeros((p.order, len(p.cells)), dtype=np.int64)
    for k, cell in enumerate(p.cells):
        c[list(cell), k] = 1
    return c


def degree_sequence(g: ChainString) -> Counter:
    """Multiset {degree: count}.

    White cell k has degree sum of the later-or-equal black blocks; black cell k
    has degree sum of the earlier-or-equal white blocks.
    """
    a = g.blocks
    degs: Counter = Counter()
    for k in range(g.h):
        white_deg = sum(a[2 * j + 1] for j in range(k, g.h))
        black_deg = sum(a[2 * j] for j in range(k + 1))
        degs[white_deg] += a[2 * k]
        degs[black_deg] += a[2 * k + 1]
    return degs


def degree_list(g: ChainString) -> list[int]:
    """Degrees sorted ascending."""
    return sorted(d for d, c in degree_sequence(g).items() for _ in range(c))


def matrix_to_json(m) -> dict:
    rows = [[int(v) for v in row] for row in np.asarray(m)]
    return {"order": len(rows), "rows": rows}


def matrix_from_json(data: dict) -> np.ndarray:
    m = np.array(data["rows"], dtype=np.int64).reshape(data["order"], -1)
    return m
