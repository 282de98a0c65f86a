"""Chain graphs encoded as binary strings 0^a1 1^a2 ... 0^a(2h-1) 1^a(2h)."""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import (
    EmptyInputError,
    InvalidRangeError,
    MalformedTokenError,
    NotConnectedError,
    OddBlockCountError,
)

_BLOCK_TOKEN = re.compile(r"([01])\^(\d+)")
_RAW_BITS = re.compile(r"[01]+")


@dataclass(frozen=True, order=True)
class ChainString:
    """Block sizes (a1, ..., a2h) of a connected chain graph.

    Odd positions are white blocks (zeros), even positions black blocks (ones).
    Every block is positive, so the first block is white and the last black,
    which makes the graph connected.
    """

    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(a) for a in self.blocks)
        if not blocks:
            raise EmptyInputError("a chain string needs at least one block pair")
        if len(blocks) % 2:
            raise OddBlockCountError(f"{len(blocks)} blocks; white/black blocks must pair up")
        if any(a < 1 for a in blocks):
            raise MalformedTokenError(f"block sizes must be positive, got {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def h(self) -> int:
        return len(self.blocks) // 2

    @property
    def bits(self) -> str:
        return "".join(str(i % 2) * a for i, a in enumerate(self.blocks))

    def __str__(self):
        return " ".join(f"{i % 2}^{a}" for i, a in enumerate(self.blocks))

    def __repr__(self):
        return f"ChainString({self.blocks})"

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]


def _from_bits(bits: str) -> ChainString:
    runs = [(ch, len(list(grp))) for ch, grp in itertools.groupby(bits)]
    if runs[0][0] == "1":
        raise NotConnectedError(f"{bits!r} starts with a 1-run (isolated black vertices)")
    if runs[-1][0] == "0":
        raise NotConnectedError(f"{bits!r} ends with a 0-run (isolated white vertices)")
    return ChainString(tuple(k for _, k in runs))


def parse_chain_string(text: str) -> ChainString:
    """Parse block notation ``"0^1 1^2 0^2 1^4"`` or a raw bit string ``"011001111"``."""
    if text is None or not text.strip():
        raise EmptyInputError("empty chain string")
    tokens = text.split()
    if len(tokens) == 1 and _RAW_BITS.fullmatch(tokens[0]):
        return _from_bits(tokens[0])
    parsed = []
    for tok in tokens:
        m = _BLOCK_TOKEN.fullmatch(tok)
        if not m:
            raise MalformedTokenError(f"bad token {tok!r}; expected 0^INT or 1^INT")
        exp = int(m.group(2))
        if exp < 1:
            raise MalformedTokenError(f"bad exponent in {tok!r}; must be positive")
        parsed.append((m.group(1), exp))
    for (a, _), (b, _) in zip(parsed, parsed[1:]):
        if a == b:
            raise MalformedTokenError(f"blocks must alternate 0/1 in {text!r}")
    if parsed[0][0] == "1":
        raise NotConnectedError(f"{text!r} starts with a 1-block (isolated black vertices)")
    if parsed[-1][0] == "0":
        raise NotConnectedError(f"{text!r} ends with a 0-block (isolated white vertices)")
    return ChainString(tuple(e for _, e in parsed))


def as_chain_string(g) -> ChainString:
    if isinstance(g, ChainString):
        return g
    if isinstance(g, str):
        return parse_chain_string(g)
    return ChainString(tuple(g))


def reverse_complement(g: ChainString) -> ChainString:
    """Reverse the bit string and flip every bit; in block form just reverse the blocks."""
    return ChainString(tuple(reversed(g.blocks)))


def canonical_form(g: ChainString) -> ChainString:
    rc = reverse_complement(g)
    return g if g.bits <= rc.bits else rc


def is_isomorphic(g: ChainString, other: ChainString) -> bool:
    return canonical_form(g) == canonical_form(other)


def _compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of n into ``parts`` positive parts, lexicographic order."""
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def enumerate_chain_strings(
    n: int,
    h: Optional[int] = None,
    dedup: bool = False,
    first_block: Optional[int] = None,
) -> Iterator[ChainString]:
    """All chain strings of order n (optionally fixed h), h ascending then lexicographic.

    With ``dedup`` only canonical forms are yielded, one per isomorphism class.
    ``first_block`` restricts a1 (used to shard the census).
    """
    if n < 2:
        raise InvalidRangeError(f"n must be at least 2, got {n}")
    if h is not None and (h < 1 or 2 * h > n):
        raise InvalidRangeError(f"need 1 <= h and 2h <= n, got n={n}, h={h}")
    hs = [h] if h is not None else range(1, n // 2 + 1)
    for hh in hs:
        parts = 2 * hh
        if first_block is None:
            gen = _compositions(n, parts)
        elif 1 <= first_block <= n - parts + 1:
            gen = ((first_block,) + rest for rest in _compositions(n - first_block, parts - 1))
        else:
            continue
        for blocks in gen:
            g = ChainString(blocks)
            if dedup and canonical_form(g) != g:
                continue
            yield g


def random_chain_string(n: int, h: int, seed: int) -> ChainString:
    """Uniform random composition of n into 2h positive parts.

    Stars and bars: 2h-1 distinct cut points drawn from 1..n-1 with
    ``random.Random(seed).sample`` (Mersenne Twister), then sorted.
    """
    if h < 1 or 2 * h > n:
        raise InvalidRangeError(f"need 1 <= h and 2h <= n, got n={n}, h={h}")
    rng = random.Random(seed)
    cuts = sorted(rng.sample(range(1, n), 2 * h - 1))
    edges = [0] + cuts + [n]
    return ChainString(tuple(b - a for a, b in zip(edges, edges[1:])))


def composition_count(n: int, h: Optional[int] = None) -> int:
    """Number of chain strings of order n (with fixed h, or summed over all h)."""
    from math import comb

    if h is not None:
        return comb(n - 1, 2 * h - 1)
    return sum(comb(n - 1, 2 * k - 1) for k in range(1, n // 2 + 1))
