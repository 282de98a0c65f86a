"""Parameter-space searches: cospectral pairs, M_S-gap examples, and the sharded census."""
from __future__ import annotations

import hashlib
import json
import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

from .errors import InvalidRangeError, PersistenceFailureError
from .poly import Poly, square_free_part
from .spectra import Spectrum, adjacency_char_poly, inertia_of, seidel_char_poly
from .strings import ChainString, canonical_form, enumerate_chain_strings, is_isomorphic

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def poly_digest(p: Poly) -> str:
    """64-bit digest of the exact coefficient list; a bucketing key only."""
    text = ",".join(p.to_json())
    return hashlib.blake2b(text.encode(), digest_size=8).hexdigest()


def _char_poly(g: ChainString, matrix_kind: str) -> Poly:
    if matrix_kind == "adjacency":
        return adjacency_char_poly(g)
    if matrix_kind == "seidel":
        return seidel_char_poly(g)
    raise ValueError(f"unknown matrix kind {matrix_kind!r}")


def seidel_distinct_count(g: ChainString) -> int:
    """M_S(G): degree of the square-free part of the Seidel characteristic polynomial."""
    return square_free_part(seidel_char_poly(g)).degree


@dataclass(frozen=True)
class CensusRecord:
    blocks: tuple[int, ...]
    n: int
    h: int
    adjacency_coeffs: tuple[str, ...]
    seidel_coeffs: tuple[str, ...]
    adjacency_digest: str
    seidel_digest: str
    ms: int
    inertia: tuple[int, int, int]

    @property
    def string(self) -> ChainString:
        return ChainString(self.blocks)

    def to_json(self) -> dict:
        d = asdict(self)
        d["string"] = str(self.string)
        for k in ("blocks", "adjacency_coeffs", "seidel_coeffs", "inertia"):
            d[k] = list(d[k])
        return d

    @classmethod
    def from_json(cls, d: dict) -> "CensusRecord":
        return cls(
            blocks=tuple(d["blocks"]),
            n=d["n"],
            h=d["h"],
            adjacency_coeffs=tuple(d["adjacency_coeffs"]),
            seidel_coeffs=tuple(d["seidel_coeffs"]),
            adjacency_digest=d["adjacency_digest"],
            seidel_digest=d["seidel_digest"],
            ms=d["ms"],
            inertia=tuple(d["inertia"]),
        )


def make_record(g: ChainString) -> CensusRecord:
    g = canonical_form(g)
    pa, ps = adjacency_char_poly(g), seidel_char_poly(g)
    inertia = inertia_of(Spectrum.from_poly(ps, width=1)).as_tuple()
    return CensusRecord(
        blocks=g.blocks,
        n=g.n,
        h=g.h,
        adjacency_coeffs=tuple(pa.to_json()),
        seidel_coeffs=tuple(ps.to_json()),
        adjacency_digest=poly_digest(pa),
        seidel_digest=poly_digest(ps),
        ms=square_free_part(ps).degree,
        inertia=inertia,
    )


def _group_pairs(items: Iterable[tuple[ChainString, str, tuple]]) -> list[tuple[ChainString, ChainString]]:
    """Pairs of non-isomorphic strings with equal coefficient lists.

    Items are (string, digest, coefficients); the digest only buckets, equality
    is always decided on the full coefficient tuple.
    """
    buckets: dict[str, list] = defaultdict(list)
    for g, digest, coeffs in items:
        buckets[digest].append((g, coeffs))
    pairs = []
    for members in buckets.values():
        members.sort(key=lambda gc: gc[0].blocks)
        for i, (g, cg) in enumerate(members):
            for other, co in members[i + 1:]:
                if cg == co and not is_isomorphic(g, other):
                    pairs.append((g, other))
    pairs.sort(key=lambda p: (p[0].n, p[0].blocks, p[1].blocks))
    return pairs


def find_cospectral_pairs(
    n: int, matrix_kind: str = "adjacency", h: Optional[int] = None
) -> list[tuple[ChainString, ChainString]]:
    """All non-isomorphic cospectral pairs among canonical strings of order n."""
    items = []
    for g in enumerate_chain_strings(n, h=h, dedup=True):
        p = _char_poly(g, matrix_kind)
        items.append((g, poly_digest(p), p.coeffs))
    return _group_pairs(items)


def find_ms_gap_examples(n: int, h: int) -> list[ChainString]:
    """Canonical strings with h+1 < M_S(G) < 2h (empty range for h <= 2)."""
    if h <= 2:
        raise InvalidRangeError(f"h+1 < M_S < 2h has no solutions for h = {h}; need h >= 3")
    if 2 * h > n:
        raise InvalidRangeError(f"need 2h <= n, got n={n}, h={h}")
    return [g for g in enumerate_chain_strings(n, h=h, dedup=True) if h + 1 < seidel_distinct_count(g) < 2 * h]


def h2_family_member(g: ChainString, other: ChainString) -> bool:
    """Does the pair arise from the (a1,a2,a3,a4) -> (a2,a1,a4,a3) construction with a1*a4 = a2*a3?"""
    if g.h != 2 or other.h != 2:
        return False
    for x, y in ((g, other), (other, g)):
        for orient in (x.blocks, tuple(reversed(x.blocks))):
            a1, a2, a3, a4 = orient
            if a1 * a4 == a2 * a3 and is_isomorphic(ChainString((a2, a1, a4, a3)), y):
                return True
    return False


# ---------------------------------------------------------------------------
# sharded, resumable census

@dataclass
class CensusResult:
    records: list[CensusRecord] = field(default_factory=list)
    pairs: list[dict] = field(default_factory=list)

    def render(self) -> str:
        """Canonical JSON-lines text: sorted records, then sorted pairs."""
        lines = [json.dumps(r.to_json(), sort_keys=True, separators=(",", ":")) for r in self.records]
        lines += [json.dumps(p, sort_keys=True, separators=(",", ":")) for p in self.pairs]
        return "\n".join(lines) + ("\n" if lines else "")


def work_units(n_max: int) -> list[tuple[int, int]]:
    return [(n, a1) for n in range(2, n_max + 1) for a1 in range(1, n)]


def _run_unit(unit: tuple[int, int]) -> list[dict]:
    n, a1 = unit
    return [make_record(g).to_json() for g in enumerate_chain_strings(n, dedup=True, first_block=a1)]


def _load_log(path: str) -> dict[tuple[int, int], list[CensusRecord]]:
    done: dict[tuple[int, int], list[CensusRecord]] = {}
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return done
    pending: dict[tuple[int, int], list[CensusRecord]] = defaultdict(list)
    try:
        with open(path, encoding="utf-8") as fh:
            header = fh.readline()
            if not header.endswith("\n"):
                return done
            if json.loads(header).get("schema") != SCHEMA_VERSION:
                raise PersistenceFailureError(f"{path}: unsupported census log schema")
            for line in fh:
                if not line.endswith("\n"):
                    break  # torn final line from an interrupted run
                obj = json.loads(line)
                unit = tuple(obj["unit"])
                if obj["type"] == "record":
                    pending[unit].append(CensusRecord.from_json(obj["record"]))
                elif obj["type"] == "unit_done":
                    recs = pending.pop(unit, [])
                    if len(recs) == obj["count"]:
                        done[unit] = recs
    except (OSError, ValueError, KeyError) as exc:
        raise PersistenceFailureError(f"cannot read census log {path}: {exc}") from exc
    return done


def _drop_torn_tail(path: str) -> None:
    """Cut an interrupted final line so new lines start cleanly."""
    with open(path, "rb+") as fh:
        data = fh.read()
        if data.endswith(b"\n"):
            return
        fh.truncate(data.rfind(b"\n") + 1)


class _LogWriter:
    def __init__(self, path: Optional[str]):
        self.fh = None
        if path is None:
            return
        try:
            fresh = not os.path.exists(path) or os.path.getsize(path) == 0
            if not fresh:
                _drop_torn_tail(path)
            self.fh = open(path, "a", encoding="utf-8")
            if fresh:
                self._write({"schema": SCHEMA_VERSION})
        except OSError as exc:
            raise PersistenceFailureError(f"cannot write census log {path}: {exc}") from exc

    def _write(self, obj):
        try:
            self.fh.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")
        except OSError as exc:
            raise PersistenceFailureError(str(exc)) from exc

    def unit(self, unit, records: list[dict]):
        if self.fh is None:
            return
        for r in records:
            self._write({"type": "record", "unit": list(unit), "record": r})
        self._write({"type": "unit_done", "unit": list(unit), "count": len(records)})
        self.fh.flush()

    def close(self):
        if self.fh is not None:
            self.fh.close()


def _pairs_from_records(records: list[CensusRecord], kinds=("adjacency",)) -> list[dict]:
    out = []
    by_n: dict[int, list[CensusRecord]] = defaultdict(list)
    for r in records:
        by_n[r.n].append(r)
    for n in sorted(by_n):
        for kind in kinds:
            items = [
                (r.string, getattr(r, f"{kind}_digest"), getattr(r, f"{kind}_coeffs"))
                for r in by_n[n]
            ]
            for g, other in _group_pairs(items):
                family = kind == "adjacency" and h2_family_member(g, other)
                out.append({
                    "n": n,
                    "kind": kind,
                    "G": str(g),
                    "H": str(other),
                    "h": [g.h, other.h],
                    "family": "h2-construction" if family else "novel",
                })
    return out


def conjecture_census(
    n_max: int, jobs: int = 1, log_path: Optional[str] = None, matrix_kind: str = "adjacency"
) -> CensusResult:
    """Records for every canonical string with n <= n_max plus all cospectral pairs.

    Pairs are adjacency-cospectral by default; ``matrix_kind`` may be
    "seidel" or "both". Records always carry both digests.
    Work units are (n, a1); completed units found in ``log_path`` are replayed
    instead of recomputed. The result is independent of ``jobs``.
    """
    if n_max < 2:
        raise InvalidRangeError("n_max must be at least 2")
    kinds = {"adjacency": ("adjacency",), "seidel": ("seidel",), "both": ("adjacency", "seidel")}
    if matrix_kind not in kinds:
        raise ValueError(f"unknown matrix kind {matrix_kind!r}")
    done = _load_log(log_path) if log_path else {}
    todo = [u for u in work_units(n_max) if u not in done]
    log.info("census n_max=%d: %d units replayed, %d to run", n_max, len(done), len(todo))
    writer = _LogWriter(log_path)
    try:
        if jobs <= 1 or len(todo) <= 1:
            for unit in todo:
                recs = _run_unit(unit)
                writer.unit(unit, recs)
                done[unit] = [CensusRecord.from_json(r) for r in recs]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = {pool.submit(_run_unit, u): u for u in todo}
                for fut in as_completed(futures):
                    unit = futures[fut]
                    recs = fut.result()
                    writer.unit(unit, recs)
                    done[unit] = [CensusRecord.from_json(r) for r in recs]
    finally:
        writer.close()
    records = sorted(
        (r for u, recs in done.items() if u[0] <= n_max for r in recs),
        key=lambda r: (r.n, r.blocks),
    )
    return CensusResult(records, _pairs_from_records(records, kinds[matrix_kind]))
