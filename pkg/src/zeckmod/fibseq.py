"""Order-k Fibonacci sequences over a free Z-module."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Sequence

from . import intlinalg
from .module_space import Element, ModuleSpec, element_sum

MAX_ORDER = 32
MAX_INDEX = 10_000


class FibSequence:
    """A doubly infinite sequence with F_n = F_{n-k} + ... + F_{n-1}.

    The sequence is pinned down by ``window``, the k consecutive terms
    F_{anchor}, ..., F_{anchor+k-1}.  Terms are computed on demand and cached
    on both sides of the anchor.
    """

    def __init__(self, order: int, spec: ModuleSpec, anchor: int, window: Sequence[Element]):
        if order < 2:
            raise ValueError("order must be >= 2")
        if len(window) != order:
            raise ValueError(f"window must hold {order} terms, got {len(window)}")
        for e in window:
            if e.rank != spec.rank:
                raise ValueError(f"window term has rank {e.rank}, module has rank {spec.rank}")
        self.order = order
        self.spec = spec
        self.anchor = anchor
        self.window = tuple(window)
        self._lock = threading.Lock()
        # _fwd[j] = F_{anchor + j}; _bwd[j] = F_{anchor - 1 - j}
        self._fwd = list(self.window)
        self._bwd: list[Element] = []

    def __repr__(self) -> str:
        return f"FibSequence(order={self.order}, spec={self.spec.name!r}, anchor={self.anchor})"

    def term(self, r: int) -> Element:
        j = r - self.anchor
        with self._lock:
            if j >= 0:
                fwd = self._fwd
                while len(fwd) <= j:
                    fwd.append(element_sum(fwd[-self.order:], self.spec.rank))
                return fwd[j]
            j = -1 - j
            bwd = self._bwd
            k = self.order
            while len(bwd) <= j:
                # F_{n-k} = F_n - (F_{n-k+1} + ... + F_{n-1}); n = anchor + k - 1 - len(bwd)
                t = len(bwd)
                nxt = [self._at(-1 - t + i) for i in range(1, k + 1)]
                bwd.append(nxt[-1] - element_sum(nxt[:-1], self.spec.rank))
            return bwd[j]

    def _at(self, j: int) -> Element:
        # cached term at offset j from anchor; caller holds the lock
        return self._fwd[j] if j >= 0 else self._bwd[-1 - j]

    def terms(self, lo: int, hi: int) -> list[Element]:
        """F_lo, ..., F_hi inclusive."""
        return [self.term(r) for r in range(lo, hi + 1)]

    def __getitem__(self, r: int) -> Element:
        return self.term(r)

    def shifted(self, t: int) -> "FibSequence":
        """Same sequence, re-anchored ``t`` places to the right."""
        a = self.anchor + t
        return FibSequence(self.order, self.spec, a, self.terms(a, a + self.order - 1))


@dataclass(frozen=True)
class Conditions:
    spans: bool
    rank_ok: bool

    @property
    def verdict(self) -> bool:
        return self.spans and self.rank_ok


def zeckendorf_conditions(seq: FibSequence) -> Conditions:
    """Check whether every module element is a no-k-run sum of sequence terms.

    Spanning is tested on one window only; any k consecutive terms have the
    same integer span as the next k.
    """
    window = [list(e.coords) for e in seq.window]
    return Conditions(
        spans=intlinalg.spans_full_lattice(window),
        rank_ok=seq.spec.rank + 1 <= seq.order,
    )


def unique_form_conditions(seq: FibSequence) -> bool:
    """True iff F_0 = 0, rank = k - 1 and F_{-k+1}, ..., F_{-1} span the module."""
    k = seq.order
    if seq.spec.rank != k - 1 or not seq.term(0).is_zero():
        return False
    return intlinalg.spans_full_lattice([list(e.coords) for e in seq.terms(-k + 1, -1)])


# ---------------------------------------------------------------------------
# dominant characteristic root


@dataclass(frozen=True)
class PrimitiveRoot:
    order: int
    value: float
    tolerance: float


def char_poly(k: int, x: float) -> float:
    """x^k - x^(k-1) - ... - x - 1."""
    return x**k - sum(x**j for j in range(k))


def primitive_root(k: int, tol: float = 1e-13) -> PrimitiveRoot:
    """Bisect for the real root of the order-k characteristic polynomial in (1, 2)."""
    if k < 2:
        raise ValueError("order must be >= 2")
    lo, hi = 1.0, 2.0  # p(1) = 1 - k < 0, p(2) = 1 > 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if char_poly(k, mid) < 0:
            lo = mid
        else:
            hi = mid
    return PrimitiveRoot(k, (lo + hi) / 2, tol)


# ---------------------------------------------------------------------------
# sequence spec files

_LINE_RE = re.compile(r"^F\[\s*([+-]?\d+)\s*\]\s*:\s*(.*)$")


def parse_sequence_spec(text: str) -> FibSequence:
    """Read the line-oriented sequence format (order/rank/basis then k window terms)."""
    header: dict[str, str] = {}
    terms: list[tuple[int, tuple[int, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        m = _LINE_RE.match(line)
        if m:
            try:
                coords = tuple(int(x) for x in m.group(2).split(","))
            except ValueError:
                raise ValueError(f"line {lineno}: bad coordinates {m.group(2)!r}") from None
            terms.append((int(m.group(1)), coords))
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in ("order", "rank", "basis"):
            raise ValueError(f"line {lineno}: unknown entry {line!r}")
        if key in header:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        header[key] = value.strip()
    missing = {"order", "rank", "basis"} - header.keys()
    if missing:
        raise ValueError(f"missing keys: {', '.join(sorted(missing))}")
    try:
        k = int(header["order"])
        rank = int(header["rank"])
    except ValueError:
        raise ValueError("order and rank must be integers") from None
    if not 2 <= k <= MAX_ORDER:
        raise ValueError(f"order must be in [2, {MAX_ORDER}]")
    labels = tuple(s.strip() for s in header["basis"].split(","))
    spec = ModuleSpec(rank, labels, "custom")
    if len(terms) != k:
        raise ValueError(f"expected {k} window terms, got {len(terms)}")
    start = terms[0][0]
    for j, (idx, coords) in enumerate(terms):
        if idx != start + j:
            raise ValueError("window terms must have consecutive increasing indices")
        if len(coords) != rank:
            raise ValueError(f"F[{idx}] has {len(coords)} coordinates, expected {rank}")
    return FibSequence(k, spec, start, [Element(c) for _, c in terms])


def format_sequence_spec(seq: FibSequence) -> str:
    lines = [f"order: {seq.order}", f"rank: {seq.spec.rank}", f"basis: {','.join(seq.spec.labels)}"]
    for j, e in enumerate(seq.window):
        lines.append(f"F[{seq.anchor + j}]: {','.join(str(c) for c in e.coords)}")
    return "\n".join(lines) + "\n"
