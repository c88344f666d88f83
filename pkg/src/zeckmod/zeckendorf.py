"""Zeckendorf representations: sums of sequence terms with no k consecutive indices."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional

from . import intlinalg
from .fibseq import FibSequence, unique_form_conditions, zeckendorf_conditions
from .kequiv import (
    MAX_STEPS,
    NormalizationError,
    SparseSeq,
    binary_normalize,
    block_normalize,
    longest_run,
)
from .module_space import Element, element_sum

MAX_ENUM_SPAN = 24


@dataclass(frozen=True)
class ZeckRepr:
    indices: frozenset

    def __init__(self, indices: Iterable[int] = ()):
        object.__setattr__(self, "indices", frozenset(int(i) for i in indices))

    def __iter__(self):
        return iter(sorted(self.indices, reverse=True))

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        if not self.indices:
            return "∅"
        return ",".join(str(i) for i in self)

    def ascii(self) -> str:
        return str(self) if self.indices else "{}"

    @classmethod
    def parse(cls, text: str) -> "ZeckRepr":
        text = "".join(text.split())
        if text in ("", "{}", "∅"):
            return cls()
        return cls(int(t) for t in text.split(","))

    def is_valid(self, k: int) -> bool:
        return longest_run(self.indices) < k

    def as_seq(self) -> SparseSeq:
        return SparseSeq.ones(self.indices)


def recompose(seq: FibSequence, r: ZeckRepr) -> Element:
    return element_sum((seq.term(i) for i in r.indices), seq.spec.rank)


def _window_solve(seq: FibSequence, start: int, m: Element) -> list[int]:
    gens = [list(e.coords) for e in seq.terms(start, start + seq.order - 1)]
    c = intlinalg.solve_coordinates(gens, list(m.coords))
    if c is None:
        raise ValueError("element is not in the span of the sequence")
    return c


def _snapshot(x: dict[int, int]) -> SparseSeq:
    return SparseSeq({i: v for i, v in x.items() if i < 0})


def decompose_unique(
    seq: FibSequence, m: Element, trace: Optional[list] = None, fast: bool = True
) -> ZeckRepr:
    """The unique no-k-run representation of ``m`` over F_{-1}, F_{-2}, ...

    Writes ``m`` over F_{-k+1..-1}, lifts the coefficients to be nonnegative
    using F_{-k} + ... + F_{-1} = 0, then rewrites until the negative indices
    carry a 0/1 pattern without k consecutive ones:

    * a full run of ones ending at s: x_{s-k+1..s} -= 1, x_{s+1} += 1
      (largest such s first, repeated until none is left);
    * otherwise the largest s with x_s >= 2: x_s -= 2, x_{s-k} += 1,
      x_{s+1} += 1, then look for runs again.

    Anything that lands on index 0 is dropped since F_0 = 0.  With
    ``fast=True`` each rewrite is applied as many times as it stays valid;
    the end result is the same because the representation is unique.
    ``trace`` (requires ``fast=False``) collects the negative-index state
    after the lift and after every rewrite.
    """
    if not unique_form_conditions(seq):
        raise ValueError("sequence does not satisfy the unique-representation conditions")
    if m.rank != seq.spec.rank:
        raise ValueError(f"rank mismatch: {m.rank} vs {seq.spec.rank}")
    if m.is_zero():
        return ZeckRepr()
    if trace is not None:
        fast = False
    k = seq.order
    c = _window_solve(seq, -k + 1, m)
    low = min(min(c), 0)
    x = {-k + 1 + j: v - low for j, v in enumerate(c)}
    x[-k] = -low
    x = {i: v for i, v in x.items() if v}
    if trace is not None:
        trace.append(_snapshot(x))

    def get(i: int) -> int:
        return x.get(i, 0)

    def bump(i: int, delta: int) -> None:
        v = x.get(i, 0) + delta
        if v:
            x[i] = v
        else:
            x.pop(i, None)

    for _ in range(MAX_STEPS):
        lo = min(x)
        # full runs, largest end index first
        s = next(
            (s for s in range(-1, lo + k - 2, -1) if all(get(s - j) >= 1 for j in range(k))),
            None,
        )
        if s is not None:
            q = min(get(s - j) for j in range(k)) if fast else 1
            for j in range(k):
                bump(s - j, -q)
            bump(s + 1, q)
        else:
            s = next((s for s in range(-1, lo - 1, -1) if get(s) >= 2), None)
            if s is None:
                break
            q = get(s) // 2 if fast else 1
            bump(s, -2 * q)
            bump(s - k, q)
            bump(s + 1, q)
        if trace is not None:
            trace.append(_snapshot(x))
    else:
        raise NormalizationError(f"decompose_unique exceeded {MAX_STEPS} steps")
    return ZeckRepr(i for i, v in x.items() if i < 0 and v)


def represent_twoway(seq: FibSequence, m: Element) -> ZeckRepr:
    """Some no-k-run representation of ``m`` using terms at any index.

    An integer relation among k consecutive terms is normalized to a
    same-sign block y; adding a suitable multiple N*y to any coordinates z of
    ``m`` over that window makes every coefficient nonnegative, and the
    binary normal form of the result is a valid representation.
    """
    if not zeckendorf_conditions(seq).verdict:
        raise ValueError("sequence does not satisfy the two-way representation conditions")
    if m.rank != seq.spec.rank:
        raise ValueError(f"rank mismatch: {m.rank} vs {seq.spec.rank}")
    if m.is_zero():
        return ZeckRepr()
    k = seq.order
    rel = intlinalg.integral_dependence([list(e.coords) for e in seq.window])
    block = block_normalize(SparseSeq({seq.anchor + j: v for j, v in enumerate(rel)}), k)
    y = block.values if block.kind == "positive" else tuple(-v for v in block.values)
    z = _window_solve(seq, block.start, m)
    # smallest N >= 0 with z + N*y >= 0 componentwise
    n = max([0] + [-(zi // yi) for zi, yi in zip(z, y)])
    coeffs = {block.start + j: zi + n * yi for j, (zi, yi) in enumerate(zip(z, y))}
    return ZeckRepr(binary_normalize(SparseSeq(coeffs), k).support())


def no_run_subsets(lo: int, hi: int, k: int):
    """Yield every subset of [lo, hi] (as a tuple) with no k consecutive members."""
    out: list[int] = []

    def rec(i: int, run: int):
        if i > hi:
            yield tuple(out)
            return
        yield from rec(i + 1, 0)
        if run + 1 < k:
            out.append(i)
            yield from rec(i + 1, run + 1)
            out.pop()

    yield from rec(lo, 0)


def enumerate_values(seq: FibSequence, lo: int, hi: int) -> dict[Element, list[ZeckRepr]]:
    """Group every no-k-run subset of [lo, hi] by the element it sums to."""
    if hi - lo > MAX_ENUM_SPAN:
        raise ValueError(f"range too large: at most {MAX_ENUM_SPAN + 1} indices")
    terms = {r: seq.term(r) for r in range(lo, hi + 1)}
    rank = seq.spec.rank
    out: dict[Element, list[ZeckRepr]] = defaultdict(list)
    for subset in no_run_subsets(lo, hi, seq.order):
        out[element_sum((terms[r] for r in subset), rank)].append(ZeckRepr(subset))
    return dict(out)
