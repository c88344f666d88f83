"""Coefficient sequences and the k-equivalence rewrites.

A coefficient sequence is an integer-valued function on Z with finite
support.  Operation 1 at index n moves one unit from x_n onto each of
x_{n-k}, ..., x_{n-1}; Operation 2 undoes it.  Both leave the dot product with
any order-k Fibonacci sequence unchanged, which is what every normal form
below relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .fibseq import FibSequence, primitive_root
from .module_space import Element

MAX_STEPS = 10**6


class NormalizationError(RuntimeError):
    """A rewrite loop ran past its step cap."""


class SparseSeq:
    """Finitely supported integer sequence indexed by Z.  Zeros are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Union[Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for i, v in items:
            v = c.get(int(i), 0) + int(v)
            if v:
                c[int(i)] = v
            else:
                c.pop(int(i), None)
        self._c = c

    @classmethod
    def ones(cls, indices: Iterable[int]) -> "SparseSeq":
        return cls({i: 1 for i in indices})

    @classmethod
    def parse(cls, text: str) -> "SparseSeq":
        """Read ``index:coeff`` pairs separated by commas (the debug form)."""
        text = "".join(text.split())
        if not text or text in ("{}", "zero"):
            return cls()
        pairs = {}
        for part in text.split(","):
            idx, sep, val = part.partition(":")
            if not sep:
                raise ValueError(f"expected index:coeff, got {part!r}")
            try:
                i, v = int(idx), int(val)
            except ValueError:
                raise ValueError(f"expected index:coeff, got {part!r}") from None
            if i in pairs:
                raise ValueError(f"index {i} given twice")
            pairs[i] = v
        return cls(pairs)

    def __getitem__(self, i: int) -> int:
        return self._c.get(i, 0)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseSeq):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def support(self) -> list[int]:
        return sorted(self._c)

    def to_dict(self) -> dict[int, int]:
        return dict(self._c)

    def __str__(self) -> str:
        return ",".join(f"{i}:{v}" for i, v in self.items())

    def __repr__(self) -> str:
        return f"SparseSeq({{{', '.join(f'{i}: {v}' for i, v in self.items())}}})"

    def is_binary(self) -> bool:
        return all(v == 1 for v in self._c.values())

    def has_run(self, k: int) -> bool:
        """True if k consecutive indices all carry a nonzero coefficient."""
        return longest_run(self._c) >= k


def longest_run(indices: Iterable[int]) -> int:
    best = run = 0
    prev = None
    for i in sorted(indices):
        run = run + 1 if prev is not None and i == prev + 1 else 1
        best = max(best, run)
        prev = i
    return best


def _shift(d: dict[int, int], n: int, k: int, times: int) -> None:
    """In place: apply Operation 1 ``times`` times at n (Operation 2 if negative)."""
    for i in range(n - k, n + 1):
        v = d.get(i, 0) + (-times if i == n else times)
        if v:
            d[i] = v
        else:
            d.pop(i, None)


def _bump(d: dict[int, int], i: int, delta: int) -> None:
    v = d.get(i, 0) + delta
    if v:
        d[i] = v
    else:
        d.pop(i, None)


def op1(s: SparseSeq, n: int, k: int) -> SparseSeq:
    d = s.to_dict()
    _shift(d, n, k, 1)
    return SparseSeq(d)


def op2(s: SparseSeq, n: int, k: int) -> SparseSeq:
    d = s.to_dict()
    _shift(d, n, k, -1)
    return SparseSeq(d)


def dot(s: SparseSeq, seq: FibSequence) -> Element:
    acc = [0] * seq.spec.rank
    for i, v in s.items():
        for j, c in enumerate(seq.term(i).coords):
            acc[j] += v * c
    return Element(tuple(acc))


def dot_primitive(s: SparseSeq, k: int) -> float:
    lam = primitive_root(k).value
    return math.fsum(v * lam**i for i, v in s.items())


def lex_compare(a: SparseSeq, b: SparseSeq) -> int:
    """-1, 0 or 1 according to the entry at the rightmost index where a and b differ."""
    for i in sorted(set(a.support()) | set(b.support()), reverse=True):
        if a[i] != b[i]:
            return 1 if a[i] > b[i] else -1
    return 0


# ---------------------------------------------------------------------------
# block normal form


@dataclass(frozen=True)
class BlockResult:
    kind: str  # "zero", "positive" or "negative"
    start: Optional[int] = None
    values: Optional[tuple[int, ...]] = None

    def to_seq(self) -> SparseSeq:
        if self.kind == "zero":
            return SparseSeq()
        return SparseSeq({self.start + j: v for j, v in enumerate(self.values)})

    def __str__(self) -> str:
        if self.kind == "zero":
            return "zero"
        sign = "+" if self.kind == "positive" else "-"
        return f"block {sign} @ {self.start}: {','.join(str(v) for v in self.values)}"


def block_normalize(s: SparseSeq, k: int, trace: Optional[list] = None) -> BlockResult:
    """Find the k-equivalent sequence that is one same-sign block of length k, or zero.

    The rightmost nonzero coefficient is cancelled over and over.  Once the
    support fits in k consecutive places this is the companion-matrix update
    on the window, which converges in direction to the dominant eigenvector
    and hence reaches a window of uniform sign.
    """
    d = s.to_dict()
    for _ in range(MAX_STEPS):
        if not d:
            return BlockResult("zero")
        hi = max(d)
        if hi - min(d) < k:
            vals = tuple(d.get(i, 0) for i in range(hi - k + 1, hi + 1))
            if all(v > 0 for v in vals):
                return BlockResult("positive", hi - k + 1, vals)
            if all(v < 0 for v in vals):
                return BlockResult("negative", hi - k + 1, vals)
        _shift(d, hi, k, d[hi])
        if trace is not None:
            trace.append((f"cancel @ {hi}", SparseSeq(d)))
    raise NormalizationError(f"block_normalize exceeded {MAX_STEPS} steps")


# ---------------------------------------------------------------------------
# binary normal form


def _binary_site(d: dict[int, int], k: int, top: int, bottom: int) -> Optional[tuple[str, int]]:
    for t in range(top, bottom - 1, -1):
        v = d.get(t, 0)
        if v >= 2:
            return "A", t
        if v >= 1 and all(d.get(t - j, 0) >= 1 for j in range(1, k)):
            return "B", t
    return None


def _rewrite(d: dict[int, int], k: int, trace: Optional[list]) -> dict[int, int]:
    if not d:
        return d
    top = max(d)
    for _ in range(MAX_STEPS):
        site = _binary_site(d, k, min(top, max(d)), min(d))
        if site is None:
            return d
        rule, t = site
        if rule == "A":
            _bump(d, t, -2)
            _bump(d, t - k, 1)
        else:
            for i in range(t - k + 1, t + 1):
                _bump(d, i, -1)
        _bump(d, t + 1, 1)
        if trace is not None:
            trace.append((f"{rule} @ {t}", SparseSeq(d)))
        # only indices t-k..t+1 changed, so no site beyond t+k can have appeared
        top = t + k
    raise NormalizationError(f"binary_normalize exceeded {MAX_STEPS} steps")


def binary_normalize(
    s: SparseSeq, k: int, trace: Optional[list] = None, fast: Optional[bool] = None
) -> SparseSeq:
    """k-equivalent 0/1 sequence with no k consecutive ones.

    Input coefficients must be nonnegative.  Rewrites, always at the rightmost
    applicable index t (rule A first):

    * A: x_t >= 2           -> x_t -= 2, x_{t-k} += 1, x_{t+1} += 1
    * B: x_{t-k+1..t} >= 1  -> each -= 1, x_{t+1} += 1

    Each rewrite raises the lexicographic order, so the loop terminates.  The
    number of rewrites grows linearly with the coefficients, so with ``fast``
    (the default unless a trace is requested) large inputs are processed one
    bit layer at a time instead: acc <- normal form of 2*acc + layer.  The
    output is the same since the binary normal form of a sequence is unique.
    """
    if fast is None:
        fast = trace is None
    if any(v < 0 for _, v in s.items()):
        raise ValueError("binary_normalize needs nonnegative coefficients")
    d = s.to_dict()
    if not fast or not d or max(d.values()) <= 3:
        return SparseSeq(_rewrite(d, k, trace))
    acc: dict[int, int] = {}
    for b in range(max(d.values()).bit_length() - 1, -1, -1):
        layer = {i: 2 * acc.get(i, 0) + ((d.get(i, 0) >> b) & 1) for i in set(acc) | set(d)}
        acc = _rewrite({i: v for i, v in layer.items() if v}, k, None)
    return SparseSeq(acc)
