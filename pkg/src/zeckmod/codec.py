"""Fibonacci codes for module elements and for positive integers.

A codeword for a nonzero element is ``x_{-1} x_{-2} ... x_{s+1} 0 1^k`` where
x is the unique one-way Zeckendorf pattern and s its lowest index.  The
coefficient x_s = 1 is not sent: the 0 just before the terminator sits in its
position and keeps the body's trailing ones from running into the 1^k.
Zero is sent as the bare terminator.  Bit strings are plain ``str`` of
``'0'``/``'1'``, in transmission order.
"""

from __future__ import annotations

import random
import re
import struct
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .fibseq import FibSequence, unique_form_conditions
from .module_space import Element, ModuleSpec, format_element, parse_element
from .zeckendorf import decompose_unique

MAGIC = b"FZC1"


class CodewordError(ValueError):
    """A bit string that is not a valid codeword."""


def clean_bits(text: str) -> str:
    bits = "".join(text.split())
    if not re.fullmatch(r"[01]*", bits):
        raise ValueError("bit strings may only contain 0 and 1")
    return bits


def encode(seq: FibSequence, m: Element) -> str:
    if not unique_form_conditions(seq):
        raise ValueError("sequence does not satisfy the unique-representation conditions")
    k = seq.order
    r = decompose_unique(seq, m)
    if not r.indices:
        return "1" * k
    s = min(r.indices)
    body = "".join("1" if i in r.indices else "0" for i in range(-1, s, -1))
    return body + "0" + "1" * k


def decode(seq: FibSequence, w: str) -> Element:
    k = seq.order
    w = clean_bits(w)
    term = "1" * k
    if not w.endswith(term):
        raise CodewordError(f"codeword does not end with {term}")
    body = w[:-k]
    if body.endswith("1"):
        raise CodewordError("terminator run is longer than k")
    if term in body:
        raise CodewordError("k consecutive ones inside the codeword body")
    if not body:
        return seq.spec.zero()
    acc = seq.term(-len(body))
    for j, bit in enumerate(body[:-1], 1):
        if bit == "1":
            acc = acc + seq.term(-j)
    return acc


# ---------------------------------------------------------------------------
# classic order-2 code for positive integers


def _fibs_upto(n: int) -> list[int]:
    fibs = [1, 2]  # F_2, F_3, ...
    while fibs[-1] <= n:
        fibs.append(fibs[-1] + fibs[-2])
    return fibs


def classic_encode(n: int) -> str:
    if n < 1:
        raise ValueError("classic Fibonacci code needs n >= 1")
    fibs = [f for f in _fibs_upto(n) if f <= n]
    digits = ["0"] * len(fibs)
    for j in range(len(fibs) - 1, -1, -1):
        if fibs[j] <= n:
            digits[j] = "1"
            n -= fibs[j]
    return "".join(digits) + "1"


def classic_decode(w: str) -> int:
    w = clean_bits(w)
    if not w.endswith("11") or "11" in w[:-1]:
        raise CodewordError("classic codeword must contain exactly one 11, at the end")
    total, a, b = 0, 1, 2
    for bit in w[:-1]:
        if bit == "1":
            total += a
        a, b = b, a + b
    return total


# ---------------------------------------------------------------------------
# streams


def split_frames(w: str, k: int) -> tuple[list[tuple[int, int]], str]:
    """Cut a bit stream after every k-th consecutive one.

    Returns ``(frames, trailing)`` where ``frames`` lists ``(start, end)``
    slices and ``trailing`` is the unterminated remainder.
    """
    frames = []
    start = run = 0
    for i, b in enumerate(w):
        run = run + 1 if b == "1" else 0
        if run == k:
            frames.append((start, i + 1))
            start, run = i + 1, 0
    return frames, w[start:]


@dataclass
class StreamResult:
    messages: list
    trailing: str = ""
    skipped: list = field(default_factory=list)  # (start, end, reason) per undecodable frame
    ends: list = field(default_factory=list)  # stream offset after each decoded message


def decode_frames(w: str, k: int, decode_one: Callable[[str], object]) -> StreamResult:
    w = clean_bits(w)
    frames, trailing = split_frames(w, k)
    out = StreamResult([], trailing)
    for a, b in frames:
        try:
            msg = decode_one(w[a:b])
        except CodewordError as exc:
            out.skipped.append((a, b, str(exc)))
            continue
        out.messages.append(msg)
        out.ends.append(b)
    return out


def encode_stream(seq: FibSequence, ms: Iterable[Element]) -> str:
    return "".join(encode(seq, m) for m in ms)


def decode_stream(seq: FibSequence, w: str) -> tuple[list[Element], str]:
    res = decode_frames(w, seq.order, lambda f: decode(seq, f))
    return res.messages, res.trailing


def classic_encode_stream(ns: Iterable[int]) -> str:
    return "".join(classic_encode(n) for n in ns)


def classic_decode_stream(w: str) -> tuple[list[int], str]:
    res = decode_frames(w, 2, classic_decode)
    return res.messages, res.trailing


# ---------------------------------------------------------------------------
# containers and message files


def pack(bits: str, k: int) -> bytes:
    bits = clean_bits(bits)
    if not 0 <= k < 256:
        raise ValueError("k must fit in one byte")
    padded = bits + "0" * (-len(bits) % 8)
    body = int(padded, 2).to_bytes(len(padded) // 8, "big") if padded else b""
    return MAGIC + struct.pack(">BQ", k, len(bits)) + body


def unpack(data: bytes) -> tuple[str, int]:
    """Inverse of :func:`pack`; returns ``(bits, k)``."""
    if len(data) < 13 or data[:4] != MAGIC:
        raise ValueError("not a packed Fibonacci code container")
    k, nbits = struct.unpack(">BQ", data[4:13])
    body = data[13:]
    if len(body) != (nbits + 7) // 8:
        raise ValueError("container length does not match its bit count")
    bits = "".join(f"{byte:08b}" for byte in body)
    return bits[:nbits], k


def read_messages(spec: ModuleSpec, text: str) -> list[Element]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_element(spec, line))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return out


def write_messages(spec: ModuleSpec, ms: Iterable[Element]) -> str:
    return "".join(format_element(spec, m) + "\n" for m in ms)


# ---------------------------------------------------------------------------
# channel simulation


@dataclass(frozen=True)
class Edit:
    kind: str  # "insert", "delete" or "flip"
    pos: int
    bit: str = "0"

    def __post_init__(self):
        if self.kind not in ("insert", "delete", "flip"):
            raise ValueError(f"unknown edit kind {self.kind!r}")
        if self.bit not in ("0", "1"):
            raise ValueError("inserted bit must be '0' or '1'")


def corrupt(w: str, edits: Sequence[Edit]) -> str:
    """Apply ``edits`` in order; each position refers to the string as edited so far."""
    bits = list(w)
    for e in edits:
        limit = len(bits) if e.kind == "insert" else len(bits) - 1
        if not 0 <= e.pos <= limit:
            raise IndexError(f"{e.kind} position {e.pos} out of range for length {len(bits)}")
        if e.kind == "insert":
            bits.insert(e.pos, e.bit)
        elif e.kind == "delete":
            del bits[e.pos]
        else:
            bits[e.pos] = "1" if bits[e.pos] == "0" else "0"
    return "".join(bits)


def edit_distance(a: Sequence, b: Sequence) -> int:
    """Levenshtein distance between two lists, treating items as symbols."""
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


@dataclass
class ChannelReport:
    sent: list
    received: list
    affected: int
    resync_index: int  # offset in the received stream where framing is intact again
    resync_message: int  # number of sent messages that precede that point
    skipped: list
    trailing: str

    @property
    def suffix_ok(self) -> bool:
        tail = self.received[len(self.received) - (len(self.sent) - self.resync_message):]
        return tail == self.sent[self.resync_message:]


def channel_trial(seq: FibSequence, ms: Sequence[Element], edits: Sequence[Edit]) -> ChannelReport:
    """Encode ``ms``, corrupt the stream, decode it again and measure the damage."""
    words = [encode(seq, m) for m in ms]
    sent_bits = "".join(words)
    received_bits = corrupt(sent_bits, edits)
    res = decode_frames(received_bits, seq.order, lambda f: decode(seq, f))

    # sent boundaries, as offsets from the end of the stream
    tails = {}
    pos = len(sent_bits)
    tails[0] = len(words)
    for j in range(len(words) - 1, -1, -1):
        pos -= len(words[j])
        tails[len(sent_bits) - pos] = j
    first_edit = min((e.pos for e in edits), default=len(received_bits))
    frames, _ = split_frames(received_bits, seq.order)
    resync, resync_msg = len(received_bits), len(words)
    if edits:
        for _, end in frames:
            rest = len(received_bits) - end
            if end > first_edit and rest in tails and received_bits[end:] == sent_bits[len(sent_bits) - rest:]:
                resync, resync_msg = end, tails[rest]
                break
    else:
        resync, resync_msg = 0, 0
    return ChannelReport(
        sent=list(ms),
        received=res.messages,
        affected=edit_distance(list(ms), res.messages),
        resync_index=resync,
        resync_message=resync_msg,
        skipped=res.skipped,
        trailing=res.trailing,
    )


def random_edits(rng: random.Random, length: int, counts: dict[str, int]) -> list[Edit]:
    """Uniformly placed edits: ``counts`` maps edit kind to how many to draw."""
    edits = []
    for kind in ("delete", "flip", "insert"):
        for _ in range(counts.get(kind, 0)):
            if kind == "insert":
                edits.append(Edit(kind, rng.randint(0, length), rng.choice("01")))
                length += 1
            else:
                if length == 0:
                    raise ValueError("cannot delete or flip in an empty stream")
                edits.append(Edit(kind, rng.randrange(length)))
                length -= kind == "delete"
    return edits


def parse_edit_counts(text: str) -> dict[str, int]:
    """``"delete:1,flip:2"`` -> ``{"delete": 1, "flip": 2}``."""
    counts: dict[str, int] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        kind, _, n = part.partition(":")
        if kind not in ("insert", "delete", "flip"):
            raise ValueError(f"unknown edit kind {kind!r}")
        try:
            counts[kind] = counts.get(kind, 0) + int(n or 1)
        except ValueError:
            raise ValueError(f"bad edit count in {part!r}") from None
        if counts[kind] < 0:
            raise ValueError("edit counts must be nonnegative")
    return counts


def random_elements(rng: random.Random, spec: ModuleSpec, n: int, bound: int = 50) -> list[Element]:
    return [Element(tuple(rng.randint(-bound, bound) for _ in range(spec.rank))) for _ in range(n)]
