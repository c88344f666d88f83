"""Free Z-modules as integer coordinate spaces, plus the preset catalog."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

if TYPE_CHECKING:
    from .fibseq import FibSequence

# labels that allow the "a+bi" text form, keyed by the second basis label
AFFINE_LABELS = ("i", "w", "r")


@dataclass(frozen=True)
class ModuleSpec:
    """A free Z-module of rank ``rank`` with named basis elements.

    ``embedding`` maps each basis element to a real vector and is only used
    for display.
    """

    rank: int
    labels: tuple[str, ...]
    name: str = "custom"
    embedding: Optional[tuple[tuple, ...]] = None

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if len(self.labels) != self.rank:
            raise ValueError(f"expected {self.rank} labels, got {len(self.labels)}")
        if self.embedding is not None and len(self.embedding) != self.rank:
            raise ValueError("embedding must give one vector per basis element")

    @property
    def affine(self) -> bool:
        return self.rank == 2 and self.labels[0] == "1" and self.labels[1] in AFFINE_LABELS

    def zero(self) -> "Element":
        return Element((0,) * self.rank)

    def element(self, *coords: int) -> "Element":
        if len(coords) != self.rank:
            raise ValueError(f"{self.name} elements have {self.rank} coordinates")
        return Element(tuple(coords))

    def basis(self, j: int) -> "Element":
        return Element(tuple(int(i == j) for i in range(self.rank)))


@dataclass(frozen=True)
class Element:
    """An element of Z^l, i.e. integer coordinates over some module basis."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"cannot combine Element with {type(other).__name__}")
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> "Element":
        if not isinstance(n, int):
            return NotImplemented
        return Element(tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]


def element_sum(items: Iterable[Element], rank: int) -> Element:
    acc = [0] * rank
    for e in items:
        if e.rank != rank:
            raise ValueError(f"rank mismatch: {e.rank} vs {rank}")
        for j, c in enumerate(e.coords):
            acc[j] += c
    return Element(tuple(acc))


# ---------------------------------------------------------------------------
# text forms

_INT = r"[+-]?\d+"
_COORD_RE = re.compile(rf"^\(({_INT}(?:,{_INT})*)\)$")
_AFFINE_RE = re.compile(r"^(?P<a>[+-]?\d+)(?:(?P<bsign>[+-])(?P<b>\d*)(?P<label>[iwr]))?$")
_IMAG_RE = re.compile(r"^(?P<bsign>[+-]?)(?P<b>\d*)(?P<label>[iwr])$")


def parse_element(spec: ModuleSpec, text: str) -> Element:
    """Parse ``(n1,...,nl)``, a bare integer (rank 1), or ``a+bi`` style text."""
    s = re.sub(r"\s+", "", text).replace("−", "-")
    if not s:
        raise ValueError("empty element text")
    m = _COORD_RE.match(s)
    if m:
        coords = tuple(int(x) for x in m.group(1).split(","))
        if len(coords) != spec.rank:
            raise ValueError(f"expected {spec.rank} coordinates, got {len(coords)}")
        return Element(coords)
    if spec.rank == 1 and re.fullmatch(_INT, s):
        return Element((int(s),))
    if spec.affine:
        m = _AFFINE_RE.match(s) or _IMAG_RE.match(s)
        if m:
            groups = m.groupdict()
            label = groups.get("label")
            if label and label != spec.labels[1]:
                raise ValueError(f"unexpected label {label!r} for {spec.name}")
            b = 0
            if label:
                b = int(groups["b"] or 1)
                if groups["bsign"] == "-":
                    b = -b
            return Element((int(groups.get("a") or 0), b))
    raise ValueError(f"malformed element text {text!r}")


def format_element(spec: ModuleSpec, e: Element) -> str:
    if e.rank != spec.rank:
        raise ValueError(f"rank mismatch: {e.rank} vs {spec.rank}")
    if spec.rank == 1:
        return str(e[0])
    if not spec.affine:
        return "(" + ",".join(str(c) for c in e.coords) + ")"
    a, b = e.coords
    label = spec.labels[1]
    if b == 0:
        return str(a)
    bpart = label if abs(b) == 1 else f"{abs(b)}{label}"
    if a == 0:
        return bpart if b > 0 else "-" + bpart
    return f"{a}{'+' if b > 0 else '-'}{bpart}"


def embed(spec: ModuleSpec, e: Element) -> tuple:
    """Ambient real coordinates of ``e`` (display only)."""
    if spec.embedding is None:
        return tuple(e.coords)
    dim = len(spec.embedding[0])
    return tuple(sum(c * v[j] for c, v in zip(e.coords, spec.embedding)) for j in range(dim))


# ---------------------------------------------------------------------------
# presets

PRESET_NAMES = ("integers", "gaussian", "eisenstein", "quadratic:d", "e8")

E8_BASIS = (
    (2, 0, 0, 0, 0, 0, 0, 0),
    (-1, 1, 0, 0, 0, 0, 0, 0),
    (0, -1, 1, 0, 0, 0, 0, 0),
    (0, 0, -1, 1, 0, 0, 0, 0),
    (0, 0, 0, -1, 1, 0, 0, 0),
    (0, 0, 0, 0, -1, 1, 0, 0),
    (0, 0, 0, 0, 0, -1, 1, 0),
    (Fraction(1, 2),) * 8,
)


def _one_way(spec: ModuleSpec, backward: Sequence[Element]) -> "FibSequence":
    """Sequence with F_0 = 0 and F_{-1}, F_{-2}, ... = ``backward``."""
    from .fibseq import FibSequence

    k = len(backward) + 1
    window = tuple(reversed(backward)) + (spec.zero(),)
    return FibSequence(k, spec, -(k - 1), window)


def quadratic_spec(d: int) -> ModuleSpec:
    if not -99 <= d <= 99:
        raise ValueError("quadratic parameter must satisfy |d| <= 99")
    if d >= 0 and math.isqrt(d) ** 2 == d:
        raise ValueError(f"quadratic parameter {d} is a perfect square")
    root = math.sqrt(abs(d))
    emb = ((1.0, 0.0), (root, 0.0) if d > 0 else (0.0, root))
    return ModuleSpec(2, ("1", "r"), f"quadratic:{d}", emb)


def preset(name: str) -> tuple[ModuleSpec, "FibSequence"]:
    """Look up a named module together with its one-way coding sequence."""
    if name == "integers":
        spec = ModuleSpec(1, ("1",), "integers")
        return spec, _one_way(spec, [spec.basis(0)])
    if name in ("gaussian", "eisenstein"):
        if name == "gaussian":
            spec = ModuleSpec(2, ("1", "i"), name, ((1.0, 0.0), (0.0, 1.0)))
        else:
            spec = ModuleSpec(2, ("1", "w"), name, ((1.0, 0.0), (-0.5, math.sqrt(3) / 2)))
        return spec, _one_way(spec, [spec.basis(0), spec.basis(1)])
    if name.startswith("quadratic:"):
        try:
            d = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad quadratic preset {name!r}") from None
        spec = quadratic_spec(d)
        return spec, _one_way(spec, [spec.basis(0), spec.basis(1)])
    if name == "e8":
        spec = ModuleSpec(8, tuple(f"v{j}" for j in range(1, 9)), "e8", E8_BASIS)
        return spec, _one_way(spec, [spec.basis(j) for j in range(8)])
    raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
