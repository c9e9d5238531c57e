# surface_model.py - Crosscap surface model, curve symbols and their Z2 homology data

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class InvalidCurveError(ValueError):
    """Raised when a curve symbol does not make sense on a surface"""


class SurfaceSpec(BaseModel):
    """N_{g,n}: a sphere with g crosscaps and n boundary components"""
    model_config = ConfigDict(frozen=True)

    genus: int = Field(ge=1)
    boundary: int = Field(default=0, ge=0, le=1)

    def label(self) -> str:
        return f"N_{{{self.genus},{self.boundary}}}"


class Sidedness(str, Enum):
    ONE = "one-sided"
    TWO = "two-sided"


class BoundaryPart(str, Enum):
    WHOLE = "whole"
    D1 = "d1"
    D2 = "d2"


@dataclass(frozen=True)
class Z2Vector:
    """Bit vector in the crosscap-core basis e_1..e_g"""
    bits: Tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"Z2 vector entries must be 0 or 1: {self.bits}")

    @classmethod
    def zero(cls, genus: int) -> "Z2Vector":
        return cls((0,) * genus)

    @classmethod
    def from_indices(cls, genus: int, indices: Iterable[int]) -> "Z2Vector":
        bits = [0] * genus
        for i in indices:
            if not 1 <= i <= genus:
                raise InvalidCurveError(f"crosscap index {i} outside 1..{genus}")
            bits[i - 1] ^= 1
        return cls(tuple(bits))

    @classmethod
    def from_bitstring(cls, text: str) -> "Z2Vector":
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: '{text}'")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def from_array(cls, arr) -> "Z2Vector":
        return cls(tuple(int(b) % 2 for b in arr))

    @property
    def genus(self) -> int:
        return len(self.bits)

    def __add__(self, other: "Z2Vector") -> "Z2Vector":
        if self.genus != other.genus:
            raise ValueError("Z2 vectors of different lengths")
        return Z2Vector(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def dot(self, other: "Z2Vector") -> int:
        """Mod-2 intersection pairing; the form is the identity on crosscap cores"""
        if self.genus != other.genus:
            raise ValueError("Z2 vectors of different lengths")
        return sum(a & b for a, b in zip(self.bits, other.bits)) % 2

    def popcount(self) -> int:
        return sum(self.bits)

    def is_zero(self) -> bool:
        return not any(self.bits)

    def to_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.uint8)

    def to_bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)


def _check_indices(indices: Tuple[int, ...], kind: str):
    if not indices:
        raise InvalidCurveError(f"{kind} needs at least one crosscap index")
    if any(i < 1 for i in indices):
        raise InvalidCurveError(f"{kind} indices must be positive: {indices}")
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise InvalidCurveError(f"{kind} indices must be strictly increasing: {indices}")


@dataclass(frozen=True)
class Gamma:
    """The curve passing once through each listed crosscap"""
    indices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        _check_indices(self.indices, "Gamma")


@dataclass(frozen=True)
class GammaPrime:
    """Companion of Gamma with the same crosscaps, drawn on the other side of mu_1"""
    indices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        _check_indices(self.indices, "GammaPrime")


@dataclass(frozen=True)
class ChainBoundary:
    """Boundary component(s) of a regular neighbourhood of alpha_lo u ... u alpha_hi"""
    lo: int
    hi: int
    part: BoundaryPart

    def __post_init__(self):
        object.__setattr__(self, "part", BoundaryPart(self.part))
        if self.lo < 1 or self.hi < self.lo:
            raise InvalidCurveError(f"empty chain range {self.lo}-{self.hi}")
        odd = (self.hi - self.lo + 1) % 2 == 1
        if odd and self.part == BoundaryPart.WHOLE:
            raise InvalidCurveError("odd chains have two boundary components (d1, d2)")
        if not odd and self.part != BoundaryPart.WHOLE:
            raise InvalidCurveError("even chains have a single boundary component (whole)")

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1


NAME_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Declared:
    """A curve known only through its class and sidedness"""
    name: str
    z2class: Z2Vector
    sided: Sidedness

    def __post_init__(self):
        object.__setattr__(self, "sided", Sidedness(self.sided))
        if not NAME_PATTERN.match(self.name):
            raise InvalidCurveError(f"declared curve name '{self.name}' is not an identifier")
        parity = self.z2class.popcount() % 2
        if (parity == 1) != (self.sided == Sidedness.ONE):
            raise InvalidCurveError(
                f"declared curve '{self.name}' is {self.sided.value} but its class has self-pairing {parity}"
            )


CurveSymbol = Union[Gamma, GammaPrime, ChainBoundary, Declared]


def mu(i: int) -> Gamma:
    return Gamma((i,))


def alpha(i: int) -> Gamma:
    return Gamma((i, i + 1))


def beta() -> Gamma:
    return Gamma((1, 2, 3, 4))


def gamma_range(lo: int, hi: int) -> Gamma:
    return Gamma(tuple(range(lo, hi + 1)))


def validate_curve(spec: SurfaceSpec, c: CurveSymbol) -> None:
    g = spec.genus
    if isinstance(c, (Gamma, GammaPrime)):
        if c.indices[-1] > g:
            raise InvalidCurveError(f"crosscap index {c.indices[-1]} outside 1..{g}")
    elif isinstance(c, ChainBoundary):
        if c.hi > g - 1:
            raise InvalidCurveError(f"chain alpha_{c.lo}..alpha_{c.hi} does not fit on {spec.label()}")
    elif isinstance(c, Declared):
        if c.z2class.genus != g:
            raise InvalidCurveError(
                f"declared curve '{c.name}' has a class of length {c.z2class.genus}, expected {g}"
            )
    else:
        raise InvalidCurveError(f"unknown curve symbol {c!r}")


@lru_cache(maxsize=8192)
def curve_class(spec: SurfaceSpec, c: CurveSymbol) -> Z2Vector:
    validate_curve(spec, c)
    g = spec.genus
    if isinstance(c, (Gamma, GammaPrime)):
        return Z2Vector.from_indices(g, c.indices)
    if isinstance(c, ChainBoundary):
        if c.part == BoundaryPart.WHOLE:
            return Z2Vector.zero(g)
        return Z2Vector.from_indices(g, range(c.lo, c.hi + 2))
    return c.z2class


def curve_sidedness(spec: SurfaceSpec, c: CurveSymbol) -> Sidedness:
    v = curve_class(spec, c)
    return Sidedness.ONE if v.dot(v) == 1 else Sidedness.TWO


def is_two_sided(spec: SurfaceSpec, c: CurveSymbol) -> bool:
    return curve_sidedness(spec, c) == Sidedness.TWO


def chain_boundary(spec: SurfaceSpec, lo: int, hi: int) -> Tuple[ChainBoundary, ...]:
    """Boundary of the chain alpha_lo..alpha_hi: two curves for odd length, one for even"""
    if lo < 1 or hi < lo or hi > spec.genus - 1:
        raise InvalidCurveError(f"invalid chain range {lo}-{hi} on {spec.label()}")
    if (hi - lo + 1) % 2 == 1:
        return (ChainBoundary(lo, hi, BoundaryPart.D1), ChainBoundary(lo, hi, BoundaryPart.D2))
    return (ChainBoundary(lo, hi, BoundaryPart.WHOLE),)


def _join(indices: Tuple[int, ...]) -> str:
    return ",".join(str(i) for i in indices)


def format_curve(c: CurveSymbol) -> str:
    if isinstance(c, Gamma):
        if len(c.indices) == 1:
            return f"m:{c.indices[0]}"
        if len(c.indices) == 2 and c.indices[1] == c.indices[0] + 1:
            return f"al:{c.indices[0]}"
        if c.indices == (1, 2, 3, 4):
            return "bt"
        return f"g:{_join(c.indices)}"
    if isinstance(c, GammaPrime):
        return f"gp:{_join(c.indices)}"
    if isinstance(c, ChainBoundary):
        return f"cb:{c.lo}-{c.hi}:{c.part.value}"
    if isinstance(c, Declared):
        sided = "one" if c.sided == Sidedness.ONE else "two"
        return f"decl:{c.name}:{c.z2class.to_bitstring()}:{sided}"
    raise InvalidCurveError(f"unknown curve symbol {c!r}")


def _parse_int(text: str, original: str) -> int:
    text = text.strip()
    if not text.isdigit():
        raise InvalidCurveError(f"bad index '{text}' in curve '{original}'")
    return int(text)


def parse_curve(text: str) -> CurveSymbol:
    """Parse the curve syntax: g:1,2,3  gp:1,2  m:2  al:3  bt  cb:2-5:d1  decl:NAME:0110:two"""
    original = text
    text = text.strip()
    if text == "bt":
        return beta()
    head, sep, rest = text.partition(":")
    if not sep:
        raise InvalidCurveError(f"unknown curve token '{original}'")
    if head in ("g", "gp"):
        indices = tuple(_parse_int(part, original) for part in rest.split(","))
        return Gamma(indices) if head == "g" else GammaPrime(indices)
    if head == "m":
        return mu(_parse_int(rest, original))
    if head == "al":
        return alpha(_parse_int(rest, original))
    if head == "cb":
        span, sep, part = rest.partition(":")
        lo, dash, hi = span.partition("-")
        if not sep or not dash:
            raise InvalidCurveError(f"chain boundary needs lo-hi:part, got '{original}'")
        try:
            part_value = BoundaryPart(part.strip())
        except ValueError:
            raise InvalidCurveError(f"chain boundary part must be whole, d1 or d2 in '{original}'")
        return ChainBoundary(_parse_int(lo, original), _parse_int(hi, original), part_value)
    if head == "decl":
        pieces = [p.strip() for p in rest.split(":")]
        if len(pieces) != 3 or pieces[2] not in ("one", "two"):
            raise InvalidCurveError(f"declared curve needs NAME:BITS:one|two, got '{original}'")
        try:
            z2class = Z2Vector.from_bitstring(pieces[1])
        except ValueError as e:
            raise InvalidCurveError(str(e))
        sided = Sidedness.ONE if pieces[2] == "one" else Sidedness.TWO
        return Declared(pieces[0], z2class, sided)
    raise InvalidCurveError(f"unknown curve token '{original}'")
