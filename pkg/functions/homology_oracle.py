# homology_oracle.py - Action of twists and pushes on mod-2 homology

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from functions.surface_model import SurfaceSpec, Z2Vector, curve_class
from functions.word_algebra import Generator, Twist, Word, format_word, validate_generator


@dataclass(frozen=True, eq=False)
class Z2Matrix:
    """g x g matrix over GF(2); column i is the image of e_i"""
    array: np.ndarray

    @classmethod
    def identity(cls, genus: int) -> "Z2Matrix":
        return cls(_frozen(np.eye(genus, dtype=np.uint8)))

    @property
    def genus(self) -> int:
        return self.array.shape[0]

    def __matmul__(self, other: "Z2Matrix") -> "Z2Matrix":
        prod = (self.array.astype(np.int64) @ other.array.astype(np.int64)) % 2
        return Z2Matrix(_frozen(prod.astype(np.uint8)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Z2Matrix) and np.array_equal(self.array, other.array)

    __hash__ = None

    def apply(self, v: Z2Vector) -> Z2Vector:
        return Z2Vector.from_array((self.array.astype(np.int64) @ v.to_array().astype(np.int64)) % 2)

    def is_identity(self) -> bool:
        return np.array_equal(self.array, np.eye(self.genus, dtype=np.uint8))

    def preserves_form(self) -> bool:
        # intersection form is the identity, so M^T M = I
        gram = (self.array.T.astype(np.int64) @ self.array.astype(np.int64)) % 2
        return np.array_equal(gram, np.eye(self.genus, dtype=np.int64))

    def inverse(self) -> "Z2Matrix":
        return Z2Matrix(_frozen(gf2_inverse(self.array)))

    def power(self, n: int) -> "Z2Matrix":
        base = self if n >= 0 else self.inverse()
        result = Z2Matrix.identity(self.genus)
        n = abs(n)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def rows(self) -> List[str]:
        return ["".join(str(int(b)) for b in row) for row in self.array]

    def __repr__(self) -> str:
        return "Z2Matrix(" + " ".join(self.rows()) + ")"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def gf2_inverse(M: np.ndarray) -> np.ndarray:
    """Gauss-Jordan on [M | I] with XOR row operations"""
    n = M.shape[0]
    aug = np.concatenate([np.asarray(M, dtype=np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        found = -1
        for row in range(col, n):
            if aug[row, col] == 1:
                found = row
                break
        if found == -1:
            raise ValueError("matrix is singular over GF(2)")
        if found != col:
            aug[[col, found]] = aug[[found, col]]
        for row in range(n):
            if row != col and aug[row, col] == 1:
                aug[row] ^= aug[col]
    return aug[:, n:].copy()


def transvection(v: Z2Vector) -> Z2Matrix:
    """x -> x + <x,v> v, i.e. I + v v^T"""
    col = v.to_array().astype(np.int64)
    arr = (np.eye(v.genus, dtype=np.int64) + np.outer(col, col)) % 2
    return Z2Matrix(_frozen(arr.astype(np.uint8)))


@lru_cache(maxsize=4096)
def _generator_matrix(spec: SurfaceSpec, gen: Generator) -> Z2Matrix:
    validate_generator(spec, gen)
    if isinstance(gen, Twist):
        return transvection(curve_class(spec, gen.curve))
    # crosscap pushes factor through two twists along the same class
    return Z2Matrix.identity(spec.genus)


def generator_matrix(spec: SurfaceSpec, gen: Generator) -> Z2Matrix:
    return _generator_matrix(spec, gen)


@lru_cache(maxsize=4096)
def _twist_column(spec: SurfaceSpec, gen: Generator) -> Optional[np.ndarray]:
    """Class of the twist curve as a column; None for pushes"""
    validate_generator(spec, gen)
    if isinstance(gen, Twist):
        return _frozen(curve_class(spec, gen.curve).to_array())
    return None


def word_matrix(spec: SurfaceSpec, w: Word) -> Z2Matrix:
    """Product M(f1) M(f2) ... M(fk); the rightmost letter acts first"""
    arr = np.eye(spec.genus, dtype=np.uint8)
    for gen, exp in w.syllables:
        v = _twist_column(spec, gen)
        # two-sided classes have even weight, so every transvection is an involution
        if v is None or exp % 2 == 0:
            continue
        # M (I + v v^T) = M + (M v) v^T
        arr ^= np.outer((arr @ v) & 1, v).astype(np.uint8)
    return Z2Matrix(_frozen(arr))


class OracleDiagnostic(BaseModel):
    word: str
    basis_index: int
    image: str


def check_relator(spec: SurfaceSpec, w: Word) -> Tuple[bool, Optional[OracleDiagnostic]]:
    """True iff w acts trivially on H1(N; Z2); otherwise report the first basis vector moved"""
    M = word_matrix(spec, w)
    if M.is_identity():
        return True, None
    for i in range(spec.genus):
        e = Z2Vector.from_indices(spec.genus, [i + 1])
        image = M.apply(e)
        if image != e:
            return False, OracleDiagnostic(word=format_word(w), basis_index=i + 1, image=image.to_bitstring())
    return False, None


class RelatorCheck(BaseModel):
    family: str
    word: str
    ok: bool
    diagnostic: Optional[OracleDiagnostic] = None


def check_relators(spec: SurfaceSpec, relators: Iterable[Tuple[str, Word]]) -> List[RelatorCheck]:
    results = []
    for family, w in relators:
        ok, diag = check_relator(spec, w)
        results.append(RelatorCheck(family=family, word=format_word(w), ok=ok, diagnostic=diag))
    return results


def check_presentation(p) -> List[RelatorCheck]:
    """Per-relator oracle results for any object carrying `spec` and family-tagged `relators`"""
    return check_relators(p.spec, [(r.family, r.word) for r in p.relators])
