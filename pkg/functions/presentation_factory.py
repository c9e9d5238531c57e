# presentation_factory.py - Finite presentations of M(N_{g,n}) for n in {0, 1}

import string
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from pydantic import BaseModel

from functions.surface_model import SurfaceSpec
from functions.word_algebra import (
    Generator,
    Word,
    a,
    b,
    commutator,
    format_generator,
    format_word,
    word,
    y,
)


class UnsupportedSurfaceError(ValueError):
    """Raised for surfaces outside the presented range"""


FAMILY_TAGS = (
    "A1", "A2", "A3", "A4", "A5", "A6", "A9a", "A9b",
    "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8",
    "C1", "C2", "C3", "C4", "small-case",
)


@dataclass(frozen=True)
class Relator:
    family: str
    word: Word


@dataclass(frozen=True)
class Presentation:
    spec: SurfaceSpec
    generators: Tuple[Generator, ...]
    relators: Tuple[Relator, ...]

    def family_counts(self) -> Dict[str, int]:
        counts = Counter(r.family for r in self.relators)
        return {tag: counts[tag] for tag in FAMILY_TAGS if counts[tag]}

    def by_family(self, family: str) -> List[Relator]:
        return [r for r in self.relators if r.family == family]


def _W(*items) -> Word:
    return word(*items)


def _inv(gen) -> tuple:
    return (gen, -1)


def _relation(lhs: Word, rhs: Word) -> Word:
    return lhs * rhs.inverse()


def _a_range(lo: int, hi: int) -> Word:
    return word(*[a(i) for i in range(lo, hi + 1)])


def _check_spec(spec: SurfaceSpec):
    if spec.genus < 2:
        raise UnsupportedSurfaceError(f"no presentation for genus {spec.genus} (need g >= 2)")
    if spec.boundary not in (0, 1):
        raise UnsupportedSurfaceError(f"no presentation for {spec.boundary} boundary components")


def rho_word(spec: SurfaceSpec) -> Word:
    g = spec.genus
    if g < 4 or spec.boundary != 0:
        raise UnsupportedSurfaceError(f"rho is defined for closed surfaces with g >= 4, not {spec.label()}")
    if g % 2 == 1:
        return _a_range(1, g - 1) ** g
    A = _a_range(2, g - 1)
    block = _W(_inv(y()), A, y(), A)
    return block ** ((g - 2) // 2) * _W(_inv(y()), A)


@lru_cache(maxsize=None)
def _b_chain(genus: int, i: int) -> Word:
    if i == 0:
        return Word.of(a(1))
    if i == 1:
        return Word.of(b())
    j = i - 1
    prev, cur = _b_chain(genus, j - 1), _b_chain(genus, j)
    middle = _a_range(2 * j, 2 * j + 3)
    return (prev * middle * cur) ** 5 * ((prev * middle) ** 6).inverse()


def b_chain_word(spec: SurfaceSpec, i: int) -> Word:
    """b_0 = a1, b_1 = b, b_{i+1} = (b_{i-1} a_{2i}..a_{2i+3} b_i)^5 (b_{i-1} a_{2i}..a_{2i+3})^-6"""
    g = spec.genus
    if g < 6 or g % 2 == 1:
        raise UnsupportedSurfaceError(f"the b_i chain needs even genus >= 6, got {g}")
    if not 0 <= i <= (g - 2) // 2:
        raise UnsupportedSurfaceError(f"b_{i} is outside 0..{(g - 2) // 2} for genus {g}")
    return _b_chain(g, i)


def _small_case(spec: SurfaceSpec) -> List[Relator]:
    g, n = spec.genus, spec.boundary
    tag = "small-case"
    if (g, n) == (2, 0):
        return [
            Relator(tag, _W((a(1), 2))),
            Relator(tag, _W((y(), 2))),
            Relator(tag, _W(a(1), y()) ** 2),
        ]
    if (g, n) == (2, 1):
        return [Relator(tag, _relation(_W(y(), a(1), _inv(y())), _W(_inv(a(1)))))]
    return [
        Relator(tag, _relation(_W(a(1), a(2), a(1)), _W(a(2), a(1), a(2)))),
        Relator(tag, _W((y(), 2))),
        Relator(tag, _W(a(1), y()) ** 2),
        Relator(tag, _W(a(2), y()) ** 2),
        Relator(tag, _W(a(1), a(2)) ** 6),
    ]


def _general_case(spec: SurfaceSpec) -> List[Relator]:
    g, n = spec.genus, spec.boundary
    rels: List[Relator] = []
    A_ = lambda i: Word.of(a(i))
    B = Word.of(b())
    Y = Word.of(y())

    if g >= 4:
        for i in range(1, g):
            for j in range(i + 2, g):
                rels.append(Relator("A1", commutator(A_(i), A_(j))))
    for i in range(1, g - 1):
        rels.append(Relator("A2", _relation(_W(a(i), a(i + 1), a(i)), _W(a(i + 1), a(i), a(i + 1)))))
    if g >= 4:
        for i in range(1, g):
            if i != 4:
                rels.append(Relator("A3", commutator(A_(i), B)))
    if g >= 5:
        rels.append(Relator("A4", _relation(_W(a(4), b(), a(4)), _W(b(), a(4), b()))))
        rels.append(Relator("A5", _relation(_W(_a_range(2, 4), b()) ** 10, _W(_a_range(1, 4), b()) ** 6)))
    if g >= 7:
        rels.append(Relator("A6", _relation(_W(_a_range(2, 6), b()) ** 12, _W(_a_range(1, 6), b()) ** 9)))
    if g == 6:
        rels.append(Relator("A9a", commutator(b_chain_word(spec, 2), B)))
    if g >= 8 and g % 2 == 0:
        rels.append(Relator("A9b", commutator(A_(g - 5), b_chain_word(spec, (g - 2) // 2))))

    if g >= 4:
        x = _W(a(2), a(3), a(1), a(2), y(), _inv(a(2)), _inv(a(1)), _inv(a(3)), _inv(a(2)))
        rels.append(Relator("B1", commutator(Y, x)))
    w = _W(a(2), a(1), _inv(y()), _inv(a(2)), y(), a(1), a(2))
    rels.append(Relator("B2", _relation(_W(y(), w, y()), _W(a(1), w, a(1)))))
    if g >= 4:
        for i in range(3, g):
            rels.append(Relator("B3", commutator(A_(i), Y)))
    rels.append(Relator("B4", commutator(A_(2), _W(y(), a(2), _inv(y())))))
    rels.append(Relator("B5", _relation(_W(y(), a(1)), _W(_inv(a(1)), y()))))
    if g >= 4:
        lhs = _W(b(), y(), b(), _inv(y()))
        rhs = _W(
            a(1), a(2), a(3), _inv(y()), a(2), y(), _inv(a(3)), _inv(a(2)), _inv(a(1)),
            _inv(a(2)), _inv(a(3)), y(), a(2), _inv(y()), a(3), a(2),
        )
        rels.append(Relator("B6", _relation(lhs, rhs)))
    if g >= 6:
        v = _W(
            a(4), a(5), a(3), a(4), a(2), a(3), a(1), a(2), y(),
            _inv(a(2)), _inv(a(1)), _inv(a(3)), _inv(a(2)), _inv(a(4)), _inv(a(3)), _inv(a(5)), _inv(a(4)),
        )
        rels.append(Relator("B7", commutator(v, B)))
    if g >= 5:
        down = _W(_inv(a(1)), _inv(a(2)), _inv(a(3)), _inv(a(4)))
        up = _W(a(4), a(3), a(2), a(1))
        lhs = _W(y(), down, b(), up, _inv(y()), down, _inv(b()), up)
        rhs = _W(
            _inv(a(4)), _inv(a(3)), _inv(a(2)), y(), a(2), a(3), a(4),
            _inv(a(3)), _inv(a(2)), _inv(y()), a(2), a(3),
            _inv(a(2)), y(), a(2),
            _inv(y()),
        )
        rels.append(Relator("B8", _relation(lhs, rhs)))

    if n == 0 and g >= 4:
        if g % 2 == 0:
            rels.append(Relator("C1", _a_range(1, g - 1) ** g))
        rho = rho_word(spec)
        rels.append(Relator("C2", commutator(A_(1), rho)))
        rels.append(Relator("C3", rho ** 2))
        if g % 2 == 1 and g >= 5:
            A = _a_range(2, g - 1)
            rels.append(Relator("C4", _W(_inv(y()), A, y(), A) ** ((g - 1) // 2)))
    return rels


def stukow_presentation(spec: SurfaceSpec) -> Presentation:
    """Generators a1..a_{g-1}, y and (g >= 4) b, with the relators of the case analysis"""
    _check_spec(spec)
    return _presentation(spec.genus, spec.boundary)


@lru_cache(maxsize=64)
def _presentation(g: int, n: int) -> Presentation:
    spec = SurfaceSpec(genus=g, boundary=n)
    gens: List[Generator] = [a(i) for i in range(1, g)] + [y()]
    if g >= 4:
        gens.append(b())
    if (g, n) in ((2, 0), (2, 1), (3, 0)):
        relators = _small_case(spec)
    else:
        relators = _general_case(spec)
    return Presentation(spec, tuple(gens), tuple(relators))


def presentation_document(p: Presentation) -> Dict:
    return {
        "generators": [format_generator(gen) for gen in p.generators],
        "relators": [{"family": r.family, "word": format_word(r.word)} for r in p.relators],
        "relator_count": len(p.relators),
    }


class FlatPresentation(BaseModel):
    """Single-letter alphabet form: letter i names generator i, upper case is the inverse"""
    generators: List[str]
    letters: str
    relators: List[str]
    families: List[str] = []


def _flatten(w: Word, alphabet: Dict[Generator, str]) -> str:
    out = []
    for gen, exp in w.syllables:
        if gen not in alphabet:
            raise ValueError(f"generator {format_generator(gen)} is not in the presentation")
        ch = alphabet[gen] if exp > 0 else alphabet[gen].upper()
        out.append(ch * abs(exp))
    return "".join(out)


def letter_alphabet(p: Presentation) -> Dict[Generator, str]:
    if len(p.generators) > len(string.ascii_lowercase):
        raise ValueError("too many generators for a single-letter alphabet")
    return {gen: string.ascii_lowercase[i] for i, gen in enumerate(p.generators)}


def flatten_word(p: Presentation, w: Word) -> str:
    return _flatten(w, letter_alphabet(p))


def enumeration_format(p: Presentation) -> FlatPresentation:
    alphabet = letter_alphabet(p)
    return FlatPresentation(
        generators=[format_generator(gen) for gen in p.generators],
        letters="".join(alphabet[gen] for gen in p.generators),
        relators=[_flatten(r.word, alphabet) for r in p.relators],
        families=[r.family for r in p.relators],
    )
