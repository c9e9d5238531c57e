# word_algebra.py - Free-group words over Dehn twists and crosscap pushes

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Tuple, Union

from functions.surface_model import (
    CurveSymbol,
    InvalidCurveError,
    SurfaceSpec,
    alpha,
    beta,
    curve_class,
    format_curve,
    is_two_sided,
    mu,
    parse_curve,
)


class WordSyntaxError(ValueError):
    """Raised when word text does not follow the grammar"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GeneratorError(ValueError):
    """Raised when a generator is not valid on a surface"""


@dataclass(frozen=True)
class Twist:
    curve: CurveSymbol


@dataclass(frozen=True)
class Push:
    mu: CurveSymbol
    alpha: CurveSymbol


Generator = Union[Twist, Push]
Letter = Tuple[Generator, int]


def a(i: int) -> Twist:
    return Twist(alpha(i))


def b() -> Twist:
    return Twist(beta())


def y() -> Push:
    return Push(mu(1), alpha(1))


def validate_generator(spec: SurfaceSpec, gen: Generator) -> None:
    try:
        if isinstance(gen, Twist):
            if not is_two_sided(spec, gen.curve):
                raise GeneratorError(f"twist along one-sided curve {format_curve(gen.curve)}")
        elif isinstance(gen, Push):
            if is_two_sided(spec, gen.mu):
                raise GeneratorError(f"push needs a one-sided mu, got {format_curve(gen.mu)}")
            if curve_class(spec, gen.mu).dot(curve_class(spec, gen.alpha)) != 1:
                raise GeneratorError(
                    f"push curves {format_curve(gen.mu)} and {format_curve(gen.alpha)} do not meet once mod 2"
                )
        else:
            raise GeneratorError(f"unknown generator {gen!r}")
    except InvalidCurveError as e:
        raise GeneratorError(str(e))


def _merge(stack: List[List], gen: Generator, exp: int):
    if exp == 0:
        return
    if stack and stack[-1][0] == gen:
        stack[-1][1] += exp
        if stack[-1][1] == 0:
            stack.pop()
    else:
        stack.append([gen, exp])


@dataclass(frozen=True)
class Word:
    """Sequence of (generator, exponent) syllables; the empty word is the identity"""
    syllables: Tuple[Tuple[Generator, int], ...] = ()

    @classmethod
    def empty(cls) -> "Word":
        return cls(())

    @classmethod
    def of(cls, gen: Generator, exp: int = 1) -> "Word":
        return reduce(cls(((gen, exp),)))

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> "Word":
        stack: List[List] = []
        for gen, sign in letters:
            _merge(stack, gen, sign)
        return cls(tuple((gen, exp) for gen, exp in stack))

    def letters(self) -> List[Letter]:
        """Unit-letter expansion: a1^3 becomes a1, a1, a1"""
        out: List[Letter] = []
        for gen, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            out.extend([(gen, sign)] * abs(exp))
        return out

    def inverse(self) -> "Word":
        return Word(tuple((gen, -exp) for gen, exp in reversed(self.syllables)))

    def __mul__(self, other: "Word") -> "Word":
        return reduce(Word(self.syllables + other.syllables))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        base = reduce(base)
        result = Word.empty()
        for _ in range(abs(n)):
            result = result * base
        return result

    def __len__(self) -> int:
        return sum(abs(exp) for _, exp in self.syllables)

    def is_empty(self) -> bool:
        return not self.syllables

    def generators(self) -> List[Generator]:
        seen: List[Generator] = []
        for gen, _ in self.syllables:
            if gen not in seen:
                seen.append(gen)
        return seen

    def __str__(self) -> str:
        return format_word(self)


def reduce(w: Word) -> Word:
    stack: List[List] = []
    for gen, exp in w.syllables:
        _merge(stack, gen, exp)
    return Word(tuple((gen, exp) for gen, exp in stack))


def word(*items: Union[Generator, Letter, Word]) -> Word:
    """Build a reduced word from generators, (generator, exponent) pairs and words"""
    syllables: List[Tuple[Generator, int]] = []
    for item in items:
        if isinstance(item, Word):
            syllables.extend(item.syllables)
        elif isinstance(item, tuple):
            syllables.append((item[0], item[1]))
        else:
            syllables.append((item, 1))
    return reduce(Word(tuple(syllables)))


def commutator(x: Word, z: Word) -> Word:
    return x * z * x.inverse() * z.inverse()


def conjugate(f: Word, w: Word) -> Word:
    return f * w * f.inverse()


@lru_cache(maxsize=4096)
def format_generator(gen: Generator) -> str:
    if isinstance(gen, Twist):
        c = gen.curve
        if c == beta():
            return "b"
        text = format_curve(c)
        if text.startswith("al:"):
            return "a" + text[3:]
        return f"t[{text}]"
    if gen == y():
        return "y"
    return f"Y[{format_curve(gen.mu)};{format_curve(gen.alpha)}]"


def format_word(w: Word) -> str:
    terms = []
    for gen, exp in w.syllables:
        token = format_generator(gen)
        terms.append(token if exp == 1 else f"{token}^{exp}")
    return " ".join(terms)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def digits(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start:self.pos]

    def until(self, stops: str) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stops:
            self.pos += 1
        if self.pos >= len(self.text):
            raise WordSyntaxError(f"missing '{stops[-1]}'", start)
        return self.text[start:self.pos]


def _curve_at(text: str, position: int) -> CurveSymbol:
    try:
        return parse_curve(text)
    except InvalidCurveError as e:
        raise WordSyntaxError(str(e), position)


def _parse_generator(sc: _Scanner) -> Generator:
    start = sc.pos
    ch = sc.peek()
    if ch == "a":
        sc.pos += 1
        index = sc.digits()
        if not index or int(index) < 1:
            raise WordSyntaxError("expected a positive index after 'a'", sc.pos)
        return a(int(index))
    if ch == "b":
        sc.pos += 1
        return b()
    if ch == "y":
        sc.pos += 1
        return y()
    if ch == "t" and sc.text[sc.pos + 1:sc.pos + 2] == "[":
        sc.pos += 2
        inner_start = sc.pos
        inner = sc.until("]")
        sc.pos += 1
        return Twist(_curve_at(inner, inner_start))
    if ch == "Y" and sc.text[sc.pos + 1:sc.pos + 2] == "[":
        sc.pos += 2
        first_start = sc.pos
        first = sc.until(";]")
        if sc.peek() != ";":
            raise WordSyntaxError("push needs two curves separated by ';'", sc.pos)
        sc.pos += 1
        second_start = sc.pos
        second = sc.until("]")
        sc.pos += 1
        return Push(_curve_at(first, first_start), _curve_at(second, second_start))
    raise WordSyntaxError(f"unexpected character '{ch}'", start)


def parse_word(text: str) -> Word:
    """Parse whitespace-separated terms gen(^int)? into a freely reduced word"""
    sc = _Scanner(text)
    syllables: List[Tuple[Generator, int]] = []
    sc.skip_space()
    while sc.peek():
        gen = _parse_generator(sc)
        exp = 1
        if sc.peek() == "^":
            sc.pos += 1
            exp_start = sc.pos
            sign = 1
            if sc.peek() == "-":
                sign = -1
                sc.pos += 1
            digits = sc.digits()
            if not digits:
                raise WordSyntaxError("expected an integer exponent", exp_start)
            exp = sign * int(digits)
        nxt = sc.peek()
        if nxt and not nxt.isspace():
            raise WordSyntaxError(f"expected whitespace before '{nxt}'", sc.pos)
        syllables.append((gen, exp))
        sc.skip_space()
    return reduce(Word(tuple(syllables)))
