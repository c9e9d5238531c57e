# builtin_scripts.py - Programmatic derivations of the C-relators and the push-square relation

from typing import Callable, Dict, List, Optional

from functions.derivation_checker import (
    DerivationScript,
    Direction,
    Expansion,
    RewriteError,
    ScriptError,
    Step,
    rewrite,
)
from functions.presentation_factory import rho_word
from functions.relation_schema import (
    RelationInstance,
    braid_i,
    braid_ii,
    chain_k,
    push_factor,
    push_product,
    trivial_twist,
    y_square,
)
from functions.surface_model import (
    BoundaryPart,
    ChainBoundary,
    Declared,
    Gamma,
    GammaPrime,
    Sidedness,
    SurfaceSpec,
    Z2Vector,
    alpha,
    gamma_range,
    mu,
)
from functions.word_algebra import Twist, Word, a, commutator, format_word, word, y

FORWARD = Direction.FORWARD
BACKWARD = Direction.BACKWARD

SCRIPT_NAMES = ("C1", "C2", "C3-odd", "C3-even", "C4", "Y-square")


class ScriptBuilder:
    """Tracks the current word while steps are appended, so positions can be read off"""

    def __init__(self, spec: SurfaceSpec, name: str, lhs: Word, rhs: Word, provenance: str = ""):
        self.spec = spec
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.provenance = provenance
        self.letters = lhs.letters()
        self.steps: List[Step] = []

    def apply(self, instance: RelationInstance, position: int, direction: Direction = FORWARD,
              inverted: bool = False, expand_at: Optional[int] = None, expand_by: Optional[Word] = None):
        expansion = Expansion(expand_at, expand_by) if expand_by is not None else None
        step = Step(position, instance, direction, inverted, expansion)
        try:
            self.letters = rewrite(self.letters, step)
        except RewriteError as e:
            raise ScriptError(f"{self.name}: step {len(self.steps) + 1} does not apply: {e}")
        self.steps.append(step)

    def current(self) -> Word:
        return Word.from_letters(self.letters)

    def build(self) -> DerivationScript:
        if self.current() != self.rhs:
            raise ScriptError(f"{self.name} ends at '{format_word(self.current())}'")
        return DerivationScript(self.name, self.spec, self.lhs, self.rhs, tuple(self.steps), self.provenance)


def _A(g: int) -> Word:
    return word(*[a(i) for i in range(2, g)])


def _closed(spec: SurfaceSpec, name: str, parity: Optional[int], min_genus: int = 4):
    g = spec.genus
    if spec.boundary != 0:
        raise ScriptError(f"{name} needs a closed surface, got {spec.label()}")
    if g < min_genus or (parity is not None and g % 2 != parity):
        kind = {0: "even ", 1: "odd "}.get(parity, "")
        raise ScriptError(f"{name} needs {kind}genus >= {min_genus}, got {g}")


def c1_script(spec: SurfaceSpec) -> DerivationScript:
    """(a1 ... a_{g-1})^g = 1 for even g: one odd chain whose two boundary twists cancel"""
    _closed(spec, "C1", 0)
    g = spec.genus
    chain = [alpha(i) for i in range(1, g)]
    lhs = word(*[a(i) for i in range(1, g)]) ** g
    bld = ScriptBuilder(spec, "C1", lhs, Word(), "(a1...a_{g-1})^g as a (g-1)-chain relation")
    whole = gamma_range(1, g)
    bld.apply(chain_k(spec, chain, [whole, whole], [1, -1]), 0)
    return bld.build()


def c2_script(spec: SurfaceSpec) -> DerivationScript:
    """[a1, rho] = 1: rho fixes alpha_1, so a single iterated braid step"""
    _closed(spec, "C2", None)
    rho = rho_word(spec)
    bld = ScriptBuilder(spec, "C2", commutator(Word.of(a(1)), rho), Word(), "[a1, rho] by the iterated braid lemma")
    bld.apply(braid_i(spec, rho, alpha(1), alpha(1), 1), 1, inverted=True)
    return bld.build()


def c3_odd_script(spec: SurfaceSpec) -> DerivationScript:
    """rho^2 = (a1 ... a_{g-1})^{2g}: an even chain bounding a Mobius band"""
    _closed(spec, "C3-odd", 1)
    g = spec.genus
    rho = rho_word(spec)
    bld = ScriptBuilder(spec, "C3-odd", rho ** 2, Word(), "rho^2 as a (g-1)-chain around a Mobius band")
    delta = ChainBoundary(1, g - 1, BoundaryPart.WHOLE)
    bld.apply(chain_k(spec, [alpha(i) for i in range(1, g)], [delta], [1]), 0)
    bld.apply(trivial_twist(spec, delta, "mobius"), 0)
    return bld.build()


def _commute_past(bld: ScriptBuilder, conj: Word, marker: int, g: int) -> int:
    """Move the single letter at `marker` left past a_{g-1}, ..., a_3; returns its new index"""
    spec = bld.spec
    for i in range(g - 1, 2, -1):
        bld.apply(braid_i(spec, conj, alpha(i), alpha(i), 1), marker - 1, BACKWARD)
        marker -= 1
    return marker


def _ladder(bld: ScriptBuilder, first: int, blocks: int, curve: Callable, g: int):
    """Fold Y_3 A^2 Y_3 A^2 ... into Y_{2m+1} A^{2m}, rightmost pair first"""
    spec = bld.spec
    L = g - 2
    A2 = _A(g) ** 2
    for i in range(2, blocks + 1):
        q = first + (blocks - i) * (1 + 2 * L)
        right = q + 1 + 2 * L
        image = curve((1,) + tuple(range(4, 2 * i + 2)))
        bld.apply(
            braid_ii(spec, A2, mu(1), curve(tuple(range(1, 2 * i))), mu(1), image, 1),
            q + 1, expand_at=right + 1, expand_by=A2.inverse(),
        )
        bld.apply(push_product(spec, mu(1), curve((1, 2, 3)), image, curve(tuple(range(1, 2 * i + 2)))), q, BACKWARD)


def _fold_rho(bld: ScriptBuilder, pos: int, g: int) -> int:
    """y^-1 A (y A y^-1 A)^m  ->  Y_{mu1, g_{1..g}} A^{g-1}; returns the index after the folded copy"""
    spec = bld.spec
    L = g - 2
    m = (g - 2) // 2
    A = _A(g)
    y_inv = Word.of(y(), -1)
    g13 = Gamma((1, 3))
    s = pos + 1 + L
    for _ in range(m):
        marker = _commute_past(bld, y_inv, s + 1 + L, g)
        bld.apply(
            braid_ii(spec, Word.of(a(2)), mu(1), alpha(1), mu(1), g13, -1),
            s + 1, inverted=True, expand_at=marker + 1, expand_by=Word.of(a(2), -1),
        )
        bld.apply(push_product(spec, mu(1), alpha(1), g13, gamma_range(1, 3)), s, BACKWARD)
        s += 1 + 2 * L
    _ladder(bld, pos + 1 + L, m, Gamma, g)
    top = pos + 1 + L
    skip = Gamma((1,) + tuple(range(3, g + 1)))
    bld.apply(
        braid_ii(spec, A, mu(1), gamma_range(1, g - 1), mu(1), skip, 1),
        pos + 1, expand_at=top + 1, expand_by=A.inverse(),
    )
    bld.apply(push_product(spec, mu(1), alpha(1), gamma_range(1, g), skip), pos + 1)
    return pos + 1 + (g - 1) * L


def c3_even_script(spec: SurfaceSpec) -> DerivationScript:
    """rho^2 = 1 for even g through the push ladder Y_{mu1, g_{1..2i+1}} and the push-square relation"""
    _closed(spec, "C3-even", 0)
    g = spec.genus
    L = g - 2
    A = _A(g)
    full = gamma_range(1, g)
    rho = rho_word(spec)
    bld = ScriptBuilder(spec, "C3-even", rho ** 2, Word(), "rho^2 rewritten with A = a2...a_{g-1}")
    second = _fold_rho(bld, 0, g)
    _fold_rho(bld, second, g)
    # Y_full commutes with A^{g-1}
    bld.apply(
        braid_ii(spec, A ** (g - 1), mu(1), full, mu(1), full, 1),
        1, expand_at=second + 1, expand_by=(A ** (g - 1)).inverse(),
    )
    delta = ChainBoundary(2, g - 1, BoundaryPart.WHOLE)
    bld.apply(chain_k(spec, [alpha(i) for i in range(2, g)], [delta], [1]), 2)
    bld.apply(y_square(spec, mu(1), full, delta, -1), 0)
    return bld.build()


def c4_script(spec: SurfaceSpec) -> DerivationScript:
    """(y^-1 A y A)^{(g-1)/2} = 1 for odd g, closing with the commutator of the two boundary twists"""
    _closed(spec, "C4", 1, min_genus=5)
    g = spec.genus
    L = g - 2
    blocks = (g - 1) // 2
    A = _A(g)
    lhs = word(Word.of(y(), -1), A, y(), A) ** blocks
    bld = ScriptBuilder(spec, "C4", lhs, Word(), "(y^-1 A y A)^{(g-1)/2} with the curves g'_{1..2i+1}")
    g13 = Gamma((1, 3))
    for j in range(blocks):
        s = j * (1 + 2 * L)
        marker = _commute_past(bld, Word.of(y()), s + 1 + L, g)
        bld.apply(
            braid_ii(spec, Word.of(a(2)), mu(1), alpha(1), mu(1), g13, 1),
            s + 1, expand_at=marker + 1, expand_by=Word.of(a(2), -1),
        )
        bld.apply(push_product(spec, mu(1), alpha(1), GammaPrime((1, 2, 3)), g13), s + 1)
    _ladder(bld, 0, blocks, GammaPrime, g)
    d1 = ChainBoundary(2, g - 1, BoundaryPart.D1)
    d2 = ChainBoundary(2, g - 1, BoundaryPart.D2)
    bld.apply(chain_k(spec, [alpha(i) for i in range(2, g)], [d1, d2], [1, 1]), 1)
    bld.apply(push_factor(spec, mu(1), GammaPrime(tuple(range(1, g + 1))), d1, d2, [-1, -1]), 0)
    bld.apply(braid_i(spec, Word.of(Twist(d2), -1), d1, d1, 1), 1)
    return bld.build()


def y_square_script(spec: SurfaceSpec, eps: int = 1) -> DerivationScript:
    """y^2 = t_delta from push product, push factorisation and a trivial twist"""
    g = spec.genus
    if g < 2:
        raise ScriptError(f"Y-square needs genus >= 2, got {g}")
    zero = Z2Vector.zero(g)
    delta = Declared("boundary_mu1_alpha1", zero, Sidedness.TWO)
    doubled = Declared("alpha1_twice", Z2Vector.from_indices(g, [1]), Sidedness.ONE)
    mobius = Declared("mobius_mu1", zero, Sidedness.TWO)
    claim = y_square(spec, mu(1), alpha(1), delta, eps)
    bld = ScriptBuilder(spec, "Y-square", claim.lhs, claim.rhs, "Y^2 from push product, factorisation and a trivial twist")
    bld.apply(push_product(spec, mu(1), alpha(1), alpha(1), doubled), 0, BACKWARD)
    bld.apply(push_factor(spec, mu(1), doubled, delta, mobius, [eps, 1]), 0)
    bld.apply(trivial_twist(spec, mobius, "mobius"), 1)
    return bld.build()


_BUILDERS: Dict[str, Callable[[SurfaceSpec], DerivationScript]] = {
    "c1": c1_script,
    "c2": c2_script,
    "c3-odd": c3_odd_script,
    "c3-even": c3_even_script,
    "c4": c4_script,
    "y-square": y_square_script,
}


def script_by_name(spec: SurfaceSpec, name: str) -> DerivationScript:
    key = name.strip().lower()
    if key == "c3":
        key = "c3-odd" if spec.genus % 2 == 1 else "c3-even"
    if key not in _BUILDERS:
        raise ScriptError(f"unknown script '{name}' (known: {', '.join(SCRIPT_NAMES)})")
    return _BUILDERS[key](spec)


def builtin_names(spec: SurfaceSpec) -> List[str]:
    g = spec.genus
    if g < 2:
        raise ScriptError(f"no builtin scripts for genus {g}")
    names = []
    if spec.boundary == 0 and g >= 4:
        names += ["C1", "C3-even"] if g % 2 == 0 else ["C3-odd", "C4"]
    names.append("Y-square")
    return names


def builtin_scripts(spec: SurfaceSpec) -> List[DerivationScript]:
    return [script_by_name(spec, name) for name in builtin_names(spec)]
