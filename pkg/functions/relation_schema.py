# relation_schema.py - Validated instances of the twist/push relation families

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from functions.homology_oracle import word_matrix
from functions.surface_model import (
    CurveSymbol,
    Declared,
    Gamma,
    InvalidCurveError,
    Sidedness,
    SurfaceSpec,
    Z2Vector,
    alpha,
    beta,
    curve_class,
    curve_sidedness,
    format_curve,
    gamma_range,
    parse_curve,
)
from functions.word_algebra import (
    GeneratorError,
    Push,
    Twist,
    Word,
    conjugate,
    format_word,
    parse_word,
    validate_generator,
    word,
)


class RelationTag(str, Enum):
    R0 = "R0"        # trivial twist
    RI_I = "RI_i"    # braid relation for twists
    RI_II = "RI_ii"  # braid relation for pushes
    RIIK = "RIIk"    # k-chain
    RIII = "RIII"    # lantern
    RIV = "RIV"      # push product
    RV = "RV"        # push factorisation
    RYSQ = "RYSQ"    # square of a push


class InvalidInstanceError(ValueError):
    """Raised when the parameters of a relation instance fail its side conditions"""

    def __init__(self, tag: RelationTag, message: str):
        super().__init__(f"{tag.value}: {message}")
        self.tag = tag


@dataclass(frozen=True)
class RelationInstance:
    tag: RelationTag
    spec: SurfaceSpec
    curves: Tuple[Tuple[str, CurveSymbol], ...]
    lhs: Word
    rhs: Word
    f: Word = Word()
    signs: Tuple[int, ...] = ()
    kind: str = ""

    def curve(self, name: str) -> CurveSymbol:
        for key, c in self.curves:
            if key == name:
                return c
        raise KeyError(name)

    def curve_list(self, prefix: str) -> List[CurveSymbol]:
        found = []
        i = 1
        while True:
            try:
                found.append(self.curve(f"{prefix}{i}"))
            except KeyError:
                return found
            i += 1


def _class(tag: RelationTag, spec: SurfaceSpec, c: CurveSymbol) -> Z2Vector:
    try:
        return curve_class(spec, c)
    except InvalidCurveError as e:
        raise InvalidInstanceError(tag, str(e))


def _two_sided(tag: RelationTag, spec: SurfaceSpec, c: CurveSymbol, role: str):
    _class(tag, spec, c)
    if curve_sidedness(spec, c) != Sidedness.TWO:
        raise InvalidInstanceError(tag, f"{role} {format_curve(c)} must be two-sided")


def _one_sided(tag: RelationTag, spec: SurfaceSpec, c: CurveSymbol, role: str):
    _class(tag, spec, c)
    if curve_sidedness(spec, c) != Sidedness.ONE:
        raise InvalidInstanceError(tag, f"{role} {format_curve(c)} must be one-sided")


def _check_sign(tag: RelationTag, eps: int):
    if eps not in (1, -1):
        raise InvalidInstanceError(tag, f"sign must be +1 or -1, got {eps}")


def _meets_once(tag: RelationTag, spec: SurfaceSpec, m: CurveSymbol, c: CurveSymbol):
    if _class(tag, spec, m).dot(_class(tag, spec, c)) != 1:
        raise InvalidInstanceError(tag, f"{format_curve(m)} and {format_curve(c)} must meet once mod 2")


def _finish(tag: RelationTag, spec: SurfaceSpec, curves, lhs: Word, rhs: Word,
            f: Word = Word(), signs: Tuple[int, ...] = (), kind: str = "") -> RelationInstance:
    try:
        for w in (f, lhs, rhs):
            for gen in w.generators():
                validate_generator(spec, gen)
    except GeneratorError as e:
        raise InvalidInstanceError(tag, str(e))
    if word_matrix(spec, lhs) != word_matrix(spec, rhs):
        raise InvalidInstanceError(tag, "the two sides act differently on mod-2 homology")
    return RelationInstance(tag, spec, tuple(curves), lhs, rhs, f, tuple(signs), kind)


def trivial_twist(spec: SurfaceSpec, c: CurveSymbol, kind: str) -> RelationInstance:
    """t_c = 1 for c bounding a disk or a Mobius band"""
    tag = RelationTag.R0
    kind = "mobius" if kind in ("möbius", "mobius") else kind
    if kind not in ("disk", "mobius"):
        raise InvalidInstanceError(tag, f"kind must be disk or mobius, got '{kind}'")
    _two_sided(tag, spec, c, "curve")
    if not _class(tag, spec, c).is_zero():
        raise InvalidInstanceError(tag, f"{format_curve(c)} is not null-homologous mod 2")
    return _finish(tag, spec, [("c", c)], Word.of(Twist(c)), Word(), kind=kind)


def braid_i(spec: SurfaceSpec, f: Word, c: CurveSymbol, image: CurveSymbol, eps: int) -> RelationInstance:
    """f t_c f^-1 = t_image^eps where image is f(c)"""
    tag = RelationTag.RI_I
    _check_sign(tag, eps)
    _two_sided(tag, spec, c, "curve")
    _two_sided(tag, spec, image, "image")
    try:
        moved = word_matrix(spec, f).apply(_class(tag, spec, c))
    except GeneratorError as e:
        raise InvalidInstanceError(tag, str(e))
    if moved != _class(tag, spec, image):
        raise InvalidInstanceError(
            tag, f"f sends [{format_curve(c)}] to {moved.to_bitstring()}, not to [{format_curve(image)}]"
        )
    lhs = conjugate(f, Word.of(Twist(c)))
    rhs = Word.of(Twist(image), eps)
    return _finish(tag, spec, [("c", c), ("image", image)], lhs, rhs, f=f, signs=(eps,))


def braid_ii(spec: SurfaceSpec, f: Word, mu_c: CurveSymbol, alpha_c: CurveSymbol,
             image_mu: CurveSymbol, image_alpha: CurveSymbol, eps: int) -> RelationInstance:
    """f Y_{mu,alpha} f^-1 = Y_{f(mu),f(alpha)}^eps"""
    tag = RelationTag.RI_II
    _check_sign(tag, eps)
    _one_sided(tag, spec, mu_c, "mu")
    _meets_once(tag, spec, mu_c, alpha_c)
    _one_sided(tag, spec, image_mu, "image of mu")
    try:
        M = word_matrix(spec, f)
    except GeneratorError as e:
        raise InvalidInstanceError(tag, str(e))
    for src, dst in ((mu_c, image_mu), (alpha_c, image_alpha)):
        moved = M.apply(_class(tag, spec, src))
        if moved != _class(tag, spec, dst):
            raise InvalidInstanceError(
                tag, f"f sends [{format_curve(src)}] to {moved.to_bitstring()}, not to [{format_curve(dst)}]"
            )
    lhs = conjugate(f, Word.of(Push(mu_c, alpha_c)))
    rhs = Word.of(Push(image_mu, image_alpha), eps)
    curves = [("mu", mu_c), ("alpha", alpha_c), ("image_mu", image_mu), ("image_alpha", image_alpha)]
    return _finish(tag, spec, curves, lhs, rhs, f=f, signs=(eps,))


def chain_k(spec: SurfaceSpec, curves: Sequence[CurveSymbol], boundary: Sequence[CurveSymbol],
            boundary_signs: Sequence[int], curve_signs: Optional[Sequence[int]] = None) -> RelationInstance:
    """(t_c1 ... t_ck)^(k+1) = t_d1 t_d2 for odd k, (t_c1 ... t_ck)^(2k+2) = t_d for even k"""
    tag = RelationTag.RIIK
    k = len(curves)
    if k < 1:
        raise InvalidInstanceError(tag, "a chain needs at least one curve")
    curve_signs = tuple(curve_signs) if curve_signs is not None else (1,) * k
    boundary_signs = tuple(boundary_signs)
    if len(curve_signs) != k:
        raise InvalidInstanceError(tag, f"expected {k} curve signs, got {len(curve_signs)}")
    expected = 2 if k % 2 == 1 else 1
    if len(boundary) != expected:
        raise InvalidInstanceError(
            tag, f"a {k}-chain has {expected} boundary curve(s), got {len(boundary)}"
        )
    if len(boundary_signs) != expected:
        raise InvalidInstanceError(tag, f"expected {expected} boundary signs, got {len(boundary_signs)}")
    for eps in curve_signs + boundary_signs:
        _check_sign(tag, eps)
    for c in curves:
        _two_sided(tag, spec, c, "chain curve")
    classes = [_class(tag, spec, c) for c in curves]
    for i in range(k):
        for j in range(i + 1, k):
            want = 1 if j == i + 1 else 0
            if classes[i].dot(classes[j]) != want:
                raise InvalidInstanceError(
                    tag, f"chain curves {i + 1} and {j + 1} pair to {classes[i].dot(classes[j])}, expected {want}"
                )
    if k % 2 == 1:
        boundary_class = Z2Vector.zero(spec.genus)
        for v in classes[::2]:
            boundary_class = boundary_class + v
    else:
        boundary_class = Z2Vector.zero(spec.genus)
    for d in boundary:
        _two_sided(tag, spec, d, "boundary curve")
        if _class(tag, spec, d) != boundary_class:
            raise InvalidInstanceError(
                tag, f"boundary {format_curve(d)} should have class {boundary_class.to_bitstring()}"
            )
    power = k + 1 if k % 2 == 1 else 2 * k + 2
    lhs = word(*[(Twist(c), s) for c, s in zip(curves, curve_signs)]) ** power
    rhs = word(*[(Twist(d), s) for d, s in zip(boundary, boundary_signs)])
    named = [(f"c{i + 1}", c) for i, c in enumerate(curves)] + [(f"delta{i + 1}", d) for i, d in enumerate(boundary)]
    return _finish(tag, spec, named, lhs, rhs, signs=curve_signs + boundary_signs)


def lantern(spec: SurfaceSpec, d12: CurveSymbol, d23: CurveSymbol, d13: CurveSymbol,
            boundary: Sequence[CurveSymbol], signs: Optional[Sequence[int]] = None) -> RelationInstance:
    """t_d12 t_d23 t_d13 = t_d1 t_d2 t_d3 t_d4 on a four-holed sphere"""
    tag = RelationTag.RIII
    if len(boundary) != 4:
        raise InvalidInstanceError(tag, f"a lantern has four boundary curves, got {len(boundary)}")
    signs = tuple(signs) if signs is not None else (1,) * 7
    if len(signs) != 7:
        raise InvalidInstanceError(tag, f"expected 7 signs, got {len(signs)}")
    for eps in signs:
        _check_sign(tag, eps)
    interior = [d12, d23, d13]
    for c in interior + list(boundary):
        _two_sided(tag, spec, c, "lantern curve")
    v12, v23, v13 = [_class(tag, spec, c) for c in interior]
    outer = [_class(tag, spec, c) for c in boundary]
    total = outer[0] + outer[1] + outer[2] + outer[3]
    if not total.is_zero():
        raise InvalidInstanceError(tag, "boundary classes of a lantern must sum to zero")
    if not any(v12 == p1 + p2 and v23 == p2 + p3 and v13 == p1 + p3
               for p1, p2, p3, _ in permutations(outer)):
        raise InvalidInstanceError(tag, "no labelling of the boundary matches the interior classes")
    lhs = word(*[(Twist(c), s) for c, s in zip(interior, signs[:3])])
    rhs = word(*[(Twist(c), s) for c, s in zip(boundary, signs[3:])])
    named = [("d12", d12), ("d23", d23), ("d13", d13)] + [(f"d{i + 1}", c) for i, c in enumerate(boundary)]
    return _finish(tag, spec, named, lhs, rhs, signs=signs)


def push_product(spec: SurfaceSpec, mu_c: CurveSymbol, alpha_c: CurveSymbol,
                 beta_c: CurveSymbol, product: CurveSymbol) -> RelationInstance:
    """Y_{mu,product} = Y_{mu,alpha} Y_{mu,beta} where product is the loop alpha.beta"""
    tag = RelationTag.RIV
    _one_sided(tag, spec, mu_c, "mu")
    for c in (alpha_c, beta_c, product):
        _meets_once(tag, spec, mu_c, c)
    expected = _class(tag, spec, alpha_c) + _class(tag, spec, beta_c) + _class(tag, spec, mu_c)
    if _class(tag, spec, product) != expected:
        raise InvalidInstanceError(
            tag, f"product {format_curve(product)} should have class {expected.to_bitstring()}"
        )
    lhs = Word.of(Push(mu_c, product))
    rhs = word(Push(mu_c, alpha_c), Push(mu_c, beta_c))
    curves = [("mu", mu_c), ("alpha", alpha_c), ("beta", beta_c), ("product", product)]
    return _finish(tag, spec, curves, lhs, rhs)


def push_factor(spec: SurfaceSpec, mu_c: CurveSymbol, alpha_c: CurveSymbol,
                delta1: CurveSymbol, delta2: CurveSymbol, signs: Sequence[int]) -> RelationInstance:
    """Y_{mu,alpha} = t_delta1^e1 t_delta2^e2 for one-sided alpha"""
    tag = RelationTag.RV
    signs = tuple(signs)
    if len(signs) != 2:
        raise InvalidInstanceError(tag, f"expected 2 signs, got {len(signs)}")
    for eps in signs:
        _check_sign(tag, eps)
    _one_sided(tag, spec, mu_c, "mu")
    _one_sided(tag, spec, alpha_c, "alpha")
    _meets_once(tag, spec, mu_c, alpha_c)
    expected = _class(tag, spec, alpha_c) + _class(tag, spec, mu_c)
    for d in (delta1, delta2):
        _two_sided(tag, spec, d, "delta")
        if _class(tag, spec, d) != expected:
            raise InvalidInstanceError(tag, f"{format_curve(d)} should have class {expected.to_bitstring()}")
    lhs = Word.of(Push(mu_c, alpha_c))
    rhs = word((Twist(delta1), signs[0]), (Twist(delta2), signs[1]))
    curves = [("mu", mu_c), ("alpha", alpha_c), ("delta1", delta1), ("delta2", delta2)]
    return _finish(tag, spec, curves, lhs, rhs, signs=signs)


def y_square(spec: SurfaceSpec, mu_c: CurveSymbol, alpha_c: CurveSymbol,
             delta: CurveSymbol, eps: int) -> RelationInstance:
    """Y_{mu,alpha}^2 = t_delta^eps for two-sided alpha, delta the boundary of N(mu u alpha)"""
    tag = RelationTag.RYSQ
    _check_sign(tag, eps)
    _one_sided(tag, spec, mu_c, "mu")
    _two_sided(tag, spec, alpha_c, "alpha")
    _meets_once(tag, spec, mu_c, alpha_c)
    _two_sided(tag, spec, delta, "delta")
    if not _class(tag, spec, delta).is_zero():
        raise InvalidInstanceError(tag, f"{format_curve(delta)} must be null-homologous mod 2")
    lhs = Word.of(Push(mu_c, alpha_c), 2)
    rhs = Word.of(Twist(delta), eps)
    curves = [("mu", mu_c), ("alpha", alpha_c), ("delta", delta)]
    return _finish(tag, spec, curves, lhs, rhs, signs=(eps,))


def rebuild(instance: RelationInstance) -> RelationInstance:
    """Reconstruct an instance from its parameters, running every side-condition check again"""
    tag, spec = instance.tag, instance.spec
    c = instance.curve
    try:
        if tag == RelationTag.R0:
            return trivial_twist(spec, c("c"), instance.kind)
        if tag == RelationTag.RI_I:
            return braid_i(spec, instance.f, c("c"), c("image"), instance.signs[0])
        if tag == RelationTag.RI_II:
            return braid_ii(spec, instance.f, c("mu"), c("alpha"), c("image_mu"), c("image_alpha"),
                            instance.signs[0])
        if tag == RelationTag.RIIK:
            chain = instance.curve_list("c")
            k = len(chain)
            return chain_k(spec, chain, instance.curve_list("delta"), instance.signs[k:], instance.signs[:k])
        if tag == RelationTag.RIII:
            return lantern(spec, c("d12"), c("d23"), c("d13"),
                           [c("d1"), c("d2"), c("d3"), c("d4")], instance.signs)
        if tag == RelationTag.RIV:
            return push_product(spec, c("mu"), c("alpha"), c("beta"), c("product"))
        if tag == RelationTag.RV:
            return push_factor(spec, c("mu"), c("alpha"), c("delta1"), c("delta2"), instance.signs)
        if tag == RelationTag.RYSQ:
            return y_square(spec, c("mu"), c("alpha"), c("delta"), instance.signs[0])
    except (KeyError, IndexError) as e:
        raise InvalidInstanceError(tag, f"missing parameter {e}")
    raise InvalidInstanceError(tag, "unknown relation tag")


def revalidate(instance: RelationInstance) -> Tuple[bool, str]:
    try:
        fresh = rebuild(instance)
    except InvalidInstanceError as e:
        return False, str(e)
    if fresh.lhs != instance.lhs or fresh.rhs != instance.rhs:
        return False, f"{instance.tag.value}: recorded sides do not match the parameters"
    return True, "ok"


def expand_conjugation(instance: RelationInstance) -> List[RelationInstance]:
    """Split a braid instance with a long conjugator into one-letter braid instances, innermost first"""
    if instance.tag not in (RelationTag.RI_I, RelationTag.RI_II):
        return [instance]
    letters = instance.f.letters()
    if len(letters) <= 1:
        return [instance]
    spec = instance.spec
    steps: List[RelationInstance] = []
    is_push = instance.tag == RelationTag.RI_II
    current = [instance.curve("mu"), instance.curve("alpha")] if is_push else [instance.curve("c")]
    finals = [instance.curve("image_mu"), instance.curve("image_alpha")] if is_push else [instance.curve("image")]
    for j in range(len(letters) - 1, -1, -1):
        f = Word.from_letters([letters[j]])
        M = word_matrix(spec, f)
        if j == 0:
            targets, eps = finals, instance.signs[0]
        else:
            targets, eps = [], 1
            for role, cur in zip(("m", "c"), current):
                old = curve_class(spec, cur)
                moved = M.apply(old)
                if moved == old:
                    targets.append(cur)
                else:
                    sided = curve_sidedness(spec, cur)
                    targets.append(Declared(f"conj_{role}{j}", moved, sided))
        if is_push:
            steps.append(braid_ii(spec, f, current[0], current[1], targets[0], targets[1], eps))
        else:
            steps.append(braid_i(spec, f, current[0], targets[0], eps))
        current = targets
    return steps


def instance_record(instance: RelationInstance) -> Dict:
    return {
        "tag": instance.tag.value,
        "curves": {name: format_curve(c) for name, c in instance.curves},
        "f": format_word(instance.f),
        "signs": list(instance.signs),
        "kind": instance.kind,
        "lhs": format_word(instance.lhs),
        "rhs": format_word(instance.rhs),
    }


def instance_from_record(spec: SurfaceSpec, record: Dict) -> RelationInstance:
    """Load a record as written; side conditions are checked later by revalidate"""
    try:
        tag = RelationTag(record["tag"])
    except (KeyError, ValueError):
        raise ValueError(f"unknown relation tag in record: {record.get('tag')!r}")
    curves = tuple((name, parse_curve(text)) for name, text in record.get("curves", {}).items())
    return RelationInstance(
        tag=tag,
        spec=spec,
        curves=curves,
        lhs=parse_word(record.get("lhs", "")),
        rhs=parse_word(record.get("rhs", "")),
        f=parse_word(record.get("f", "")),
        signs=tuple(int(s) for s in record.get("signs", [])),
        kind=record.get("kind", ""),
    )


def surjectivity_lantern(spec: SurfaceSpec) -> RelationInstance:
    """b t_{g3..g} t_{g1,2,5..g} = t_{g1..g} a1 a3 t_{g5..g} for even g >= 6"""
    g = spec.genus
    if g < 6 or g % 2 == 1:
        raise InvalidInstanceError(RelationTag.RIII, f"this lantern needs even genus >= 6, got {g}")
    return lantern(
        spec,
        beta(),
        gamma_range(3, g),
        Gamma((1, 2) + tuple(range(5, g + 1))),
        [gamma_range(1, g), alpha(1), alpha(3), gamma_range(5, g)],
    )
