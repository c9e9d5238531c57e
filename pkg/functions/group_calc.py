# group_calc.py - Coset enumeration and abelian invariants of finite presentations

from collections import deque
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel
from sympy import Matrix, ZZ
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group
from sympy.matrices.normalforms import invariant_factors

from functions.presentation_factory import FlatPresentation, Presentation, enumeration_format, flatten_word
from functions.word_algebra import Word

DEFAULT_MAX_COSETS = 10000


class EnumerationError(ValueError):
    """Raised for words outside the presentation's alphabet"""


class CosetTable(BaseModel):
    """Rows are cosets; columns are x0, x0^-1, x1, x1^-1, ... in generator order"""
    generators: List[str]
    columns: List[str]
    rows: List[List[int]] = []
    status: str
    max_cosets: int
    subgroup: List[str] = []

    @property
    def closed(self) -> bool:
        return self.status == "closed"

    @property
    def index(self) -> Optional[int]:
        return len(self.rows) if self.closed else None


class AbelianInvariants(BaseModel):
    free_rank: int
    torsion: List[int]

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


class TableStructure(BaseModel):
    order: int
    abelian: bool
    exponent: int


Enumerable = Union[Presentation, FlatPresentation]


def _flat(p: Enumerable) -> FlatPresentation:
    return enumeration_format(p) if isinstance(p, Presentation) else p


def _letter_word(text: str, letters: str, syms) -> object:
    out = syms[0] ** 0
    for ch in text:
        i = letters.find(ch.lower())
        if i < 0:
            raise EnumerationError(f"letter '{ch}' is not in the alphabet '{letters}'")
        out = out * (syms[i] if ch.islower() else syms[i] ** -1)
    return out


def _subgroup_letters(p: Enumerable, subgroup: Sequence[Union[Word, str]]) -> List[str]:
    out = []
    for w in subgroup:
        if isinstance(w, Word):
            # the empty word generates the trivial subgroup
            if w.is_empty():
                continue
            if not isinstance(p, Presentation):
                raise EnumerationError("word subgroups need a Presentation; pass letter strings for a flat one")
            try:
                out.append(flatten_word(p, w))
            except ValueError as e:
                raise EnumerationError(str(e))
        elif w.strip():
            out.append(w.strip())
    return out


def verify_table(flat: FlatPresentation, rows: List[List[int]]) -> bool:
    """Every relator must return every coset to itself"""
    letters = flat.letters
    for rel in flat.relators:
        for start in range(len(rows)):
            c = start
            for ch in rel:
                col = 2 * letters.find(ch.lower()) + (0 if ch.islower() else 1)
                c = rows[c][col]
                if c is None:
                    return False
            if c != start:
                return False
    return True


def todd_coxeter(p: Enumerable, subgroup: Sequence[Union[Word, str]] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Relator-based (HLT) enumeration; closed tables are compressed, standardised and re-verified"""
    flat = _flat(p)
    sub_letters = _subgroup_letters(p, subgroup)
    if not flat.generators:
        raise EnumerationError("presentation has no generators")
    F, *syms = free_group(",".join(f"x{i}" for i in range(len(flat.generators))))
    relators = [_letter_word(r, flat.letters, syms) for r in flat.relators]
    relators = [r for r in relators if r != F.identity]
    H = [_letter_word(s, flat.letters, syms) for s in sub_letters]
    columns = []
    for name in flat.generators:
        columns += [name, f"{name}^-1"]
    base = dict(generators=list(flat.generators), columns=columns, max_cosets=max_cosets, subgroup=sub_letters)
    try:
        C = coset_enumeration_r(FpGroup(F, relators), H, max_cosets=max_cosets)
    except ValueError:
        return CosetTable(status="overflowed", **base)
    C.compress()
    C.standardize()
    rows = [list(row) for row in C.table]
    if not verify_table(flat, rows):
        return CosetTable(rows=rows, status="inconsistent", **base)
    return CosetTable(rows=rows, status="closed", **base)


def group_order(table: CosetTable) -> Union[int, str]:
    if not table.closed or table.subgroup:
        return "unknown"
    return len(table.rows)


def _lcm(x: int, y: int) -> int:
    return x * y // gcd(x, y)


def _perm_order(perm: Tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    order = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        order = _lcm(order, length)
    return order


def table_structure(table: CosetTable) -> Optional[TableStructure]:
    """Order, commutativity and exponent read off the regular action of a closed table"""
    if group_order(table) == "unknown":
        return None
    n = len(table.rows)
    gens = [tuple(table.rows[c][2 * i] for c in range(n)) for i in range(len(table.generators))]
    abelian = all(
        all(p[q[c]] == q[p[c]] for c in range(n))
        for i, p in enumerate(gens) for q in gens[i + 1:]
    )
    # element reaching coset k acts as a permutation built along a BFS spanning tree
    identity = tuple(range(n))
    perms: Dict[int, Tuple[int, ...]] = {0: identity}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for gp in gens:
            nxt = gp[k]
            if nxt not in perms:
                perms[nxt] = tuple(gp[perms[k][c]] for c in range(n))
                queue.append(nxt)
    exponent = 1
    for perm in perms.values():
        exponent = _lcm(exponent, _perm_order(perm))
    return TableStructure(order=n, abelian=abelian, exponent=exponent)


def exponent_sum_matrix(p: Enumerable) -> List[List[int]]:
    flat = _flat(p)
    rows = []
    for rel in flat.relators:
        row = [0] * len(flat.generators)
        for ch in rel:
            i = flat.letters.find(ch.lower())
            row[i] += 1 if ch.islower() else -1
        rows.append(row)
    return rows


def _canonical_torsion(factors: List[int]) -> List[int]:
    """Re-establish d1 | d2 | ... from any list of cyclic orders"""
    factors = [f for f in factors if f > 1]
    changed = True
    while changed:
        changed = False
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                x, y = factors[i], factors[j]
                if y % x:
                    factors[i], factors[j] = gcd(x, y), _lcm(x, y)
                    changed = True
        factors = sorted(f for f in factors if f > 1)
    return factors


def invariants_of_matrix(rows: List[List[int]], ngens: int) -> AbelianInvariants:
    if not rows or not any(any(r) for r in rows):
        return AbelianInvariants(free_rank=ngens, torsion=[])
    factors = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [d for d in factors if d != 0]
    return AbelianInvariants(free_rank=ngens - len(nonzero), torsion=_canonical_torsion(nonzero))


def abelianization(p: Enumerable) -> AbelianInvariants:
    """Smith normal form of the relator exponent-sum matrix over the integers"""
    flat = _flat(p)
    return invariants_of_matrix(exponent_sum_matrix(flat), len(flat.generators))
