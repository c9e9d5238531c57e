# commands.py - Batch commands shared by the CLI and the HTTP surface

import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from functions.builtin_scripts import builtin_names, script_by_name
from functions.derivation_checker import DerivationScript, replay, report_lines, script_from_document
from functions.group_calc import (
    DEFAULT_MAX_COSETS,
    abelianization,
    exponent_sum_matrix,
    group_order,
    table_structure,
    todd_coxeter,
)
from functions.homology_oracle import check_presentation, check_relator, check_relators, word_matrix
from functions.presentation_factory import (
    FAMILY_TAGS,
    enumeration_format,
    presentation_document,
    stukow_presentation,
)
from functions.surface_model import SurfaceSpec
from functions.word_algebra import format_word, parse_word

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

COMMANDS = ("present", "check-word", "oracle", "replay", "enumerate", "abelianize")


class CommandRequest(BaseModel):
    command: Literal["present", "check-word", "oracle", "replay", "enumerate", "abelianize"]
    genus: int = Field(ge=1)
    boundary: int = Field(default=0, ge=0, le=1)
    format: Literal["text", "structured"] = "text"
    word: Optional[str] = None
    family: Optional[str] = None
    script: Optional[str] = None
    script_document: Optional[Dict[str, Any]] = None
    subgroup: List[str] = []
    max_cosets: int = Field(default=DEFAULT_MAX_COSETS, ge=1)
    enumeration: bool = False

    def spec(self) -> SurfaceSpec:
        return SurfaceSpec(genus=self.genus, boundary=self.boundary)


class CommandResult(BaseModel):
    exit_code: int
    document: Dict[str, Any]
    lines: List[str]

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return json.dumps(self.document, indent=2, sort_keys=True, ensure_ascii=False)
        return "\n".join(self.lines)


def _envelope(req: CommandRequest, result: Dict, details: Dict) -> Dict:
    return {
        "command": req.command,
        "spec": {"genus": req.genus, "boundary": req.boundary},
        "result": result,
        "details": details,
    }


def _present(req: CommandRequest) -> CommandResult:
    spec = req.spec()
    p = stukow_presentation(spec)
    doc = presentation_document(p)
    details: Dict[str, Any] = {"families": p.family_counts()}
    if req.enumeration:
        details["enumeration"] = enumeration_format(p).model_dump()
    lines = [f"M({spec.label()}) presentation", f"generators: {' '.join(doc['generators'])}",
             f"relators ({doc['relator_count']}):"]
    lines += [f"  [{r['family']}] {r['word']}" for r in doc["relators"]]
    if req.enumeration:
        flat = details["enumeration"]
        lines.append(f"letters: {flat['letters']}")
        lines += [f"  {rel}" for rel in flat["relators"]]
    return CommandResult(exit_code=EXIT_OK, document=_envelope(req, doc, details), lines=lines)


def _check_word(req: CommandRequest) -> CommandResult:
    if req.word is None:
        raise ValueError("check-word needs --word")
    spec = req.spec()
    w = parse_word(req.word)
    ok, diag = check_relator(spec, w)
    M = word_matrix(spec, w)
    result = {"word": format_word(w), "length": len(w), "trivial": ok}
    details = {"matrix": M.rows(), "diagnostic": diag.model_dump() if diag else None}
    lines = [f"word: {format_word(w) or '1'} (length {len(w)})", "matrix:"]
    lines += [f"  {row}" for row in M.rows()]
    if ok:
        lines.append("✅ acts trivially on H1(N; Z2)")
    else:
        lines.append(f"❌ moves e{diag.basis_index} to {diag.image}")
    return CommandResult(exit_code=EXIT_OK if ok else EXIT_FAIL, document=_envelope(req, result, details), lines=lines)


def _oracle(req: CommandRequest) -> CommandResult:
    spec = req.spec()
    p = stukow_presentation(spec)
    if req.family:
        if req.family not in FAMILY_TAGS:
            raise ValueError(f"unknown family '{req.family}' (known: {', '.join(FAMILY_TAGS)})")
        checks = check_relators(spec, [(r.family, r.word) for r in p.by_family(req.family)])
    else:
        checks = check_presentation(p)
    failures = [c for c in checks if not c.ok]
    result = {"checked": len(checks), "failed": len(failures), "passed": not failures}
    details = {"failures": [c.model_dump() for c in failures], "families": p.family_counts()}
    if failures:
        lines = [f"❌ {len(failures)} of {len(checks)} relators act non-trivially"]
        lines += [f"  [{c.family}] moves e{c.diagnostic.basis_index}: {c.word}" for c in failures]
    else:
        lines = [f"✅ all relators oracle-trivial ({len(checks)} checked on {spec.label()})"]
    return CommandResult(exit_code=EXIT_FAIL if failures else EXIT_OK,
                         document=_envelope(req, result, details), lines=lines)


def _scripts(req: CommandRequest) -> List[DerivationScript]:
    if req.script_document is not None:
        return [script_from_document(req.script_document)]
    spec = req.spec()
    name = req.script or "all"
    if name.lower() == "all":
        return [script_by_name(spec, n) for n in builtin_names(spec)]
    return [script_by_name(spec, name)]


def _replay(req: CommandRequest) -> CommandResult:
    reports = [replay(s) for s in _scripts(req)]
    passed = all(r.passed for r in reports)
    result = {"passed": passed, "scripts": {r.script: r.passed for r in reports}}
    details = {"reports": [r.model_dump() for r in reports]}
    lines: List[str] = []
    for r in reports:
        lines += report_lines(r)
    return CommandResult(exit_code=EXIT_OK if passed else EXIT_FAIL,
                         document=_envelope(req, result, details), lines=lines)


def _enumerate(req: CommandRequest) -> CommandResult:
    spec = req.spec()
    p = stukow_presentation(spec)
    subgroup = [parse_word(text) for text in req.subgroup]
    table = todd_coxeter(p, subgroup, req.max_cosets)
    structure = table_structure(table)
    result = {"status": table.status, "index": table.index, "order": group_order(table)}
    details: Dict[str, Any] = {"subgroup": table.subgroup, "max_cosets": table.max_cosets,
                               "columns": table.columns}
    if structure:
        details["structure"] = structure.model_dump()
    if table.closed and len(table.rows) <= 64:
        details["table"] = table.rows
    if table.closed:
        lines = [f"✅ closed at index {table.index}"]
        if structure:
            lines.append(f"   order {structure.order}, abelian={structure.abelian}, exponent {structure.exponent}")
    elif table.status == "overflowed":
        lines = [f"⚠️ overflow: more than {table.max_cosets} cosets defined (no claim about finiteness)"]
    else:
        lines = ["❌ enumeration closed but the table fails a relator scan"]
    code = EXIT_FAIL if table.status == "inconsistent" else EXIT_OK
    return CommandResult(exit_code=code, document=_envelope(req, result, details), lines=lines)


def _abelianize(req: CommandRequest) -> CommandResult:
    p = stukow_presentation(req.spec())
    inv = abelianization(p)
    result = inv.model_dump()
    details = {"exponent_sums": exponent_sum_matrix(p), "generators": enumeration_format(p).generators}
    lines = [f"H1 = {inv.describe()}", f"   free rank {inv.free_rank}, torsion {inv.torsion}"]
    return CommandResult(exit_code=EXIT_OK, document=_envelope(req, result, details), lines=lines)


_DISPATCH = {
    "present": _present,
    "check-word": _check_word,
    "oracle": _oracle,
    "replay": _replay,
    "enumerate": _enumerate,
    "abelianize": _abelianize,
}


def run(req: CommandRequest) -> CommandResult:
    """Input problems raise ValueError; verification outcomes come back in the exit code"""
    return _DISPATCH[req.command](req)
