# derivation_checker.py - Replays word-rewriting derivations step by step

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from functions.homology_oracle import word_matrix
from functions.relation_schema import (
    InvalidInstanceError,
    RelationInstance,
    RelationTag,
    expand_conjugation,
    instance_from_record,
    instance_record,
    revalidate,
)
from functions.surface_model import SurfaceSpec
from functions.word_algebra import (
    GeneratorError,
    Letter,
    Push,
    Twist,
    Word,
    format_word,
    parse_word,
    reduce,
)


class ScriptError(ValueError):
    """Raised for malformed or unavailable derivation scripts"""


class RewriteError(ValueError):
    """Raised when a step cannot be applied to the current word"""


class Direction(str, Enum):
    FORWARD = "forward"    # lhs -> rhs
    BACKWARD = "backward"  # rhs -> lhs


@dataclass(frozen=True)
class Expansion:
    """Insert f f^-1 at letter offset `at` before matching"""
    at: int
    f: Word


@dataclass(frozen=True)
class Step:
    position: int
    instance: RelationInstance
    direction: Direction = Direction.FORWARD
    inverted: bool = False
    expansion: Optional[Expansion] = None


@dataclass(frozen=True)
class DerivationScript:
    name: str
    spec: SurfaceSpec
    lhs: Word
    rhs: Word
    steps: Tuple[Step, ...]
    provenance: str = ""


def source_and_target(step: Step) -> Tuple[Word, Word]:
    inst = step.instance
    src, dst = (inst.lhs, inst.rhs) if step.direction == Direction.FORWARD else (inst.rhs, inst.lhs)
    if step.inverted:
        src, dst = src.inverse(), dst.inverse()
    return src, dst


def rewrite(letters: List[Letter], step: Step) -> List[Letter]:
    """Apply one step to the unit-letter expansion of a reduced word and reduce the result"""
    work = list(letters)
    if step.expansion is not None:
        at = step.expansion.at
        if not 0 <= at <= len(work):
            raise RewriteError(f"expansion offset {at} outside 0..{len(work)}")
        f = step.expansion.f
        work[at:at] = f.letters() + f.inverse().letters()
    src, dst = source_and_target(step)
    pattern = src.letters()
    p = step.position
    if p < 0 or p + len(pattern) > len(work):
        raise RewriteError(f"position {p} does not leave room for {len(pattern)} letters in a word of {len(work)}")
    if work[p:p + len(pattern)] != pattern:
        found = format_word(Word.from_letters(work[p:p + len(pattern)])) or "1"
        raise RewriteError(f"expected '{format_word(src) or '1'}' at letter {p}, found '{found}'")
    out = work[:p] + dst.letters() + work[p + len(pattern):]
    return Word.from_letters(out).letters()


def _conjugated_letter(instance: RelationInstance) -> Letter:
    if instance.tag == RelationTag.RI_II:
        return (Push(instance.curve("mu"), instance.curve("alpha")), 1)
    return (Twist(instance.curve("c")), 1)


def prove_by_conjugation(instance: RelationInstance, elementary: List[RelationInstance]) -> Tuple[bool, str]:
    """Rewrite f X f^-1 one conjugating letter at a time, innermost first"""
    outer = instance.f.letters()
    k = len(outer)
    if len(elementary) != k:
        return False, f"expected {k} elementary braid steps, got {len(elementary)}"
    work = outer + [_conjugated_letter(instance)] + [(gen, -sign) for gen, sign in reversed(outer)]
    for idx, step in enumerate(elementary):
        p = k - 1 - idx
        gen, sign = outer[p]
        pattern = [(gen, sign), _conjugated_letter(step), (gen, -sign)]
        if work[p:p + 3] != pattern:
            return False, f"elementary braid step {idx + 1} does not line up"
        work = work[:p] + step.rhs.letters() + work[p + 3:]
    if Word.from_letters(work) != instance.rhs:
        return False, "elementary braid steps do not end at the claimed image"
    return True, "ok"


class StepRecord(BaseModel):
    index: int
    tag: str
    direction: str
    inverted: bool
    position: int
    expansion: Optional[str] = None
    before: str
    after: str = ""
    status: str
    message: str = ""
    elementary: int = 0


class ReplayReport(BaseModel):
    script: str
    genus: int
    boundary: int
    provenance: str = ""
    claim_lhs: str
    claim_rhs: str
    passed: bool
    failed_step: Optional[int] = None
    reason: str = ""
    steps: List[StepRecord] = []


def _text(letters: List[Letter]) -> str:
    return format_word(Word.from_letters(letters)) or "1"


def replay(script: DerivationScript) -> ReplayReport:
    """PASS iff every step validates, matches, keeps the homology action, and the end word is the claim's rhs"""
    spec = script.spec
    current = reduce(script.lhs).letters()
    current_text = _text(current)
    records: List[StepRecord] = []

    def fail(record: StepRecord, reason: str) -> ReplayReport:
        record.status = "fail"
        record.message = reason
        records.append(record)
        return ReplayReport(
            script=script.name, genus=spec.genus, boundary=spec.boundary, provenance=script.provenance,
            claim_lhs=format_word(script.lhs) or "1", claim_rhs=format_word(script.rhs) or "1",
            passed=False, failed_step=record.index, reason=f"step {record.index}: {reason}", steps=records,
        )

    for idx, step in enumerate(script.steps, start=1):
        inst = step.instance
        record = StepRecord(
            index=idx,
            tag=inst.tag.value,
            direction=step.direction.value,
            inverted=step.inverted,
            position=step.position,
            expansion=(f"{step.expansion.at}:{format_word(step.expansion.f)}" if step.expansion else None),
            before=current_text,
            status="ok",
        )
        if inst.spec != spec:
            return fail(record, f"instance built for {inst.spec.label()}, script is on {spec.label()}")
        ok, message = revalidate(inst)
        if not ok:
            return fail(record, message)
        if inst.tag in (RelationTag.RI_I, RelationTag.RI_II) and len(inst.f) > 1:
            try:
                elementary = expand_conjugation(inst)
            except (InvalidInstanceError, GeneratorError) as e:
                return fail(record, f"conjugation does not split into braid steps: {e}")
            ok, message = prove_by_conjugation(inst, elementary)
            if not ok:
                return fail(record, message)
            record.elementary = len(elementary)
        try:
            after = rewrite(current, step)
        except RewriteError as e:
            return fail(record, str(e))
        record.after = _text(after)
        # prefix and suffix are untouched and f f^-1 acts trivially
        src, dst = source_and_target(step)
        if word_matrix(spec, src) != word_matrix(spec, dst):
            return fail(record, "homology action changed")
        records.append(record)
        current, current_text = after, record.after

    final = Word.from_letters(current)
    passed = final == reduce(script.rhs)
    return ReplayReport(
        script=script.name, genus=spec.genus, boundary=spec.boundary, provenance=script.provenance,
        claim_lhs=format_word(script.lhs) or "1", claim_rhs=format_word(script.rhs) or "1",
        passed=passed,
        reason="" if passed else f"derivation ends at '{format_word(final) or '1'}'",
        steps=records,
    )


def report_lines(report: ReplayReport) -> List[str]:
    head = "✅ PASS" if report.passed else "❌ FAIL"
    lines = [f"{head} {report.script} on N_{{{report.genus},{report.boundary}}} ({len(report.steps)} steps)"]
    if report.provenance:
        lines.append(f"   {report.provenance}")
    for rec in report.steps:
        flags = rec.direction + (", inverted" if rec.inverted else "")
        if rec.expansion:
            flags += f", expand {rec.expansion}"
        mark = "ok" if rec.status == "ok" else "FAIL"
        lines.append(f"  {rec.index:3d}. [{rec.tag}] @{rec.position} ({flags}) {mark}")
        lines.append(f"       {rec.before}")
        if rec.status == "ok":
            lines.append(f"    -> {rec.after}")
        else:
            lines.append(f"    !! {rec.message}")
    if not report.passed and report.failed_step is None and report.reason:
        lines.append(f"  {report.reason}")
    return lines


def script_to_document(script: DerivationScript) -> Dict:
    steps = []
    for step in script.steps:
        steps.append({
            "position": step.position,
            "direction": step.direction.value,
            "inverted": step.inverted,
            "expansion": (
                {"at": step.expansion.at, "f": format_word(step.expansion.f)} if step.expansion else None
            ),
            "instance": instance_record(step.instance),
        })
    return {
        "name": script.name,
        "genus": script.spec.genus,
        "boundary": script.spec.boundary,
        "provenance": script.provenance,
        "claim": {"lhs": format_word(script.lhs), "rhs": format_word(script.rhs)},
        "steps": steps,
    }


def script_from_document(doc: Dict) -> DerivationScript:
    try:
        spec = SurfaceSpec(genus=doc["genus"], boundary=doc.get("boundary", 0))
        steps = []
        for raw in doc.get("steps", []):
            expansion = raw.get("expansion")
            steps.append(Step(
                position=int(raw["position"]),
                instance=instance_from_record(spec, raw["instance"]),
                direction=Direction(raw.get("direction", "forward")),
                inverted=bool(raw.get("inverted", False)),
                expansion=Expansion(int(expansion["at"]), parse_word(expansion["f"])) if expansion else None,
            ))
        return DerivationScript(
            name=doc.get("name", "script"),
            spec=spec,
            lhs=parse_word(doc["claim"]["lhs"]),
            rhs=parse_word(doc["claim"]["rhs"]),
            steps=tuple(steps),
            provenance=doc.get("provenance", ""),
        )
    except (KeyError, TypeError, AttributeError) as e:
        raise ScriptError(f"malformed script document: missing or bad field {e}")
    except ValueError as e:
        raise ScriptError(f"malformed script document: {e}")
