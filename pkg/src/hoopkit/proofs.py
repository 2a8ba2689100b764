"""Sequents, derivations and the rule-by-rule proof checker.

A sequent is a multiset context together with a conclusion formula.  The
checker validates derivation trees against the four inference rules (the
introduction and elimination rules for -o and +) and the axiom schemata, with
exact multiset bookkeeping: nothing may be duplicated or dropped except as a
rule prescribes.  Which axioms are admissible, and whether halving may appear
at all, is determined by the logic being checked against.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .formula import (
    Conj,
    Falsity,
    Formula,
    Half,
    Imp,
    MetaVar,
    contains_half,
    from_record,
    metavariables,
    pretty,
    sort_key,
    substitute,
    to_record,
)


@dataclass(frozen=True, slots=True)
class Sequent:
    """Context |- conclusion.  The context is a true multiset; it is stored as
    a sorted tuple so that structurally equal multisets compare equal."""

    context: tuple[Formula, ...]
    conclusion: Formula

    def __init__(self, context, conclusion: Formula):
        object.__setattr__(self, "context", tuple(sorted(context, key=sort_key)))
        object.__setattr__(self, "conclusion", conclusion)

    def __str__(self) -> str:
        lhs = ", ".join(pretty(f) for f in self.context)
        return f"{lhs} |- {pretty(self.conclusion)}" if lhs else f"|- {pretty(self.conclusion)}"


def parse_sequent(text: str) -> Sequent:
    """Read 'A, B |- C' (context comma-separated, possibly empty)."""
    from .formula import parse

    if "|-" not in text:
        raise ValueError("a sequent needs '|-'")
    lhs, rhs = text.split("|-", 1)
    context = tuple(parse(part) for part in lhs.split(",") if part.strip())
    return Sequent(context, parse(rhs))


def _multiset(formulas) -> Counter:
    return Counter(formulas)


def _diff_message(have: Counter, want: Counter) -> str:
    extra = have - want
    missing = want - have
    parts = []
    if missing:
        parts.append("missing " + ", ".join(f"{pretty(f)} (x{k})" for f, k in sorted(missing.items(), key=lambda p: sort_key(p[0]))))
    if extra:
        parts.append("extra " + ", ".join(f"{pretty(f)} (x{k})" for f, k in sorted(extra.items(), key=lambda p: sort_key(p[0]))))
    return "; ".join(parts) if parts else "contexts agree"


# ---------------------------------------------------------------------------
# Axiom schemata
# ---------------------------------------------------------------------------

ASM = "ASM"
EFQ = "EFQ"
DNE = "DNE"
CWC = "CWC"
CSD = "CSD"
CON = "CON"
HLB = "HLB"
HUB = "HUB"

AXIOM_IDS = (ASM, EFQ, DNE, CWC, CSD, CON, HLB, HUB)

_A = MetaVar("A")
_B = MetaVar("B")

# Each schema is (context patterns, conclusion pattern); an arbitrary ambient
# context on top of the listed patterns is always permitted.
AXIOM_SCHEMATA: dict[str, tuple[tuple[Formula, ...], Formula]] = {
    ASM: ((_A,), _A),
    EFQ: ((Falsity(),), _A),
    DNE: ((Imp(Imp(_A, Falsity()), Falsity()),), _A),
    CWC: ((Conj(_A, Imp(_A, _B)),), Conj(_B, Imp(_B, _A))),
    CSD: ((Imp(Imp(_A, _B), _B),), Imp(Imp(_B, _A), _A)),
    CON: ((_A,), Conj(_A, _A)),
    HLB: ((Half(_A), Half(_A)), _A),
    HUB: ((Imp(Half(_A), _A),), Half(_A)),
}


@dataclass(frozen=True, slots=True)
class LogicSpec:
    name: str
    axioms: frozenset[str]
    allows_halving: bool


def _logic(name: str, axioms: tuple[str, ...], halving: bool = False) -> LogicSpec:
    return LogicSpec(name, frozenset(axioms), halving)


ALI = _logic("ALi", (ASM, EFQ))
ALC = _logic("ALc", (ASM, EFQ, DNE))
LLI = _logic("LLi", (ASM, EFQ, CWC))
LLC = _logic("LLc", (ASM, EFQ, CSD))
IL = _logic("IL", (ASM, EFQ, CON))
BL = _logic("BL", (ASM, EFQ, CON, DNE))
CLI = _logic("CLi", (ASM, EFQ, CWC, HLB, HUB), halving=True)
CLC = _logic("CLc", (ASM, EFQ, CSD, HLB, HUB), halving=True)

LOGICS: dict[str, LogicSpec] = {l.name: l for l in (ALI, ALC, LLI, LLC, IL, BL, CLI, CLC)}


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------

RULE_IMP_I = "imp_i"
RULE_IMP_E = "imp_e"
RULE_CONJ_I = "conj_i"
RULE_CONJ_E = "conj_e"
RULE_AXIOM = "axiom"

_ARITY = {RULE_IMP_I: 1, RULE_IMP_E: 2, RULE_CONJ_I: 2, RULE_CONJ_E: 2, RULE_AXIOM: 0}


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: Sequent
    premises: tuple[Derivation, ...] = ()
    # Only for axiom leaves: the schema id and its explicit instantiation.
    axiom: str | None = None
    instantiation: dict[str, Formula] = field(default_factory=dict)


def axiom(axiom_id: str, instantiation: dict[str, Formula], conclusion: Sequent) -> Derivation:
    return Derivation(RULE_AXIOM, conclusion, (), axiom_id, dict(instantiation))


def imp_i(premise: Derivation, conclusion: Sequent) -> Derivation:
    return Derivation(RULE_IMP_I, conclusion, (premise,))


def imp_e(left: Derivation, right: Derivation, conclusion: Sequent) -> Derivation:
    return Derivation(RULE_IMP_E, conclusion, (left, right))


def conj_i(left: Derivation, right: Derivation, conclusion: Sequent) -> Derivation:
    return Derivation(RULE_CONJ_I, conclusion, (left, right))


def conj_e(left: Derivation, right: Derivation, conclusion: Sequent) -> Derivation:
    return Derivation(RULE_CONJ_E, conclusion, (left, right))


@dataclass(frozen=True, slots=True)
class CheckResult:
    ok: bool
    message: str = ""
    path: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


_OK = CheckResult(True)


def check_step(node: Derivation) -> CheckResult:
    """Validate a single derivation node against its rule, assuming the
    premises themselves are already known to be good."""
    want = _ARITY.get(node.rule)
    if want is None:
        return CheckResult(False, f"unknown rule {node.rule!r}")
    if len(node.premises) != want:
        return CheckResult(False, f"rule {node.rule} takes {want} premises, got {len(node.premises)}")

    concl = node.conclusion
    if node.rule == RULE_AXIOM:
        return _check_axiom(node)

    if node.rule == RULE_IMP_I:
        if not isinstance(concl.conclusion, Imp):
            return CheckResult(False, f"imp_i must conclude an implication, got {pretty(concl.conclusion)}")
        a, b = concl.conclusion.lhs, concl.conclusion.rhs
        prem = node.premises[0].conclusion
        if prem.conclusion != b:
            return CheckResult(False, f"imp_i premise proves {pretty(prem.conclusion)}, expected {pretty(b)}")
        want_ctx = _multiset(concl.context)
        want_ctx[a] += 1
        have_ctx = _multiset(prem.context)
        if have_ctx != want_ctx:
            return CheckResult(False, f"imp_i context mismatch: {_diff_message(have_ctx, want_ctx)}")
        return _OK

    if node.rule == RULE_IMP_E:
        p0, p1 = node.premises[0].conclusion, node.premises[1].conclusion
        if not isinstance(p1.conclusion, Imp):
            return CheckResult(False, f"imp_e second premise must prove an implication, got {pretty(p1.conclusion)}")
        a, b = p1.conclusion.lhs, p1.conclusion.rhs
        if p0.conclusion != a:
            return CheckResult(False, f"imp_e first premise proves {pretty(p0.conclusion)}, expected {pretty(a)}")
        if concl.conclusion != b:
            return CheckResult(False, f"imp_e conclusion is {pretty(concl.conclusion)}, expected {pretty(b)}")
        want_ctx = _multiset(p0.context) + _multiset(p1.context)
        have_ctx = _multiset(concl.context)
        if have_ctx != want_ctx:
            return CheckResult(False, f"imp_e context mismatch: {_diff_message(have_ctx, want_ctx)}")
        return _OK

    if node.rule == RULE_CONJ_I:
        p0, p1 = node.premises[0].conclusion, node.premises[1].conclusion
        if concl.conclusion != Conj(p0.conclusion, p1.conclusion):
            return CheckResult(
                False,
                f"conj_i conclusion is {pretty(concl.conclusion)}, expected {pretty(Conj(p0.conclusion, p1.conclusion))}",
            )
        want_ctx = _multiset(p0.context) + _multiset(p1.context)
        have_ctx = _multiset(concl.context)
        if have_ctx != want_ctx:
            return CheckResult(False, f"conj_i context mismatch: {_diff_message(have_ctx, want_ctx)}")
        return _OK

    # conj_e: from Gamma |- A + B and Delta, A, B |- C conclude Gamma, Delta |- C
    p0, p1 = node.premises[0].conclusion, node.premises[1].conclusion
    if not isinstance(p0.conclusion, Conj):
        return CheckResult(False, f"conj_e first premise must prove a conjunction, got {pretty(p0.conclusion)}")
    a, b = p0.conclusion.lhs, p0.conclusion.rhs
    if concl.conclusion != p1.conclusion:
        return CheckResult(False, f"conj_e conclusion is {pretty(concl.conclusion)}, expected {pretty(p1.conclusion)}")
    delta = _multiset(p1.context)
    consumed = Counter((a, b))
    if not all(delta[f] >= k for f, k in consumed.items()):
        return CheckResult(False, f"conj_e second premise context lacks the conjuncts: {_diff_message(delta, consumed)}")
    delta.subtract(consumed)
    delta += Counter()  # drop zero entries
    want_ctx = _multiset(p0.context) + delta
    have_ctx = _multiset(concl.context)
    if have_ctx != want_ctx:
        return CheckResult(False, f"conj_e context mismatch: {_diff_message(have_ctx, want_ctx)}")
    return _OK


def _check_axiom(node: Derivation) -> CheckResult:
    if node.axiom not in AXIOM_SCHEMATA:
        return CheckResult(False, f"unknown axiom {node.axiom!r}")
    ctx_patterns, concl_pattern = AXIOM_SCHEMATA[node.axiom]
    needed = set().union(*(metavariables(p) for p in ctx_patterns + (concl_pattern,)))
    missing = needed - set(node.instantiation)
    if missing:
        return CheckResult(False, f"axiom {node.axiom} instantiation misses {sorted(missing)}")
    sigma = node.instantiation
    want_concl = substitute(sigma, concl_pattern)
    if node.conclusion.conclusion != want_concl:
        return CheckResult(
            False,
            f"axiom {node.axiom} concludes {pretty(want_concl)}, sequent has {pretty(node.conclusion.conclusion)}",
        )
    want_ctx = _multiset(substitute(sigma, p) for p in ctx_patterns)
    have_ctx = _multiset(node.conclusion.context)
    # Ambient context is allowed: the sequent may carry anything on top of the
    # schema's own formulas, but never less.
    if not all(have_ctx[f] >= k for f, k in want_ctx.items()):
        return CheckResult(False, f"axiom {node.axiom} context mismatch: {_diff_message(have_ctx, want_ctx)}")
    return _OK


def _sequent_has_half(s: Sequent) -> bool:
    return contains_half(s.conclusion) or any(contains_half(f) for f in s.context)


def check_derivation(derivation: Derivation, logic: LogicSpec) -> CheckResult:
    """Check a whole derivation in the given logic.

    Every node must instantiate its rule exactly, every axiom leaf must use an
    axiom of the logic, and the halving operator may only appear if the logic
    admits it.  On failure the result carries the premise-index path to the
    offending node.
    """

    def walk(node: Derivation, path: tuple[int, ...]) -> CheckResult:
        if not logic.allows_halving and _sequent_has_half(node.conclusion):
            return CheckResult(False, f"halving is not in the language of {logic.name}", path)
        if node.rule == RULE_AXIOM and node.axiom not in logic.axioms:
            return CheckResult(False, f"axiom {node.axiom} is not available in {logic.name}", path)
        for i, premise in enumerate(node.premises):
            sub = walk(premise, path + (i,))
            if not sub:
                return sub
        step = check_step(node)
        if not step:
            return CheckResult(False, step.message, path)
        return _OK

    return walk(derivation, ())


# ---------------------------------------------------------------------------
# The conjectured halving-uniqueness rule
# ---------------------------------------------------------------------------


def conjectured_rule_instance(a: Formula, b: Formula, c: Formula) -> list[Sequent]:
    """The four antecedents and the conclusion of the conjectured rule

        A -o B |- A    A |- A -o B    C |- C -o B    C -o B |- C
        ---------------------------------------------------------
                              A |- C

    returned as five sequents, conclusion last.  The rule is validated
    semantically by the corpus oracles; it is not part of the checker.
    """
    ab = Imp(a, b)
    cb = Imp(c, b)
    return [
        Sequent((ab,), a),
        Sequent((a,), ab),
        Sequent((c,), cb),
        Sequent((cb,), c),
        Sequent((a,), c),
    ]


# ---------------------------------------------------------------------------
# Derivation files (nested records, one derivation per file)
# ---------------------------------------------------------------------------


def sequent_to_record(s: Sequent) -> dict:
    return {"context": [to_record(f) for f in s.context], "conclusion": to_record(s.conclusion)}


def sequent_from_record(record: dict) -> Sequent:
    return Sequent(
        tuple(from_record(r) for r in record["context"]),
        from_record(record["conclusion"]),
    )


def derivation_to_record(d: Derivation) -> dict:
    record = {"rule": d.rule, "sequent": sequent_to_record(d.conclusion)}
    if d.rule == RULE_AXIOM:
        record["axiom"] = d.axiom
        record["instantiation"] = {k: to_record(v) for k, v in sorted(d.instantiation.items())}
    else:
        record["premises"] = [derivation_to_record(p) for p in d.premises]
    return record


def derivation_from_record(record: dict) -> Derivation:
    rule = record["rule"]
    sequent = sequent_from_record(record["sequent"])
    if rule == RULE_AXIOM:
        inst = {k: from_record(v) for k, v in record.get("instantiation", {}).items()}
        return Derivation(rule, sequent, (), record["axiom"], inst)
    premises = tuple(derivation_from_record(p) for p in record.get("premises", []))
    return Derivation(rule, sequent, premises)


def dump_derivation(d: Derivation) -> str:
    return json.dumps(derivation_to_record(d), indent=2) + "\n"


def load_derivation(text: str) -> Derivation:
    return derivation_from_record(json.loads(text))
