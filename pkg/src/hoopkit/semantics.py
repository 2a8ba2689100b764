"""Interpretation of formulas and sequents in algebraic models.

A model is anything exposing zero/one, plus/arrow/geq and halve — a validated
FiniteAlgebra or the DyadicModel.  A sequent Gamma |- A is satisfied by an
assignment when the sum of the context's values dominates the conclusion's
value (the empty sum being 0), and valid in a finite algebra when every
assignment satisfies it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import ClassFlags, DyadicModel, FiniteAlgebra, classify, dyadic_battery
from .formula import (
    Conj,
    Falsity,
    Formula,
    Half,
    Imp,
    MetaVar,
    Truth,
    Var,
    contains_half,
    pretty,
    substitute,
    variables,
)
from .proofs import AXIOM_SCHEMATA, LogicSpec, Sequent


class EvaluationError(ValueError):
    pass


Assignment = dict


def evaluate(f: Formula, model, assignment: Assignment):
    """Structural evaluation of a formula to a model element."""
    if isinstance(f, Truth):
        return model.zero
    if isinstance(f, Falsity):
        one = model.one
        if one is None:
            raise EvaluationError("the constant 1 needs a bounded model")
        return one
    if isinstance(f, Var):
        try:
            return assignment[f.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {f.name}") from None
    if isinstance(f, Imp):
        return model.arrow(evaluate(f.lhs, model, assignment), evaluate(f.rhs, model, assignment))
    if isinstance(f, Conj):
        return model.plus(evaluate(f.lhs, model, assignment), evaluate(f.rhs, model, assignment))
    if isinstance(f, Half):
        value = evaluate(f.body, model, assignment)
        halved = model.halve(value)
        if halved is None:
            raise EvaluationError(f"halving unavailable for value {value} in this model")
        return halved
    raise EvaluationError(f"cannot evaluate {f!r}")


def context_value(context, model, assignment: Assignment):
    total = model.zero
    for f in context:
        total = model.plus(total, evaluate(f, model, assignment))
    return total


def satisfies(s: Sequent, model, assignment: Assignment) -> bool:
    return model.geq(context_value(s.context, model, assignment), evaluate(s.conclusion, model, assignment))


@dataclass(frozen=True, slots=True)
class ValidityResult:
    valid: bool
    countermodel: dict | None = None

    def __bool__(self) -> bool:
        return self.valid


def valid_in(s: Sequent, alg: FiniteAlgebra, assignment_cap: int = 100_000) -> ValidityResult:
    """Exhaustive validity in a finite algebra; returns a falsifying
    assignment when there is one.  Refuses assignment spaces larger than the
    cap (n ** #variables)."""
    names = sorted(set().union(variables(s.conclusion), *(variables(f) for f in s.context)))
    space = alg.size ** len(names)
    if space > assignment_cap:
        raise EvaluationError(f"assignment space {space} exceeds cap {assignment_cap}")
    for values in product(range(alg.size), repeat=len(names)):
        assignment = dict(zip(names, values))
        if not satisfies(s, alg, assignment):
            return ValidityResult(False, assignment)
    return ValidityResult(True)


# ---------------------------------------------------------------------------
# Model classes of the eight logics
# ---------------------------------------------------------------------------

# Requirements on ClassFlags, per logic: every model must be bounded, plus the
# listed extras.
_CLASS_REQUIREMENTS = {
    "ALi": (),
    "ALc": ("involutive",),
    "LLi": ("hoop",),
    "LLc": ("hoop", "wajsberg"),
    "IL": ("idempotent",),
    "BL": ("involutive", "idempotent"),
    "CLi": ("coop",),
    "CLc": ("involutive", "coop"),
}


def in_model_class(logic: LogicSpec, flags: ClassFlags) -> bool:
    if not flags.bounded:
        return False
    return all(getattr(flags, attr) for attr in _CLASS_REQUIREMENTS[logic.name])


def dyadic_in_model_class(logic: LogicSpec) -> bool:
    # The dyadic model is a bounded involutive coop (hence also a Wajsberg
    # hoop), but it is not idempotent.
    return logic.name not in ("IL", "BL")


# ---------------------------------------------------------------------------
# Instance pool
# ---------------------------------------------------------------------------


def default_pool(include_half: bool = True) -> list[Formula]:
    """All formulas of height <= 2 over P, Q, 0, 1, plus the left-hand shapes
    of the axiom schemata instantiated at (P, Q)."""
    p, q = Var("P"), Var("Q")
    atoms: list[Formula] = [p, q, Truth(), Falsity()]
    pool = list(atoms)
    for a in atoms:
        for b in atoms:
            pool.append(Imp(a, b))
            pool.append(Conj(a, b))
    for a in atoms:
        pool.append(Half(a))
    shapes = [
        Conj(p, Imp(p, q)),
        Imp(Imp(p, q), q),
        Imp(Imp(p, Falsity()), Falsity()),
        Conj(p, p),
        Half(p),
        Imp(Half(p), p),
    ]
    pool.extend(shapes)
    seen = set()
    out = []
    for f in pool:
        if f not in seen and (include_half or not contains_half(f)):
            seen.add(f)
            out.append(f)
    return out


def _schema_as_var_sequent(axiom_id: str) -> Sequent:
    """The axiom schema with metavariables ?A ?B read as object variables, so
    it can be evaluated directly at chosen element values."""
    ctx_patterns, concl = AXIOM_SCHEMATA[axiom_id]
    sigma = {"A": Var("A"), "B": Var("B")}
    return Sequent(tuple(substitute(sigma, pat) for pat in ctx_patterns), substitute(sigma, concl))


def _schema_metavar_count(axiom_id: str) -> int:
    ctx_patterns, concl = AXIOM_SCHEMATA[axiom_id]
    names = set()
    for pat in ctx_patterns + (concl,):
        stack = [pat]
        while stack:
            g = stack.pop()
            if isinstance(g, MetaVar):
                names.add(g.name)
            elif isinstance(g, (Imp, Conj)):
                stack.extend((g.lhs, g.rhs))
            elif isinstance(g, Half):
                stack.append(g.body)
    return len(names)


# ---------------------------------------------------------------------------
# Soundness sweep
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    logic: str
    algebras_checked: int = 0
    axiom_instances: int = 0
    value_pairs_checked: int = 0
    rule_tuples_checked: int = 0
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations


def _realizable_profiles(pool, model, assignments):
    """All (value(F), value(G), F, G, assignment) profiles realizable by
    instantiating two schema slots from the pool, collapsed to one witness per
    distinct value pair.  Pool formulas that do not evaluate in the model
    (e.g. halving of a value with no half) are skipped."""
    pairs = {}
    for assignment in assignments:
        values = {}
        for f in pool:
            try:
                v = evaluate(f, model, assignment)
            except EvaluationError:
                continue
            values.setdefault(v, f)
        for va, fa in values.items():
            for vb, fb in values.items():
                key = (va, vb)
                if key not in pairs:
                    pairs[key] = (fa, fb, assignment)
    return pairs


def _finite_assignments(alg: FiniteAlgebra):
    return [{"P": i, "Q": j} for i in range(alg.size) for j in range(alg.size)]


def _dyadic_assignments(max_exponent: int):
    battery = dyadic_battery(max_exponent)
    return [{"P": a, "Q": b} for a in battery for b in battery]


def _check_axioms(logic, model, assignments, pool, report, tag):
    profiles = _realizable_profiles(pool, model, assignments)
    for axiom_id in sorted(logic.axioms):
        schema_seq = _schema_as_var_sequent(axiom_id)
        arity = _schema_metavar_count(axiom_id)
        report.axiom_instances += len(pool) ** arity
        report.value_pairs_checked += len(profiles)
        for (va, vb), (fa, fb, assignment) in sorted(profiles.items(), key=lambda kv: str(kv[0])):
            try:
                ok = satisfies(schema_seq, model, {"A": va, "B": vb})
            except EvaluationError:
                # Halving axioms evaluated at un-halvable finite values: not
                # an instance of the schema in this model.
                continue
            if not ok:
                report.violations.append(
                    f"{tag}: axiom {axiom_id} fails at A={pretty(fa)}, B={pretty(fb)}, {assignment}"
                )


def _check_rules_on_values(model, values, report, tag):
    """Rule-local soundness, value level: if the premises of a rule are
    satisfied at given element values, so is the conclusion."""
    plus, arrow, geq = model.plus, model.arrow, model.geq
    for g in values:
        for a in values:
            for b in values:
                report.rule_tuples_checked += 1
                if geq(plus(g, a), b) and not geq(g, arrow(a, b)):
                    report.violations.append(f"{tag}: imp_i unsound at {(g, a, b)}")
    for g in values:
        for d in values:
            for a in values:
                for b in values:
                    report.rule_tuples_checked += 1
                    if geq(g, a) and geq(d, arrow(a, b)) and not geq(plus(g, d), b):
                        report.violations.append(f"{tag}: imp_e unsound at {(g, d, a, b)}")
                    if geq(g, a) and geq(d, b) and not geq(plus(g, d), plus(a, b)):
                        report.violations.append(f"{tag}: conj_i unsound at {(g, d, a, b)}")
    for g in values:
        for d in values:
            for a in values:
                for b in values:
                    if not geq(g, plus(a, b)):
                        continue
                    dab = plus(plus(d, a), b)
                    for c in values:
                        report.rule_tuples_checked += 1
                        if geq(dab, c) and not geq(plus(g, d), c):
                            report.violations.append(f"{tag}: conj_e unsound at {(g, d, a, b, c)}")


def soundness_sweep(
    logic: LogicSpec,
    algebras: list[FiniteAlgebra],
    pool: list[Formula] | None = None,
    include_dyadic: bool = False,
    dyadic_axiom_exponent: int = 6,
    dyadic_rule_exponent: int = 3,
) -> SweepReport:
    """Check, for one logic, that its axioms are valid and its rules locally
    sound on the given models.

    Axiom schemata are instantiated over the pool; distinct instantiations
    with equal value profiles are collapsed, which makes the pooled check
    exact and cheap.  Rules are checked at the value level (which subsumes
    every pooled instance on a finite carrier; on the dyadic model the grid is
    bounded by dyadic_rule_exponent).  Any violation would contradict
    soundness and therefore flags an implementation bug.
    """
    if pool is None:
        pool = default_pool(include_half=logic.allows_halving)
    report = SweepReport(logic.name)
    for alg in algebras:
        flags = classify(alg)
        if not in_model_class(logic, flags):
            raise ValueError(f"algebra of size {alg.size} is not in the model class of {logic.name}")
        tag = f"{logic.name}/size{alg.size}"
        _check_axioms(logic, alg, _finite_assignments(alg), pool, report, tag)
        _check_rules_on_values(alg, range(alg.size), report, tag)
        report.algebras_checked += 1
    if include_dyadic:
        if not dyadic_in_model_class(logic):
            raise ValueError(f"the dyadic model is not in the model class of {logic.name}")
        tag = f"{logic.name}/dyadic"
        _check_axioms(logic, DyadicModel, _dyadic_assignments(dyadic_axiom_exponent), pool, report, tag)
        _check_rules_on_values(DyadicModel, dyadic_battery(dyadic_rule_exponent), report, tag)
        report.algebras_checked += 1
    return report
