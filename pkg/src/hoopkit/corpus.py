"""The problem bank: named algebraic statements with brute-force oracles and
Prover9/TPTP exporters.

The bank holds the sixteen LCL888..LCL903 problems about hoops, halving,
weak conjunction and the strong-disjunction identity, the nine intermediate
claims behind the halving-uniqueness proof, and the classic countersatisfiable
conjecture that every bounded pocrim is a hoop.  "theorem" problems are never
proved here; they are desk-checked by exhausting all finite models up to a
bound and, where meaningful, the dyadic battery.  "countersatisfiable"
problems carry a stored witness model that is re-validated from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import (
    Dyadic,
    DYADIC_ZERO,
    FiniteAlgebra,
    cap_add,
    classify,
    dyadic_battery,
    four_chain_non_hoop,
    half,
    trunc_imp,
    validate_pocrim,
)
from .search import (
    Atom,
    ClassFilter,
    ClassSpec,
    Clause,
    HornProblem,
    LAW_CLAUSES,
    SearchConfig,
    TArrow,
    TConst,
    TOne,
    TPlus,
    TVar,
    TZero,
    clause_counterexample,
    clause_holds,
    clause_names,
    enumerate_algebras,
    law_clauses,
    parse_clause,
    render_clause,
)

THEOREM = "theorem"
COUNTERSATISFIABLE = "countersatisfiable"


@dataclass(frozen=True)
class Problem:
    id: str
    title: str
    statement: HornProblem
    expected: str
    notes: str = ""
    tptp_name: str | None = None
    witness: FiniteAlgebra | None = None


def _horn(constants, assumptions, goal, class_spec) -> HornProblem:
    return HornProblem(
        tuple(constants),
        tuple(parse_clause(a) if isinstance(a, str) else a for a in assumptions),
        parse_clause(goal) if isinstance(goal, str) else goal,
        class_spec,
    )


_HOOP = ClassSpec(hoop=True)
_BOUNDED = ClassSpec(bounded=True)
_BOUNDED_HOOP = ClassSpec(bounded=True, hoop=True)

# Weak conjunction wc(u, v) = u + (u ==> v); its associativity as a clause.
_WC_ASSOC = parse_clause(
    "x + (x ==> (y + (y ==> z))) = (x + (x ==> y)) + ((x + (x ==> y)) ==> z)."
)

_UNIQUENESS_HYPS = ("a ==> b = a.", "c ==> b = c.")


def _build_problems() -> list[Problem]:
    problems = [
        Problem(
            "pocrim_not_hoop",
            "Not every bounded pocrim is a hoop",
            _horn((), (), LAW_CLAUSES["cwc"], _BOUNDED),
            COUNTERSATISFIABLE,
            notes="Refuted by the 4-chain 0 < p < q < 1 with x + y = 1 for x, y above 0.",
            witness=four_chain_non_hoop(),
        ),
        Problem(
            "LCL888",
            "Halving is unique: rule for a = b/2",
            _horn("abc", _UNIQUENESS_HYPS, "a = c.", _HOOP),
            THEOREM,
            notes="a ==> b = a pins a to the halving of b; two solutions must coincide.",
            tptp_name="LCL888+1.p",
        ),
        Problem(
            "LCL889",
            "Halving is unique: rule for a >= b/2",
            _horn("abc", ("a >= a ==> b.", "c ==> b = c."), "a >= c.", _HOOP),
            THEOREM,
            notes="Dropping the first antecedent of the halving rule still bounds b/2 above.",
            tptp_name="LCL889+1.p",
        ),
        Problem(
            "LCL890",
            "Halving is unique: rule for a <= b/2 (i)",
            _horn("abc", ("a ==> b >= a.", "c ==> b = c."), "c >= a.", _BOUNDED_HOOP),
            THEOREM,
            notes="Variant (i): the annihilator law is included in its usual position.",
            tptp_name="LCL890+1.p",
        ),
        Problem(
            "LCL891",
            "Halving is unique: rule for a <= b/2 (ii)",
            _horn("abc", ("a ==> b >= a.", "c ==> b = c."), "c >= a.", _HOOP),
            THEOREM,
            notes="Variant (ii): same statement with the annihilator law omitted.",
            tptp_name="LCL891+1.p",
        ),
        Problem(
            "LCL892",
            "Halving is unique: rule for a <= b/2 (iii)",
            _horn(
                "abc",
                ("a ==> b >= a.", "c ==> b = c."),
                "c >= a.",
                ClassSpec(bounded=True, hoop=True, ann_at_end=True),
            ),
            THEOREM,
            notes="Variant (iii): the annihilator law moved to the end of the axiom list.",
            tptp_name="LCL892+1.p",
        ),
        Problem(
            "LCL893",
            "x/2 = x implies x = 0",
            _horn("a", ("a ==> a = a.",), "a = 0.", _HOOP),
            THEOREM,
            notes="x/2 = x is stated through the halving characterization y = y ==> x.",
            tptp_name="LCL893+1.p",
        ),
        Problem(
            "LCL894",
            "Weak conjunction is l.u.b. in a hoop (Horn)",
            _horn("abc", ("c >= a.", "c >= b."), "c >= a + (a ==> b).", _HOOP),
            THEOREM,
            notes="Leastness; that a + (a ==> b) is an upper bound holds in any pocrim.",
            tptp_name="LCL894+1.p",
        ),
        Problem(
            "LCL895",
            "Weak conjunction is l.u.b. in a hoop (Equational)",
            _horn(
                "abc",
                ("c ==> a = 0.", "c ==> b = 0."),
                "c ==> (a + (a ==> b)) = 0.",
                ClassSpec(hoop=True, equational=True),
            ),
            THEOREM,
            notes="Same statement over the equational hoop axioms, with x >= y as x ==> y = 0.",
            tptp_name="LCL895+1.p",
        ),
        Problem(
            "LCL896",
            "Associativity of weak conjunction implies cwc",
            _horn((), (_WC_ASSOC,), LAW_CLAUSES["cwc"], ClassSpec()),
            THEOREM,
            notes="Over bare pocrims; together with LCL897 this characterizes hoops.",
            tptp_name="LCL896+1.p",
        ),
        Problem(
            "LCL897",
            "Weak conjunction is associative in a hoop",
            _horn((), (), _WC_ASSOC, ClassSpec(hoop=True, equational=True)),
            THEOREM,
            notes="Uses the equational hoop axioms; the Horn presentation resists provers.",
            tptp_name="LCL897+1.p",
        ),
        Problem(
            "LCL898",
            "An involutive hoop has csd",
            _horn((), (), LAW_CLAUSES["csd"], ClassSpec(bounded=True, hoop=True, involutive=True)),
            THEOREM,
            notes="One third of: csd is equivalent to cwc plus involutivity over bounded pocrims.",
            tptp_name="LCL898+1.p",
        ),
        Problem(
            "LCL899",
            "A bounded pocrim with csd is involutive",
            _horn((), (), LAW_CLAUSES["inv"], ClassSpec(bounded=True, wajsberg=True)),
            THEOREM,
            notes="Second third of the csd equivalence.",
            tptp_name="LCL899+1.p",
        ),
        Problem(
            "LCL900",
            "A bounded pocrim with csd is a hoop",
            _horn((), (), LAW_CLAUSES["cwc"], ClassSpec(bounded=True, wajsberg=True)),
            THEOREM,
            notes="Final third of the csd equivalence.",
            tptp_name="LCL900+1.p",
        ),
        Problem(
            "LCL901",
            "An idempotent pocrim with csd is boolean",
            _horn((), (), LAW_CLAUSES["inv"], ClassSpec(bounded=True, wajsberg=True, idempotent=True)),
            THEOREM,
            notes="Boolean here means bounded, idempotent and involutive at once.",
            tptp_name="LCL901+1.p",
        ),
        Problem(
            "LCL902",
            "A boolean pocrim is involutive",
            _horn((), (), LAW_CLAUSES["inv"], ClassSpec(bounded=True, involutive=True, idempotent=True)),
            THEOREM,
            notes="Immediate from the boolean axioms; kept for completeness of the suite.",
            tptp_name="LCL902+1.p",
        ),
        Problem(
            "LCL903",
            "A boolean pocrim is idempotent",
            _horn((), (), LAW_CLAUSES["idem"], ClassSpec(bounded=True, involutive=True, idempotent=True)),
            THEOREM,
            notes="Immediate from the boolean axioms; kept for completeness of the suite.",
            tptp_name="LCL903+1.p",
        ),
    ]
    claims = [
        "b >= a.",
        "a + a = b.",
        "a ==> (a ==> c) = 0.",
        "(x ==> y) + z >= x ==> ((y + (y ==> x)) + z).",
        "c ==> ((a + a) + x) >= c.",
        "c ==> a >= a ==> c.",
        "c ==> a = a ==> c.",
        "(c + (c ==> a)) + ((a ==> c) ==> a) = b.",
        "a + c = b.",
    ]
    for k, goal in enumerate(claims, start=1):
        problems.append(
            Problem(
                f"halving_lemma.{k}",
                f"Halving uniqueness, intermediate claim ({k})",
                _horn("abc", _UNIQUENESS_HYPS, goal, _HOOP),
                THEOREM,
                notes="Claims (1)-(9) decompose the halving-uniqueness argument; "
                "(4) needs no hypotheses and (1) also yields b >= c by symmetry.",
            )
        )
    return problems


PROBLEMS: list[Problem] = _build_problems()
PROBLEMS_BY_ID: dict[str, Problem] = {p.id: p for p in PROBLEMS}

TABLE_IDS = tuple(f"LCL{n}" for n in range(888, 904))


def get_problem(problem_id: str) -> Problem:
    try:
        return PROBLEMS_BY_ID[problem_id]
    except KeyError:
        raise KeyError(f"unknown problem {problem_id!r}; see corpus list") from None


# ---------------------------------------------------------------------------
# Oracle reports
# ---------------------------------------------------------------------------


@dataclass
class OracleReport:
    name: str
    models_checked: int = 0
    tuples_checked: int = 0
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations

    def absorb(self, other: "OracleReport"):
        self.models_checked += other.models_checked
        self.tuples_checked += other.tuples_checked
        self.violations.extend(other.violations)


def _require_hoop(alg: FiniteAlgebra):
    flags = classify(alg)
    if not flags.hoop:
        raise ValueError("algebra is not a hoop")
    return flags


# ---------------------------------------------------------------------------
# The nine-claim oracle
# ---------------------------------------------------------------------------


def _qualifying_triples(alg: FiniteAlgebra):
    """(a, b, c) with a ==> b = a and c ==> b = c."""
    imp = alg.imp
    n = alg.size
    for b in range(n):
        halves = [a for a in range(n) if imp[a][b] == a]
        for a in halves:
            for c in halves:
                yield a, b, c


def lemma2_oracle(alg: FiniteAlgebra) -> OracleReport:
    """Check the nine intermediate claims of the halving-uniqueness proof on
    every qualifying (a, b, c) triple of a finite hoop (claims in x, y, z are
    checked over the whole carrier)."""
    _require_hoop(alg)
    report = OracleReport("halving_lemma")
    n = alg.size
    add, imp = alg.add, alg.imp
    ge = alg.geq

    def fail(claim, *witness):
        report.violations.append(f"claim ({claim}) fails at {witness} (size {n})")

    for a, b, c in _qualifying_triples(alg):
        report.tuples_checked += 1
        if not (ge(b, a) and ge(b, c)):
            fail(1, a, b, c)
        if add[a][a] != b:
            fail(2, a, b, c)
        if imp[a][imp[a][c]] != 0:
            fail(3, a, b, c)
        for x in range(n):
            if not ge(imp[c][add[add[a][a]][x]], c):
                fail(5, a, b, c, x)
        if not ge(imp[c][a], imp[a][c]):
            fail(6, a, b, c)
        if imp[c][a] != imp[a][c]:
            fail(7, a, b, c)
        if add[add[c][imp[c][a]]][imp[imp[a][c]][a]] != b:
            fail(8, a, b, c)
        if add[a][c] != b:
            fail(9, a, b, c)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                report.tuples_checked += 1
                if not ge(add[imp[x][y]][z], imp[x][add[add[y][imp[y][x]]][z]]):
                    fail(4, x, y, z)
    report.models_checked = 1
    return report


def lemma2_dyadic(max_exponent: int = 6) -> OracleReport:
    """The same nine claims on the dyadic battery.  Qualifying triples in the
    dyadic model are exactly a = c = b/2 (checked as part of the sweep), and
    the claims quantifying over x, y, z run over all battery triples."""
    report = OracleReport("halving_lemma(dyadic)")
    battery = dyadic_battery(max_exponent)
    for b in battery:
        a = half(b)
        c = a
        report.tuples_checked += 1
        if trunc_imp(a, b) != a:
            report.violations.append(f"b/2 is not a halving solution for b={b}")
            continue
        checks = {
            1: b >= a and b >= c,
            2: cap_add(a, a) == b,
            3: trunc_imp(a, trunc_imp(a, c)) == DYADIC_ZERO,
            6: trunc_imp(c, a) >= trunc_imp(a, c),
            7: trunc_imp(c, a) == trunc_imp(a, c),
            8: cap_add(cap_add(c, trunc_imp(c, a)), trunc_imp(trunc_imp(a, c), a)) == b,
            9: cap_add(a, c) == b,
        }
        for claim, ok in checks.items():
            if not ok:
                report.violations.append(f"claim ({claim}) fails at b={b}")
        for x in battery:
            report.tuples_checked += 1
            if not trunc_imp(c, cap_add(cap_add(a, a), x)) >= c:
                report.violations.append(f"claim (5) fails at b={b}, x={x}")
    for x in battery:
        for y in battery:
            yx = cap_add(y, trunc_imp(y, x))
            for z in battery:
                report.tuples_checked += 1
                if not cap_add(trunc_imp(x, y), z) >= trunc_imp(x, cap_add(yx, z)):
                    report.violations.append(f"claim (4) fails at {(x, y, z)}")
    report.models_checked = 1
    return report


# ---------------------------------------------------------------------------
# Halving uniqueness and the inequality rules
# ---------------------------------------------------------------------------


def theorem2_oracle(algebras) -> OracleReport:
    """In every supplied hoop, y = y ==> x has at most one solution per x;
    equivalently a = c on all qualifying triples."""
    report = OracleReport("halving_unique")
    for alg in algebras:
        _require_hoop(alg)
        report.models_checked += 1
        for x in range(alg.size):
            report.tuples_checked += 1
            solutions = alg.halving_solutions(x)
            if len(solutions) > 1:
                report.violations.append(f"element {x} has halvings {solutions} (size {alg.size})")
        for a, b, c in _qualifying_triples(alg):
            report.tuples_checked += 1
            if a != c:
                report.violations.append(f"a != c at {(a, b, c)} (size {alg.size})")
    return report


def theorem2_dyadic(max_exponent: int = 6) -> OracleReport:
    """Scanning dyadics of exponent <= max_exponent + 1, the only solution of
    y = y ==> x for a battery x is x/2."""
    report = OracleReport("halving_unique(dyadic)")
    scan = dyadic_battery(max_exponent + 1)
    for x in dyadic_battery(max_exponent):
        report.tuples_checked += 1
        solutions = [y for y in scan if trunc_imp(y, x) == y]
        if solutions != [half(x)]:
            report.violations.append(f"halvings of {x}: {[str(s) for s in solutions]}")
    report.models_checked = 1
    return report


def halving_inequality_oracles(algebras) -> OracleReport:
    """The one-sided halving rules on finite hoops: when b has a halving h,
    a >= a ==> b forces a >= h, and a ==> b >= a forces h >= a."""
    report = OracleReport("halving_bounds")
    for alg in algebras:
        _require_hoop(alg)
        report.models_checked += 1
        ge, imp = alg.geq, alg.imp
        for b in range(alg.size):
            h = alg.halve(b)
            if h is None:
                continue
            for a in range(alg.size):
                report.tuples_checked += 1
                if ge(a, imp[a][b]) and not ge(a, h):
                    report.violations.append(f">=-rule fails at a={a}, b={b} (size {alg.size})")
                if ge(imp[a][b], a) and not ge(h, a):
                    report.violations.append(f"<=-rule fails at a={a}, b={b} (size {alg.size})")
    return report


def halving_inequality_dyadic(max_exponent: int = 6) -> OracleReport:
    report = OracleReport("halving_bounds(dyadic)")
    battery = dyadic_battery(max_exponent)
    for a in battery:
        for b in battery:
            report.tuples_checked += 1
            h = half(b)
            if a >= trunc_imp(a, b) and not a >= h:
                report.violations.append(f">=-rule fails at a={a}, b={b}")
            if trunc_imp(a, b) >= a and not h >= a:
                report.violations.append(f"<=-rule fails at a={a}, b={b}")
    report.models_checked = 1
    return report


# ---------------------------------------------------------------------------
# The csd/cwc/involutivity square and the weak-conjunction facts
# ---------------------------------------------------------------------------


def _weak_conj(alg: FiniteAlgebra, x: int, y: int) -> int:
    return alg.add[x][alg.imp[x][y]]


def square_equivalence_oracle(algebras) -> OracleReport:
    """Finite-scale checks of LCL894..LCL903 on bounded pocrims.

    Implication facets are checked per algebra from its classification flags;
    the weak-conjunction facts (upper bound, leastness, associativity, and the
    strong-disjunction greatest-lower-bound twin) are checked element-wise on
    the algebras in the relevant class.  The orientation finding is recorded
    as a fact: weak conjunction realizes the least upper bound with respect to
    the derived order, strong disjunction the greatest lower bound.
    """
    report = OracleReport("square_facts")
    for alg in algebras:
        flags = classify(alg)
        if not flags.bounded:
            raise ValueError("square facts are stated over bounded pocrims")
        report.models_checked += 1
        n = alg.size
        tag = f"size {n}"

        def check(fact_id, condition, conclusion):
            report.tuples_checked += 1
            if condition and not conclusion:
                report.violations.append(f"{fact_id} fails ({tag})")

        check("LCL898", flags.involutive and flags.hoop, flags.wajsberg)
        check("LCL899", flags.wajsberg, flags.involutive)
        check("LCL900", flags.wajsberg, flags.hoop)
        check("LCL901", flags.idempotent and flags.wajsberg, flags.boolean)
        check("LCL902", flags.boolean, flags.involutive)
        check("LCL903", flags.boolean, flags.idempotent)

        wc_assoc = all(
            _weak_conj(alg, x, _weak_conj(alg, y, z)) == _weak_conj(alg, _weak_conj(alg, x, y), z)
            for x in range(n)
            for y in range(n)
            for z in range(n)
        )
        check("LCL896", wc_assoc, flags.hoop)
        if flags.hoop:
            check("LCL897", True, wc_assoc)
            for x in range(n):
                for y in range(n):
                    u = _weak_conj(alg, x, y)
                    check("LCL894/upper", True, alg.geq(u, x) and alg.geq(u, y))
                    for z in range(n):
                        check("LCL894/least", alg.geq(z, x) and alg.geq(z, y), alg.geq(z, u))
        if flags.hoop and flags.wajsberg:
            for x in range(n):
                for y in range(n):
                    v = alg.imp[alg.imp[x][y]][y]
                    check("csd_glb/lower", True, alg.geq(x, v) and alg.geq(y, v))
                    for z in range(n):
                        check("csd_glb/greatest", alg.geq(x, z) and alg.geq(y, z), alg.geq(v, z))
    return report


def lcl893_dyadic(max_exponent: int = 6) -> OracleReport:
    report = OracleReport("half_fixpoint(dyadic)")
    for x in dyadic_battery(max_exponent):
        report.tuples_checked += 1
        if half(x) == x and x != DYADIC_ZERO:
            report.violations.append(f"x/2 = x at x={x}")
    report.models_checked = 1
    return report


# ---------------------------------------------------------------------------
# Exporters
# ---------------------------------------------------------------------------

_PAD_COLUMN = 36


def _prover9_line(clause: Clause, padded: bool) -> str:
    line = f"   {render_clause(clause)}."
    if padded and len(line) < _PAD_COLUMN:
        line = line.ljust(_PAD_COLUMN)
    return line


def export_prover9(problem: Problem) -> str:
    """A Mace4/Prover9 input file for the problem: the fixed operator
    declaration, the class axioms and assumptions, then the goal.  Axiom and
    assumption lines are padded to the column where annotations historically
    sat; ad-hoc goals are not padded."""
    lines = ['op(500, infix, "==>").', "formulas(assumptions)."]
    for _tag, clause in law_clauses(problem.statement.class_spec):
        lines.append(_prover9_line(clause, padded=True))
    for clause in problem.statement.assumptions:
        lines.append(_prover9_line(clause, padded=True))
    lines.append("end_of_list.")
    lines.append("formulas(goals).")
    goal = problem.statement.goal
    lines.append(_prover9_line(goal, padded=goal in LAW_CLAUSES.values()))
    lines.append("end_of_list.")
    return "\n".join(lines) + "\n"


def _fof_term(t) -> str:
    if isinstance(t, TZero):
        return "zero"
    if isinstance(t, TOne):
        return "one"
    if isinstance(t, TVar):
        return t.name.upper()
    if isinstance(t, TConst):
        return t.name
    if isinstance(t, TPlus):
        return f"plus({_fof_term(t.lhs)},{_fof_term(t.rhs)})"
    if isinstance(t, TArrow):
        return f"impl({_fof_term(t.lhs)},{_fof_term(t.rhs)})"
    raise TypeError(f"not a term: {t!r}")


def _fof_atom(a: Atom) -> str:
    if a.relation == "eq":
        return f"{_fof_term(a.lhs)} = {_fof_term(a.rhs)}"
    return f"geq({_fof_term(a.lhs)},{_fof_term(a.rhs)})"


def _fof_formula(clause: Clause) -> str:
    variables, _ = clause_names(clause)
    if clause.iff:
        matrix = f"({_fof_atom(clause.body[0])} <=> {_fof_atom(clause.head)})"
    elif clause.body:
        body = " & ".join(_fof_atom(a) for a in clause.body)
        if len(clause.body) > 1:
            body = f"({body})"
        matrix = f"({body} => {_fof_atom(clause.head)})"
    else:
        matrix = _fof_atom(clause.head)
    if variables:
        bound = ",".join(v.upper() for v in variables)
        return f"! [{bound}] : {matrix}"
    return matrix


def _fof_name(text: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in text).lower()


def export_tptp(problem: Problem) -> str:
    """First-order form: one axiom per class law, one hypothesis per problem
    assumption, and the goal as the conjecture."""
    lines = [f"% {problem.tptp_name or problem.id} : {problem.title}"]
    for tag, clause in law_clauses(problem.statement.class_spec):
        lines.append(f"fof({_fof_name(tag)}, axiom, {_fof_formula(clause)}).")
    for i, clause in enumerate(problem.statement.assumptions, start=1):
        lines.append(f"fof(hyp_{i}, hypothesis, {_fof_formula(clause)}).")
    lines.append(f"fof({_fof_name(problem.id)}, conjecture, {_fof_formula(problem.statement.goal)}).")
    return "\n".join(lines) + "\n"


def export_filename(problem: Problem, fmt: str) -> str:
    if fmt == "tptp":
        return problem.tptp_name or f"{_fof_name(problem.id)}.p"
    return f"{_fof_name(problem.id)}.in"


# ---------------------------------------------------------------------------
# Minimal structural fof reader (the well-formedness oracle for exports)
# ---------------------------------------------------------------------------


class FofParseError(ValueError):
    pass


def _fof_tokens(text: str) -> list[str]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "%":
            while i < n and text[i] != "\n":
                i += 1
        elif text.startswith("<=>", i):
            tokens.append("<=>")
            i += 3
        elif text.startswith("=>", i):
            tokens.append("=>")
            i += 2
        elif c in "()[],:.!&=":
            tokens.append(c)
            i += 1
        elif c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise FofParseError(f"unexpected character {c!r}")
    return tokens


class _FofParser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None):
        tok = self.peek()
        if tok is None:
            raise FofParseError("unexpected end of input")
        if expected is not None and tok != expected:
            raise FofParseError(f"expected {expected!r}, got {tok!r}")
        self.pos += 1
        return tok

    def term(self):
        name = self.take()
        if not (name[0].isalpha() or name[0] == "_"):
            raise FofParseError(f"bad term head {name!r}")
        if name == "zero":
            return TZero()
        if name == "one":
            return TOne()
        if self.peek() == "(":
            self.take()
            args = [self.term()]
            while self.peek() == ",":
                self.take()
                args.append(self.term())
            self.take(")")
            if name == "plus" and len(args) == 2:
                return TPlus(args[0], args[1])
            if name == "impl" and len(args) == 2:
                return TArrow(args[0], args[1])
            raise FofParseError(f"unknown function {name}/{len(args)}")
        if name[0].isupper():
            return TVar(name.lower())
        return TConst(name)

    def atom(self) -> Atom:
        if self.peek() == "geq":
            self.take()
            self.take("(")
            lhs = self.term()
            self.take(",")
            rhs = self.term()
            self.take(")")
            return Atom("geq", lhs, rhs)
        lhs = self.term()
        self.take("=")
        return Atom("eq", lhs, self.term())

    def unit(self):
        if self.peek() == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out
        return self.atom()

    def conjunction(self):
        """An atom, a parenthesized clause, or a &-chain of atoms."""
        items = [self.unit()]
        while self.peek() == "&":
            self.take()
            items.append(self.unit())
        if len(items) == 1:
            return items[0]
        if not all(isinstance(a, Atom) for a in items):
            raise FofParseError("only atoms may be conjoined")
        return tuple(items)

    @staticmethod
    def _single_atom(part) -> Atom:
        if not isinstance(part, Atom):
            raise FofParseError("expected a single atom")
        return part

    def expr(self):
        left = self.conjunction()
        if self.peek() == "=>":
            self.take()
            head = self._single_atom(self.conjunction())
            body = left if isinstance(left, tuple) else (left,)
            return Clause(body, head)
        if self.peek() == "<=>":
            self.take()
            head = self._single_atom(self.conjunction())
            return Clause((self._single_atom(left),), head, iff=True)
        return left

    def formula(self):
        quantified: list[str] = []
        if self.peek() == "!":
            self.take()
            self.take("[")
            quantified.append(self.take())
            while self.peek() == ",":
                self.take()
                quantified.append(self.take())
            self.take("]")
            self.take(":")
        out = self.expr()
        if isinstance(out, Atom):
            out = Clause((), out)
        if not isinstance(out, Clause):
            raise FofParseError("formula is not a clause")
        return quantified, out

    def fof_line(self):
        self.take("fof")
        self.take("(")
        name = self.take()
        self.take(",")
        role = self.take()
        self.take(",")
        quantified, clause = self.formula()
        self.take(")")
        self.take(".")
        return name, role, quantified, clause


def parse_fof_file(text: str) -> list[tuple[str, str, Clause]]:
    """Parse an emitted fof file back into (name, role, clause) triples and
    check the quantifier lists are exactly the clause variables."""
    parser = _FofParser(_fof_tokens(text))
    out = []
    from .search import clause_names

    while parser.peek() is not None:
        name, role, quantified, clause = parser.fof_line()
        variables, _ = clause_names(clause)
        if sorted(v.lower() for v in quantified) != variables:
            raise FofParseError(f"quantifier list {quantified} does not bind {variables} in {name}")
        out.append((name, role, clause))
    return out


# ---------------------------------------------------------------------------
# Corpus-wide run
# ---------------------------------------------------------------------------


@dataclass
class ProblemRow:
    problem_id: str
    expected: str
    models_checked: int
    tuples_checked: int
    violations: list[str]

    def __bool__(self) -> bool:
        return not self.violations


def _scan_problem(problem: Problem, pool: list[FiniteAlgebra]) -> ProblemRow:
    row = ProblemRow(problem.id, problem.expected, 0, 0, [])
    class_filter = problem.statement.class_spec.to_filter()
    laws = [clause for _tag, clause in law_clauses(problem.statement.class_spec)]
    found = None
    for alg in pool:
        if not class_filter.matches(classify(alg), alg.size):
            continue
        row.models_checked += 1
        for values in product(range(alg.size), repeat=len(problem.statement.constants)):
            env = dict(zip(problem.statement.constants, values))
            row.tuples_checked += 1
            if not all(clause_holds(c, alg, env) for c in problem.statement.assumptions):
                continue
            witness = clause_counterexample(problem.statement.goal, alg, env)
            if witness is None:
                continue
            if all(clause_holds(c, alg, env) for c in laws):
                found = (alg, env, witness)
                break
        if found:
            break
    if problem.expected == THEOREM and found:
        alg, env, witness = found
        row.violations.append(f"unexpected countermodel of size {alg.size}: {env} {witness}")
    if problem.expected == COUNTERSATISFIABLE:
        if not found:
            row.violations.append("no countermodel found within the pool")
        if problem.witness is not None:
            ok = validate_pocrim(problem.witness)
            env0: dict[str, int] = {}
            witness_ok = (
                bool(ok)
                and all(clause_holds(c, problem.witness, env0) for c in laws)
                and clause_counterexample(problem.statement.goal, problem.witness, env0) is not None
            )
            if not witness_ok:
                row.violations.append("stored witness fails re-validation")
    return row


def run_corpus(
    max_size: int = 5,
    hoop_size: int = 5,
    dyadic_exponent: int = 6,
    jobs: int = 1,
) -> tuple[list[ProblemRow], list[OracleReport]]:
    """Scan every problem for finite countermodels up to max_size and run the
    oracle batteries (finite hoops up to hoop_size plus the dyadic battery).

    Returns per-problem rows and the oracle reports; a theorem problem with a
    countermodel, a countersatisfiable problem without one, or any oracle
    violation marks the run as failed.  With jobs > 1 the per-problem scans
    run in worker processes; the row order (and hence the report) does not
    depend on scheduling.
    """
    pool = list(enumerate_algebras(SearchConfig(max_size=max_size)))
    hoops = list(enumerate_algebras(SearchConfig(max_size=hoop_size), ClassFilter(hoop=True)))
    if jobs > 1:
        from multiprocessing import Pool as _Pool

        with _Pool(jobs) as workers:
            rows = workers.starmap(_scan_problem, [(problem, pool) for problem in PROBLEMS])
    else:
        rows = [_scan_problem(problem, pool) for problem in PROBLEMS]

    reports = []
    lemma_report = OracleReport("halving_lemma")
    for alg in hoops:
        lemma_report.absorb(lemma2_oracle(alg))
    reports.append(lemma_report)
    reports.append(lemma2_dyadic(dyadic_exponent))
    reports.append(theorem2_oracle(hoops))
    reports.append(theorem2_dyadic(dyadic_exponent))
    reports.append(halving_inequality_oracles(hoops))
    reports.append(halving_inequality_dyadic(dyadic_exponent))
    reports.append(square_equivalence_oracle([a for a in pool if classify(a).bounded]))
    reports.append(lcl893_dyadic(dyadic_exponent))
    return rows, reports
