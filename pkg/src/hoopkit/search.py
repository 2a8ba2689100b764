"""Finite pocrim enumeration and Horn countermodel search.

Enumeration generates + tables first (commutative monoids with identity 0 by
backtracking, with associativity both checked and propagated as cells fill),
then derives -> by residuation: x -> z is the least y with x + y >= z under a
candidate order.  For hoops the candidate order is forced (it must be the
divisibility order), so no order search is needed; for general pocrims all
monotone partial-order extensions of divisibility are explored.  Every
produced algebra is revalidated against the full law set independently of any
search shortcut, deduplicated up to isomorphisms fixing 0, and emitted in a
deterministic order.

Problems are universally quantified Horn clauses over the algebra signature,
written in the same concrete syntax as Mace4/Prover9 input files
(``x + y >= z <-> x >= y ==> z.``); identifiers starting with u..z are
variables, everything else is a constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator

from .algebra import ClassFlags, FiniteAlgebra, classify, make_algebra, validate_pocrim


class BudgetExceeded(RuntimeError):
    """The table-cell assignment budget ran out; any stream already produced
    is incomplete."""


class _Budget:
    __slots__ = ("limit", "spent")

    def __init__(self, limit: int | None):
        self.limit = limit
        self.spent = 0

    def spend(self):
        self.spent += 1
        if self.limit is not None and self.spent > self.limit:
            raise BudgetExceeded(f"node budget of {self.limit} cell assignments exhausted")


@dataclass(frozen=True, slots=True)
class SearchConfig:
    max_size: int
    require_bounded: bool = False
    iso_pruning: bool = True
    node_budget: int | None = None

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")


# ---------------------------------------------------------------------------
# Class filters
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ClassFilter:
    """Tri-state requirements on classification flags (None = don't care)."""

    bounded: bool | None = None
    hoop: bool | None = None
    wajsberg: bool | None = None
    involutive: bool | None = None
    idempotent: bool | None = None
    coop: bool | None = None
    boolean: bool | None = None
    min_size: int = 1

    def matches(self, flags: ClassFlags, size: int) -> bool:
        if size < self.min_size:
            return False
        for name in ("bounded", "hoop", "wajsberg", "involutive", "idempotent", "coop", "boolean"):
            want = getattr(self, name)
            if want is not None and getattr(flags, name) != want:
                return False
        return True

    @property
    def needs_hoop(self) -> bool:
        return self.hoop is True or self.coop is True

    @staticmethod
    def from_name(name: str) -> "ClassFilter":
        table = {
            "pocrim": ClassFilter(),
            "bounded": ClassFilter(bounded=True),
            "hoop": ClassFilter(hoop=True),
            "wajsberg": ClassFilter(hoop=True, wajsberg=True),
            "involutive": ClassFilter(bounded=True, involutive=True),
            "idempotent": ClassFilter(idempotent=True),
            "coop": ClassFilter(coop=True),
            "boolean": ClassFilter(boolean=True),
        }
        try:
            return table[name]
        except KeyError:
            raise ValueError(f"unknown class {name!r}; choose from {sorted(table)}") from None


# ---------------------------------------------------------------------------
# Commutative monoid backtracking
# ---------------------------------------------------------------------------


def _check_or_force(table, x, y, z, queue) -> bool:
    """Associativity instance (x+y)+z = x+(y+z) on a partial table: check it
    when both sides are determined, force the open side when one is."""
    xy = table[x][y]
    yz = table[y][z]
    if xy < 0 or yz < 0:
        return True
    left = table[xy][z]
    right = table[x][yz]
    if left < 0 and right < 0:
        return True
    if left >= 0 and right >= 0:
        return left == right
    if left >= 0:
        queue.append((x, yz, left))
    else:
        queue.append((xy, z, right))
    return True


def _commutative_monoids(n: int, budget: _Budget) -> Iterator[list[list[int]]]:
    """All commutative monoid tables on {0..n-1} with identity 0, generated in
    lexicographic cell order."""
    table = [[-1] * n for _ in range(n)]
    for i in range(n):
        table[0][i] = table[i][0] = i
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]

    def assign(i, j, v, trail) -> bool:
        queue = [(i, j, v)]
        while queue:
            a, b, w = queue.pop()
            cur = table[a][b]
            if cur >= 0:
                if cur != w:
                    return False
                continue
            budget.spend()
            table[a][b] = table[b][a] = w
            trail.append((a, b))
            for z in range(n):
                if not (
                    _check_or_force(table, a, b, z, queue)
                    and _check_or_force(table, b, a, z, queue)
                    and _check_or_force(table, z, a, b, queue)
                    and _check_or_force(table, z, b, a, queue)
                ):
                    return False
        return True

    def undo(trail):
        for a, b in trail:
            table[a][b] = table[b][a] = -1

    def next_cell(start):
        for k in range(start, len(cells)):
            i, j = cells[k]
            if table[i][j] < 0:
                return k
        return -1

    def search(start) -> Iterator[list[list[int]]]:
        k = next_cell(start)
        if k < 0:
            # Complete: a final full associativity sweep guards the cases the
            # incremental checks could not see (products as inner operands).
            for x in range(1, n):
                for y in range(1, n):
                    xy = table[x][y]
                    for z in range(1, n):
                        if table[xy][z] != table[x][table[y][z]]:
                            return
            yield [row[:] for row in table]
            return
        i, j = cells[k]
        for v in range(n):
            trail = []
            if assign(i, j, v, trail):
                yield from search(k + 1)
            undo(trail)

    yield from search(0)


def _min_under_relabelling(flat: tuple[int, ...], n: int) -> bool:
    """Whether a flat + table is lexicographically minimal among relabellings
    fixing 0 (used to discard isomorphic monoids early)."""
    if n <= 2:
        return True
    for perm in permutations(range(1, n)):
        pi = (0,) + perm
        permuted = [0] * (n * n)
        for i in range(n):
            pin = pi[i] * n
            base = i * n
            for j in range(n):
                permuted[pin + pi[j]] = pi[flat[base + j]]
        if tuple(permuted) < flat:
            return False
    return True


# ---------------------------------------------------------------------------
# Orders and residuals
# ---------------------------------------------------------------------------


def _divisibility(add, n: int) -> list[int] | None:
    """Bitmask rows of the divisibility relation (x >= y iff x = y + z for
    some z), or None when it is not antisymmetric."""
    rel = [0] * n
    for y in range(n):
        for z in range(n):
            rel[add[y][z]] |= 1 << y
    for x in range(n):
        for y in range(x + 1, n):
            if rel[x] >> y & 1 and rel[y] >> x & 1:
                return None
    return rel


def _close(rel: list[int], add, n: int) -> list[int] | None:
    """Transitive + monotone closure; None if antisymmetry breaks."""
    rel = rel[:]
    changed = True
    while changed:
        changed = False
        # Transitivity: x >= y >= z gives x >= z (union of rows).
        for x in range(n):
            acc = rel[x]
            bits = rel[x]
            y = 0
            while bits:
                if bits & 1:
                    acc |= rel[y]
                bits >>= 1
                y += 1
            if acc != rel[x]:
                rel[x] = acc
                changed = True
        # Monotonicity: x >= y gives x + z >= y + z.
        for x in range(n):
            for y in range(n):
                if rel[x] >> y & 1:
                    row_x = add[x]
                    row_y = add[y]
                    for z in range(n):
                        bit = 1 << row_y[z]
                        if not rel[row_x[z]] & bit:
                            rel[row_x[z]] |= bit
                            changed = True
    for x in range(n):
        for y in range(x + 1, n):
            if rel[x] >> y & 1 and rel[y] >> x & 1:
                return None
    return rel


def _order_extensions(base: list[int], add, n: int) -> Iterator[list[int]]:
    """All partial orders extending the divisibility order and closed under
    monotonicity.  Pairs are decided in a fixed scan order; closure runs after
    every inclusion, so each valid order is produced exactly once."""
    pairs = [(a, b) for a in range(1, n) for b in range(1, n) if a != b]

    def search(idx, rel, forbidden):
        while idx < len(pairs):
            a, b = pairs[idx]
            if rel[a] >> b & 1 or forbidden[a] >> b & 1:
                idx += 1
                continue
            # Branch 1: include a >= b.
            trial = rel[:]
            trial[a] |= 1 << b
            closed = _close(trial, add, n)
            if closed is not None and all((closed[x] & forbidden[x]) == 0 for x in range(n)):
                yield from search(idx + 1, closed, forbidden)
            # Branch 2: keep a, b incomparable in this direction.
            forbidden = forbidden[:]
            forbidden[a] |= 1 << b
            idx += 1
        yield rel

    initial = _close(base, add, n)
    if initial is None:
        return
    # 0 is strictly least: nothing above can collapse onto it.
    forbidden = [0] * n
    for x in range(1, n):
        forbidden[0] |= 1 << x
    if any(initial[x] & forbidden[x] for x in range(n)):
        return
    yield from search(0, initial, forbidden)


def _residual_table(add, rel: list[int], n: int) -> list[list[int]] | None:
    """imp[x][z] = least y with x + y >= z, or None when some least element
    is missing (the order is not residuated)."""
    imp = [[0] * n for _ in range(n)]
    for x in range(n):
        row = add[x]
        for z in range(n):
            zbit = 1 << z
            candidates = [y for y in range(n) if rel[row[y]] & zbit]
            if not candidates:
                return None
            least = None
            for m in candidates:
                mbit = 1 << m
                if all(rel[y] & mbit for y in candidates):
                    least = m
                    break
            if least is None:
                return None
            imp[x][z] = least
    return imp


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def _flat(alg: FiniteAlgebra) -> tuple[int, ...]:
    return tuple(v for row in alg.add for v in row) + tuple(v for row in alg.imp for v in row)


def canonical_form(alg: FiniteAlgebra) -> tuple[tuple[int, ...], FiniteAlgebra]:
    """Key and representative minimal under carrier bijections fixing 0.

    Two algebras get equal keys exactly when some relabelling fixing 0 turns
    one into the other (and any isomorphism must fix 0, it being the named
    constant of the signature; an annihilator, when present, is preserved
    automatically since it is unique)."""
    n = alg.size
    best_key = None
    best_tables = None
    for perm in permutations(range(1, n)):
        pi = (0,) + perm
        add = [[0] * n for _ in range(n)]
        imp = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                add[pi[i]][pi[j]] = pi[alg.add[i][j]]
                imp[pi[i]][pi[j]] = pi[alg.imp[i][j]]
        key = tuple(v for row in add for v in row) + tuple(v for row in imp for v in row)
        if best_key is None or key < best_key:
            best_key = key
            best_tables = (add, imp)
    return (n,) + best_key, make_algebra(*best_tables)


def canonical_key(alg: FiniteAlgebra) -> tuple[int, ...]:
    return canonical_form(alg)[0]


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_algebras(config: SearchConfig, class_filter: ClassFilter | None = None) -> Iterator[FiniteAlgebra]:
    """Yield every pocrim of size <= max_size matching the filter, exactly one
    per isomorphism class when iso_pruning is on, smallest first and in
    lexicographic + table order within a size.

    Every yielded algebra has passed validate_pocrim and been reclassified;
    neither depends on how the search found it.  Raises BudgetExceeded when
    the cell-assignment budget runs out (the stream so far is then partial).
    """
    class_filter = class_filter or ClassFilter()
    budget = _Budget(config.node_budget)
    for n in range(1, config.max_size + 1):
        found = []
        seen_keys = set()
        for add_rows in _commutative_monoids(n, budget):
            base = _divisibility(add_rows, n)
            if base is None:
                continue
            if (config.require_bounded or class_filter.bounded is True) and not _has_annihilator(add_rows, n):
                continue
            if config.iso_pruning and not _min_under_relabelling(
                tuple(v for row in add_rows for v in row), n
            ):
                continue
            if class_filter.needs_hoop:
                orders: Iterator[list[int]] = iter((_close(base, add_rows, n),))
            else:
                orders = _order_extensions(base, add_rows, n)
            for rel in orders:
                if rel is None:
                    continue
                imp_rows = _residual_table(add_rows, rel, n)
                if imp_rows is None:
                    continue
                budget.spend()
                alg = make_algebra(add_rows, imp_rows)
                if not validate_pocrim(alg):
                    continue
                flags = classify(alg)
                if not class_filter.matches(flags, n):
                    continue
                if config.iso_pruning:
                    key, representative = canonical_form(alg)
                    if key in seen_keys:
                        continue
                    seen_keys.add(key)
                    found.append(representative)
                else:
                    found.append(alg)
        found.sort(key=_flat)
        yield from found


def _has_annihilator(add, n: int) -> bool:
    return any(all(add[x][e] == e for x in range(n)) for e in range(n))


# ---------------------------------------------------------------------------
# Clause language
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Term:
    pass


@dataclass(frozen=True, slots=True)
class TZero(Term):
    pass


@dataclass(frozen=True, slots=True)
class TOne(Term):
    pass


@dataclass(frozen=True, slots=True)
class TVar(Term):
    name: str


@dataclass(frozen=True, slots=True)
class TConst(Term):
    name: str


@dataclass(frozen=True, slots=True)
class TPlus(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class TArrow(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class Atom:
    relation: str  # "eq" | "geq"
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class Clause:
    """body -> head, a bare head (empty body), or head <-> body[0]."""

    body: tuple[Atom, ...]
    head: Atom
    iff: bool = False

    def __post_init__(self):
        if self.iff and len(self.body) != 1:
            raise ValueError("a biconditional clause has exactly one body atom")


def _render_term(t: Term, nested: bool) -> str:
    if isinstance(t, TZero):
        return "0"
    if isinstance(t, TOne):
        return "1"
    if isinstance(t, (TVar, TConst)):
        return t.name
    if isinstance(t, TPlus):
        s = f"{_render_term(t.lhs, True)} + {_render_term(t.rhs, True)}"
    elif isinstance(t, TArrow):
        s = f"{_render_term(t.lhs, True)} ==> {_render_term(t.rhs, True)}"
    else:
        raise TypeError(f"not a term: {t!r}")
    return f"({s})" if nested else s


def render_atom(a: Atom) -> str:
    op = "=" if a.relation == "eq" else ">="
    return f"{_render_term(a.lhs, False)} {op} {_render_term(a.rhs, False)}"


def render_clause(c: Clause) -> str:
    if c.iff:
        return f"{render_atom(c.body[0])} <-> {render_atom(c.head)}"
    if not c.body:
        return render_atom(c.head)
    return " & ".join(render_atom(a) for a in c.body) + " -> " + render_atom(c.head)


_VARIABLE_INITIALS = set("uvwxyz")


def is_variable_name(name: str) -> bool:
    return name[0] in _VARIABLE_INITIALS


class ClauseParseError(ValueError):
    pass


def _tokenize_clause(text: str) -> list[str]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif text.startswith("==>", i):
            tokens.append("==>")
            i += 3
        elif text.startswith("<->", i):
            tokens.append("<->")
            i += 3
        elif text.startswith("->", i):
            tokens.append("->")
            i += 2
        elif text.startswith(">=", i):
            tokens.append(">=")
            i += 2
        elif c in "()&=+.":
            tokens.append(c)
            i += 1
        elif c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ClauseParseError(f"unexpected character {c!r} in clause {text!r}")
    return tokens


class _ClauseParser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None):
        tok = self.peek()
        if tok is None:
            raise ClauseParseError("unexpected end of clause")
        if expected is not None and tok != expected:
            raise ClauseParseError(f"expected {expected!r}, got {tok!r}")
        self.pos += 1
        return tok

    # term := plus_term ('==>' term)?     -- ==> loosest, right associative
    def term(self) -> Term:
        left = self.plus_term()
        if self.peek() == "==>":
            self.take()
            return TArrow(left, self.term())
        return left

    def plus_term(self) -> Term:
        left = self.atom_term()
        while self.peek() == "+":
            self.take()
            left = TPlus(left, self.atom_term())
        return left

    def atom_term(self) -> Term:
        tok = self.take()
        if tok == "(":
            t = self.term()
            self.take(")")
            return t
        if tok == "0":
            return TZero()
        if tok == "1":
            return TOne()
        if not (tok[0].isalpha() or tok[0] == "_"):
            raise ClauseParseError(f"expected a term, got {tok!r}")
        return TVar(tok) if is_variable_name(tok) else TConst(tok)

    def atom(self) -> Atom:
        lhs = self.term()
        op = self.take()
        if op == "=":
            return Atom("eq", lhs, self.term())
        if op == ">=":
            return Atom("geq", lhs, self.term())
        raise ClauseParseError(f"expected '=' or '>=', got {op!r}")

    def clause(self) -> Clause:
        first = self.atom()
        if self.peek() == "<->":
            self.take()
            return Clause((first,), self.atom(), iff=True)
        if self.peek() in ("&", "->"):
            body = [first]
            while self.peek() == "&":
                self.take()
                body.append(self.atom())
            self.take("->")
            return Clause(tuple(body), self.atom())
        return Clause((), first)


def parse_clause(text: str) -> Clause:
    text = text.strip()
    if text.endswith("."):
        text = text[:-1]
    parser = _ClauseParser(_tokenize_clause(text))
    clause = parser.clause()
    if parser.peek() is not None:
        raise ClauseParseError(f"trailing tokens in clause {text!r}")
    return clause


# ---------------------------------------------------------------------------
# Clause evaluation on finite algebras
# ---------------------------------------------------------------------------


def term_names(t: Term, variables: set[str], constants: set[str]):
    if isinstance(t, TVar):
        variables.add(t.name)
    elif isinstance(t, TConst):
        constants.add(t.name)
    elif isinstance(t, (TPlus, TArrow)):
        term_names(t.lhs, variables, constants)
        term_names(t.rhs, variables, constants)


def clause_names(c: Clause) -> tuple[list[str], list[str]]:
    variables: set[str] = set()
    constants: set[str] = set()
    for atom in c.body + (c.head,):
        term_names(atom.lhs, variables, constants)
        term_names(atom.rhs, variables, constants)
    return sorted(variables), sorted(constants)


def eval_term(t: Term, alg: FiniteAlgebra, env: dict[str, int]) -> int:
    if isinstance(t, TZero):
        return 0
    if isinstance(t, TOne):
        one = alg.annihilator()
        if one is None:
            raise ValueError("clause mentions 1 but the algebra has no annihilator")
        return one
    if isinstance(t, (TVar, TConst)):
        return env[t.name]
    if isinstance(t, TPlus):
        return alg.add[eval_term(t.lhs, alg, env)][eval_term(t.rhs, alg, env)]
    if isinstance(t, TArrow):
        return alg.imp[eval_term(t.lhs, alg, env)][eval_term(t.rhs, alg, env)]
    raise TypeError(f"not a term: {t!r}")


def atom_holds(a: Atom, alg: FiniteAlgebra, env: dict[str, int]) -> bool:
    lhs = eval_term(a.lhs, alg, env)
    rhs = eval_term(a.rhs, alg, env)
    return lhs == rhs if a.relation == "eq" else alg.geq(lhs, rhs)


def _clause_instance_holds(c: Clause, alg: FiniteAlgebra, env: dict[str, int]) -> bool:
    if c.iff:
        return atom_holds(c.body[0], alg, env) == atom_holds(c.head, alg, env)
    if all(atom_holds(a, alg, env) for a in c.body):
        return atom_holds(c.head, alg, env)
    return True


def clause_counterexample(c: Clause, alg: FiniteAlgebra, env: dict[str, int]) -> dict[str, int] | None:
    """A variable assignment falsifying the universally quantified clause, or
    None when the clause holds; env interprets the constants."""
    variables, _ = clause_names(c)
    for values in product(range(alg.size), repeat=len(variables)):
        full = dict(env)
        full.update(zip(variables, values))
        if not _clause_instance_holds(c, alg, full):
            return dict(zip(variables, values))
    return None


def clause_holds(c: Clause, alg: FiniteAlgebra, env: dict[str, int]) -> bool:
    return clause_counterexample(c, alg, env) is None


# ---------------------------------------------------------------------------
# Class law lists (shared by refutation and the exporters)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ClassSpec:
    """Which algebra class a problem quantifies over, together with the exact
    axiom list presentation used when exporting it."""

    bounded: bool = False
    hoop: bool = False
    wajsberg: bool = False
    involutive: bool = False
    idempotent: bool = False
    equational: bool = False  # use the equational hoop axiomatization
    ann_at_end: bool = False  # list the annihilator law last

    def to_filter(self) -> ClassFilter:
        return ClassFilter(
            bounded=True if self.bounded else None,
            hoop=True if (self.hoop or self.equational) else None,
            wajsberg=True if self.wajsberg else None,
            involutive=True if self.involutive else None,
            idempotent=True if self.idempotent else None,
        )


_x, _y, _z = TVar("x"), TVar("y"), TVar("z")

LAW_CLAUSES: dict[str, Clause] = {
    "m1": Clause((), Atom("eq", TPlus(TPlus(_x, _y), _z), TPlus(_x, TPlus(_y, _z)))),
    "m2": Clause((), Atom("eq", TPlus(_x, _y), TPlus(_y, _x))),
    "m3": Clause((), Atom("eq", TPlus(_x, TZero()), _x)),
    "o1": Clause((), Atom("geq", _x, _x)),
    "o2": Clause((Atom("geq", _x, _y), Atom("geq", _y, _z)), Atom("geq", _x, _z)),
    "o3": Clause((Atom("geq", _x, _y), Atom("geq", _y, _x)), Atom("eq", _x, _y)),
    "o4": Clause((Atom("geq", _x, _y),), Atom("geq", TPlus(_x, _z), TPlus(_y, _z))),
    "b": Clause((), Atom("geq", _x, TZero())),
    "ann": Clause((), Atom("eq", TPlus(_x, TOne()), TOne())),
    "r": Clause((Atom("geq", TPlus(_x, _y), _z),), Atom("geq", _x, TArrow(_y, _z)), iff=True),
    "cwc": Clause((), Atom("eq", TPlus(_x, TArrow(_x, _y)), TPlus(_y, TArrow(_y, _x)))),
    "csd": Clause((), Atom("eq", TArrow(TArrow(_x, _y), _y), TArrow(TArrow(_y, _x), _x))),
    "inv": Clause((), Atom("eq", TArrow(TArrow(_x, TOne()), TOne()), _x)),
    "idem": Clause((), Atom("eq", TPlus(_x, _x), _x)),
    # The equational hoop presentation.
    "refl_eq": Clause((), Atom("eq", TArrow(_x, _x), TZero())),
    "exch": Clause((), Atom("eq", TArrow(TPlus(_x, _y), _z), TArrow(_y, TArrow(_x, _z)))),
}


def law_clauses(spec: ClassSpec) -> list[tuple[str, Clause]]:
    """The ordered, tagged axiom list for a class, in the presentation the
    exporters print."""
    if spec.equational:
        tags = ["m1", "m2", "m3", "refl_eq", "exch", "cwc"]
        if spec.bounded:
            tags.append("ann")
    else:
        tags = ["m1", "m2", "m3", "o1", "o2", "o3", "o4", "b"]
        if spec.bounded and not spec.ann_at_end:
            tags.append("ann")
        tags.append("r")
        if spec.hoop:
            tags.append("cwc")
        if spec.wajsberg:
            tags.append("csd")
        if spec.involutive:
            tags.append("inv")
        if spec.idempotent:
            tags.append("idem")
        if spec.bounded and spec.ann_at_end:
            tags.append("ann")
    return [(tag, LAW_CLAUSES[tag]) for tag in tags]


# ---------------------------------------------------------------------------
# Horn problems and refutation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class HornProblem:
    """Assumptions and a goal over the algebra signature, quantifying over a
    class of algebras.  Constants are interpreted existentially by the search;
    variables are universal within each clause."""

    constants: tuple[str, ...]
    assumptions: tuple[Clause, ...]
    goal: Clause
    class_spec: ClassSpec = ClassSpec()


@dataclass(frozen=True, slots=True)
class Refutation:
    algebra: FiniteAlgebra
    constants: dict[str, int]
    goal_witness: dict[str, int]


def _all_clauses(problem: HornProblem) -> list[Clause]:
    return [clause for _, clause in law_clauses(problem.class_spec)] + list(problem.assumptions)


def refute(problem: HornProblem, config: SearchConfig) -> Refutation | None:
    """Search for a finite model of the class and the assumptions in which the
    goal fails.  Every candidate is re-verified by evaluating the complete
    clause list directly (class laws included) before it is returned."""
    class_filter = problem.class_spec.to_filter()
    for alg in enumerate_algebras(config, class_filter):
        constants = problem.constants
        for values in product(range(alg.size), repeat=len(constants)):
            env = dict(zip(constants, values))
            if not all(clause_holds(c, alg, env) for c in problem.assumptions):
                continue
            witness = clause_counterexample(problem.goal, alg, env)
            if witness is None:
                continue
            if all(clause_holds(c, alg, env) for c in _all_clauses(problem)):
                return Refutation(alg, env, witness)
    return None


def refute_clauses(
    assumptions: list[Clause], goal: Clause, config: SearchConfig
) -> Refutation | None:
    """Refutation for a raw clause list (e.g. a parsed problem file): the
    assumptions must include whatever laws the problem needs, and every
    enumerated pocrim is screened against them directly."""
    constants: set[str] = set()
    for clause in assumptions + [goal]:
        _, consts = clause_names(clause)
        constants.update(consts)
    names = tuple(sorted(constants))
    # Recognize law clauses to narrow the enumeration class; correctness does
    # not depend on this, the full clause check below decides.
    present = {tag for tag, law in LAW_CLAUSES.items() if law in assumptions}
    class_filter = ClassFilter(
        bounded=True if "ann" in present else None,
        hoop=True if "cwc" in present else None,
        wajsberg=True if "csd" in present else None,
        involutive=True if "inv" in present else None,
        idempotent=True if "idem" in present else None,
    )
    for alg in enumerate_algebras(config, class_filter):
        for values in product(range(alg.size), repeat=len(names)):
            env = dict(zip(names, values))
            if not all(clause_holds(c, alg, env) for c in assumptions):
                continue
            witness = clause_counterexample(goal, alg, env)
            if witness is not None:
                return Refutation(alg, env, witness)
    return None


# ---------------------------------------------------------------------------
# Problem files (the Mace4-style concrete syntax)
# ---------------------------------------------------------------------------

OP_DECLARATION = 'op(500, infix, "==>").'


def parse_problem_file(text: str) -> tuple[list[Clause], list[Clause]]:
    """Read a problem file: an optional fixed op declaration, then
    formulas(assumptions)/formulas(goals) blocks of clauses."""
    assumptions: list[Clause] = []
    goals: list[Clause] = []
    section: list[Clause] | None = None
    for raw in text.splitlines():
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("op("):
            if line != OP_DECLARATION:
                raise ClauseParseError(f"operators are fixed; only {OP_DECLARATION!r} is accepted")
            continue
        if line == "formulas(assumptions).":
            section = assumptions
            continue
        if line == "formulas(goals).":
            section = goals
            continue
        if line == "end_of_list.":
            section = None
            continue
        if section is None:
            raise ClauseParseError(f"clause outside of a formulas block: {line!r}")
        section.append(parse_clause(line))
    return assumptions, goals
