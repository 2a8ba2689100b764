"""Finite algebras of the (0, +, ->; >=) signature and the dyadic model.

A finite algebra is a pair of n x n tables over the carrier {0..n-1} with 0 a
distinguished element.  The order is never stored: x >= y holds exactly when
imp[x][y] == 0, and the validator checks all the monoid, order and residuation
laws against that derived relation.  The conventions are dual to the usual
ones: 0 is truth and the least element, an annihilator 1 (when present) is
falsehood and the greatest.

The dyadic rationals in [0,1] under capped addition and truncated difference
are the concrete standard model; they are kept exact (numerator and exponent),
never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass


class TableError(ValueError):
    """Malformed table data (wrong dimensions or out-of-range entries)."""


@dataclass(frozen=True)
class FiniteAlgebra:
    size: int
    add: tuple[tuple[int, ...], ...]
    imp: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise TableError("carrier must be non-empty")
        for name, table in (("add", self.add), ("imp", self.imp)):
            if len(table) != n or any(len(row) != n for row in table):
                raise TableError(f"{name} table is not {n}x{n}")
            if any(not (0 <= v < n) for row in table for v in row):
                raise TableError(f"{name} table has entries outside 0..{n - 1}")

    def plus(self, x: int, y: int) -> int:
        return self.add[x][y]

    def arrow(self, x: int, y: int) -> int:
        return self.imp[x][y]

    def geq(self, x: int, y: int) -> bool:
        return self.imp[x][y] == 0

    @property
    def zero(self) -> int:
        return 0

    def annihilator(self) -> int | None:
        """The unique element absorbed by everything, if there is one."""
        for e in range(self.size):
            if all(self.add[x][e] == e for x in range(self.size)):
                return e
        return None

    @property
    def one(self) -> int | None:
        return self.annihilator()

    def halve(self, x: int) -> int | None:
        """The unique y with y = y -> x, or None if there are 0 or >= 2."""
        sols = self.halving_solutions(x)
        return sols[0] if len(sols) == 1 else None

    def halving_solutions(self, x: int) -> list[int]:
        return [y for y in range(self.size) if self.imp[y][x] == y]


def make_algebra(add, imp) -> FiniteAlgebra:
    add_t = tuple(tuple(row) for row in add)
    imp_t = tuple(tuple(row) for row in imp)
    return FiniteAlgebra(len(add_t), add_t, imp_t)


# ---------------------------------------------------------------------------
# Law validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class LawViolation:
    law: str
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"law [{self.law}] fails at {self.witness}"


@dataclass(frozen=True, slots=True)
class ValidationResult:
    ok: bool
    violation: LawViolation | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_pocrim(alg: FiniteAlgebra) -> ValidationResult:
    """Check the monoid laws, the laws of the derived order, and residuation.

    Returns the first violated law (in the fixed order m1 m2 m3 o1 o2 o3 o4 b
    r) together with a witness tuple.
    """
    n = alg.size
    add = alg.add
    imp = alg.imp

    def bad(law, *witness):
        return ValidationResult(False, LawViolation(law, witness))

    rng = range(n)
    for x in rng:
        for y in rng:
            for z in rng:
                if add[add[x][y]][z] != add[x][add[y][z]]:
                    return bad("m1", x, y, z)
    for x in rng:
        for y in rng:
            if add[x][y] != add[y][x]:
                return bad("m2", x, y)
    for x in rng:
        if add[x][0] != x:
            return bad("m3", x)

    def ge(x, y):
        return imp[x][y] == 0

    for x in rng:
        if not ge(x, x):
            return bad("o1", x)
    for x in rng:
        for y in rng:
            for z in rng:
                if ge(x, y) and ge(y, z) and not ge(x, z):
                    return bad("o2", x, y, z)
    for x in rng:
        for y in rng:
            if ge(x, y) and ge(y, x) and x != y:
                return bad("o3", x, y)
    for x in rng:
        for y in rng:
            if ge(x, y):
                for z in rng:
                    if not ge(add[x][z], add[y][z]):
                        return bad("o4", x, y, z)
    for x in rng:
        if not ge(x, 0):
            return bad("b", x)
    for x in rng:
        for y in rng:
            for z in rng:
                if ge(add[x][y], z) != ge(x, imp[y][z]):
                    return bad("r", x, y, z)
    return ValidationResult(True)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ClassFlags:
    """Exhaustively computed class membership of a validated pocrim.

    `wajsberg` records the bare strong-disjunction identity
    (x->y)->y = (y->x)->x; a Wajsberg hoop is an algebra with both `hoop`
    and `wajsberg` set.  `boolean` is shorthand for bounded, involutive and
    idempotent at once.
    """

    bounded: bool
    annihilator: int | None
    involutive: bool
    idempotent: bool
    hoop: bool
    wajsberg: bool
    coop: bool

    @property
    def boolean(self) -> bool:
        return self.bounded and self.involutive and self.idempotent


def classify(alg: FiniteAlgebra) -> ClassFlags:
    n = alg.size
    add = alg.add
    imp = alg.imp
    rng = range(n)

    one = alg.annihilator()
    bounded = one is not None
    involutive = bounded and all(imp[imp[x][one]][one] == x for x in rng)
    idempotent = all(add[x][x] == x for x in rng)
    hoop = all(add[x][imp[x][y]] == add[y][imp[y][x]] for x in rng for y in rng)
    wajsberg = all(imp[imp[x][y]][y] == imp[imp[y][x]][x] for x in rng for y in rng)
    coop = hoop and all(len(alg.halving_solutions(x)) == 1 for x in rng)
    return ClassFlags(bounded, one, involutive, idempotent, hoop, wajsberg, coop)


def cwc_witness(alg: FiniteAlgebra) -> tuple[int, int] | None:
    """First pair (x, y) violating x + (x->y) = y + (y->x), if any."""
    add, imp = alg.add, alg.imp
    for x in range(alg.size):
        for y in range(alg.size):
            if add[x][imp[x][y]] != add[y][imp[y][x]]:
                return (x, y)
    return None


def natural_order_check(alg: FiniteAlgebra) -> bool:
    """Whether x >= y always has a witness z with x = y + z.

    For validated pocrims this agrees with the weak-conjunction commutativity
    identity (the hoop flag); the two are computed independently so tests can
    cross-check them.
    """
    n = alg.size
    add = alg.add
    for x in range(n):
        for y in range(n):
            if alg.geq(x, y) and all(add[y][z] != x for z in range(n)):
                return False
    return True


def halve(alg: FiniteAlgebra, x: int) -> int | None:
    """Unique halving of x, if the solution count is exactly one."""
    return alg.halve(x)


# ---------------------------------------------------------------------------
# Dyadic rationals in [0, 1]
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Dyadic:
    """numerator / 2**exponent, normalized so the numerator is odd or zero."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        num, exp = self.numerator, self.exponent
        if num < 0 or exp < 0:
            raise ValueError("dyadics are non-negative with non-negative exponent")
        while num and num % 2 == 0:
            num //= 2
            exp -= 1
        if exp < 0:
            raise ValueError(f"{self.numerator}/2^{self.exponent} is not in [0, 1]")
        if num == 0:
            exp = 0
        if num > (1 << exp):
            raise ValueError(f"{self.numerator}/2^{self.exponent} exceeds 1")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    def scaled(self, exponent: int) -> int:
        """Numerator after rescaling to the given (>=) exponent."""
        return self.numerator << (exponent - self.exponent)

    def __le__(self, other: "Dyadic") -> bool:
        e = max(self.exponent, other.exponent)
        return self.scaled(e) <= other.scaled(e)

    def __lt__(self, other: "Dyadic") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "Dyadic") -> bool:
        return other <= self

    def __gt__(self, other: "Dyadic") -> bool:
        return other < self

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"


DYADIC_ZERO = Dyadic(0)
DYADIC_ONE = Dyadic(1)


def parse_dyadic(text: str) -> Dyadic:
    """Read 'k' or 'k/m' with m a power of two."""
    text = text.strip()
    if "/" in text:
        num_text, den_text = text.split("/", 1)
        num, den = int(num_text), int(den_text)
        if den <= 0 or den & (den - 1):
            raise ValueError(f"denominator of {text!r} is not a power of two")
        return Dyadic(num, den.bit_length() - 1)
    return Dyadic(int(text))


def cap_add(a: Dyadic, b: Dyadic) -> Dyadic:
    """a + b capped at 1."""
    e = max(a.exponent, b.exponent)
    total = a.scaled(e) + b.scaled(e)
    return Dyadic(min(total, 1 << e), e)


def trunc_imp(a: Dyadic, b: Dyadic) -> Dyadic:
    """b - a truncated at 0: the residual of capped addition."""
    e = max(a.exponent, b.exponent)
    return Dyadic(max(b.scaled(e) - a.scaled(e), 0), e)


def half(a: Dyadic) -> Dyadic:
    return Dyadic(a.numerator, a.exponent + 1)


class DyadicModel:
    """The standard model: element-level operations matching FiniteAlgebra's
    interface, over exact dyadics instead of table indices."""

    zero = DYADIC_ZERO
    one = DYADIC_ONE

    @staticmethod
    def plus(x: Dyadic, y: Dyadic) -> Dyadic:
        return cap_add(x, y)

    @staticmethod
    def arrow(x: Dyadic, y: Dyadic) -> Dyadic:
        return trunc_imp(x, y)

    @staticmethod
    def geq(x: Dyadic, y: Dyadic) -> bool:
        return x >= y

    @staticmethod
    def halve(x: Dyadic) -> Dyadic:
        return half(x)


DYADIC = DyadicModel()


def dyadic_battery(max_exponent: int = 6) -> list[Dyadic]:
    """Every dyadic in [0,1] with exponent at most max_exponent, ascending.

    There are 2**max_exponent + 1 of them; the battery is exhaustive at its
    grain, not sampled.
    """
    return [Dyadic(k, max_exponent) for k in range((1 << max_exponent) + 1)]


def idempotent_coop_triviality_check(samples: list[Dyadic]) -> bool:
    """For each sample a: if a/2 is idempotent then a must be 0.

    In the dyadic model only 0 has an idempotent half, so this confirms at
    sample scale that a bounded idempotent coop collapses to the trivial one.
    """
    for a in samples:
        h = half(a)
        if cap_add(h, h) == h and a != DYADIC_ZERO:
            return False
    return True


# ---------------------------------------------------------------------------
# Algebra files: `size n`, the + table, then the -> table
# ---------------------------------------------------------------------------


def dump_algebra(alg: FiniteAlgebra) -> str:
    lines = [f"size {alg.size}"]
    lines += [" ".join(str(v) for v in row) for row in alg.add]
    lines.append("")
    lines += [" ".join(str(v) for v in row) for row in alg.imp]
    return "\n".join(lines) + "\n"


def load_algebra(text: str) -> FiniteAlgebra:
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if len(tokens) < 2 or tokens[0] != "size":
        raise TableError("algebra file must start with 'size n'")
    try:
        n = int(tokens[1])
        values = [int(t) for t in tokens[2:]]
    except ValueError as e:
        raise TableError(f"bad number in algebra file: {e}") from None
    if n < 1:
        raise TableError("size must be positive")
    if len(values) != 2 * n * n:
        raise TableError(f"expected {2 * n * n} table entries, got {len(values)}")
    rows = [values[i * n : (i + 1) * n] for i in range(2 * n)]
    return make_algebra(rows[:n], rows[n:])


# ---------------------------------------------------------------------------
# Stock algebras used throughout the tests and demos
# ---------------------------------------------------------------------------


def trivial_algebra() -> FiniteAlgebra:
    return make_algebra([[0]], [[0]])


def boolean_algebra() -> FiniteAlgebra:
    """The two-element pocrim: 0 true, 1 false, + is 'or', -> is truncation."""
    return make_algebra([[0, 1], [1, 1]], [[0, 1], [0, 0]])


def lukasiewicz_chain(n: int) -> FiniteAlgebra:
    """The n-element chain 0 < 1/(n-1) < ... < 1 with capped addition and
    truncated difference (indices i standing for i/(n-1))."""
    add = [[min(i + j, n - 1) for j in range(n)] for i in range(n)]
    imp = [[max(j - i, 0) for j in range(n)] for i in range(n)]
    return make_algebra(add, imp)


def four_chain_non_hoop() -> FiniteAlgebra:
    """The 4-chain 0 < p < q < 1 in which any two elements of {p, q, 1} add to
    1.  A bounded pocrim that is not a hoop."""
    add = [
        [0, 1, 2, 3],
        [1, 3, 3, 3],
        [2, 3, 3, 3],
        [3, 3, 3, 3],
    ]
    # Residuals of the chain order: imp[x][z] = least y with x + y >= z.
    imp = []
    for x in range(4):
        row = []
        for z in range(4):
            row.append(min(y for y in range(4) if add[x][y] >= z))
        imp.append(row)
    return make_algebra(add, imp)
