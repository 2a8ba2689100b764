import pytest

from hoopkit.formula import (
    Conj,
    Falsity,
    Half,
    Imp,
    MetaVar,
    ParseError,
    Truth,
    Var,
    from_record,
    match_schema,
    negate,
    parse,
    parse_pattern,
    pretty,
    substitute,
    to_record,
    variables,
)

A, B, C, D, F = (Var(n) for n in "ABCDF")


def test_redundant_brackets_example():
    # Every bracket here is redundant.
    assert parse("A + B/2 -o C -o D + F") == parse("(A + (B/2)) -o (C -o (D + F))")
    assert parse("A + B/2 -o C -o D + F") == Imp(Conj(A, Half(B)), Imp(C, Conj(D, F)))


def test_required_brackets_example():
    # Every bracket here is required: removing any pair changes the parse.
    text = "(((A -o B) -o C) + D)/2"
    expected = Half(Conj(Imp(Imp(A, B), C), D))
    assert parse(text) == expected
    without_inner = "((A -o B -o C) + D)/2"
    without_middle = "((A -o B) -o C + D)/2"
    without_outer = "((A -o B) -o C) + D/2"
    for variant in (without_inner, without_middle, without_outer):
        assert parse(variant) != expected


def test_constants():
    assert parse("0") == Truth()
    assert parse("1") == Falsity()


def test_precedence_laws():
    assert parse("A + B/2") == Conj(A, Half(B))
    assert parse("A -o B -o C") == Imp(A, Imp(B, C))
    assert parse("A + B + C") == Conj(Conj(A, B), C)


def test_halving_iterates():
    assert parse("A/2/2") == Half(Half(A))
    assert pretty(Half(Half(A))) == "A/2/2"


def test_parse_errors():
    for bad in ["", "  ", "A +", "A -o", "(A", "A)", "-o A", "A ? B", "A -x B", "2", "A/3"]:
        with pytest.raises(ParseError):
            parse(bad)


def test_metavars_only_in_patterns():
    with pytest.raises(ParseError):
        parse("?A -o ?A")
    assert parse_pattern("?A -o ?A") == Imp(MetaVar("A"), MetaVar("A"))
    with pytest.raises(ParseError):
        parse_pattern("?a")  # lowercase after '?'


def test_pretty_examples():
    assert pretty(Imp(A, B)) == "A -o B"
    assert pretty(Half(Conj(A, B))) == "(A + B)/2"
    assert pretty(Conj(A, Half(B))) == "A + B/2"
    assert pretty(Imp(Imp(A, B), C)) == "(A -o B) -o C"
    assert pretty(Conj(A, Conj(B, C))) == "A + (B + C)"


def _pool():
    atoms = [A, B, Truth(), Falsity()]
    tier1 = list(atoms)
    for x in atoms:
        for y in atoms:
            tier1.append(Imp(x, y))
            tier1.append(Conj(x, y))
        tier1.append(Half(x))
    tier2 = list(tier1)
    for x in tier1[:12]:
        for y in tier1:
            tier2.append(Imp(x, y))
            tier2.append(Conj(x, y))
    for x in tier1:
        tier2.append(Half(x))
    return tier2


def test_round_trip_exhaustive():
    # parse(pretty(f)) == f over an enumerated pool of nested formulas.
    pool = _pool()
    assert len(pool) > 1000
    for f in pool:
        assert parse(pretty(f)) == f


def test_record_round_trip():
    for f in _pool()[:200]:
        assert from_record(to_record(f)) == f


def test_negate():
    assert negate(A) == Imp(A, Falsity())
    assert negate(Falsity()) == Imp(Falsity(), Falsity())
    assert negate(negate(A)) == Imp(Imp(A, Falsity()), Falsity())


def test_match_schema_direct():
    pattern = parse_pattern("?A -o ?A")
    target = parse("(P + Q) -o (P + Q)")
    assert match_schema(pattern, target) == {"A": parse("P + Q")}


def test_match_schema_mismatch():
    assert match_schema(parse_pattern("?A/2 -o ?A"), parse("P/2 -o Q")) is None


def test_match_schema_two_vars():
    pattern = parse_pattern("?A + (?A -o ?B)")
    target = parse("P + (P -o P + P)")
    sigma = match_schema(pattern, target)
    assert sigma == {"A": Var("P"), "B": parse("P + P")}
    # Substituting back is the oracle for any successful match.
    assert substitute(sigma, pattern) == target


def test_match_substitute_property():
    # For every (pattern, target) pair over small pools, a reported match
    # substitutes back to the target exactly.
    patterns = [
        parse_pattern(t)
        for t in ["?A", "?A -o ?B", "?A + ?A", "?A/2", "(?A -o ?B) -o ?B", "?A + (?A -o ?B)"]
    ]
    targets = _pool()[:120]
    hits = 0
    for p in patterns:
        for t in targets:
            sigma = match_schema(p, t)
            if sigma is not None:
                hits += 1
                assert substitute(sigma, p) == t
    assert hits > 50


def test_variables():
    assert variables(parse("A + B/2 -o C")) == {"A", "B", "C"}
    assert variables(parse("0 -o 1")) == set()
