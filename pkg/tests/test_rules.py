"""Rule-DSL parsing and evaluation semantics."""

import pytest

from exporamsey import DomainError, RuleEvaluationError, RuleSyntaxError, parse_rule


def color(src, n, k=2):
    return parse_rule(src, k).color(n)


def test_parity_rule():
    rule = parse_rule("n % 2", 2)
    assert [rule.color(n) for n in range(2, 8)] == [0, 1, 0, 1, 0, 1]


def test_nested_ilog2():
    rule = parse_rule("ilog2(ilog2(n)) % 2", 2)
    # floor(log2 floor(log2 n)): n=4 -> ilog2(2)=1 -> 1
    assert rule.color(4) == 1
    assert rule.color(16) == 0  # ilog2(16)=4, ilog2(4)=2
    assert rule.color(2) == 0  # ilog2(2)=1, ilog2(1)=0


def test_syntax_error_position():
    with pytest.raises(RuleSyntaxError) as err:
        parse_rule("n %", 2)
    assert err.value.position == 3
    with pytest.raises(RuleSyntaxError) as err:
        parse_rule("n + $", 2)
    assert err.value.position == 4
    with pytest.raises(RuleSyntaxError) as err:
        parse_rule("foo(n)", 2)
    assert err.value.position == 0
    with pytest.raises(RuleSyntaxError):
        parse_rule("ipow(n 2)", 2)
    with pytest.raises(RuleSyntaxError):
        parse_rule("n n", 2)


def test_operators_and_precedence():
    assert color("2 + 3 * 4", 0, 100) == 14
    assert color("(2 + 3) * 4", 0, 100) == 20
    assert color("10 - 3 - 4", 0, 100) == 3
    assert color("7 / 2", 0, 100) == 3
    assert color("-7 / 2", 0, 100) == 97  # trunc(-3.5) = -3, then mod 100
    assert color("7 % 3", 0, 100) == 1
    assert color("-7 % 3", 0, 100) == 99  # C-style remainder -1, then mod 100
    assert color("-n % 2", 3, 100) == 99  # unary minus binds tighter than %


def test_comparisons_and_booleans():
    assert color("n < 5", 3, 2) == 1
    assert color("n < 5", 7, 2) == 0
    assert color("n >= 2 and n <= 4", 3, 2) == 1
    assert color("n == 2 or n == 4", 3, 2) == 0
    assert color("not n == 2", 3, 2) == 1
    assert color("not (n < 5) and n % 2 == 1", 7, 2) == 1


def test_conditional_and_ipow():
    assert color("if(n % 2 == 0, n / 2, 3 * n + 1)", 6, 1000) == 3
    assert color("if(n % 2 == 0, n / 2, 3 * n + 1)", 7, 1000) == 22
    assert color("ipow(2, 10)", 0, 5000) == 1024
    assert color("ipow(n, 2) == n * n", 9, 2) == 1


def test_conditional_is_lazy():
    # the untaken branch would divide by zero
    assert color("if(n > 0, 1, 1 / 0)", 5, 2) == 1


def test_evaluation_errors_name_input():
    rule = parse_rule("1 / (n - 4)", 2)
    with pytest.raises(RuleEvaluationError, match="n=4"):
        rule.color(4)
    rule2 = parse_rule("ilog2(n - 10)", 2)
    with pytest.raises(RuleEvaluationError, match="n=7"):
        rule2.color(7)
    rule3 = parse_rule("ipow(n, n)", 2)
    with pytest.raises(RuleEvaluationError, match="too large"):
        rule3.color(10 ** 7)


def test_top_level_modulus():
    assert color("n", 7, 3) == 1
    assert color("-1", 0, 5) == 4  # mathematical mod keeps [0, k)
    rule = parse_rule("n * n + 3", 4)
    for n in range(2, 30):
        assert rule.color(n) == (n * n + 3) % 4


def test_rule_determinism():
    a = parse_rule("ilog2(n) % 3", 3)
    b = parse_rule("ilog2(n) % 3", 3)
    for n in range(2, 200):
        assert a.color(n) == b.color(n)


def test_k_validation():
    with pytest.raises(DomainError):
        parse_rule("n", 0)
    parse_rule("0", 1)  # single cell is allowed for counting
