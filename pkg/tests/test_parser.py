import pytest

from quiver_hecke.errors import ParseError
from quiver_hecke.parser import element_from_text, tokenize
from quiver_hecke.qha import multiply, poly_element, render


def test_tokenize_positions():
    kinds = [(t.kind, t.text, t.pos) for t in tokenize("tau(1) * e(1,2)")]
    assert kinds[0] == ("name", "tau", 0)
    assert kinds[-1][0] == "end"


def test_spec_example(A2):
    beta = A2.datum.weight_of_word(("1", "2"))
    element = element_from_text("tau(1)*tau(1)*e(1,2)", beta, A2)
    assert render(element) == "(x1 + x2) e(1,2)"


def test_empty_text_is_the_unit(A2):
    beta = A2.datum.weight_of_word(("1", "2"))
    assert element_from_text("  ", beta, A2) == A2.unit(beta)


def test_sums_powers_and_rationals(A1):
    beta = A1.datum.weight_of_word(("1", "1"))
    element = element_from_text("1/2*x(1)^2 - (x(2) + 3)*e(1,1)", beta, A1)
    K = A1.domain
    expected = poly_element(A1, {(2, 0): K.convert(1) / 2, (0, 1): K.convert(-1),
                                 (0, 0): K.convert(-3)}, ("1", "1"))
    assert element == expected


def test_product_matches_multiply(A2):
    beta = A2.datum.weight_of_word(("1", "2"))
    parsed = element_from_text("x(2)*tau(1)", beta, A2)
    assert parsed == multiply(A2.x(1, beta), A2.tau(0, beta))


def test_extended_labels(A2_plus):
    beta = A2_plus.datum.weight_of_word(("1", "1+"))
    element = element_from_text("e(1,1+)", beta, A2_plus)
    assert element == A2_plus.e(("1", "1+"))


@pytest.mark.parametrize("text,position", [
    ("tau(3)", 4),
    ("x(1) * * x(2)", 7),
    ("e(1,3)", 4),
    ("e(2,1,)", 6),
    ("tau(1", 5),
    ("x(1) $", 5),
])
def test_parse_errors_report_positions(A2, text, position):
    beta = A2.datum.weight_of_word(("1", "2"))
    with pytest.raises(ParseError) as info:
        element_from_text(text, beta, A2)
    assert info.value.position == position


def test_wrong_weight_idempotent(A2):
    beta = A2.datum.weight_of_word(("1", "2"))
    with pytest.raises(ParseError):
        element_from_text("e(1,1)", beta, A2)
