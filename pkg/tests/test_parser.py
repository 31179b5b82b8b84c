import pytest

from darboux.errors import CoprimalityViolation, ParseError
from darboux.field import GR
from darboux.parser import parse_polynomial as pp, parse_system, read_system_text


def test_sqrtx_expression():
    p = pp("(2*x+y)*(1+x)+2*x^2*y+y^3")
    assert p == pp("y^3 + 2*x^2*y + 2*x^2 + x*y + 2*x + y")


def test_zero_and_constants():
    assert pp("0").is_zero()
    p = pp("x^2/2 + i*y")
    assert p.coeff(2, 0) == GR(1) / 2
    assert p.coeff(0, 1) == GR(0, 1)
    assert pp(" ( x + 1 ) / 2 ") == pp("x/2 + 1/2")


@pytest.mark.parametrize(
    "text, offset",
    [
        ("x^(1/2)", 2),
        ("(x+1)/(x)", 6),
        ("x+*y", 2),
        ("2 x", 2),
        ("x^-1", 2),
        ("x + z", 4),
    ],
)
def test_errors_report_byte_offset(text, offset):
    with pytest.raises(ParseError) as err:
        pp(text)
    assert err.value.offset == offset
    assert f"byte {offset}" in str(err.value)


def test_empty_rejected():
    with pytest.raises(ParseError):
        pp("   ")


def test_system_file_and_degrees():
    spec = read_system_text(
        "# comment\n"
        "dx = -5 - 5*x + 15*y^2 - 6*x^2*y + 14*x*y^2 - 9*x*y^4\n"
        "dy = 5 + 2*x - 3*y - 2*x*y^2 + 6*y^3 - 3*y^5\n"
        "option.max_degree = 3\n"
    )
    sys = parse_system(spec)
    assert (sys.d, sys.m) == (5, 5)
    assert spec.options == {"max_degree": ["3"]}


def test_rational_exp_expansion_in_y():
    sys = parse_system(read_system_text("dx = y+y^2+x^2+4*y*x^2\ndy = -x-2*x^3+2*x*y^2\n"))
    assert (sys.d, sys.m) == (3, 2)
    assert sys.P.y_coeff(1) == pp("4*x^2 + 1")
    assert sys.Q.y_coeff(2) == pp("2*x")


def test_coprimality_violation_names_factor():
    with pytest.raises(CoprimalityViolation) as err:
        parse_system(read_system_text("dx = x*y\ndy = x*y^2\n"))
    assert err.value.factor.canonical() == pp("x*y")


@pytest.mark.parametrize("text", ["dx = x\n", "dx = x\ndy = y\nfoo = 1\n", "dx x\ndy = y\n"])
def test_bad_system_files(text):
    with pytest.raises(ParseError):
        read_system_text(text)
