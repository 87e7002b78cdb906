import random

import pytest

from ftk.errors import ParseError
from ftk.fields import field
from ftk.parse import parse_field_elem, parse_series, render_series
from ftk.series import LaurentSeries as L


F5 = field(5)
F4 = field(2, 2)


def test_basic_series():
    s = parse_series("t^-7 + 3*t^-2 + 1", F5)
    assert s.val == -7
    assert s.support() == {-7: F5.one(), -2: F5.from_int(3), 0: F5.one()}


def test_extension_coefficient():
    s = parse_series("g^2*t^-1", F4)
    g = F4.gen()
    assert s.support() == {-1: g * g}


def test_parenthesised_coefficient():
    F9 = field(3, 2)
    s = parse_series("(g^2+2g+1)*t^-1", F9)
    g = F9.gen()
    assert s.support() == {-1: g * g + g.scale(2) + F9.one()}


def test_syntax_error_offset():
    with pytest.raises(ParseError) as exc:
        parse_series("t^", F5)
    assert exc.value.offset == 2


def test_bad_trailing_input():
    with pytest.raises(ParseError):
        parse_series("7*q", F5)


def test_coefficient_not_in_ring():
    with pytest.raises(ParseError):
        parse_series("g*t", F5)  # prime field has no g


def test_minus_signs():
    s = parse_series("-t^2 + 2 - t^-1", F5)
    assert s.support() == {
        2: F5.from_int(4),
        0: F5.from_int(2),
        -1: F5.from_int(4),
    }


def test_repeated_exponent_accumulates():
    s = parse_series("t + t + t", F5)
    assert s.support() == {1: F5.from_int(3)}


def test_field_literal():
    F9 = field(3, 2)
    assert parse_field_elem("g^2+2g+1", F9) == F9.gen() ** 2 + F9.gen().scale(2) + F9.one()
    assert parse_field_elem("4", F5) == F5.from_int(4)
    with pytest.raises(ParseError):
        parse_field_elem("", F5)


def test_roundtrip_random():
    rng = random.Random(77)
    for _ in range(100):
        spec = [F5, F4, field(3)][rng.randrange(3)]
        d = {}
        for e in range(-6, 7):
            if rng.random() < 0.4:
                d[e] = spec.from_index(rng.randrange(1, spec.q))
        s = L.from_dict(spec, d, 20)
        back = parse_series(render_series(s), spec, prec=20)
        assert back == s


def test_zero_renders_and_parses():
    s = L.zero(F5, 8)
    assert render_series(s) == "0"
    assert parse_series("0", F5, prec=8).is_zero()


def test_series_json_record():
    from ftk.parse import series_to_json

    s = parse_series("t^-2 + 3", F5, prec=4)
    data = series_to_json(s)
    assert data == {
        "ring": {"p": 5, "e": 1},
        "val": -2,
        "prec": 4,
        "coeffs": ["1", "0", "3", "0"],
    }
    from ftk.fields import test_ring as local_test_ring

    R = local_test_ring(2, 1, 2)
    data2 = series_to_json(L.constant(R.one(), 2))
    assert data2["ring"] == {"p": 2, "e": 1, "m": 2}
