import pytest

from exphodge.laurent import parse_laurent

# the running examples: (input text, normalized volume)
SUITE = [
    ("x", 1),
    ("x + x^-1", 2),
    ("x^2 + x^-1", 3),
    ("x + y", 1),
    ("x + y + x^-1*y^-1", 3),
]

CURVE_SUITE = ["x", "x + x^-1", "x^2 + x^-1"]


@pytest.fixture(params=[text for text, _ in SUITE], ids=lambda t: t.replace(" ", ""))
def suite_poly(request):
    return parse_laurent(request.param)


@pytest.fixture(params=CURVE_SUITE, ids=lambda t: t.replace(" ", ""))
def curve_poly(request):
    return parse_laurent(request.param)
