import pytest

from polyheight import SystemDescriptor, build_context, parse_poly


@pytest.fixture(scope="session")
def parabola_ctx():
    return build_context([parse_poly("x1^2")])


@pytest.fixture(scope="session")
def twoform_ctx():
    """The surface (x, y, x^2 + y^2, x^2 - y^2): morphism condition holds."""
    return SystemDescriptor.from_exprs(["x1^2+x2^2", "x1^2-x2^2"]).context()


@pytest.fixture(scope="session")
def veronese_ctx():
    return SystemDescriptor.from_exprs(["x1^2", "x1*x2", "x2^2"]).context()


@pytest.fixture(scope="session")
def circle_ctx():
    """Single quadric in two variables: the morphism condition fails."""
    return SystemDescriptor.from_exprs(["x1^2+x2^2"]).context()
