import pytest

from quintic_periods import MultiPoly, fermat_hypersurface, paper_line_slice


@pytest.fixture(scope="session")
def fermat():
    return fermat_hypersurface(3, 5)


@pytest.fixture(scope="session")
def corrected_slice():
    return paper_line_slice(1, "corrected")


@pytest.fixture(scope="session")
def literal_slice():
    return paper_line_slice(1, "literal")


@pytest.fixture(scope="session")
def p_x1cubed_x2sq():
    return MultiPoly.monomial(5, 1.0, (0, 3, 2, 0, 0))
