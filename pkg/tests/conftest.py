import pytest

from pseudoharmonic.moldb import builtin_table, get_molecule

# Published energies [eV], rows (n, l), columns N2, CO, NO, CH.
PUBLISHED_ENERGIES = {
    (0, 0): (0.1091559, 0.1019306, 0.0824883, 0.1686344),
    (1, 0): (0.3273430, 0.3056722, 0.2473592, 0.5050072),
    (1, 1): (0.3278417, 0.3061508, 0.2477817, 0.5085903),
    (2, 0): (0.5455302, 0.5094137, 0.4122301, 0.841380),
    (2, 1): (0.5460288, 0.5098923, 0.4126526, 0.8449631),
    (2, 2): (0.5470260, 0.5108495, 0.4134977, 0.8521246),
    (4, 0): (0.9819045, 0.9168969, 0.7419718, 1.5141255),
    (4, 1): (0.9824031, 0.9173755, 0.7423944, 1.5177087),
    (4, 2): (0.9834003, 0.9183327, 0.7432395, 1.5248701),
    (4, 3): (0.9848961, 0.9197684, 0.7445070, 1.5356002),
    (4, 4): (0.9868903, 0.9216825, 0.7461969, 1.5498843),
    (5, 0): (1.2000916, 1.1206384, 0.9068427, 1.8504983),
    (5, 1): (1.2005902, 1.1211170, 0.9072653, 1.8540815),
    (5, 2): (1.2015875, 1.1220742, 0.9081104, 1.8612429),
    (5, 3): (1.2030832, 1.1235099, 0.9093779, 1.8719729),
    (5, 4): (1.2050774, 1.1254240, 0.9110678, 1.8862571),
    (5, 5): (1.2075699, 1.1278165, 0.9131799, 1.9040761),
}
PUBLISHED_MOLECULES = ("N2", "CO", "NO", "CH")


def published_cells():
    """Yield (molecule name, n, l, published energy) for every table cell."""
    for (n, l), row in PUBLISHED_ENERGIES.items():
        for name, value in zip(PUBLISHED_MOLECULES, row):
            yield name, n, l, value


@pytest.fixture(scope="session")
def molecules():
    return builtin_table()


@pytest.fixture(scope="session")
def n2():
    return get_molecule("N2")


@pytest.fixture(scope="session")
def co():
    return get_molecule("CO")


@pytest.fixture(scope="session")
def ch():
    return get_molecule("CH")


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
