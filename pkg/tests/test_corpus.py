import pytest

from cellposet.corpus import ENTRIES, run_corpus

UNSUPPORTED = {"edges-full-triangle": 4, "doubled-edge": 5, "loop-edge": 5}


@pytest.fixture(scope="module")
def results():
    return run_corpus()


def test_entry_names_are_unique():
    names = [entry.name for entry in ENTRIES]
    assert len(names) == len(set(names))
    assert len(ENTRIES) >= 20


def test_resolutions(results):
    for result in results:
        assert result.oracle_agrees, result.name
        assert result.exact, result.name
        assert result.minimal, result.name


def test_certificates(results):
    for result in results:
        if result.certificate is None:
            continue
        assert result.certificate.exit_code == UNSUPPORTED.get(result.name, 0), result.name


def test_scarf_entries(results):
    scarf = [r for r in results if r.name.startswith("scarf-")]
    assert [r.p for r in scarf] == [2, 3]
    for result in scarf:
        assert result.betti.totals() == [4, 6, 4, 1]
        assert result.certificate.succeeded
