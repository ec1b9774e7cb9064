import pytest

from ramanujan_products.selftest import (
    identity_corpus,
    mutated_triples,
    random_perturbed_triples,
    run_selftest,
)
from ramanujan_products.identities import PAPER_TRIPLES, RAMANUJAN_TRIPLE


@pytest.mark.parametrize("name,check", identity_corpus(), ids=[n for n, _ in identity_corpus()])
def test_corpus_entry(name, check):
    result = check()
    assert getattr(result, "passed", result) is True


def test_mutations_cover_every_coefficient():
    mutants = list(mutated_triples(RAMANUJAN_TRIPLE))
    assert len(mutants) == 12
    assert len(set(mutants)) == 12
    assert RAMANUJAN_TRIPLE not in mutants


def test_perturbed_triples_differ_from_sources():
    for triple in random_perturbed_triples(50, seed=3):
        assert triple not in PAPER_TRIPLES


def test_run_selftest_reports_crash_as_failure(monkeypatch):
    import ramanujan_products.selftest as st

    def boom():
        raise RuntimeError("boom")

    monkeypatch.setattr(st, "identity_corpus", lambda: [("crashes", boom)])
    (outcome,) = run_selftest()
    assert not outcome.passed and "RuntimeError" in outcome.detail
