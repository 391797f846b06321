from collections import Counter

import numpy as np
import pytest

from rankgray import covers as cv
from rankgray import hamgen
from rankgray import permcore as pc
from rankgray.config import ENV_MAX_N, Limits


def is_hamiltonian_a_n(seq):
    """Slow oracle: tuple walk, set of vertices, parity of each."""
    verts = list(pc.walk(seq.start, seq.gens.tolist()))
    body = verts[:-1]
    return (
        verts[-1] == verts[0]
        and len(body) == pc.even_count(seq.n)
        and len(set(body)) == len(body)
        and all(pc.is_even(p) for p in body)
    )


def test_pattern_language():
    pat = hamgen.Pattern.parse("6!7!7!7***")
    assert len(pat.cells) == 7
    assert str(pat) == "6!7!7!7***"
    assert pat.matches((6, 1, 2, 3, 4, 5, 7))
    assert not pat.matches((6, 7, 1, 2, 3, 4, 5))
    assert not pat.matches((5, 1, 2, 3, 4, 6, 7))
    assert not pat.matches((6, 1, 2))


def test_rule_rows_are_disjoint():
    table = hamgen.A7_RULES
    for p in pc.even_perms(7):
        rows = table.matching_rows(p)
        assert rows[-1] == len(table.rows) - 1
        assert len(rows) <= 2


@pytest.mark.parametrize(
    "keep,lengths",
    [
        ([0], {21: 120}),
        ([0, 1], {105: 24}),
        ([0, 1, 2, 3], None),
        ([0, 1, 2, 3, 4, 5], {2520: 1}),
    ],
)
def test_rule_rows_link_cumulatively(keep, lengths):
    table = hamgen.A7_RULES.restricted(keep)
    cover = cv.cover_from_rule(7, table.generator_for)
    assert cover.is_valid()
    counts = cv.count_cycles(cover)
    if lengths is None:
        assert sum(counts.values()) == 6
    else:
        assert counts == Counter(lengths)


def test_all_tau7_cover():
    cover = cv.cover_from_rule(7, hamgen.A7_RULES.restricted([]).generator_for)
    assert cv.count_cycles(cover) == Counter({7: 360})


def test_base_case(a7):
    assert a7.n == 7 and a7.start == pc.identity(7)
    assert len(a7) == 2520
    assert is_hamiltonian_a_n(a7)
    assert 5 in a7.gens.tolist()
    assert set(a7.gens.tolist()) == {3, 5, 7}


def test_penultimate_lemma(a7):
    table = hamgen.penultimate_table(a7)
    assert sorted(table) == list(range(1, 8))
    verts = list(pc.walk(a7.start, a7.gens.tolist()))
    for i, t in table.items():
        assert verts[t][-1] == i
        assert a7.gens[t] == 7


def test_penultimate_needs_tau_m_edges():
    # the seven rotations end in every element, each followed by tau_7
    assert sorted(hamgen.penultimate_table(cv.GenSequence(7, pc.identity(7), [7] * 7))) == list(range(1, 8))
    seq = cv.GenSequence(7, pc.identity(7), [3] * 3)
    with pytest.raises(ValueError):
        hamgen.penultimate_table(seq)


def test_rotate_cut(a7):
    p = hamgen.first_occurrence(a7, 5)
    cut = hamgen.rotate_cut(a7, 5)
    assert len(cut) == len(a7) - 1
    assert cut[: len(a7) - p - 1].tolist() == a7.gens[p + 1 :].tolist()


def test_splice_plan_shape():
    plan = hamgen.splice_plan(9)
    assert len(plan[0][0]) == 6 and plan[0][1] is None
    assert all(len(e) == 3 and shared in e for e, shared in plan[1:])
    assert len(plan) == (81 - 9 - 4) // 2


def test_inductive_step_n9(a9):
    assert len(a9) == 181440
    assert a9.start == pc.identity(9)
    assert is_hamiltonian_a_n(a9)
    assert 7 in a9.gens.tolist()


def test_inductive_step_rejects_bad_input(a7):
    with pytest.raises(ValueError):
        hamgen.inductive_step(cv.GenSequence(7, pc.identity(7), a7.gens[:-7]))
    shifted = cv.GenSequence(7, pc.right_tau(pc.identity(7), 3), a7.gens)
    with pytest.raises(ValueError):
        hamgen.inductive_step(shifted)


def test_generate_matches_steps(a7, a9):
    assert hamgen.generate(7) == a7
    assert hamgen.generate(9) == a9


@pytest.mark.parametrize("n", [4, 8, 3, 5, 1])
def test_generate_rejects_unsupported(n):
    with pytest.raises(hamgen.UnsupportedSize):
        hamgen.generate(n)


def test_n5_message_cites_rankin():
    with pytest.raises(hamgen.UnsupportedSize, match="Rankin"):
        hamgen.check_generate_size(5)


def test_ceiling_and_env_override(monkeypatch):
    with pytest.raises(hamgen.UnsupportedSize):
        hamgen.check_generate_size(13)
    monkeypatch.setenv(ENV_MAX_N, "13")
    hamgen.check_generate_size(13, Limits.from_env())
    monkeypatch.setenv(ENV_MAX_N, "99")
    with pytest.raises(ValueError):
        Limits.from_env()


def test_cover_of_generated_cycle_roundtrips(a7):
    cover = cv.sequences_to_cover([a7], 7)
    assert cover.is_valid()
    assert cv.walk_cover(cover) == a7
    # the cover agrees with the rule table at every vertex
    rule = cv.cover_from_rule(7, hamgen.A7_RULES.generator_for)
    assert np.array_equal(cover.succ, rule.succ)
