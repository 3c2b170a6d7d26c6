import pytest

from modalagg.aggregation import paradox_witness
from modalagg.covering import JudgmentPair, is_consistent
from modalagg.errors import ParameterError, ResourceError
from modalagg.kripke import IndexedProposition, indexed_truth
from modalagg.oracle import (
    brute_consistent,
    brute_lt0,
    brute_min_inconsistent,
    check_axioms,
    dictator_rule,
    enumerate_rational_sets,
    brute_min_inconsistent_literals,
    lt0_context,
    majority_rule,
    seq_majority_rule,
    truth_table,
)
from modalagg.residue import FRAME1, FRAME2, FrameSpec, ResidueSet, regime_specs


def jp(r, plus, minus):
    return JudgmentPair.of(r, plus, minus)


def test_truth_table_matches_indexed_truth(spec6):
    T = truth_table(spec6)
    for v in range(64):
        V = ResidueSet.from_bits(6, v)
        assert T[v].tolist() == [indexed_truth(spec6, V, IndexedProposition(w)) for w in range(6)]


def test_brute_consistent_examples(spec10):
    assert brute_consistent(jp(10, [7, 3], [0]), spec10)
    assert not brute_consistent(jp(10, [9, 2], [0]), spec10)
    assert brute_consistent(jp(10, [], []), spec10)


def test_guards():
    with pytest.raises(ResourceError):
        brute_consistent(jp(21, [0], []), FrameSpec(FRAME2, 21, 1, [0, 1]))
    big = FrameSpec(FRAME2, 15, 1, [0, 1])
    with pytest.raises(ResourceError):
        brute_min_inconsistent(jp(15, [0], [1]), big)
    with pytest.raises(ResourceError):
        brute_lt0(0, 1, FrameSpec(FRAME2, 9, 1, [0, 1]))
    with pytest.raises(ResourceError):
        enumerate_rational_sets(big)
    with pytest.raises(ResourceError):
        check_axioms(majority_rule, FrameSpec(FRAME2, 10, 3, range(4)), 5)


def test_min_inconsistent_member_guard():
    spec = FrameSpec(FRAME2, 9, 1, [0, 1])
    literals = [(w, True) for w in range(9)] + [(w, False) for w in range(8)]
    with pytest.raises(ResourceError):
        brute_min_inconsistent_literals(literals, spec)


def test_brute_min_inconsistent_examples(spec10):
    assert brute_min_inconsistent(jp(10, [9, 3], [0]), spec10)
    assert not brute_min_inconsistent(jp(10, [9, 2, 3], [0]), spec10)
    assert not brute_min_inconsistent(jp(10, [7, 3], [0]), spec10)
    assert not brute_min_inconsistent(jp(10, [], []), spec10)


def test_brute_lt0_examples(spec7):
    assert brute_lt0(2, 0, spec7)
    assert lt0_context(2, 0, spec7) == [(6, True)]
    assert not brute_lt0(0, 0, spec7)


def test_brute_lt0_regime_edges_exhaustive():
    for spec in regime_specs(8):
        r, k = spec.r, spec.k
        for w in range(r):
            assert brute_lt0(w + k, w, spec), (spec, w)
        assert not any(brute_lt0(w, w, spec) for w in range(r))


def test_rational_sets_r4(spec4):
    sets = enumerate_rational_sets(spec4)
    assert len(sets) == 10
    assert [s.plus.to_list() for s in sets] == [[], [0], [0, 1], [0, 1, 2, 3], [0, 3], [1], [1, 2], [2], [2, 3], [3]]
    assert all(s.is_complete() for s in sets)


def test_rational_sets_equal_brute_filter():
    for spec in regime_specs(8):
        r = spec.r
        full = (1 << r) - 1
        brute = [
            JudgmentPair(ResidueSet.from_bits(r, p), ResidueSet.from_bits(r, full ^ p))
            for p in range(1 << r)
            if brute_consistent(JudgmentPair(ResidueSet.from_bits(r, p), ResidueSet.from_bits(r, full ^ p)), spec)
        ]
        assert sorted(brute, key=lambda j: j.plus.members) == enumerate_rational_sets(spec)
        J = set(enumerate_rational_sets(spec))
        assert JudgmentPair(ResidueSet.full(r), ResidueSet.empty(r)) in J
        assert JudgmentPair(ResidueSet.empty(r), ResidueSet.full(r)) in J


def _replay(rule, spec, doc):
    return rule(tuple(JudgmentPair.from_dict(d, spec.r) for d in doc), spec)


def _acceptors(profile_doc, w):
    return {i for i, d in enumerate(profile_doc) if w in d["accept"]}


def test_dictator_rule_axioms(spec4):
    for i0 in (1, 2):
        rep = check_axioms(dictator_rule(i0), spec4, 2)
        assert rep.unanimity and rep.independence and rep.pn_neutrality and rep.rationality_closure
        assert rep.dictator == i0 and rep.profiles_checked == 100


def test_majority_rule_axioms(spec6):
    rep = check_axioms(majority_rule, spec6, 3)
    assert not rep.rationality_closure and rep.dictator is None
    ce = rep.rationality_counterexample
    out = _replay(majority_rule, spec6, ce["profile"])
    assert not is_consistent(out, spec6)
    wit = paradox_witness(spec6)
    assert not is_consistent(majority_rule(wit.profile.judgments, spec6), spec6)


def test_seq_majority_axioms_counterexamples_replay(spec4):
    rule = seq_majority_rule()
    rep = check_axioms(rule, spec4, 2)
    assert rep.rationality_closure and rep.dictator is None
    assert not rep.independence
    ce = rep.independence_counterexample
    w = int(ce["formula"].split("_")[1])
    assert _acceptors(ce["f"], w) == _acceptors(ce["g"], w)
    assert (w in _replay(rule, spec4, ce["f"]).plus) != (w in _replay(rule, spec4, ce["g"]).plus)

    assert not rep.pn_neutrality
    ce = rep.pn_neutrality_counterexample
    w = int(ce["formula"].split("_")[1])
    assert _acceptors(ce["f"], w) == {0, 1} - _acceptors(ce["g"], w)
    assert (w in _replay(rule, spec4, ce["f"]).plus) == (w in _replay(rule, spec4, ce["g"]).plus)


def test_unanimity_counterexample_replays(spec4):
    rule = seq_majority_rule()
    ce = check_axioms(rule, spec4, 2).unanimity_counterexample
    assert ce is not None
    text = ce["formula"]
    w = int(text.split("_")[1])
    out = _replay(rule, spec4, ce["profile"])
    if text.startswith("¬"):
        assert all(w in d["reject"] for d in ce["profile"]) and w in out.plus
    else:
        assert all(w in d["accept"] for d in ce["profile"]) and w in out.minus


def test_seq_majority_unanimity_holds_without_ties(spec4):
    assert check_axioms(seq_majority_rule(), spec4, 3).unanimity


def test_axiom_report_serializes(spec4):
    d = check_axioms(majority_rule, spec4, 2).to_dict()
    assert set(d) == {"unanimity", "independence", "pn_neutrality", "dictatorship", "rationality_closure", "profiles_checked"}
    assert d["rationality_closure"]["holds"] is False


def test_check_axioms_needs_two_individuals(spec4):
    with pytest.raises(ParameterError):
        check_axioms(majority_rule, spec4, 1)


def test_incomplete_rule_output_rejected(spec4):
    with pytest.raises(ParameterError):
        check_axioms(lambda f, s: JudgmentPair.of(4, [0], []), spec4, 2)
