import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from modalagg.errors import AgendaError, ParameterError, ParseError
from modalagg.kripke import (
    ExplicitFrame,
    IndexedProposition,
    KripkeModel,
    ModalFormula,
    Op,
    agenda_formula,
    evaluate,
    indexed_truth,
    parse,
    reduce_agenda_formula,
    reduce_step,
    render,
    successors,
    truth_mask,
    truth_set,
    worlds,
)
from modalagg.residue import FRAME1, FRAME2, FrameSpec, ResidueSet, regime_specs

from sweep import eval_all, prefixes

B, D = Op.BOX, Op.DIAMOND

FIG1 = ExplicitFrame((0, 1, 2, 3), ((0, 1), (0, 2), (1, 1), (1, 3), (2, 3), (3, 0)))


def test_parse_examples():
    assert parse("BDBp") == ModalFormula(False, (B, D, B))
    assert parse("!BBp") == ModalFormula(True, (B, B))
    assert parse("p") == ModalFormula()
    assert parse("¬□◇p") == ModalFormula(True, (B, D))
    assert parse("  Dp ") == ModalFormula(False, (D,))


@pytest.mark.parametrize("text, position", [
    ("", 0),
    ("BDB", 3),
    ("BXp", 1),
    ("B!p", 1),
    ("Bpp", 2),
    ("!!p", 1),
    ("  q", 2),
])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position


@given(st.booleans(), st.lists(st.sampled_from([B, D]), max_size=8), st.booleans())
def test_parse_render_round_trip(neg, prefix, uni):
    phi = ModalFormula(neg, tuple(prefix))
    assert parse(render(phi, unicode=uni)) == phi


def test_double_negation_collapses():
    phi = parse("BDp")
    assert phi.negate().negate() == phi
    assert str(phi.negate()) == "¬□◇p"


def test_fig1_golden():
    M = KripkeModel(FIG1, {0, 1})
    assert evaluate(M, 0, parse("Bp")) is False
    assert evaluate(M, 1, parse("Dp")) is True
    assert evaluate(M, 0, parse("!Bp")) is True


def test_dead_end_semantics():
    F = ExplicitFrame((0, 1), ((0, 1),))
    M = KripkeModel(F, set())
    assert evaluate(M, 1, parse("Bp")) is True
    assert evaluate(M, 1, parse("Dp")) is False
    assert evaluate(M, 0, parse("BBp")) is True


def test_model_validation():
    with pytest.raises(ParameterError):
        KripkeModel(FIG1, {7})
    with pytest.raises(ParameterError):
        ExplicitFrame((0, 1), ((0, 2),))
    with pytest.raises(ParameterError):
        evaluate(KripkeModel(FIG1, {0}), 9, parse("p"))
    with pytest.raises(ParameterError):
        KripkeModel(FrameSpec(FRAME2, 6, 1, [0, 1]), {"x"})


def test_frame_successors(spec10, spec6):
    assert worlds(spec10)[0] == "x" and len(worlds(spec10)) == 11
    assert successors(spec10, "x") == (0, 1, 2, 3)
    assert successors(spec10, 8) == (1,)
    assert successors(spec6, 5) == (5, 0)


def test_full_valuation_makes_agenda_true(spec6):
    M = KripkeModel(spec6, ResidueSet.full(6))
    assert all(evaluate(M, w, parse("BDBp")) for w in range(6))


def test_reduce_step_examples(spec6):
    assert reduce_step(spec6, 0, parse("BDBp")) == (1, parse("Bp"))
    assert reduce_step(spec6, 5, parse("BDBDBp")) == (0, parse("BDBp"))
    w, phi = reduce_step(spec6, 0, agenda_formula(spec6, 2))
    w, phi = reduce_step(spec6, w, phi)
    assert (w, phi) == (2, parse("Bp"))
    assert reduce_step(spec6, 0, parse("!BDBp")) == (1, parse("!Bp"))


def test_reduce_step_preconditions(spec10, spec6):
    with pytest.raises(ParameterError):
        reduce_step(spec10, 0, parse("BDBp"))
    with pytest.raises(ParameterError):
        reduce_step(FrameSpec(FRAME2, 7, 2, [0, 1]), 0, parse("BDBp"))
    with pytest.raises(ParameterError):
        reduce_step(spec6, 0, parse("BBBp"))


def test_reduce_agenda_formula_examples():
    assert reduce_agenda_formula(FrameSpec(FRAME1, 6, 1, [0, 1]), parse("BBBp")) == IndexedProposition(2)
    assert reduce_agenda_formula(FrameSpec(FRAME2, 6, 1, [0, 1]), parse("Bp")) == IndexedProposition(0)
    s7 = FrameSpec(FRAME2, 7, 2, [0, 1, 2])
    assert reduce_agenda_formula(s7, parse("!BDBDBDBp")) == IndexedProposition(6, True)


@pytest.mark.parametrize("kind, text", [(FRAME1, "p"), (FRAME1, "BDp"), (FRAME2, "BBp"), (FRAME2, "BDp"), (FRAME2, "p")])
def test_reduce_rejects_outside_agenda(kind, text):
    spec = FrameSpec(kind, 6, 1, [0, 1])
    with pytest.raises(AgendaError):
        reduce_agenda_formula(spec, parse(text))


def test_reduce_requires_symmetry_on_frame2():
    with pytest.raises(ParameterError):
        reduce_agenda_formula(FrameSpec(FRAME2, 7, 2, [0, 1]), parse("BDBp"))


def test_indexed_truth_examples(spec10):
    V = ResidueSet(10, range(4)).translate(3) | ResidueSet(10, range(4)).translate(7)
    assert indexed_truth(spec10, V, IndexedProposition(3))
    V = ResidueSet(10, [7, 8, 9, 0, 3, 4, 5, 6])
    assert indexed_truth(spec10, V, IndexedProposition(0, True))
    assert indexed_truth(spec10, V, IndexedProposition(7))
    assert all(indexed_truth(spec10, ResidueSet.full(10), IndexedProposition(w)) for w in range(10))
    assert indexed_truth(spec10, ["x", 0, 1, 2, 3], IndexedProposition(0))


def test_semantic_finiteness():
    for spec in regime_specs(12):
        bound = 3 * spec.r
        js = range(1, bound + 1) if spec.kind == FRAME1 else range(bound + 1)
        indices = {reduce_agenda_formula(spec, agenda_formula(spec, j)).index for j in js}
        assert len(indices) <= spec.r
        assert all(0 <= i < spec.r for i in indices)


def _agenda_sound(spec, max_j):
    r = spec.r
    js = range(1, max_j + 1) if spec.kind == FRAME1 else range(max_j + 1)
    for j in js:
        phi = agenda_formula(spec, j)
        prop = reduce_agenda_formula(spec, phi)
        for bits in range(1 << r):
            V = ResidueSet.from_bits(r, bits)
            for x_in in ((False, True) if spec.kind == FRAME1 else (False,)):
                members = set(V) | ({"x"} if x_in else set())
                M = KripkeModel(spec, members)
                direct = evaluate(M, spec.designated_world, phi)
                assert direct == indexed_truth(spec, V, prop), (spec, j, bits)
                assert evaluate(M, spec.designated_world, phi.negate()) == (not direct)


@pytest.mark.parametrize("spec", [s for s in regime_specs(7)], ids=str)
def test_agenda_reduction_sound_pointwise(spec):
    _agenda_sound(spec, spec.r + 1)


def test_agenda_reduction_sound_bitmask_up_to_9():
    for spec in regime_specs(9):
        r = spec.r
        vals = np.arange(1 << r)
        js = range(1, 2 * r + 1) if spec.kind == FRAME1 else range(2 * r + 1)
        for j in js:
            phi = agenda_formula(spec, j)
            prop = reduce_agenda_formula(spec, phi)
            A_shift = spec.A.translate(prop.index).bits
            reduced = (vals & A_shift) == A_shift
            world_bit = r if spec.kind == FRAME1 else 0
            direct = np.array([(truth_mask(spec, int(v), phi.prefix) >> world_bit) & 1 for v in vals], dtype=bool)
            assert np.array_equal(direct, reduced), (spec, j)


@given(
    st.sampled_from([FrameSpec(FRAME2, 5, 2, [0, 1, 2]), FrameSpec(FRAME1, 6, 1, [0, 1]),
                     FrameSpec(FRAME2, 6, 2, [0, 2]), FrameSpec(FRAME1, 7, 2, [0, 2])]),
    st.lists(st.sampled_from([B, D]), max_size=6),
    st.integers(0, 127),
    st.booleans(),
)
def test_evaluators_agree(spec, prefix, vbits, x_in):
    r = spec.r
    vbits &= (1 << r) - 1
    V = set(ResidueSet.from_bits(r, vbits))
    if spec.kind == FRAME1 and x_in:
        V.add("x")
    M = KripkeModel(spec, V)
    phi = ModalFormula(False, tuple(prefix))
    ts = truth_set(M, phi)
    mask = truth_mask(spec, vbits, prefix, x_in_V=spec.kind == FRAME1 and x_in)
    for w in worlds(spec):
        bit = r if w == "x" else w
        assert evaluate(M, w, phi) == (w in ts) == bool(mask >> bit & 1)
    assert truth_set(M, phi.negate()) == frozenset(worlds(spec)) - ts


def test_sweep_helper_matches_truth_mask():
    spec = FrameSpec(FRAME2, 6, 2, [0, 1, 2])
    for prefix in prefixes(3):
        table = eval_all(spec, prefix)
        for v in range(0, 64, 5):
            mask = truth_mask(spec, v, prefix)
            assert [bool(mask >> w & 1) for w in range(6)] == table[v].tolist()
