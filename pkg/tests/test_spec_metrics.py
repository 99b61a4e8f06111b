# tests/test_spec_metrics.py

import random
from dataclasses import replace

import pytest

from core.config import SPEC_METRICS
from core.errors import CriterionOutsideSchema
from zspec import (SRN, Prime, PrimeKind, backward_slice, basic_metrics, build_srn, coupling,
                   measure_specification, parse_specification, resolve_inclusions, slice_profile,
                   structure_metrics)

from spec_oracle import oracle_metrics, random_specification

INC_GOLDEN = dict(CC=5, VL=2, VU=2, DU=4, USE=2, DEF=1, AND=0, OR=0, COV=1.0, OVL=1.0, CHI=0.0)


def test_inc_golden_row(mini_spec):
    inc = measure_specification(mini_spec)['Inc']
    assert inc.as_dict() == INC_GOLDEN
    assert not inc.degenerate


def test_state_schema_without_predicates_is_degenerate(mini_spec):
    counter = measure_specification(mini_spec)['Counter']
    assert (counter.CC, counter.VL, counter.VU, counter.DU) == (1, 1, 1, 0)
    assert (counter.COV, counter.OVL, counter.CHI) == (0.0, 0.0, 0.0)
    assert counter.degenerate


def test_empty_schema():
    metrics = measure_specification(parse_specification("schema E end\n"))['E']
    assert metrics.CC == 0
    assert metrics.VL == metrics.VU == 1
    assert metrics.as_dict()['DU'] == 0
    assert metrics.degenerate


def test_row_follows_metric_order(mini_spec):
    inc = measure_specification(mini_spec)['Inc']
    assert inc.as_row() == tuple(INC_GOLDEN[name] for name in SPEC_METRICS)


def test_two_guards_over_three_updates():
    spec = parse_specification(
        "schema G\n  decl a?, b?, x, y, z : T\n  pred a? > 0 and b? > 0\n"
        "  pred x' = 1\n  pred y' = 2\n  pred z' = 3\nend\n")
    metrics = measure_specification(spec)['G']
    assert (metrics.VL, metrics.VU) == (4, 7)
    assert metrics.AND == 1


def test_disjoint_slices():
    spec = parse_specification(
        "schema D\n  decl a?, x!, b?, y! : T\n  pred x! = a?\n  pred y! = b?\nend\n")
    srn = build_srn(spec)
    profile = slice_profile(srn, 'D')
    assert [variable for variable, _ in profile.criteria] == ['x', 'y']
    assert [len(s) for s in profile.slices] == [3, 3]
    assert not profile.slices[0] & profile.slices[1]
    metrics = measure_specification(spec)['D']
    assert metrics.COV == pytest.approx(0.5)
    assert metrics.OVL == 0.0


def test_backward_slice_of_the_update(mini_spec):
    srn = build_srn(mini_spec)
    everything = frozenset(p.id for p in srn.primes_of('Inc'))
    assert backward_slice(srn, 'Inc', {'Inc#4'}) == everything
    assert backward_slice(srn, 'Inc', everything) == everything


def test_backward_slice_edge_cases(mini_spec):
    srn = build_srn(mini_spec)
    assert backward_slice(srn, 'Inc', set()) == frozenset()
    assert backward_slice(srn, 'Counter', {'Counter#0'}) == {'Counter#0'}
    guard_slice = backward_slice(srn, 'Inc', {'Inc#3'})
    assert guard_slice == {'Inc#2', 'Inc#3'}
    assert backward_slice(srn, 'Inc', guard_slice) == guard_slice
    with pytest.raises(CriterionOutsideSchema):
        backward_slice(srn, 'Inc', {'Counter#0'})


def _primes(schema, count):
    return [Prime(f"{schema}#{i}", schema, PrimeKind.PREDICATE, frozenset(), frozenset(), True)
            for i in range(count)]


def _three_schema_net(forward, backward):
    primes = _primes('A', 4) + _primes('B', 2) + _primes('C', 4)
    arcs = {('A', 'B', f'A#{i}', 'B#0', 'v') for i in range(forward)}
    arcs |= {('B', 'A', f'B#{i}', 'A#0', 'w') for i in range(backward)}
    return SRN(tuple(primes), interschema_arcs=frozenset(arcs), schema_names=('A', 'B', 'C'))


def test_coupling_arithmetic():
    assert coupling(_three_schema_net(2, 1), 'A') == pytest.approx(0.25)
    assert coupling(_three_schema_net(2, 1), 'C') == 0.0


def test_coupling_ignores_flow_direction():
    assert coupling(_three_schema_net(1, 2), 'A') == coupling(_three_schema_net(2, 1), 'A')


def test_single_schema_has_no_coupling():
    spec = parse_specification("schema A\n  decl a : T\n  pred a' = a\nend\n")
    assert measure_specification(spec)['A'].CHI == 0.0


def test_corpus_measures_stay_in_range(corpus_dir):
    spec = parse_specification((corpus_dir / 'spec.zs').read_text(encoding='utf-8'))
    table = measure_specification(spec)
    assert list(table) == list(spec.schema_names)
    for metrics in table.values():
        assert metrics.VU >= metrics.VL >= 1
        assert 0.0 <= metrics.COV <= 1.0
        assert 0.0 <= metrics.OVL <= 1.0
        assert metrics.CHI >= 0.0
    assert table['Status'].DEF == 0 and table['Status'].degenerate
    assert table['Alarm'].CHI == 0.0


@pytest.mark.parametrize('seed', range(100))
def test_measures_match_brute_force(seed):
    spec = random_specification(random.Random(seed))
    expected = oracle_metrics(spec)
    for name, metrics in measure_specification(spec).items():
        assert metrics.as_dict() == pytest.approx(expected[name], abs=1e-12)


GROWING_PREDICATES = ["x' = a?", "a? > 0", "y' = x + b?", "b? > a? and a? > 1", "z! = y'", "x > 0 or b? = 2"]


def test_growing_a_schema_never_lowers_cc_or_vu():
    lines = ["schema G", "  decl a?, b?, x, y, z! : T"]
    previous = None
    for predicate in GROWING_PREDICATES:
        lines.append(f"  pred {predicate}")
        metrics = measure_specification(parse_specification('\n'.join(lines + ['end']) + '\n'))['G']
        if previous is not None:
            assert metrics.CC > previous.CC
            assert metrics.VU >= previous.VU
            assert metrics.VL >= previous.VL
        previous = metrics


@pytest.mark.parametrize('seed', range(50))
def test_extra_primes_and_control_arcs_never_lower_cc_or_vu(seed):
    rng = random.Random(seed)
    spec = resolve_inclusions(random_specification(rng))
    srn = build_srn(spec)
    for schema in spec.schemas:
        cc = basic_metrics(schema, srn)[0]
        v_l, v_u, _ = structure_metrics(schema, srn)

        extra = Prime(f"{schema.name}#extra", schema.name, PrimeKind.PREDICATE,
                      frozenset(), frozenset(), True)
        grown = replace(srn, primes=srn.primes + (extra,))
        assert basic_metrics(schema, grown)[0] == cc + 1

        source = rng.choice(srn.primes_of(schema.name))
        arc = (source.id, extra.id)
        wired = replace(grown, control_arcs=grown.control_arcs | {arc})
        wired_l, wired_u, _ = structure_metrics(schema, wired)
        assert wired_u >= v_u and wired_l >= v_l
        assert wired_u == v_u + 1
