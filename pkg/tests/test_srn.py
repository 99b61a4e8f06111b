# tests/test_srn.py

import random

import networkx as nx
import pytest

from zspec import PrimeKind, build_srn, parse_specification, resolve_inclusions, split_primes
from zspec.model import Decoration

from spec_oracle import oracle_arcs, random_specification


def _ids(srn, schema):
    return {prime.text: prime.id for prime in srn.primes_of(schema)}


def test_inc_primes(mini_spec):
    inc = resolve_inclusions(mini_spec).schema('Inc')
    primes = split_primes(inc)
    assert [p.kind for p in primes] == [PrimeKind.DECLARATION] * 3 + [PrimeKind.PREDICATE] * 2
    assert [p.text for p in primes] == ['ctr : NAT', "ctr' : NAT", 'amt? : NAT',
                                        'amt? > 0', "ctr' = ctr + amt?"]
    guard, update = primes[3], primes[4]
    assert guard.is_guard and not update.is_guard
    assert update.def_set == {('ctr', Decoration.PRIMED)}
    assert update.use_set == {'ctr', 'amt'}
    assert all(len(p.def_set) == 1 for p in primes[:3])


def test_inc_arcs(mini_spec):
    srn = build_srn(mini_spec)
    ids = _ids(srn, 'Inc')
    guard, update = ids['amt? > 0'], ids["ctr' = ctr + amt?"]
    assert srn.control_arcs_of('Inc') == {(guard, update)}
    assert srn.data_arcs_of('Inc') == {
        (ids['amt? : NAT'], guard, 'amt'),
        (ids['amt? : NAT'], update, 'amt'),
        (ids['ctr : NAT'], update, 'ctr'),
        (ids["ctr' : NAT"], update, 'ctr'),
    }
    assert srn.interschema_arcs == frozenset()


def test_conjunctions_split_and_disjunctions_do_not():
    spec = parse_specification(
        "schema A\n  decl a, b : T\n  pred a' = 1 and b' = 2\nend\n"
        "schema B\n  decl a, b : T\n  pred a' = 1 or b' = 2\nend\n")
    expanded = resolve_inclusions(spec)
    assert len([p for p in split_primes(expanded.schema('A')) if not p.is_declaration]) == 2
    assert len([p for p in split_primes(expanded.schema('B')) if not p.is_declaration]) == 1


def test_parenthesised_conjunction_is_split():
    spec = parse_specification("schema A\n  pred x? > 0 and (y? > 0 and z' = 1)\nend\n")
    primes = split_primes(spec.schema('A'))
    assert len(primes) == 3


def test_xi_equalities_are_synthetic_primes():
    spec = parse_specification(
        "schema S\n  decl s : T\nend\nschema Q\n  xi S\n  decl r! : T\n  pred r! = s\nend\n")
    primes = split_primes(resolve_inclusions(spec).schema('Q'))
    synthetic = [p for p in primes if p.kind is PrimeKind.SYNTHETIC]
    assert [p.text for p in synthetic] == ["s' = s"]


def test_guardless_schema_has_no_control_arcs():
    srn = build_srn(parse_specification("schema A\n  decl a : T\n  pred a' = a + 1\nend\n"))
    assert srn.control_arcs == frozenset()


def test_interschema_arcs_need_a_shared_state_schema():
    shared = parse_specification(
        "schema S\n  decl x : T\nend\n"
        "schema Set\n  delta S\n  pred x' = 1\nend\n"
        "schema Get\n  xi S\n  decl r! : T\n  pred r! = x\nend\n")
    srn = build_srn(shared)
    pairs = {(a, b, variable) for a, b, _, _, variable in srn.interschema_arcs}
    assert pairs == {('Set', 'Get', 'x')}
    assert len(srn.interschema_arcs) == 2

    separate = parse_specification(
        "schema Set\n  decl x : T\n  pred x' = 1\nend\n"
        "schema Get\n  decl x, r! : T\n  pred r! = x\nend\n")
    assert build_srn(separate).interschema_arcs == frozenset()


def test_dependence_graph_and_dump(mini_spec, tmp_path):
    srn = build_srn(mini_spec)
    graph = srn.dependence_graph('Inc')
    assert graph.number_of_nodes() == 5
    assert graph.number_of_edges() == 5
    path = tmp_path / 'srn.graphml'
    srn.dump(path)
    loaded = nx.read_graphml(path)
    assert loaded.number_of_nodes() == len(srn.primes)
    kinds = {data['type'] for _, _, data in loaded.edges(data=True)}
    assert kinds == {'control', 'data'}


def test_arc_sets_do_not_depend_on_predicate_order():
    first = "schema A\n  decl a, b : T\n  pred a > 0\n  pred b' = a\n  pred a' = b\nend\n"
    second = "schema A\n  decl a, b : T\n  pred a' = b\n  pred a > 0\n  pred b' = a\nend\n"

    def by_text(source):
        srn = build_srn(parse_specification(source))
        text = {p.id: p.text for p in srn.primes}
        return ({(text[s], text[d]) for s, d in srn.control_arcs},
                {(text[s], text[d], v) for s, d, v in srn.data_arcs})

    assert by_text(first) == by_text(second)


@pytest.mark.parametrize('seed', range(100))
def test_arcs_match_brute_force(seed):
    spec = random_specification(random.Random(seed))
    srn = build_srn(spec)
    _, control, data, inter = oracle_arcs(spec)
    assert all(len(srn.primes_of(name)) <= 12 for name in srn.schema_names)
    assert set(srn.control_arcs) == control
    assert set(srn.data_arcs) == data
    assert set(srn.interschema_arcs) == inter


@pytest.mark.parametrize('seed', range(20))
def test_arc_endpoints_respect_roles(seed):
    srn = build_srn(random_specification(random.Random(seed)))
    primes = {p.id: p for p in srn.primes}
    for source, target in srn.control_arcs:
        assert primes[source].is_guard and not primes[source].is_declaration
        assert not primes[target].is_guard and not primes[target].is_declaration
        assert primes[source].schema == primes[target].schema
    for source, target, variable in srn.data_arcs:
        assert variable in primes[source].defined_names
        assert variable in primes[target].mentions
