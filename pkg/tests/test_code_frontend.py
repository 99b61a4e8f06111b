# tests/test_code_frontend.py

import pytest

from core.errors import CodeSyntaxError, UnresolvedExit, UnresolvedLabel
from mil import LineClass, Param, ParamMode, UnitKind, build_call_graph, parse_code, render_unit
from mil.metrics import cyclomatic, knots

CALLS = """\
procedure Q is
begin
   null;
end Q;

procedure P is
begin
   Q;
   Q;
   Put_Line ("x");
end P;
"""


def test_inc_ctr_structure(inc_ctr_unit):
    unit = inc_ctr_unit
    assert unit.name == 'Inc_Ctr'
    assert unit.kind is UnitKind.PROCEDURE
    assert unit.params == (Param('Amt', ParamMode.IN, 'Integer'),)
    assert unit.span == (4, 10)
    assert unit.header_end == 4
    assert unit.global_reads == {'Ctr'}
    assert unit.global_writes == {'Ctr'}
    assert unit.source.endswith('inc_ctr.mil')


def test_inc_ctr_line_classes(inc_ctr_unit):
    assert inc_ctr_unit.line_classes == {
        4: LineClass.HEADER,
        5: LineClass.DECLARATIVE,
        6: LineClass.HEADER,
        7: LineClass.EXECUTABLE,
        8: LineClass.EXECUTABLE,
        9: LineClass.EXECUTABLE,
        10: LineClass.TERMINATOR,
    }


def test_blank_and_comment_lines_inside_a_unit():
    source = "procedure P is\n\n   -- nothing yet\nbegin\n   null;\nend P;\n"
    unit = parse_code(source)[0]
    assert unit.line_classes[2] is LineClass.BLANK
    assert unit.line_classes[3] is LineClass.COMMENT


def test_class_counts_cover_the_span(corpus_dir):
    for path in sorted((corpus_dir / 'code').glob('*.mil')):
        for unit in parse_code(path.read_text(encoding='utf-8'), str(path)):
            assert sum(unit.class_counts().values()) == unit.length


def test_empty_source_has_no_units():
    assert parse_code('') == []
    assert parse_code('-- only a comment\n\n') == []


def test_function_with_result_type():
    unit = parse_code("function Twice (N : Integer) return Integer is\nbegin\n   return N * 2;\nend Twice;\n")[0]
    assert unit.kind is UnitKind.FUNCTION
    assert unit.params[0].mode is ParamMode.IN


def test_goto_to_missing_label():
    with pytest.raises(UnresolvedLabel) as info:
        parse_code("procedure P is\nbegin\n   goto Nowhere;\nend P;\n", 'p.mil')
    assert info.value.name == 'Nowhere'
    assert str(info.value).startswith('p.mil:3:')


def test_exit_outside_loop():
    with pytest.raises(UnresolvedExit) as info:
        parse_code("procedure P is\nbegin\n   exit;\nend P;\n")
    assert info.value.line == 3


@pytest.mark.parametrize('source, line', [
    ("procedure P is\nbegin\n   X := ;\nend P;\n", 3),
    ("procedure P is\nbegin\n   null;\nend Q;\n", 4),
    ("procedure P is\nbegin\n   null;\n", 4),
    ("X : Integer;\nbegin\n", 2),
    ("procedure P is\nbegin\n   if X then\n      null;\n   end;\nend P;\n", 5),
    ("procedure P is\nbegin\n   null; $\nend P;\n", 3),
])
def test_syntax_errors_carry_file_and_line(source, line):
    with pytest.raises(CodeSyntaxError) as info:
        parse_code(source, 'bad.mil')
    assert info.value.line == line
    assert str(info.value).startswith(f'bad.mil:{line}:')


def test_loop_exits_jump_to_the_loop_end():
    source = ("procedure Scan (N : in Integer) is\n   I : Integer := 0;\nbegin\n"
              "   loop\n      I := I + 1;\n      exit when I = N;\n   end loop;\nend Scan;\n")
    unit = parse_code(source)[0]
    assert unit.jumps == ((6, 7),)


def test_labels_are_executable_lines(fixtures_dir):
    unit = parse_code((fixtures_dir / 'knots_interleaved.mil').read_text(encoding='utf-8'))[0]
    assert unit.line_classes[7] is LineClass.EXECUTABLE
    assert sorted(unit.jumps) == [(5, 9), (11, 7)]


def test_for_variable_is_local():
    source = ("Total : Integer := 0;\n"
              "procedure Sum (N : in Integer) is\nbegin\n"
              "   for I in 1 .. N loop\n      Total := Total + I;\n   end loop;\nend Sum;\n")
    unit = parse_code(source)[0]
    assert unit.global_reads == {'Total'}
    assert unit.global_writes == {'Total'}
    assert unit.calls == ()


def test_globals_passed_as_actuals_follow_the_formal_mode():
    source = ("G : Integer := 0;\n"
              "procedure Get (V : out Integer) is\nbegin\n   V := 1;\nend Get;\n"
              "procedure Use is\nbegin\n   Get (G);\nend Use;\n")
    caller = parse_code(source)[1]
    assert caller.global_writes == {'G'}
    assert caller.global_reads == frozenset()


@pytest.mark.parametrize('name', ['inc_ctr.mil', 'knots_interleaved.mil', 'knots_nested.mil'])
def test_rendering_keeps_structure(fixtures_dir, name):
    source = (fixtures_dir / name).read_text(encoding='utf-8')
    original = parse_code(source)[-1]
    again = parse_code(render_unit(original, source))[0]
    shift = original.first_line - 1
    assert {line - shift: cls for line, cls in original.line_classes.items()} == again.line_classes
    assert cyclomatic(again) == cyclomatic(original)
    assert knots(again) == knots(original)


def test_repeated_calls_give_one_edge():
    units = parse_code(CALLS)
    caller = units[1]
    assert caller.calls == ('Q', 'Q', 'Put_Line')
    assert caller.callees == ('Q', 'Put_Line')
    assert caller.call_counts == {'Q': 2, 'Put_Line': 1}

    graph = build_call_graph(units)
    assert graph.edges == {('P', 'Q'), ('P', 'Put_Line')}
    assert graph.external == {'Put_Line'}
    assert graph.vertices == {'P', 'Q', 'Put_Line'}
    assert graph.callers_of('Q') == {'P'}
    assert graph.to_networkx().nodes['Put_Line']['external']
