# mil/printer.py

from typing import List

from .model import CodeUnit, LineClass

INDENT = '   '

_FLUSH_LEFT = (LineClass.HEADER, LineClass.TERMINATOR, LineClass.BLANK)


def render_unit(unit: CodeUnit, source: str) -> str:
    """
    The unit's lines with normalised spacing: header and terminator lines flush
    left, everything else indented one level. Line breaks are kept as they are.
    """
    lines = source.splitlines()
    rendered: List[str] = []
    for number in range(unit.first_line, unit.last_line + 1):
        words = lines[number - 1].split()
        if not words:
            rendered.append('')
            continue
        indent = '' if unit.line_classes[number] in _FLUSH_LEFT else INDENT
        rendered.append(indent + ' '.join(words))
    return '\n'.join(rendered) + '\n'
