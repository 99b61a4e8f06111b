# tests/spec_oracle.py

"""
Brute-force re-derivation of the net and the specification measures straight
from the expanded syntax tree, plus a generator of small random specifications.
"""

from zspec import parse_specification, resolve_inclusions
from zspec.model import Connective, Decoration, occurrences

_DEF = (Decoration.PRIMED, Decoration.OUTPUT)
_STATE_NAMES = ('x', 'y', 'z')


def _flatten_and(node):
    if isinstance(node, Connective) and node.op == 'and':
        result = []
        for operand in node.operands:
            result.extend(_flatten_and(operand))
        return result
    return [node]


def _count(node, op):
    total = len(node.operands) - 1 if isinstance(node, Connective) and node.op == op else 0
    for child in getattr(node, 'operands', ()) or ():
        total += _count(child, op)
    for attribute in ('operand', 'left', 'right'):
        child = getattr(node, attribute, None)
        if child is not None:
            total += _count(child, op)
    return total


def oracle_primes(schema):
    primes = []
    for declaration in schema.declarations:
        primes.append({'decl': True, 'defs': {(declaration.name, declaration.decoration)},
                       'uses': set(), 'plain': set()})
    for predicate in schema.predicates:
        for conjunct in _flatten_and(predicate.expr):
            defs, uses, plain = set(), set(), set()
            for occurrence in occurrences(conjunct):
                if occurrence.decoration in _DEF:
                    defs.add((occurrence.name, occurrence.decoration))
                else:
                    uses.add(occurrence.name)
                    if occurrence.decoration is Decoration.PLAIN:
                        plain.add(occurrence.name)
            primes.append({'decl': False, 'defs': defs, 'uses': uses, 'plain': plain})
    for index, prime in enumerate(primes):
        prime['id'] = f"{schema.name}#{index}"
    return primes


def _closure(spec, name):
    direct = {s.name: [i.target for i in s.inclusions] for s in spec.schemas}
    seen, stack = set(), list(direct[name])
    while stack:
        target = stack.pop()
        if target not in seen:
            seen.add(target)
            stack.extend(direct[target])
    return seen


def oracle_arcs(spec):
    expanded = resolve_inclusions(spec)
    primes = {schema.name: oracle_primes(schema) for schema in expanded.schemas}
    control, data, inter = set(), set(), set()
    for schema_primes in primes.values():
        for p in schema_primes:
            for q in schema_primes:
                if p['id'] == q['id'] or q['decl']:
                    continue
                if not p['decl'] and not p['defs'] and q['defs']:
                    control.add((p['id'], q['id']))
                names = {name for name, _ in p['defs']}
                reached = (q['uses'] | {n for n, _ in q['defs']}) if p['decl'] else q['uses']
                for name in names & reached:
                    data.add((p['id'], q['id'], name))

    for a in primes:
        for b in primes:
            if a == b:
                continue
            shared = _closure(spec, a) & _closure(spec, b)
            state = {d.name for s in shared for d in spec.schema(s).declarations}
            for p in primes[a]:
                if p['decl']:
                    continue
                for name, _ in p['defs']:
                    if name not in state:
                        continue
                    for q in primes[b]:
                        if not q['decl'] and name in q['plain']:
                            inter.add((a, b, p['id'], q['id'], name))
    return primes, control, data, inter


def _backward(ids, arcs, criterion):
    reached = set(criterion)
    changed = True
    while changed:
        changed = False
        for source, target in arcs:
            if target in reached and source in ids and source not in reached:
                reached.add(source)
                changed = True
    return reached


def oracle_metrics(spec):
    """schema -> dict of the eleven measures."""
    expanded = resolve_inclusions(spec)
    primes, control, data, inter = oracle_arcs(spec)
    k = len(primes)
    table = {}
    for schema in expanded.schemas:
        own = primes[schema.name]
        ids = {p['id'] for p in own}
        own_control = {(s, t) for s, t in control if s in ids}
        own_data = {(s, t, v) for s, t, v in data if s in ids}
        arcs = own_control | {(s, t) for s, t, _ in own_data}

        used, defined = set(), set()
        for predicate in schema.predicates:
            for occurrence in occurrences(predicate.expr):
                (defined if occurrence.decoration in _DEF else used).add(occurrence.name)

        variables = sorted({name for p in own if not p['decl']
                            for name, decoration in p['defs']})
        slices = []
        for variable in variables:
            criterion = {p['id'] for p in own
                         if any(n == variable and d in _DEF for n, d in p['defs'])}
            slices.append(_backward(ids, arcs, criterion))
        n = len(own)
        if slices and n:
            common = set.intersection(*slices)
            coverage = sum(len(s) / n for s in slices) / len(slices)
            overlap = sum(len(common) / len(s) for s in slices) / len(slices)
        else:
            coverage = overlap = 0.0

        chi = 0.0
        if k > 1:
            for other in primes:
                if other == schema.name:
                    continue
                size = n + len(primes[other])
                if size == 0:
                    continue
                flow = sum(1 for a, b, _, _, _ in inter
                           if (a, b) in ((schema.name, other), (other, schema.name)))
                chi += flow / size
            chi /= k - 1

        table[schema.name] = {
            'CC': n,
            'VL': 1 + len({t for _, t in own_control}),
            'VU': 1 + len(own_control),
            'DU': len(own_data),
            'USE': len(used),
            'DEF': len(defined),
            'AND': sum(_count(p.expr, 'and') for p in schema.predicates),
            'OR': sum(_count(p.expr, 'or') for p in schema.predicates),
            'COV': coverage,
            'OVL': overlap,
            'CHI': chi,
        }
    return table


def _random_atom(rng, names):
    left = rng.choice(names)
    right = rng.choice(names + ['1'])
    if rng.random() < 0.3:
        right = f"{right} + {rng.choice(names)}"
    return f"{left} {rng.choice(['=', '<', '/=', '>='])} {right}"


def _random_predicate(rng, names):
    text = _random_atom(rng, names)
    for _ in range(rng.randint(0, 1)):
        text += f" {rng.choice(['and', 'or'])} {_random_atom(rng, names)}"
    return text


def random_specification(rng):
    """At most four schemas of at most twelve primes each."""
    state = rng.sample(_STATE_NAMES, rng.randint(1, 2))
    lines = ['given T', 'schema S', f"  decl {', '.join(state)} : T", 'end']
    for index in range(rng.randint(1, 3)):
        kind = rng.choice(['delta', 'xi', 'includes', None])
        lines.append(f"schema Op{index}")
        if kind:
            lines.append(f"  {kind} S")
        names = [f"in{index}?", f"out{index}!"]
        lines.append(f"  decl {', '.join(names)} : T")
        visible = names + (state + [f"{v}'" for v in state] if kind else [])
        for _ in range(rng.randint(0, 2)):
            lines.append(f"  pred {_random_predicate(rng, visible)}")
        lines.append('end')
    return parse_specification('\n'.join(lines) + '\n')
