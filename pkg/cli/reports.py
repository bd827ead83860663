"""Machine reports: nested dicts with every number rendered as an exact string.

Schema (version 1), top-level keys:
    schema, command, curve, degree, classification, chern, splitting,
    generic, theorems, exactness, epsilon, scan, summary, timing
Blocks that do not apply to a command are omitted. `timing` is the only
non-deterministic field.
"""
import json
from enum import Enum

from sympy import QQ, Rational

from chern.bundles import chern_of_classification
from logmod.classification import CurveKind

SCHEMA_VERSION = '1'


def stringify(value):
    if value is None or isinstance(value, bool):
        return value
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Rational):
        return str(value)
    if QQ.of_type(value):
        return str(QQ.to_sympy(value))
    if isinstance(value, dict):
        return {str(k): stringify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [stringify(v) for v in value]
    return str(value)


def classification_block(cls):
    return stringify(cls.summary())


def chern_block(cls, n):
    if cls.kind == CurveKind.OTHER:
        return {'available': False, 'reason': 'c2 is only known for free and plus-one generated curves'}
    cd = chern_of_classification(cls, n)
    return stringify({'available': True, 'rank': cd.rank, 'c1': cd.c1, 'c2': cd.c2})


def splitting_block(result, allowed=None, jumping=None):
    block = {
        'line': str(result.line),
        'a': result.split.a,
        'b': result.split.b,
        'coker_dim': result.coker_dim,
        'coker_by_degree': result.coker_by_degree,
        'yoshinaga': result.c2 - result.split.a * result.split.b == result.coker_dim,
    }
    if allowed is not None:
        block['allowed'] = result.split in allowed
    if jumping is not None:
        block['jumping'] = jumping
    return stringify(block)


def build_report(command, curve_name, degree=None, **blocks):
    report = {'schema': SCHEMA_VERSION, 'command': command, 'curve': curve_name}
    if degree is not None:
        report['degree'] = str(degree)
    report.update({k: v for k, v in blocks.items() if v is not None})
    return report


def is_refuted(report):
    """True when any theorem block, scan row or exactness check failed."""
    def walk(node):
        if isinstance(node, dict):
            if node.get('verdict') == 'REFUTED' or node.get('passed') is False:
                return True
            return any(walk(v) for v in node.values())
        if isinstance(node, list):
            return any(walk(v) for v in node)
        return False
    return walk({k: v for k, v in report.items() if k != 'timing'})


def render_json(report):
    return json.dumps(report, indent=2, sort_keys=True)


def render_text(report):
    out = [f"{report['command']}: {report['curve']}" + (f" (degree {report['degree']})" if 'degree' in report else '')]
    cls = report.get('classification')
    if cls:
        line = f"  kind: {cls['kind']}"
        if 'exponents' in cls:
            line += f"  exponents: ({', '.join(cls['exponents'])})"
        if 'level' in cls:
            line += f"  level: {cls['level']}  nu: {cls['nu']}"
            if cls.get('nearly_free'):
                line += '  (nearly free)'
        line += f"  mdr: {cls['mdr']}"
        out.append(line)
        if cls.get('bound_limited'):
            out.append(f"  generator pattern still open at bound {cls['bound']}; try a larger --bound")
    chern = report.get('chern')
    if chern and chern.get('available'):
        out.append(f"  chern: rank {chern['rank']}, c1 = {chern['c1']}, c2 = {chern['c2']}")
    for block in report.get('splitting', []):
        flags = []
        if 'allowed' in block:
            flags.append('allowed' if block['allowed'] else 'NOT ALLOWED')
        if block.get('jumping'):
            flags.append('jumping line')
        out.append(f"  line {block['line']}: ({block['a']}, {block['b']}) coker {block['coker_dim']}"
                   + (f" [{', '.join(flags)}]" if flags else ''))
    generic = report.get('generic')
    if generic:
        out.append(f"  generic splitting over {generic['trials']} lines: ({generic['a']}, {generic['b']})"
                   + ('  (even degree, a = d2 - 1)' if generic.get('even_degree_drop') else ''))
    for theorem in report.get('theorems', []):
        out.append(f"  {theorem['theorem']}: {theorem['verdict']}")
    exactness = report.get('exactness')
    if exactness:
        out.append(f"  exact sequence up to degree {exactness['bound']}: {'passed' if exactness['passed'] else 'FAILED'}")
    epsilon = report.get('epsilon')
    if epsilon:
        out.append(f"  eps: {epsilon.get('eps', '-')} ({epsilon.get('route', epsilon.get('reason', ''))})")
    summary = report.get('summary')
    if summary:
        out.append('  summary: ' + ', '.join(f'{k} {v}' for k, v in sorted(summary.items())))
    return '\n'.join(out)
