"""Command line front end.

One subcommand per calculator question, a shared config file, optional
JSON reports, and stdin batching. Exit codes: 0 for success, 1 for a
negative check (a failed verify, a mismatch, a non-member, a
non-divisible class), 2 for usage or parse problems, 3 when a degree cap
or the rewrite fuel is hit, or a membership question is undecided.

Config files hold `key = value` lines (# comments allowed) with keys
max_degree, fuel, slack, coef.max_degree, and coef.generators (auto or a
comma-separated list of degrees). The BORDCALC_CONFIG environment
variable names a default config file; --config overrides it.
"""

import argparse
import json
import os
import sys
import time

from .charnum import sw_numbers, identify_in_nbo1
from .conner_floyd import FreeBZ2Elem
from .errors import (CapacityError, ContractViolation, FuelExhausted,
                     IntegrityError, NotDivisible, ParseError)
from .gf2 import GradedPoly
from .parsing import (parse_bundle, parse_laurent, parse_manifold,
                      parse_presentation, parse_space)
from .presentation import UNDECIDED
from .session import Session
from .verify import SUITES, verify

_EXPR_COMMANDS = ('nf', 'loc', 'alpha', 'gamma', 'divide-e', 'member',
                  'geometric', 'quotient', 'phi', 'delta', 'compare', 'charnum')


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true',
                        help='emit a JSON report instead of plain text')
    common.add_argument('--config', help='config file path')
    common.add_argument('--fuel', type=int, help='rewrite step budget')
    common.add_argument('--slack', type=int, help='membership window slack')

    parser = argparse.ArgumentParser(
        prog='bordcalc',
        description='exact calculator for Z/2-equivariant unoriented bordism')
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name, help_text, expr_help=None):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if expr_help is not None:
            p.add_argument('expr', nargs='?', help=expr_help + ' (stdin batch when omitted)')
        return p

    add('nf', 'rewrite onto the additive basis', 'presentation expression')
    add('loc', 'localize to the Laurent model', 'presentation expression')
    add('alpha', 'augment to the coefficient ring', 'presentation expression')
    add('gamma', 'apply the Gamma operator', 'presentation expression')
    add('divide-e', 'divide by the Euler class when possible', 'presentation expression')
    p = add('member', 'find a preimage of a Laurent class', 'laurent expression')
    add('geometric', 'test membership in the geometric subring', 'presentation expression')
    add('quotient', 'reduce into the obstruction quotient', 'presentation expression')
    p = add('euler', 'the Euler class e^k on suspension leg m')
    p.add_argument('m', type=int)
    p.add_argument('k', type=int)
    add('phi', 'bundle-algebra image of a manifold expression', 'manifold expression')
    add('delta', 'boundary of a bundle class', 'bundle expression')
    add('compare', 'compare the two localizations of a manifold expression',
        'manifold expression')
    p = add('charnum', 'Stiefel-Whitney numbers of a space', 'space expression')
    p.add_argument('--ref', help='degree-1 generator used as reference line')
    p = add('verify', 'run internal consistency suites')
    p.add_argument('--suite', default='all', choices=SUITES + ('all',))
    p.add_argument('--degree', type=int, default=6)
    p = add('basis-table', 'list additive basis monomials by degree')
    p.add_argument('--min', dest='dmin', type=int, default=0)
    p.add_argument('--max', dest='dmax', type=int, default=4)
    p.add_argument('--e-cap', dest='e_cap', type=int)
    p.add_argument('--strict', action='store_true',
                   help='require strictly larger X factors')
    return parser


def _load_config(path):
    keys = {'max_degree': int, 'fuel': int, 'slack': int,
            'coef.max_degree': int, 'coef.generators': str}
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ValueError('%s:%d: expected key = value' % (path, lineno))
            key, _, value = line.partition('=')
            key = key.strip()
            value = value.strip()
            if key not in keys:
                raise ValueError('%s:%d: unknown key %s' % (path, lineno, key))
            try:
                out[key] = keys[key](value)
            except ValueError:
                raise ValueError('%s:%d: bad value for %s' % (path, lineno, key))
    return out


def _session_from(args):
    cfg = {}
    path = args.config or os.environ.get('BORDCALC_CONFIG')
    if path:
        cfg = _load_config(path)
    kwargs = {}
    if 'max_degree' in cfg:
        kwargs['max_degree'] = cfg['max_degree']
    if 'coef.max_degree' in cfg:
        kwargs['coef_max_degree'] = cfg['coef.max_degree']
    if 'coef.generators' in cfg and cfg['coef.generators'] != 'auto':
        degrees = tuple(int(part) for part in cfg['coef.generators'].split(','))
        kwargs['generator_degrees'] = degrees
    kwargs['fuel'] = args.fuel if args.fuel is not None else cfg.get('fuel', 500000)
    kwargs['slack'] = args.slack if args.slack is not None else cfg.get('slack', 4)
    return Session(**kwargs)


def _handle_nf(s, args, expr):
    x = parse_presentation(expr, s.mo)
    nf = s.mo.normal_form(x)
    return 0, {'normal_form': nf.to_text(),
               'complication': s.mo.complication(x)}, [nf.to_text()]


def _handle_loc(s, args, expr):
    x = parse_presentation(expr, s.mo)
    loc = s.mo.localize(x)
    return 0, {'localization': loc.to_text()}, [loc.to_text()]


def _handle_alpha(s, args, expr):
    x = parse_presentation(expr, s.mo)
    out = s.mo.alpha(x)
    return 0, {'alpha': out.to_text()}, [out.to_text()]


def _handle_gamma(s, args, expr):
    x = parse_presentation(expr, s.mo)
    out = s.mo.normal_form(s.mo.gamma(x))
    return 0, {'gamma': out.to_text()}, [out.to_text()]


def _handle_divide_e(s, args, expr):
    x = parse_presentation(expr, s.mo)
    try:
        out = s.mo.normal_form(s.mo.divide_e(x))
    except NotDivisible as exc:
        detail = 'not divisible: augmentation is %s' % exc.remainder.to_text()
        return 1, {'divisible': False,
                   'remainder': exc.remainder.to_text()}, [detail]
    return 0, {'divisible': True, 'quotient': out.to_text()}, [out.to_text()]


def _handle_member(s, args, expr):
    target = parse_laurent(expr, s.laurent)
    found = s.mo.member(target)
    if found is UNDECIDED:
        return 3, {'member': 'undecided'}, ['undecided within slack']
    if found is None:
        return 1, {'member': False}, ['not in the image']
    nf = s.mo.normal_form(found)
    return 0, {'member': True, 'preimage': nf.to_text()}, [nf.to_text()]


def _handle_geometric(s, args, expr):
    x = parse_presentation(expr, s.mo)
    nf = s.mo.normal_form(x)
    ok = s.mo.is_geometric(x)
    code = 0 if ok else 1
    return code, {'geometric': ok, 'normal_form': nf.to_text()}, [
        'geometric' if ok else 'not geometric: %s' % nf.to_text()]


def _handle_quotient(s, args, expr):
    x = parse_presentation(expr, s.mo)
    q = s.mo.quotient_reduce(x)
    return 0, {'quotient': q.to_text()}, [q.to_text()]


def _handle_euler(s, args, expr):
    out = s.mo.euler(args.m, args.k)
    return 0, {'euler': out.to_text()}, [out.to_text()]


def _handle_phi(s, args, expr):
    terms = parse_manifold(expr, s.coef)
    total = GradedPoly.zero(s.table)
    for t in terms:
        total = total + s.geometry.phi(t)
    return 0, {'phi': total.to_text()}, [total.to_text()]


def _handle_delta(s, args, expr):
    poly = parse_bundle(expr, s.geometry)
    out = s.geometry.delta(poly)
    return 0, {'delta': out.to_text()}, [out.to_text()]


def _handle_compare(s, args, expr):
    terms = parse_manifold(expr, s.coef)
    bundle = GradedPoly.zero(s.table)
    point = s.mo.zero()
    for t in terms:
        bundle = bundle + s.geometry.phi(t)
        point = point + s.geometry.pt_class(t)
    left = s.geometry.dictionary(bundle)
    right = s.mo.localize(point)
    equal = left == right
    checks = [{'name': 'dictionary o phi = localize o point class',
               'passed': equal, 'detail': ''}]
    lines = ['ok %s' % left.to_text() if equal
             else 'mismatch: dictionary gives %s, localization gives %s'
             % (left.to_text(), right.to_text())]
    return (0 if equal else 1), {'dictionary': left.to_text(),
                                 'localization': right.to_text(),
                                 'equal': equal}, lines, checks


def _handle_charnum(s, args, expr):
    space = parse_space(expr)
    ref = space.gen(args.ref) if args.ref else None
    numbers = sw_numbers(space, ref)
    named = {}
    for (omega, k), bit in sorted(numbers.items()):
        if not bit:
            continue
        name = 'w[%s]' % ','.join(str(p) for p in omega)
        if k:
            name += '*r^%d' % k
        named[name] = 1
    lines = ['%s = 1' % name for name in sorted(named)] or ['all zero']
    outputs = {'dimension': space.dim, 'numbers': named}
    if ref is not None:
        parts = identify_in_nbo1(space, ref, s.coef)
        ident = FreeBZ2Elem(s.table, parts)
        outputs['identify'] = ident.to_text()
        lines.append('class: %s' % ident.to_text())
    return 0, outputs, lines


def _handle_verify(s, args, expr):
    checks = verify(s, args.suite, args.degree)
    lines = []
    for c in checks:
        mark = 'ok' if c.passed else 'FAIL'
        lines.append('%s %s%s' % (mark, c.name,
                                  ' (%s)' % c.detail if c.detail else ''))
    failed = [c for c in checks if not c.passed]
    lines.append('%d checks, %d failed' % (len(checks), len(failed)))
    code = 1 if failed else 0
    payload = [{'name': c.name, 'passed': c.passed, 'detail': c.detail}
               for c in checks]
    return code, {'failed': len(failed), 'total': len(checks)}, lines, payload


def _handle_basis_table(s, args, expr):
    if args.dmin > args.dmax:
        raise ContractViolation('--min must not exceed --max')
    lines = []
    table = {}
    for d in range(args.dmin, args.dmax + 1):
        fms = s.mo.basis_monomials(d, e_cap=args.e_cap, strict=args.strict)
        texts = [s.mo.single(fm).to_text() for fm in fms]
        table[str(d)] = texts
        lines.append('degree %d: %d monomials' % (d, len(texts)))
        lines.extend('  %s' % t for t in texts)
    return 0, {'table': table}, lines


_HANDLERS = {
    'nf': _handle_nf,
    'loc': _handle_loc,
    'alpha': _handle_alpha,
    'gamma': _handle_gamma,
    'divide-e': _handle_divide_e,
    'member': _handle_member,
    'geometric': _handle_geometric,
    'quotient': _handle_quotient,
    'euler': _handle_euler,
    'phi': _handle_phi,
    'delta': _handle_delta,
    'compare': _handle_compare,
    'charnum': _handle_charnum,
    'verify': _handle_verify,
    'basis-table': _handle_basis_table,
}


def _describe_inputs(args, expr):
    if args.command == 'euler':
        return {'m': args.m, 'k': args.k}
    if args.command == 'verify':
        return {'suite': args.suite, 'degree': args.degree}
    if args.command == 'basis-table':
        return {'min': args.dmin, 'max': args.dmax}
    inputs = {'expr': expr}
    if args.command == 'charnum' and args.ref:
        inputs['ref'] = args.ref
    return inputs


def _run_one(session, args, expr):
    start = time.monotonic()
    checks = []
    try:
        result = _HANDLERS[args.command](session, args, expr)
        if len(result) == 4:
            code, outputs, lines, checks = result
        else:
            code, outputs, lines = result
    except (ParseError, ContractViolation) as exc:
        code, outputs, lines = 2, {'error': str(exc)}, ['error: %s' % exc]
    except (CapacityError, FuelExhausted) as exc:
        code, outputs, lines = 3, {'error': str(exc)}, ['error: %s' % exc]
    except (NotDivisible, IntegrityError) as exc:
        code, outputs, lines = 1, {'error': str(exc)}, ['error: %s' % exc]
    elapsed = int((time.monotonic() - start) * 1000)
    if args.json:
        report = {'schema': 'bordcalc.report/1', 'command': args.command,
                  'inputs': _describe_inputs(args, expr), 'outputs': outputs,
                  'checks': checks, 'elapsed_ms': elapsed}
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        session = _session_from(args)
    except (OSError, ValueError) as exc:
        print('error: %s' % exc, file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print('error: %s' % exc, file=sys.stderr)
        return 2
    needs_expr = args.command in _EXPR_COMMANDS
    if needs_expr and args.expr is None:
        code = 0
        for raw in sys.stdin:
            line = raw.strip()
            if not line:
                continue
            code = max(code, _run_one(session, args, line))
        return code
    expr = args.expr if needs_expr else None
    return _run_one(session, args, expr)


if __name__ == '__main__':
    sys.exit(main())
