# -*- coding: utf-8 -*-
"""
Command line interface::

    dglaformal cohom --algebra M
    dglaformal formality --input algebras.dgla --algebra L --r-max 4 --json out.json
    dglaformal transfer --morphism i --direction forward

Exit codes: 0 when a result was computed (a NON_FORMAL verdict included),
1 for invalid input, 2 for an undetermined result under
``--require-conclusive``, 64 for usage errors.
"""
from __future__ import absolute_import, print_function
import argparse
import io
import json
import logging
import os
import sys
from timeit import default_timer

try:
    from cytoolz import merge
except ImportError:
    from toolz import merge

from dglaformal import dsl
from dglaformal.ce_complex import BicomplexWindow, as_module, build_window, sign_twist
from dglaformal.enveloping import pbw_report
from dglaformal.exceptions import DGLAFormalError, DSLError
from dglaformal.formality import (
    DEFAULT_R_MAX, default_cutoffs, massey_triple, nonformality_search,
    transfer_backward, transfer_forward,
)
from dglaformal.graded import (
    DGLA, DGLAMorphism, cohomology, identity_morphism, validate_dgla, validate_morphism,
)
from dglaformal.group_actions import invariants_subalgebra, retraction_check, validate_action
from dglaformal.maurer_cartan import mc_system
from dglaformal.report import Report, Table, dims_table
from dglaformal.spectral import (
    LadderClass, SpectralSequence, check_ladder, euler_obstruction, kunneth_table,
)
from dglaformal.utils import sha256_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNDETERMINED = 2
EXIT_USAGE = 64

DEFAULT_P_MAX = 2
DEFAULT_TRUNCATION = 3
DEFAULT_INPUT = os.path.join(os.path.dirname(__file__), 'data', 'nonexample.dgla')

VISIBLE_COMMANDS = ('validate', 'cohom', 'mc', 'ce', 'page', 'euler', 'formality',
                    'transfer', 'pbw', 'invariants')


class UsageParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    common = UsageParser(add_help=False)
    common.add_argument('--input', default=DEFAULT_INPUT, help=".dgla file (default: bundled example)")
    common.add_argument('--algebra', help="algebra name (default: first declared)")
    common.add_argument('--morphism', help="morphism name")
    common.add_argument('--p-max', type=int, help="last column of the CE window")
    common.add_argument('--r-max', type=int, help="last page to examine (default %d)" % DEFAULT_R_MAX)
    common.add_argument('--truncation', type=int, help="PBW truncation N (default %d)" % DEFAULT_TRUNCATION)
    common.add_argument('--json', metavar='PATH', help="also write the JSON report to PATH")
    common.add_argument('--require-conclusive', action='store_true',
                        help="exit with 2 when the result depends on the cutoffs")
    common.add_argument('-v', '--verbose', action='count', default=0)

    parser = UsageParser(prog='dglaformal', description="Formality checks for finite DG-Lie algebras")
    commands = parser.add_subparsers(dest='command', metavar='{%s}' % ",".join(VISIBLE_COMMANDS))
    commands.required = True
    commands.add_parser('validate', parents=[common], help="check the axioms")
    commands.add_parser('cohom', parents=[common], help="cohomology and induced bracket")
    commands.add_parser('mc', parents=[common], help="Maurer-Cartan equations")
    commands.add_parser('ce', parents=[common], help="Chevalley-Eilenberg window")
    page = commands.add_parser('page', parents=[common], help="one spectral sequence page")
    page.add_argument('--page', type=int, default=2, dest='page_r', metavar='R')
    commands.add_parser('euler', parents=[common], help="Euler class obstruction")
    formality = commands.add_parser('formality', parents=[common], help="non-formality search")
    formality.add_argument('--massey', action='store_true', help="add triple Massey products")
    transfer = commands.add_parser('transfer', parents=[common], help="formality transfer along a morphism")
    transfer.add_argument('--direction', choices=['forward', 'backward'], default='forward')
    transfer.add_argument('--assert-formal', metavar='NAME',
                          help="take formality of NAME for granted")
    commands.add_parser('pbw', parents=[common], help="PBW checks on a truncated enveloping algebra")
    invariants = commands.add_parser('invariants', parents=[common], help="invariants of a finite action")
    invariants.add_argument('--action', required=True)
    check = commands.add_parser('check-certificate', parents=[common])
    check.add_argument('certificate', help="JSON report holding a certificate")
    return parser


def _configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _subject(doc, args):
    if args.morphism:
        f = doc.morphism(args.morphism)
        return f.source, f
    L = doc.algebra(args.algebra)
    return L, identity_morphism(L)


def _conclusive_status(args, conclusive):
    if args.require_conclusive and not conclusive:
        return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_validate(doc, args):
    if args.morphism:
        reports = [validate_morphism(doc.morphism(args.morphism))]
    elif args.algebra:
        reports = [validate_dgla(doc.algebra(args.algebra))]
    else:
        reports = []
        for name, value in doc.models.items():
            if isinstance(value, DGLA):
                reports.append(validate_dgla(value))
            elif isinstance(value, DGLAMorphism):
                reports.append(validate_morphism(value))
            else:
                reports.append(validate_action(value))
    ok = all(r.ok for r in reports)
    summary = "valid" if ok else "invalid: %s" % ", ".join(
        "%s (%s)" % (r.subject, ", ".join(r.rules_violated())) for r in reports if not r.ok)
    report = Report('validate', None, result={'valid': ok, 'reports': reports}, summary=summary)
    return report, EXIT_OK if ok else EXIT_INVALID


def cmd_cohom(doc, args):
    L = doc.algebra(args.algebra)
    H = cohomology(L)
    classes = [{'class': name, 'degree': k, 'representative': L.basis.format(rep)}
               for k, _, name, rep in H.classes]
    names = [name for _, _, name, _ in H.classes]
    bracket = [[names[a], names[b], H.basis().format(value)]
               for (a, b), value in sorted(H.bracket.items()) if a <= b]
    result = {'algebra': L.name, 'dims': H.dims(), 'classes': classes}
    tables = [
        dims_table("H(%s)" % L.name, H.dims()),
        Table("classes", ['class', 'degree', 'representative'],
              [[c['class'], c['degree'], c['representative']] for c in classes]),
    ]
    if bracket:
        tables.append(Table("induced bracket", ['a', 'b', '[a, b]'], bracket))
    result['bracket'] = bracket
    summary = "H(%s): %s" % (L.name, ", ".join("H^%d=%d" % kv for kv in sorted(H.dims().items())) or "0")
    return Report('cohom', None, result=result, tables=tables, summary=summary), EXIT_OK


def cmd_mc(doc, args):
    L = doc.algebra(args.algebra)
    system = mc_system(L)
    data = system.to_dict()
    rows = [[e['generator'], e['cleared'], e['raw']] for e in data['equations']]
    table = Table("Maurer-Cartan equations of %s" % L.name, ['generator', 'equation = 0', 'raw'], rows)
    summary = "%d equations in %d variables" % (len(system), len(system.variables))
    return Report('mc', None, result=merge({'algebra': L.name}, data), tables=[table],
                  summary=summary), EXIT_OK


def cmd_ce(doc, args):
    L, f = _subject(doc, args)
    p_max = args.p_max if args.p_max is not None else DEFAULT_P_MAX
    window = build_window(L, coefficients=f if args.morphism else None, p_max=p_max,
                          verbose=args.verbose > 0).materialize()
    identities = window.check_identities()
    dims = window.dims()
    kunneth = kunneth_table(window)
    rows = [[p, q, e1, hom] for (p, q), (e1, hom) in sorted(kunneth.items())]
    tables = [
        dims_table("CE^(p,q)", dims, ('p', 'q')),
        Table("E_1 against Hom(H^p, H)", ['p', 'q', 'dim E_1', 'dim Hom'], rows),
    ]
    result = {'dims': dims, 'identities': identities, 'kunneth': kunneth}
    summary = "%d cells, identities %s" % (len(dims), "hold" if identities.ok else "FAIL")
    report = Report('ce', None, cutoffs={'p_max': p_max}, result=result, tables=tables,
                    summary=summary, twist=window.twist)
    return report, EXIT_OK if identities.ok else EXIT_INVALID


def cmd_page(doc, args):
    L, f = _subject(doc, args)
    p_max = args.p_max if args.p_max is not None else DEFAULT_P_MAX
    window = BicomplexWindow(as_module(f if args.morphism else L), p_max, verbose=args.verbose > 0)
    r = args.page_r
    page = SpectralSequence(window).page(r)
    dims = page.dims()
    ranks = {pq: m.rank() for pq, m in sorted(page.differentials().items())}
    rows = [[p, q, dim, ranks.get((p, q))] for (p, q), dim in sorted(dims.items())]
    table = Table("E_%d" % r, ['p', 'q', 'dim', 'rank d_%d' % r], rows)
    unknown = [pq for pq, dim in dims.items() if dim is None]
    result = {'r': r, 'dims': dims, 'd_ranks': ranks, 'unknown_cells': sorted(unknown)}
    summary = "E_%d: %d known cells, %d nonzero differentials" % (
        r, len(dims) - len(unknown), sum(1 for v in ranks.values() if v))
    report = Report('page', None, cutoffs={'p_max': p_max}, result=result, tables=[table],
                    summary=summary, twist=window.twist)
    return report, _conclusive_status(args, not unknown)


def _window_info(L, f, args, p_max):
    return {'algebra': L.name, 'morphism': f.name if args.morphism else None, 'p_max': p_max}


def cmd_euler(doc, args):
    L, f = _subject(doc, args)
    r_max = args.r_max if args.r_max is not None else DEFAULT_R_MAX
    p_max = args.p_max if args.p_max is not None else r_max + 2
    obstruction = euler_obstruction(f, r_max, p_cutoff=p_max, verbose=args.verbose > 0)
    result = merge(obstruction.to_dict(), {'window': _window_info(L, f, args, p_max)})
    if obstruction.found:
        summary = "d_%d(e_f) != 0" % obstruction.r
    elif obstruction.undetermined:
        summary = "no obstruction up to r=%d, higher pages not computable" % obstruction.checked_up_to
    else:
        summary = "no obstruction up to r=%d" % r_max
    report = Report('euler', None, cutoffs={'p_max': p_max, 'r_max': r_max}, result=result,
                    summary=summary, twist=sign_twist())
    return report, _conclusive_status(args, obstruction.found)


def cmd_formality(doc, args):
    L = doc.algebra(args.algebra)
    p_cutoff, r_max = default_cutoffs(args.p_max, args.r_max)
    verdict = nonformality_search(L, p_cutoff, r_max, verbose=args.verbose > 0)
    result = merge(verdict.to_dict(), {'window': {'algebra': L.name, 'morphism': None, 'p_max': p_cutoff}})
    if args.massey:
        H = cohomology(L)
        products = []
        for n, (k, _, name, rep) in enumerate(H.classes):
            if k == 1:
                products.append(merge({'class': name}, massey_triple(L, rep, H).to_dict()))
        result['massey'] = products
    report = Report('formality', None, cutoffs={'p_cutoff': p_cutoff, 'r_max': r_max},
                    result=result, summary=verdict.describe(), twist=verdict.twist)
    return report, _conclusive_status(args, verdict.conclusive)


def cmd_transfer(doc, args):
    f = doc.morphism(args.morphism)
    formal_side = f.target if args.direction == 'forward' else f.source
    if args.assert_formal and args.assert_formal != formal_side.name:
        raise DGLAFormalError("--assert-formal must name %s for a %s transfer" % (
            formal_side.name, args.direction))
    transfer = transfer_forward if args.direction == 'forward' else transfer_backward
    verdict = transfer(f, args.p_max, args.r_max, assert_formal=bool(args.assert_formal),
                  verbose=args.verbose > 0)
    rows = [[p, 2 - p, src, dst, rank, rank == src]
            for p, (src, dst, rank) in sorted(verdict.injectivity.ranks.items())]
    table = Table("%s map on E_2^(p,2-p)" % args.direction,
                  ['p', 'q', 'dim source', 'dim target', 'rank', 'injective'], rows)
    report = Report('transfer', None, cutoffs={'p_cutoff': verdict.p_cutoff, 'r_max': verdict.r_max},
                    result=verdict.to_dict(), tables=[table], summary=verdict.describe(),
                    twist=sign_twist())
    return report, _conclusive_status(args, verdict.conclusive)


def cmd_pbw(doc, args):
    L = doc.algebra(args.algebra)
    N = args.truncation if args.truncation is not None else DEFAULT_TRUNCATION
    data = pbw_report(L, N)
    degrees = sorted(set(data['dims_U']) | set(data['dims_S']))
    rows = [[k, data['dims_U'].get(k, 0), data['dims_S'].get(k, 0)] for k in degrees]
    table = Table("F_%d U(%s) against S^<=%d" % (N, L.name, N), ['degree', 'dim U', 'dim S'], rows)
    ok = (data['e_bijective'] and data['e_commutes_with_d']
          and not data['derivation_identity_failures'] and data['complement_ok'] is not False)
    summary = "PBW checks %s up to N=%d" % ("pass" if ok else "FAIL", N)
    report = Report('pbw', None, cutoffs={'truncation': N}, result=merge({'algebra': L.name}, data),
                    tables=[table], summary=summary)
    return report, EXIT_OK


def cmd_invariants(doc, args):
    action = doc.action(args.action)
    validity = validate_action(action)
    if not validity.ok:
        report = Report('invariants', None, result={'action': validity},
                        summary="invalid action: %s" % ", ".join(validity.rules_violated()))
        return report, EXIT_INVALID
    L, inclusion = invariants_subalgebra(action)
    retraction = retraction_check(action)
    M = action.algebra
    rows = [[L.basis.name(i), L.basis.degree(i), M.basis.format(inclusion.image(i))] for i in range(L.dim)]
    table = Table("invariants of %s" % M.name, ['generator', 'degree', 'in %s' % M.name], rows)
    result = {
        'action': validity,
        'dims': {k: L.basis.dim(k) for k in L.basis.degree_set()},
        'retraction': retraction,
    }
    summary = "dim %s^G = %d, retraction %s" % (M.name, L.dim, "holds" if retraction.ok else "fails")
    return Report('invariants', None, result=result, tables=[table], summary=summary), EXIT_OK


def cmd_check_certificate(doc, args):
    with io.open(args.certificate, encoding='utf-8') as f:
        data = json.load(f)
    result = data.get('result', data)
    certificate, info = result.get('certificate'), result.get('window')
    if certificate is None or info is None:
        raise DGLAFormalError("%s holds no certificate" % args.certificate)
    if info.get('morphism'):
        coefficients = doc.morphism(info['morphism'])
    else:
        coefficients = doc.algebra(info['algebra'])
    window = BicomplexWindow(as_module(coefficients), int(info['p_max']))
    ladder = LadderClass.from_dict(certificate, window)
    checked = check_ladder(window, ladder)
    summary = "certificate %s" % ("valid" if checked.ok else "INVALID")
    report = Report('check-certificate', None, cutoffs={'p_max': window.p_max},
                    result={'check': checked}, summary=summary, twist=window.twist)
    return report, EXIT_OK if checked.ok else EXIT_INVALID


COMMANDS = {
    'validate': cmd_validate,
    'cohom': cmd_cohom,
    'mc': cmd_mc,
    'ce': cmd_ce,
    'page': cmd_page,
    'euler': cmd_euler,
    'formality': cmd_formality,
    'transfer': cmd_transfer,
    'pbw': cmd_pbw,
    'invariants': cmd_invariants,
    'check-certificate': cmd_check_certificate,
}


def run(argv=None, stdout=None):
    """ Run one command; returns the exit code """
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        with io.open(args.input, 'rb') as f:
            raw = f.read()
        doc = dsl.parse(raw.decode('utf-8'))
        start = default_timer()
        report, status = COMMANDS[args.command](doc, args)
        report.elapsed = default_timer() - start
    except DSLError as e:
        for diagnostic in e.diagnostics:
            print("%s:%s" % (args.input, diagnostic), file=sys.stderr)
        return EXIT_INVALID
    except (DGLAFormalError, IOError, UnicodeDecodeError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INVALID
    report.input_sha256 = sha256_text(raw)
    if args.json:
        with io.open(args.json, 'w', encoding='utf-8') as f:
            f.write(report.to_json())
    stdout.write(report.render())
    return status


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
