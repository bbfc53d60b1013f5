import io
import json
import logging

import click

from jkronpy import INTERLACE_TOL
from jkronpy.constructions import FIXTURES, GeneratorSpec, check_contract, fixture, generate
from jkronpy.errors import CertificateFails, JKronError, NotRational, PreconditionFail
from jkronpy.exact import certify_skew_extremal, to_rational
from jkronpy.exports import (JSON, TEXT, RecordWriter, claims_table, dumps_record, format_matrix, read_matrix,
                             spectrum_table)
from jkronpy.interlacing import PROPERTIES, default_tol, interlace_report
from jkronpy.reproduce import REPRODUCERS, reproduce as run_reproduce
from jkronpy.search import SearchConfig, run_search
from jkronpy.spectra import spectrum_split

CONTEXT_SETTINGS = dict(help_option_names=['-h', '--help'])
CLAIMS_HOLD, CLAIM_FAILS, INPUT_ERROR = 0, 1, 2


class InputFailure(click.ClickException):
    exit_code = INPUT_ERROR


def _emit(ctx, text):
    out = ctx.obj['out']
    if out:
        with open(out, 'w') as fh:
            fh.write(text if text.endswith('\n') else text + '\n')
    else:
        click.echo(text.rstrip('\n'))


def _emit_json(ctx, data):
    _emit(ctx, json.dumps(data, indent=2, sort_keys=True))


def _read_pair(a_path, b_path, exact=False):
    try:
        return read_matrix(a_path, exact=exact), read_matrix(b_path, exact=exact)
    except (JKronError, OSError) as e:
        raise InputFailure(str(e))


@click.group(context_settings=CONTEXT_SETTINGS)
@click.option('--tol', type=float, default=None,
              help='Relative verdict tolerance. Default: {}'.format(INTERLACE_TOL))
@click.option('--seed', type=int, default=0, help='Seed for searches and sampled suites.')
@click.option('--format', 'fmt', type=click.Choice(['json', 'csv']), default='json',
              help='Report format.')
@click.option('--out', type=click.Path(dir_okay=False, writable=True), default=None,
              help='Write the report to this file instead of standard output.')
@click.option('-v', '--verbose', count=True, help='Log progress (-v) or solver details (-vv).')
@click.pass_context
def cli(ctx, tol, seed, fmt, out, verbose):
    """Spectra of Jordan-Kronecker products and their interlacing properties"""
    level = logging.WARNING if not verbose else logging.INFO if verbose == 1 else logging.DEBUG
    logging.getLogger().setLevel(level)
    if not logging.getLogger().handlers:
        logging.basicConfig(level=level)
    ctx.ensure_object(dict)
    ctx.obj.update(tol=tol, seed=seed, fmt=fmt, out=out)


@cli.command(context_settings=CONTEXT_SETTINGS)
@click.argument('a_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('b_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def spectrum(ctx, a_file, b_file):
    """Even and odd spectrum of A⊗B + B⊗A"""
    a, b = _read_pair(a_file, b_file)
    try:
        split = spectrum_split(a, b)
    except JKronError as e:
        raise InputFailure(str(e))
    if ctx.obj['fmt'] == 'csv':
        _emit(ctx, spectrum_table(split).to_csv(index=False))
        return
    _emit_json(ctx, {
        'n': split.source_dims,
        'symmetry': split.symmetry,
        'even_values': [float(v) for v in split.even_values],
        'odd_values': [float(v) for v in split.odd_values],
        'min_parity': split.min_parity,
        'max_parity': split.max_parity,
        'block_residual': split.block_residual,
    })


@cli.command(context_settings=CONTEXT_SETTINGS)
@click.argument('a_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('b_file', type=click.Path(exists=True, dir_okay=False))
@click.option('-p', '--property', 'prop', type=click.Choice(list(PROPERTIES) + ['all']), default='all',
              help='Property to check.')
@click.pass_context
def check(ctx, a_file, b_file, prop):
    """Check weak, full or strong interlacing; exits 1 if a checked property fails"""
    a, b = _read_pair(a_file, b_file)
    try:
        split = spectrum_split(a, b)
    except JKronError as e:
        raise InputFailure(str(e))
    report = interlace_report(split, default_tol(split, ctx.obj['tol']))
    checked = PROPERTIES if prop == 'all' else (prop,)
    data = report.to_dict()
    data['checked'] = list(checked)
    _emit_json(ctx, data)
    ctx.exit(CLAIMS_HOLD if all(report.verdict(p) for p in checked) else CLAIM_FAILS)


@cli.command(context_settings=CONTEXT_SETTINGS)
@click.argument('fixture_id', required=False, type=click.Choice(sorted(FIXTURES)))
@click.option('--a', 'a_file', type=click.Path(exists=True, dir_okay=False), help='Matrix file for A.')
@click.option('--b', 'b_file', type=click.Path(exists=True, dir_okay=False), help='Matrix file for B.')
@click.option('--witness', type=click.Path(exists=True, dir_okay=False), help='Skew-symmetric witness W.')
@click.option('--shift', default=None, help='Exact shift, e.g. 19/2.')
@click.pass_context
def certify(ctx, fixture_id, a_file, b_file, witness, shift):
    """Exact certificate that the smallest eigenvector is skew-symmetric"""
    if fixture_id:
        f = fixture(fixture_id)
        pair_id, a, b, w, bound = f.id, f.a, f.b, f.witness, f.shift
    elif a_file and b_file and witness:
        pair_id = 'custom'
        a, b = _read_pair(a_file, b_file, exact=True)
        try:
            w = read_matrix(witness, exact=True)
        except JKronError as e:
            raise InputFailure(str(e))
        bound = None
    else:
        raise click.UsageError('Give a fixture id, or --a, --b and --witness')
    try:
        if shift is not None:
            bound = to_rational(shift)
        if w is None or bound is None:
            raise PreconditionFail('Unsupported: no exact witness and shift for {}'.format(pair_id))
        certificate = certify_skew_extremal(pair_id, a, b, w, bound)
    except CertificateFails as e:
        _emit_json(ctx, {'pair_id': pair_id, 'conclusion': 'CertificateFails', 'stage': e.stage,
                         'message': str(e)})
        ctx.exit(CLAIM_FAILS)
    except (PreconditionFail, NotRational) as e:
        _emit_json(ctx, {'pair_id': pair_id, 'conclusion': 'Unsupported', 'message': str(e)})
        ctx.exit(INPUT_ERROR)
    except JKronError as e:
        raise InputFailure(str(e))
    _emit_json(ctx, certificate.to_json())


def _range(value):
    low, high = value
    return int(low), int(high)


@cli.command(context_settings=CONTEXT_SETTINGS)
@click.option('--n-range', nargs=2, type=int, default=(3, 5), help='Inclusive dimension range.')
@click.option('--rank-range', nargs=2, type=int, default=None,
              help='Inclusive rank range. Default: 1 3, or 2 2 for skew-symmetric pairs.')
@click.option('--symmetry', type=click.Choice(['symmetric', 'skew']), default='symmetric')
@click.option('--trials', type=int, default=100)
@click.option('-p', '--property', 'props', multiple=True, type=click.Choice(PROPERTIES),
              help='Property to check. May be specified more than once. Default: all.')
@click.option('--conjecture', is_flag=True, help='Draw positive definite pairs only.')
@click.option('--workers', type=int, default=None, help='Worker threads.')
@click.option('--summary', type=click.Path(dir_okay=False, writable=True), default=None,
              help='Write the summary JSON to this file.')
@click.pass_context
def search(ctx, n_range, rank_range, symmetry, trials, props, conjecture, workers, summary):
    """Seeded randomized search for interlacing violations"""
    if not rank_range:
        rank_range = (2, 2) if symmetry == 'skew' else (1, 3)
    config = SearchConfig(_range(n_range), _range(rank_range), symmetry, trials, ctx.obj['seed'],
                          tuple(props) or PROPERTIES, ctx.obj['tol'], conjecture, workers)
    try:
        config.validate()
    except JKronError as e:
        raise InputFailure(str(e))
    if ctx.obj['fmt'] == 'csv':
        buffer = io.StringIO()
        result = _run_search(config)
        writer = RecordWriter(buffer)
        writer.addrecords(result.records)
        writer.writerecords()
        _emit(ctx, buffer.getvalue())
        if not summary:
            logging.info('Search summary: {}'.format(dumps_record(result.summary)))
    elif ctx.obj['out']:
        with open(ctx.obj['out'], 'w') as fh:
            result = _run_search(config, fh)
    else:
        result = _run_search(config, _EchoStream())
    if summary:
        with open(summary, 'w') as fh:
            json.dump(result.summary, fh, indent=2, sort_keys=True)
    elif ctx.obj['fmt'] == 'json':
        click.echo(dumps_record(result.summary))


class _EchoStream(object):
    """Forwards trial lines to click.echo as they arrive."""

    def write(self, text):
        click.echo(text, nl=False)


def _run_search(config, sink=None):
    try:
        return run_search(config, sink=sink)
    except JKronError as e:
        raise InputFailure(str(e))


@cli.command('generate', context_settings=CONTEXT_SETTINGS)
@click.argument('spec')
@click.option('--matrix-format', type=click.Choice([TEXT, JSON]), default=TEXT, help='Matrix file format.')
@click.pass_context
def generate_pair(ctx, spec, matrix_format):
    """Generate a pair from a JSON generator spec (or @path to one)"""
    try:
        if spec.startswith('@'):
            with open(spec[1:]) as fh:
                spec = fh.read()
        generator = GeneratorSpec.from_json(spec)
        a, b = generate(generator)
        check_contract(generator, a, b)
    except (JKronError, OSError) as e:
        raise InputFailure(str(e))
    out = ctx.obj['out']
    suffix = 'json' if matrix_format == JSON else 'txt'
    if out:
        paths = ['{}_a.{}'.format(out, suffix), '{}_b.{}'.format(out, suffix)]
        for path, m in zip(paths, (a, b)):
            with open(path, 'w') as fh:
                fh.write(format_matrix(m, matrix_format))
        click.echo(json.dumps({'spec': generator.to_json(), 'files': paths}, sort_keys=True))
    else:
        click.echo(format_matrix(a, matrix_format) + format_matrix(b, matrix_format), nl=False)


@cli.command(context_settings=CONTEXT_SETTINGS)
@click.argument('item', type=click.Choice(list(REPRODUCERS)))
@click.option('--samples', type=int, default=None, help='Samples per sampled claim.')
@click.pass_context
def reproduce(ctx, item, samples):
    """Reproduce a named claim set; exits 1 if a claim fails"""
    try:
        claims = run_reproduce(item, seed=ctx.obj['seed'], samples=samples)
    except JKronError as e:
        raise InputFailure(str(e))
    if ctx.obj['fmt'] == 'csv':
        _emit(ctx, claims_table(claims).to_csv(index=False))
    else:
        _emit(ctx, '\n'.join(c.line() for c in claims))
    ctx.exit(CLAIMS_HOLD if all(c.passed for c in claims) else CLAIM_FAILS)

