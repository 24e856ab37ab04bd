"""
``muntz.cli``
=============

Reproducible experiment driver. Each subcommand reads a flat
``key = value`` configuration, runs one pipeline and writes a CSV table
(preceded by a ``#`` metadata block) plus gnuplot-ready series data.

.. autosummary::
   :toctree: generated/

   ExperimentConfig
   parse_config
   load_config
   run
   main

"""

import argparse
import hashlib
import json
import logging
from dataclasses import dataclass, asdict, replace
from pathlib import Path

import numpy as np
import pandas as pd

from . import __version__
from ._utils import (DEFAULT_TOL, GRID_NODES, MAX_ITER, OBJECTIVE_RTOL,
                     RANK_TOL, MuntzValidationError, NumericalError)
from ._exponents import validate_exponents, perturbation_threshold
from ._functions import (MuntzPolynomial, change_of_variables_check,
                         q_alpha_contraction_delta, q_alpha_norm_bound,
                         q_alpha_norm_ratio)
from ._quadrature import lp_norm
from ._fourier import FourierCoeffs, summation_matrix
from ._weil import (PsiBetaSpec, weil_derivative, reconstruct,
                    weil_class_norm)
from ._rates import rate_table, sample_class
from ._perturb import compose_s, step_table
from ._basis import (generate_candidates, gaussian_exclusion, inclination,
                     finite_basis_constant)

logger = logging.getLogger(__name__)

WEIL_DEGREE = 16

_ALIASES = {'exponent_spec': 'exponents', 'output_path': 'output'}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Settings shared by every subcommand.

    Parameters
    ----------
    exponents : str
        Exponent spec, e.g. ``quad:1,0,0,6``.
    p : float
        Norm exponent in (1, inf). Default =2.
    delta : float
        Boundary layer parameter. Default =0.8.
    gamma : float
        Power-law exponent of psi(k) = k^-gamma. Default =0.5.
    alpha : float
        Exponent scale of Q_alpha. Default =2.
    shift : float
        Uniform exponent shift of the perturbation chain. Default =0.05.
    samples : int
        Random samples per statistic. Default =200.
    funcs : int
        Difference basis functions fed to the basis pipeline.
        Default =3.
    n_grid : tuple of int
        Strictly increasing orders. Default =(8, 16, 32, 64, 128).
    seed : int
        Default =0.
    output : str, optional
        CSV path; ``<subcommand>.csv`` when not given.
    sigma : bool
        Compose sampled functions with sigma in ``rates``.
        Default =False.
    """
    exponents: str = 'quad:1,0,0,6'
    p: float = 2.0
    delta: float = 0.8
    gamma: float = 0.5
    alpha: float = 2.0
    shift: float = 0.05
    samples: int = 200
    funcs: int = 3
    n_grid: tuple = (8, 16, 32, 64, 128)
    seed: int = 0
    output: str = None
    sigma: bool = False

    def digest(self):
        """sha256 of the canonical JSON form, output path excluded."""
        state = asdict(self)
        state.pop('output')
        state['n_grid'] = list(state['n_grid'])
        text = json.dumps(state, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(text.encode('utf-8')).hexdigest()


def _parse_bool(text):
    value = text.lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError('expected a boolean, got {!r}'.format(text))


def _parse_n_grid(text):
    """``8,16,24`` or the dyadic range ``8..128`` (8, 16, ..., 128)."""
    if '..' in text:
        lo, _, hi = text.partition('..')
        lo, hi = int(lo), int(hi)
        if lo < 1 or hi < lo:
            raise ValueError('dyadic range needs 1 <= a <= b')
        grid = []
        n = lo
        while n <= hi:
            grid.append(n)
            n *= 2
    else:
        grid = [int(v) for v in text.split(',') if v.strip()]
    if not grid or min(grid) < 1:
        raise ValueError('n_grid needs positive orders')
    if np.any(np.diff(grid) <= 0):
        raise ValueError('n_grid must be strictly increasing')
    return tuple(grid)


def _parse_p(text):
    p = float(text)
    if not 1 < p < np.inf:
        raise ValueError('p must lie in (1, inf), got {}'.format(text))
    return p


def _parse_exponents(text):
    validate_exponents(text)
    return text


_PARSERS = {'exponents': _parse_exponents,
            'p': _parse_p,
            'delta': float,
            'gamma': float,
            'alpha': float,
            'shift': float,
            'samples': int,
            'funcs': int,
            'n_grid': _parse_n_grid,
            'seed': int,
            'output': str,
            'sigma': _parse_bool}


def parse_config(text, source='config', base=None):
    """
    Parse flat ``key = value`` lines into an ExperimentConfig.

    Blank lines and ``#`` comments are ignored. Later lines override
    earlier ones, and every key overrides `base`.

    Raises
    ------
    MuntzValidationError
        ``source:line:column: message`` for the first bad line.

    Examples
    --------
    >>> from muntz.cli import parse_config
    >>> parse_config('p = 3\\nn_grid = 8..32').n_grid
    (8, 16, 32)
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.partition('#')[0]
        if not line.strip():
            continue

        def fail(col, message):
            raise MuntzValidationError(
                '{}:{}:{}: {}'.format(source, lineno, col, message),
                index=lineno)

        key, sep, value = line.partition('=')
        key_col = len(key) - len(key.lstrip()) + 1
        if not sep:
            fail(key_col, "expected 'key = value'")
        key = key.strip()
        name = _ALIASES.get(key, key)
        if name not in _PARSERS:
            fail(key_col, 'unknown key {!r}'.format(key))
        value_col = len(line) - len(value.lstrip()) + 1
        value = value.strip()
        if not value:
            fail(value_col, 'missing value for {!r}'.format(key))
        try:
            values[name] = _PARSERS[name](value)
        except ValueError as exc:
            fail(value_col, 'bad value for {!r}: {}'.format(key, exc))
    return replace(base or ExperimentConfig(), **values)


def load_config(path, base=None):
    """Read and parse a configuration file."""
    path = Path(path)
    return parse_config(path.read_text(encoding='utf-8'), source=str(path),
                        base=base)


def _seeded_polynomial(e, p, rng):
    f = MuntzPolynomial(rng.standard_normal(len(e)), e.lambdas)
    return f * (1.0 / lp_norm(f, p, (0.0, 1.0)))


def _run_validate(cfg, jobs):
    e = validate_exponents(cfg.exponents)
    logger.info('validated %d exponents', len(e))
    frame = pd.DataFrame([{'count': len(e),
                           'alpha0': e.alpha0,
                           'alpha1': e.alpha1,
                           'tail_bound': e.tail_bound,
                           'muntz_sum_bound': e.muntz_sum_bound,
                           'perturbation_threshold':
                               perturbation_threshold(e)}])
    return frame, {}, []


def _run_norms(cfg, jobs):
    e = validate_exponents(cfg.exponents)
    rows = []
    for lam in e.lambdas:
        value = lp_norm(lambda t: t ** lam, cfg.p, (0.0, 1.0))
        exact = (lam * cfg.p + 1.0) ** (-1.0 / cfg.p)
        rows.append({'lambda': lam, 'p': cfg.p, 'lp_norm': value,
                     'closed_form': exact, 'abs_error': abs(value - exact)})
    return pd.DataFrame(rows), {}, [('lambda', 'lp_norm'),
                                    ('lambda', 'closed_form')]


def _run_rates(cfg, jobs):
    e = validate_exponents(cfg.exponents)
    g = sample_class(e, cfg.p, 1, cfg.seed,
                     delta=cfg.delta if cfg.sigma else None)[0]
    logger.info('tabulating %d orders at p = %g', len(cfg.n_grid), cfg.p)
    table = rate_table(g, cfg.n_grid, cfg.p, jobs=jobs)
    meta = {'truncation_N': table.meta['N'],
            'best_maxiter': table.meta['maxiter'],
            'best_rtol': table.meta['rtol']}
    return table.to_frame(), meta, [('n', 'rho_n'), ('n', 'e_n')]


def _random_trig(degree, rng):
    a = rng.standard_normal(degree + 1)
    b = np.r_[0.0, rng.standard_normal(degree)]
    return FourierCoeffs(a, b)


def _coefficient_error(c1, c2):
    N = max(c1.N, c2.N)
    c1, c2 = c1.resized(N), c2.resized(N)
    return float(max(np.abs(c1.a - c2.a).max(), np.abs(c1.b - c2.b).max()))


def _run_weil(cfg, jobs):
    rng = np.random.default_rng(cfg.seed)
    c = _random_trig(WEIL_DEGREE, rng)
    rows = []
    for beta in (0.0, 0.5, 1.0, 1.0 - cfg.gamma):
        spec = PsiBetaSpec.power_law(cfg.gamma, beta=beta)
        back = reconstruct(weil_derivative(c, spec), spec, c.a[0])
        half = PsiBetaSpec.power_law(cfg.gamma / 2, beta=beta / 2)
        twice = weil_derivative(weil_derivative(c, half),
                                spec.quotient(half, WEIL_DEGREE))
        rows.append({'gamma': cfg.gamma,
                     'beta': beta,
                     'roundtrip_error': _coefficient_error(back, c),
                     'composition_error': _coefficient_error(
                         twice, weil_derivative(c, spec)),
                     'weil_norm': weil_class_norm(c, spec, cfg.p)})
    return pd.DataFrame(rows), {'degree': WEIL_DEGREE}, \
        [('beta', 'roundtrip_error'), ('beta', 'weil_norm')]


def _run_perturb(cfg, jobs):
    lam = validate_exponents(cfg.exponents)
    ups = lam.shifted(cfg.shift)
    f = _seeded_polynomial(lam, cfg.p, np.random.default_rng(cfg.seed))
    frame = step_table(lam, ups, f, cfg.p)
    _, accumulated = compose_s(lam, ups, f, cfg.p)
    logger.info('accumulated step bound %.6g', accumulated)
    meta = {'perturbation_threshold': perturbation_threshold(lam),
            'accumulated_bound': accumulated}
    return frame, meta, [('step', 'lhs'), ('step', 'bound')]


def _run_basis(cfg, jobs):
    e = validate_exponents(cfg.exponents)
    q = summation_matrix('fejer', max(cfg.n_grid))
    candidates = generate_candidates(e, cfg.delta, cfg.p, cfg.funcs,
                                     cfg.n_grid, q, jobs=jobs)
    family = gaussian_exclusion(candidates, cfg.p)
    logger.info('kept %d of %d candidates', len(family), len(candidates))
    rows = []
    for l in range(1, len(family) + 1):
        T = family.polys[l - 1]
        rows.append({
            'l': l,
            'pivot': family.pivots[l - 1],
            'leading': family.leading[l - 1],
            'degree': family.trailing[l - 1],
            'lp_norm': T.norm(cfg.p),
            'inclination': inclination(family, l, len(family) - l)
            if l < len(family) else np.nan,
            'basis_constant': finite_basis_constant(
                family, l, samples=cfg.samples, seed=cfg.seed)
            if l >= 2 else 1.0})
    meta = {'candidates': len(candidates), 'summation': q.kind}
    return pd.DataFrame(rows), meta, [('l', 'inclination'),
                                      ('l', 'basis_constant')]


def _run_isocheck(cfg, jobs):
    e = validate_exponents(cfg.exponents)
    rng = np.random.default_rng(cfg.seed)
    ratio, identity = 0.0, 0.0
    for _ in range(cfg.samples):
        f = MuntzPolynomial(rng.standard_normal(len(e)), e.lambdas)
        ratio = max(ratio, q_alpha_norm_ratio(f, cfg.alpha, cfg.delta, cfg.p))
        lhs, rhs = change_of_variables_check(f, cfg.alpha, cfg.delta, cfg.p)
        identity = max(identity, abs(lhs - rhs) / abs(lhs))
    frame = pd.DataFrame([{
        'alpha': cfg.alpha,
        'delta': cfg.delta,
        'p': cfg.p,
        'bound': q_alpha_norm_bound(cfg.alpha, cfg.delta, cfg.p),
        'max_ratio': ratio,
        'identity_rel_error': identity,
        'admissible_delta': q_alpha_contraction_delta(cfg.alpha)}])
    return frame, {'samples': cfg.samples}, []


SUBCOMMANDS = {'validate': _run_validate,
               'norms': _run_norms,
               'rates': _run_rates,
               'weil': _run_weil,
               'perturb': _run_perturb,
               'basis': _run_basis,
               'isocheck': _run_isocheck}


def _metadata(subcommand, cfg, meta):
    lines = ['muntz {}'.format(__version__),
             'subcommand: {}'.format(subcommand),
             'config_sha256: {}'.format(cfg.digest()),
             'seed: {}'.format(cfg.seed),
             'tolerances: quad_tol={:g} rank_tol={:g} max_iter={} rtol={:g}'
             .format(DEFAULT_TOL, RANK_TOL, MAX_ITER, OBJECTIVE_RTOL),
             'grid_nodes: {}'.format(GRID_NODES)]
    for key, value in asdict(cfg).items():
        if key != 'output':
            lines.append('config.{}: {}'.format(key, value))
    for key in sorted(meta):
        lines.append('{}: {}'.format(key, meta[key]))
    return ''.join('# {}\n'.format(line) for line in lines)


def _write_series(path, frame, series):
    """Two-column gnuplot blocks, one per (x, y) pair."""
    with open(path, 'w', newline='\n', encoding='utf-8') as fh:
        for i, (x, y) in enumerate(series):
            if i:
                fh.write('\n\n')
            fh.write('# {} {}\n'.format(x, y))
            block = frame[[x, y]].dropna()
            for xv, yv in zip(block[x], block[y]):
                fh.write('{!r} {!r}\n'.format(float(xv), float(yv)))


def run(subcommand, config, out=None, jobs=1):
    """
    Run one subcommand and write its CSV (and series) files.

    Parameters
    ----------
    subcommand : str
        One of ``validate, norms, rates, weil, perturb, basis, isocheck``.
    config : ExperimentConfig
    out : str or Path, optional
        CSV path. Default =config.output or ``<subcommand>.csv``.
    jobs : int, optional
        Worker threads; output does not depend on it. Default =1.

    Returns
    -------
    frame : pandas.DataFrame
        The table written.
    """
    if subcommand not in SUBCOMMANDS:
        raise ValueError("Subcommand {} not supported".format(subcommand))
    out = Path(out or config.output or '{}.csv'.format(subcommand))
    logger.info('running %s (config %s)', subcommand, config.digest()[:12])
    frame, meta, series = SUBCOMMANDS[subcommand](config, int(jobs))
    with open(out, 'w', newline='\n', encoding='utf-8') as fh:
        fh.write(_metadata(subcommand, config, meta))
        frame.to_csv(fh, index=False, float_format='%.17g', na_rep='nan',
                     lineterminator='\n')
    logger.info('wrote %d rows to %s', len(frame), out)
    if series:
        _write_series(out.with_suffix('.dat'), frame, series)
    return frame


def _build_parser():
    parser = argparse.ArgumentParser(
        prog='muntz', description='Numerical experiments on Müntz spaces.')
    parser.add_argument('subcommand', choices=sorted(SUBCOMMANDS))
    parser.add_argument('--config', help='key = value configuration file')
    parser.add_argument('--set', action='append', default=[],
                        metavar='KEY=VALUE',
                        help='override a configuration key (repeatable)')
    parser.add_argument('--seed', type=int, help='overrides the config seed')
    parser.add_argument('--out', help='CSV output path')
    parser.add_argument('--jobs', type=int, default=1,
                        help='worker threads (default 1)')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    return parser


def main(argv=None):
    """
    Command line entry point.

    Returns
    -------
    code : int
        0 on success, 1 on a validation error, 2 on a numerical failure.
    """
    args = _build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.captureWarnings(True)
    try:
        cfg = ExperimentConfig()
        if args.config:
            cfg = load_config(args.config, base=cfg)
        if args.set:
            cfg = parse_config('\n'.join(args.set), source='--set', base=cfg)
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        run(args.subcommand, cfg, out=args.out, jobs=args.jobs)
    except (MuntzValidationError, ValueError, OSError) as exc:
        logger.error('%s', exc)
        return 1
    except NumericalError as exc:
        logger.error('numerical failure: %s', exc)
        return 2
    return 0
