"""
Dispatch of command-line runs to the engine and the constructions.

``VerifierManager`` maps ``(command, action)`` to a handler, applies the run's caps,
times the run, records it as a :class:`~shifts.models.VerificationRun` and turns the
outcome into the exit-code contract: 0 success, 1 a verified bound failed, 2 usage,
input or cap errors.
"""

import logging
import time
from fractions import Fraction

import numpy as np
from django.conf import settings
from django.db import DatabaseError
from tqdm import tqdm

from .conf import current_caps, default_seed, override_caps
from .constructions import coded, oxtoby, proximal, tower
from .constructions.checks import Check
from .engine import markov, measures, metrics, sofic, spectra
from .engine.exceptions import BoundViolation, EmptyShiftError, InvalidParameter, ShiftError
from .engine.formats import format_word, load_graph, parse_point, parse_rational, parse_word
from .engine.words import Alphabet, dstar_block
from .forms import RunConfigForm
from .models import VerificationRun
from .reports import Report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2

# argparse and Django plumbing that is not part of the run configuration
_IGNORED_OPTIONS = {'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color',
                    'force_color', 'skip_checks', 'stdout', 'stderr'}


def _int_list(text):
    try:
        return tuple(int(part) for part in str(text).split(',') if part.strip())
    except ValueError:
        raise InvalidParameter(f"Expected comma-separated integers, got {text!r}")


def _words(texts, alphabet=None):
    return [parse_word(text, alphabet) for text in texts or []]


def _fmt(word, alphabet_size=2):
    return format_word(word, alphabet_size)


class VerifierManager:
    """Routes each run to its handler and applies the exit-code contract"""

    def __init__(self):
        self.handlers = {
            ('analyze', ''): self.analyze,
            ('couple', ''): self.couple,
            ('rauzy', 'build'): self.rauzy_build,
            ('rauzy', 'probe'): self.rauzy_probe,
            ('trace', 'best'): self.trace_best,
            ('trace', 'probe'): self.trace_probe,
            ('trace', 'project'): self.trace_project,
            ('langdist', ''): self.langdist,
            ('transport', 'dbar'): self.transport_dbar,
            ('transport', 'dstar'): self.transport_dstar,
            ('transport', 'alpha'): self.transport_alpha,
            ('transport', 'cycles'): self.transport_cycles,
            ('transport', 'block'): self.transport_block,
            ('spectrum', 'lambda'): self.spectrum_lambda,
            ('spectrum', 'gamma'): self.spectrum_gamma,
            ('spectrum', 'center'): self.spectrum_center,
            ('oxtoby', 'gen'): self.oxtoby_gen,
            ('oxtoby', 'verify'): self.oxtoby_verify,
            ('tower', 'build'): self.tower_build,
            ('tower', 'verify'): self.tower_verify,
            ('proximal', 'build'): self.proximal_build,
            ('proximal', 'intersect'): self.proximal_intersect,
            ('proximal', 'shadow'): self.proximal_shadow,
            ('coded', 'stats'): self.coded_stats,
            ('coded', 'min-t'): self.coded_min_t,
            ('coded', 'sample'): self.coded_sample,
            ('coded', 'shadow'): self.coded_shadow,
            ('coded', 'connect'): self.coded_connect,
            ('coded', 'witness'): self.coded_witness,
        }

    def actions(self, command):
        return sorted(action for name, action in self.handlers if name == command)

    def run(self, command, action='', options=None, record=True):
        """Execute one run; returns ``(report, exit_code)``"""
        options = dict(options or {})
        config = {k: v for k, v in sorted(options.items()) if k not in _IGNORED_OPTIONS}
        form = RunConfigForm(data={k: v for k, v in options.items() if v is not None})
        seed = default_seed(options.get('seed'))
        report = Report(command=command, action=action or '', config=config, seed=seed)
        start_time = time.time()
        job = self._start_record(command, action, config, seed) if record else None

        try:
            if not form.is_valid():
                raise InvalidParameter(f"Invalid configuration: {form.error_text()}")
            handler = self.handlers.get((command, action or ''))
            if handler is None:
                raise InvalidParameter(f"Unknown action {action!r} for {command}")
            with override_caps(**form.cap_overrides()):
                report.caps = current_caps()
                handler(report, options, seed)
            if report.failed_checks:
                failed = report.failed_checks[0]
                logger.warning("%s %s: bound %s failed (%s %s %s)", command, action, failed.name,
                               failed.lhs, failed.relation, failed.rhs)
                report.status = 'violated'
                exit_code = EXIT_VIOLATED
            else:
                exit_code = EXIT_OK
        except BoundViolation as e:
            logger.warning("%s %s: %s", command, action, e)
            report.status = 'violated'
            report.error = str(e)
            exit_code = EXIT_VIOLATED
        except ShiftError as e:
            logger.warning("%s %s: %s", command, action, e)
            report.status = 'error'
            report.error = str(e)
            exit_code = EXIT_USAGE
        except Exception as e:
            logger.exception("Unexpected failure in %s %s", command, action)
            report.status = 'error'
            report.error = f"{type(e).__name__}: {e}"
            exit_code = EXIT_USAGE

        self._finish_record(job, report, exit_code, time.time() - start_time)
        return report, exit_code

    # -- run records ----------------------------------------------------------

    def _recording(self):
        return getattr(settings, 'SHIFTS_RECORD_RUNS', True)

    def _start_record(self, command, action, config, seed):
        if not self._recording():
            return None
        try:
            return VerificationRun.objects.create(
                command=command, action=action or '', config=_json_safe(config),
                seed=seed, status='running',
            )
        except DatabaseError as e:
            logger.warning("Run not recorded: %s", e)
            return None

    def _finish_record(self, job, report, exit_code, elapsed):
        if job is None:
            return
        job.status = {EXIT_OK: 'passed', EXIT_VIOLATED: 'violated'}.get(exit_code, 'failed')
        job.exit_code = exit_code
        job.report = report.as_dict()
        job.processing_time = elapsed
        job.error_message = report.error
        try:
            job.save()
        except DatabaseError as e:
            logger.warning("Run %s not updated: %s", job.pk, e)

    # -- inputs ---------------------------------------------------------------

    def _graph(self, options):
        """``--forbidden`` words define an SFT; otherwise ``--graph`` is loaded"""
        alphabet = Alphabet(options.get('alphabet_size') or 2)
        if options.get('forbidden'):
            return markov.forbidden_word_graph(_words(options['forbidden'], alphabet), alphabet)
        path = options.get('graph')
        if not path:
            raise InvalidParameter("Supply --graph PATH or --forbidden WORD ...")
        return load_graph(path)

    def _horizon(self, options, default):
        return options.get('horizon') or default

    def _progress(self, options, **kwargs):
        return tqdm(disable=options.get('verbosity', 1) == 0, **kwargs)

    # -- sofic presentations --------------------------------------------------

    def analyze(self, report, options, seed):
        g = self._graph(options)
        shift = sofic.SoficShift(sofic.prune(g))
        n = self._horizon(options, 8)
        bounds = sofic.entropy_bounds(shift, n, options.get('cycle_length'))
        report.graph = shift.presentation
        report.result = {
            'vertices': shift.presentation.vertex_count,
            'edges': len(shift.presentation.edges),
            'connected': shift.strongly_connected,
            'period': shift.period,
            'component_periods': sofic.component_periods(shift.presentation),
            'safe_symbols': sorted(shift.safe_symbols),
            'mixing': shift.mixing,
            # a verdict on this presentation only; another one may be mixing
            'mixing_scope': 'presentation',
            'entropy_bounds': {
                'n': bounds.n, 'lower': bounds.lower, 'upper': bounds.upper,
                'spectral': bounds.spectral, 'cycle_length': bounds.cycle_length,
                'word_count': bounds.word_count, 'cycle_words': bounds.lower_count,
                'cycle_words_length': bounds.lower_length,
            },
        }
        cycle_power, word_power = bounds.certificate()
        report.checks.append(Check.at_most('entropy_lower_below_upper', cycle_power, word_power,
                                           detail='N_v(c)^n <= |L_n|^c'))

    def couple(self, report, options, seed):
        graphs = [sofic.prune(load_graph(path)) for path in options.get('graphs') or []]
        if len(graphs) < 2:
            raise InvalidParameter("couple needs at least two graphs")
        factors = [sofic.SoficShift(g) for g in graphs]
        common_safe = frozenset.intersection(*(f.safe_symbols for f in factors))
        periods = [f.period for f in factors]
        coprime = all(f.strongly_connected for f in factors) and all(
            np.gcd(a, b) == 1 for i, a in enumerate(periods) for b in periods[i + 1:]
        )
        report.result = {
            'factor_periods': periods,
            'factor_connected': [f.strongly_connected for f in factors],
            'common_safe_symbols': sorted(common_safe),
        }
        try:
            coupled = sofic.SoficShift(sofic.couple(graphs))
        except EmptyShiftError:
            report.result.update({'empty': True, 'connected': False, 'period': 0, 'mixing': False})
            return
        report.graph = coupled.presentation
        report.result.update({
            'empty': False,
            'vertices': coupled.presentation.vertex_count,
            'edges': len(coupled.presentation.edges),
            'connected': coupled.strongly_connected,
            'period': coupled.period,
            'mixing': coupled.mixing,
            'mixing_scope': 'presentation',
            'safe_symbols': sorted(coupled.safe_symbols),
        })
        if common_safe and coprime:
            report.checks.append(Check.truth('coupling_connected', coupled.strongly_connected,
                                             detail='common safe symbol and coprime periods'))

    def _oracle(self, options):
        if options.get('words'):
            words = _words(options['words'])
            return markov.PrefixOracle(words, max_length=min(len(w) for w in words))
        return markov.GraphOracle(self._graph(options))

    def rauzy_build(self, report, options, seed):
        oracle = self._oracle(options)
        n = self._horizon(options, 3)
        approximation = markov.markov_approximation(oracle, n)
        g = approximation.presentation
        report.graph = g
        report.result = {
            'order': n,
            'vertices': g.vertex_count,
            'edges': len(g.edges),
            'connected': approximation.strongly_connected,
            'period': approximation.period,
            'mixing': approximation.mixing,
        }
        limit = n + 1
        if oracle.max_length is not None:
            limit = min(limit, oracle.max_length)
        for j in range(1, limit + 1):
            read, expected = set(sofic.language(g, j)), set(oracle.words(j))
            report.checks.append(Check.equal(f'language_identity[{j}]', len(read ^ expected), 0,
                                             detail=f'{len(read)} words read, {len(expected)} expected'))

    def rauzy_probe(self, report, options, seed):
        oracle = self._oracle(options)
        levels, mixing_from = markov.chain_mixing_probe(oracle, self._horizon(options, 6))
        report.result = {
            'levels': [{
                'n': level.n, 'vertices': level.vertices, 'edges': level.edges,
                'connected': level.strongly_connected, 'period': level.period,
                'component_periods': level.component_periods, 'mixing': level.mixing,
            } for level in levels],
            'mixing_from': mixing_from,
        }

    # -- tracing --------------------------------------------------------------

    def trace_best(self, report, options, seed):
        g = self._graph(options)
        target = parse_word(options.get('word') or '', g.alphabet)
        trace = metrics.best_trace(g, target)
        report.result = {'target': _fmt(target, g.alphabet.size), 'cost': trace.cost,
                         'witness': _fmt(trace.witness, g.alphabet.size)}

    def trace_probe(self, report, options, seed):
        g = self._graph(options)
        segments = _words(options.get('segments'), g.alphabet)
        horizon = self._horizon(options, sum(len(s) for s in segments))
        report.result = {'horizon': horizon, 'cost': metrics.eps_tracing_probe(g, segments, horizon)}

    def trace_project(self, report, options, seed):
        g = self._graph(options)
        words = _words(options.get('words'), g.alphabet)
        projection = spectra.project_to_center(words, g, options.get('block') or 1)
        size = g.alphabet.size
        report.result = {
            'block_length': projection.block_length,
            'filler': _fmt(projection.filler, size),
            'words': [_fmt(w, size) for w in projection.words],
            'replaced_fraction': projection.replaced_fraction,
            'changed_fraction': projection.changed_fraction,
        }

    def langdist(self, report, options, seed):
        paths = options.get('graphs') or []
        if len(paths) != 2:
            raise InvalidParameter("langdist compares exactly two graphs")
        X, Y = (load_graph(p) for p in paths)
        distance = metrics.lang_hausdorff_hamming(
            X, Y, self._horizon(options, 6), mode=options.get('mode') or 'exact',
            samples=options.get('samples') or 200, seed=seed,
        )
        report.result = {
            'horizon': distance.horizon, 'mode': distance.mode, 'value': distance.value,
            'lower_bound': distance.lower_bound, 'x_side': distance.x_side, 'y_side': distance.y_side,
            'witness': _fmt(distance.witness, X.alphabet.size) if distance.witness else None,
            'samples': distance.samples,
        }

    # -- measures and transport -----------------------------------------------

    def _measure(self, text, level):
        """A periodic orbit measure from ``'per'`` or ``'pre|per'`` (the preperiod has no mass)"""
        point = parse_point(text) if '|' in text else parse_point(f'|{text}')
        return measures.from_periodic(point.period, level)

    def _pair(self, options, n):
        if not options.get('mu') or not options.get('nu'):
            raise InvalidParameter("Supply --mu and --nu")
        return self._measure(options['mu'], n), self._measure(options['nu'], n)

    def transport_dbar(self, report, options, seed):
        n = self._horizon(options, 3)
        mu, nu = self._pair(options, n)
        result = measures.transport_dbar_n(mu, nu, n)
        report.result = {'level': n, 'value': result.value, 'joining': _joining(result.witness)}
        report.checks.append(Check.truth('joining_marginals', result.witness.satisfies_marginals(mu, nu)))
        report.checks.append(Check.equal('joining_cost', result.witness.cost(), result.value))

    def transport_dstar(self, report, options, seed):
        n = self._horizon(options, 3)
        mu, nu = self._pair(options, n)
        value = measures.dstar_n(mu, nu, n)
        check = measures.alpha_good_joining(mu, nu, n, value)
        report.result = {'level': n, 'value': value}
        report.checks.append(Check.truth('least_alpha_feasible', check.feasible))

    def transport_alpha(self, report, options, seed):
        n = self._horizon(options, 3)
        mu, nu = self._pair(options, n)
        alpha = parse_rational(options.get('alpha') or '0')
        check = measures.alpha_good_joining(mu, nu, n, alpha)
        report.result = {'level': n, 'alpha': alpha, 'feasible': check.feasible, 'off_mass': check.off_mass,
                         'joining': _joining(check.witness) if check.witness else None}

    def transport_cycles(self, report, options, seed):
        paths = options.get('graphs') or []
        if len(paths) != 2:
            raise InvalidParameter("Cycle measures are compared between exactly two graphs")
        X, Y = (load_graph(p) for p in paths)
        n = self._horizon(options, 2)
        max_len = options.get('max_len') or 4
        left = measures.cycle_measures(X, max_len, level=n)
        right = measures.cycle_measures(Y, max_len, level=n)
        report.result = {
            'level': n, 'max_len': max_len,
            'x_cycles': [_fmt(w) for w in measures.periodic_label_words(X, max_len)],
            'y_cycles': [_fmt(w) for w in measures.periodic_label_words(Y, max_len)],
            'hausdorff': measures.hausdorff_dbar_n(left, right, n),
        }

    def transport_block(self, report, options, seed):
        K = self._horizon(options, 3)
        block = parse_word(options.get('block') or '')
        mu = self._measure(options.get('mu') or '', K)
        value, tail = dstar_block(block, mu, K)
        report.result = {'levels': K, 'value': value, 'tail_bound': tail}

    # -- spectra --------------------------------------------------------------

    def spectrum_lambda(self, report, options, seed):
        g = self._graph(options)
        w = parse_word(options.get('word') or '', g.alphabet)
        frequency = spectra.Lambda(g, w)
        report.result = {'word': _fmt(w, g.alphabet.size), 'value': frequency.value,
                         'witness_cycle': _fmt(frequency.witness_cycle, g.alphabet.size)}
        if frequency.witness_cycle:
            cycle = frequency.witness_cycle
            # cyclic count: the cycle repeated enough to see every wrap-around occurrence
            repeats = len(w) // len(cycle) + 2
            cyclic = spectra.gamma(w, cycle * repeats) - spectra.gamma(w, cycle * (repeats - 1))
            report.checks.append(Check.equal('witness_cycle_frequency', Fraction(cyclic, len(cycle)),
                                             frequency.value))

    def spectrum_gamma(self, report, options, seed):
        g = self._graph(options)
        w = parse_word(options.get('word') or '', g.alphabet)
        n = self._horizon(options, 8)
        count = spectra.Gamma(g, w, n)
        frequency = spectra.Lambda(g, w)
        report.result = {'word': _fmt(w, g.alphabet.size), 'n': n, 'gamma': count, 'lambda': frequency.value}
        report.checks.append(Check.at_most('fekete_bound', frequency.value, Fraction(count + len(w) - 1, n)))

    def spectrum_center(self, report, options, seed):
        g = self._graph(options)
        center = spectra.measure_center(g)
        report.graph = center.presentation
        report.result = {'vertices': center.presentation.vertex_count, 'edges': len(center.presentation.edges),
                         'connected': center.strongly_connected, 'period': center.period}

    # -- constructions --------------------------------------------------------

    def _scale(self, options):
        if options.get('scale'):
            return oxtoby.OxtobyScale(_int_list(options['scale']))
        return oxtoby.OxtobyScale.geometric(options.get('ratio') or 100, options.get('terms') or 4)

    def oxtoby_gen(self, report, options, seed):
        scale = self._scale(options)
        length = options.get('length') or min(scale.p[-1], 64)
        report.result = {'scale': scale.p, 'length': length,
                         'prefix': _fmt(oxtoby.oxtoby_prefix(scale, length))}

    def oxtoby_verify(self, report, options, seed):
        scale = self._scale(options)
        delta = parse_rational(options.get('delta') or '1/10')
        k = options.get('k') or scale.top - 1
        outcome = oxtoby.oxtoby_verify(scale, delta, k)
        report.result = {'scale': scale.p, 'delta': delta, 'scale_sum': scale.scale_sum(),
                         'levels': outcome.levels}
        report.checks.extend(outcome.checks)

    def _tower(self, options):
        params = tower.TowerParams.canonical(options.get('depth') or 3,
                                             parse_rational(options.get('ratio') or '1/4'))
        return tower.tower_build(params, options.get('depth') or 3)

    def tower_build(self, report, options, seed):
        built = self._tower(options)
        report.result = {
            'depth': built.depth,
            'truncated': built.truncated,
            'levels': [{
                'k': level.k, 'length': len(level.V), 'a': level.a, 'b': level.b,
                'W': _fmt(built.params.W[level.k]),
                'V': _fmt(level.V) if len(level.V) <= 256 else None,
            } for level in built.levels],
        }

    def tower_verify(self, report, options, seed):
        built = self._tower(options)
        report.result = {'depth': built.depth, 'truncated': built.truncated,
                         'lengths': [len(level.V) for level in built.levels]}
        report.checks.extend(tower.tower_verify(built))

    def _proximal(self, options):
        return proximal.ProximalParams(base=options.get('base') or 10,
                                       gaps=_int_list(options.get('gaps') or ''),
                                       depth=max(3, (options.get('n') or 1) + 1))

    def proximal_build(self, report, options, seed):
        params = self._proximal(options)
        n = options.get('n') or 1
        shift = sofic.SoficShift(proximal.proximal_graph(params, n))
        witnesses, checks = proximal.proximal_separation_witnesses(params, n)
        report.graph = shift.presentation
        report.result = {
            'n': n, 'vertices': shift.presentation.vertex_count, 'gap': params.gap(n),
            'connected': shift.strongly_connected, 'period': shift.period,
            'safe_symbols': sorted(shift.safe_symbols),
            'witnesses': {k: _fmt(v) for k, v in witnesses.items()},
        }
        report.checks.append(Check.truth('hereditary_edges', proximal.hereditary_at_edges(shift.presentation)))
        report.checks.append(Check.truth('zero_is_safe', 0 in shift.safe_symbols))
        report.checks.extend(checks)

    def proximal_intersect(self, report, options, seed):
        params = self._proximal(options)
        n = options.get('n') or 1
        shift = proximal.proximal_intersection(params, n)
        report.graph = shift.presentation
        report.result = {'n': n, 'vertices': shift.presentation.vertex_count,
                         'connected': shift.strongly_connected, 'period': shift.period,
                         'safe_symbols': sorted(shift.safe_symbols)}
        report.checks.append(Check.truth('mixing', shift.mixing))
        report.checks.append(Check.truth('zero_is_safe', 0 in shift.safe_symbols))

    def proximal_shadow(self, report, options, seed):
        params = self._proximal(options)
        n = options.get('n') or 1
        length = options.get('length') or 10 ** 5
        points = options.get('points') or 1
        offset = options.get('offset') or 0
        rows = []
        for index in self._progress(options, iterable=range(points), desc='points', unit='point'):
            x = proximal.proximal_random_word(params, n, length, seed=seed + index)
            shadow = proximal.proximal_zeroing_shadow(params, x, n, offset)
            rows.append({'seed': seed + index, 'changed': shadow.changed, 'density': shadow.density})
            report.checks.extend(
                Check(f'{c.name}[{index}]', c.ok, c.lhs, c.relation, c.rhs, c.detail) for c in shadow.checks
            )
        report.result = {'n': n, 'length': length, 'offset': offset,
                         'bound': Fraction(params.gap(n + 1), params.size(n + 1)), 'points': rows}

    def _coded(self, options):
        epsilon = options.get('epsilon')
        params = coded.CodedParams(
            B1=tuple(_words(options.get('b1'))) or coded.DEFAULT_B1,
            t=_int_list(options.get('t') or ''),
            epsilon=parse_rational(epsilon) if epsilon else None,
            mode=options.get('mode') or 'both',
        )
        return coded.CodedSystem(params)

    def coded_stats(self, report, options, seed):
        system = self._coded(options)
        depth = options.get('depth') or max(2, len(system.params.t) + 1)
        levels = []
        for n in range(1, depth + 1):
            stats = system.stats(n)
            entry = {'n': n, 'k': stats.k, 's': stats.s, 'ell': stats.ell, 'tau': stats.tau,
                     'ratio': Fraction(stats.s, stats.ell), 'enumerated': system.enumerable(n)}
            if system.enumerable(n):
                entry['lengths'] = sorted({len(w) for w in system.words(n)})
            levels.append(entry)
        report.result = {'t': [system.t(n) for n in range(1, depth)], 'levels': levels}
        report.checks.extend(coded.coded_level_checks(system, depth - 1))

    def coded_min_t(self, report, options, seed):
        system = self._coded(options)
        n = options.get('n') or 1
        stats = system.stats(n)
        table = coded.min_t_table(stats, system.params.epsilon)
        report.result = {'n': n, 'table': table}
        mode = options.get('mode') or 'structural'
        report.result['mode'] = mode
        report.result['least_t'] = coded.coded_min_t(stats, mode, system.params.epsilon)

    def coded_sample(self, report, options, seed):
        system = self._coded(options)
        n = options.get('n') or 1
        if options.get('length'):
            rng = np.random.default_rng(seed)
            word = system.word_of_length(n, options['length'], rng)
            report.result = {'n': n, 'length': len(word), 'word': _fmt(word)}
            report.checks.append(Check.truth('member_of_code', system.contains(n, word)))
            return
        samples = coded.coded_sample(system, n, options.get('count') or 1, seed)
        report.result = {'n': n, 'words': [_fmt(w) for w in samples]}

    def coded_shadow(self, report, options, seed):
        system = self._coded(options)
        n = options.get('n') or 1
        count = options.get('blocks') or 10 ** 4
        blocks = coded.coded_sample(system, n, count, seed)
        with self._progress(options, desc='rounds', unit='round') as bar:
            shadow = coded.coded_shadow_next(system, blocks, n, progress=bar)
        report.result = {
            'n': n, 't': system.t(n), 'blocks': count, 'rounds': shadow.rounds,
            'z_length': shadow.z_length, 'mismatches': shadow.mismatches,
            'density': shadow.density, 'bound': shadow.bound,
        }
        report.checks.extend(shadow.checks)
        report.checks.extend(coded.verify_coded_shadow(system, blocks, shadow))

    def coded_connect(self, report, options, seed):
        system = self._coded(options)
        n = options.get('n') or 1
        u, v = parse_word(options.get('u') or ''), parse_word(options.get('v') or '')
        if options.get('m_range'):
            low, high = options['m_range']
        else:
            low = high = options.get('m') or 2 * system.stats(n).s
        rows = []
        for m in range(low, high + 1):
            connection = coded.coded_connect(system, u, v, m, n)
            checks = coded.verify_connection(system, u, v, m, connection)
            rows.append({'m': m, 'case': connection.case, 'level': connection.level,
                         'w': _fmt(connection.w) if len(connection.w) <= 256 else None,
                         'certificate_level': connection.certificate_level})
            report.checks.extend(
                Check(f'{c.name}[m={m}]', c.ok, c.lhs, c.relation, c.rhs, c.detail) for c in checks
            )
        report.result = {'n': n, 'u': _fmt(u), 'v': _fmt(v), 'connections': rows}

    def coded_witness(self, report, options, seed):
        system = self._coded(options)
        n = options.get('n') or 1
        u = parse_word(options.get('u') or '')
        verdict = coded.coded_minimality_witness(system, n, u, options.get('samples') or 100, seed)
        report.result = {'n': n, 'u': _fmt(u), **verdict}
        report.checks.append(Check.truth('occurs_in_every_word', verdict['holds']))


def _joining(joining):
    return [{'u': _fmt(u), 'w': _fmt(w), 'mass': p} for (u, w), p in sorted(joining.mass.items())]


def _json_safe(config):
    safe = {}
    for key, value in config.items():
        if isinstance(value, (list, tuple)):
            value = [str(v) if not isinstance(v, (int, float, str)) else v for v in value]
        elif not isinstance(value, (int, float, str, bool, type(None))):
            value = str(value)
        safe[key] = value
    return safe


# Create a singleton instance
verifier_manager = VerifierManager()
