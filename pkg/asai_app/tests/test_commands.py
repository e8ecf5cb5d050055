import json
import os
import tempfile
from io import StringIO
from unittest.mock import patch

from django.core.cache import caches
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from asai_app.services import job_runner

LOCMEM = {'default': {'BACKEND': 'django.core.cache.backends.locmem.LocMemCache', 'LOCATION': 'asai-tests'}}
ENGINE = {
    'CACHE_ENABLED': False,
    'DEFAULT_PRIME': 5,
    'ORACLE_TOLERANCE': 1e-8,
    'ORACLE_MARGIN': 0.5,
    'NUMERIC_EPS': 1e-14,
}


def run(name, *args):
    out = StringIO()
    call_command(name, *args, stdout=out, stderr=StringIO())
    return json.loads(out.getvalue())


@override_settings(CACHES=LOCMEM, ASAI=ENGINE)
class CommandOutputTests(SimpleTestCase):
    def test_lfactor(self):
        document = run('lfactor', '--shape', 'split', '--p', '7')
        self.assertEqual(document['exit_code'], 0)
        self.assertEqual(document['result']['degree_in_T'], 8)
        self.assertEqual(document['result']['omega_k_minus_one'], 1)
        self.assertEqual(document['job']['command'], 'lfactor')

    def test_lfactor_numeric_satake(self):
        document = run('lfactor', '--shape', 'quad_line', '--satake', '2,1/2,3,-1')
        self.assertEqual(document['result']['degree_in_T'], 8)

    def test_gamma(self):
        document = run('gamma', '--p', '7', '--basis-disc', '0:1/27', '--psi-twist', '2')
        self.assertIn('gamma_psr', document['result'])
        self.assertIn('correction_factor', document['result'])

    def test_verify_theorem1(self):
        for shape in ('split', 'quad_line', 'cubic_unram', 'cubic_tame'):
            document = run('verify_theorem1', '--shape', shape, '--p', '11')
            self.assertTrue(document['result']['passed'], shape)

    def test_zeta_tame(self):
        document = run('zeta_tame', '--p', '7')
        self.assertTrue(document['result']['passed'])
        self.assertEqual(document['result']['measure'], 'vol(o_F)=vol(o_E^x)=1')

    def test_zeta_tame_equal_satake(self):
        document = run('zeta_tame', '--satake', '2,2')
        self.assertTrue(document['result']['passed'])
        self.assertIsNone(document['result']['Z0'])

    def test_whittaker(self):
        document = run('whittaker', '--p', '5', '--nmax', '4')
        self.assertTrue(document['result']['proportional'])
        self.assertEqual([row['n'] for row in document['result']['values']], [0, 1, 2, 3, 4])

    def test_oracle(self):
        document = run('oracle', '--q', '5', '--N', '40', '--D', '40')
        self.assertTrue(document['result']['within_tolerance'])
        self.assertEqual(document['job']['p'], '5')

    def test_deterministic_output(self):
        first = StringIO()
        second = StringIO()
        call_command('verify_theorem1', '--p', '13', stdout=first, stderr=StringIO())
        call_command('verify_theorem1', '--p', '13', stdout=second, stderr=StringIO())
        self.assertEqual(first.getvalue(), second.getvalue())

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'lfactor.json')
            out = StringIO()
            call_command('lfactor', '--shape', 'cubic_unram', '--out', path, stdout=out, stderr=StringIO())
            self.assertEqual(out.getvalue(), '')
            with open(path, encoding='utf-8') as handle:
                self.assertEqual(json.load(handle)['result']['degree_in_T'], 8)

    def test_spec_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'job.json')
            with open(path, 'w', encoding='utf-8') as handle:
                json.dump({'shape': 'split', 'p': 13}, handle)
            document = run('lfactor', '--spec', path, '--p', '7')
        self.assertEqual(document['job']['p'], '7')
        self.assertEqual(document['job']['shape'], 'split')


@override_settings(CACHES=LOCMEM, ASAI=ENGINE)
class ExitCodeTests(SimpleTestCase):
    def assertExitCode(self, code, name, *args):
        out = StringIO()
        with self.assertRaises(CommandError) as caught:
            call_command(name, *args, stdout=out, stderr=StringIO())
        self.assertEqual(caught.exception.returncode, code)
        return json.loads(out.getvalue())

    def test_wrong_satake_count(self):
        document = self.assertExitCode(2, 'lfactor', '--shape', 'split', '--satake', '1,2')
        self.assertEqual(document['error'], 'Invalid job specification')

    def test_malformed_values(self):
        self.assertExitCode(2, 'lfactor', '--satake', 'x,1')
        self.assertExitCode(2, 'lfactor', '--satake', '0.5,1')
        self.assertExitCode(2, 'lfactor', '--p', '9')
        self.assertExitCode(2, 'gamma', '--basis-disc', 'v:w')
        self.assertExitCode(2, 'oracle', '--s', '2+x')

    def test_unsupported_prime(self):
        document = self.assertExitCode(4, 'lfactor', '--shape', 'cubic_tame', '--p', '3')
        self.assertEqual(document['type'], 'UnsupportedPrimeError')

    def test_divergent_oracle(self):
        document = self.assertExitCode(2, 'oracle', '--s', '0.1')
        self.assertEqual(document['type'], 'OracleRejected')

    def test_basis_outside_reference_class(self):
        document = self.assertExitCode(2, 'gamma', '--p', '7', '--basis-disc=-1:1/27')
        self.assertEqual(document['type'], 'BasisClassError')

    def test_identity_failure(self):
        failing = lambda data: ({'passed': False}, 3)
        with patch.dict(job_runner.DISPATCH, {'verify-theorem1': failing}):
            document = self.assertExitCode(3, 'verify_theorem1', '--p', '7')
        self.assertEqual(document['exit_code'], 3)


@override_settings(CACHES=LOCMEM, ASAI=dict(ENGINE, CACHE_ENABLED=True))
class CacheTests(SimpleTestCase):
    def setUp(self):
        caches['default'].clear()

    def test_cache_hit_skips_computation(self):
        first = StringIO()
        call_command('lfactor', '--shape', 'split', '--p', '5', stdout=first, stderr=StringIO())

        def fail(data):
            raise AssertionError('cache miss')

        second = StringIO()
        with patch.dict(job_runner.DISPATCH, {'lfactor': fail}):
            call_command('lfactor', '--shape', 'split', '--p', '5', stdout=second, stderr=StringIO())
        self.assertEqual(first.getvalue(), second.getvalue())

    def test_key_ignores_irrelevant_fields(self):
        data = {'command': 'whittaker', 'p': 5, 'nmax': 3, 'shape': 'split'}
        other = dict(data, shape='cubic_tame', s='3')
        self.assertEqual(job_runner.job_key(data), job_runner.job_key(other))

    def test_key_tracks_oracle_tolerance(self):
        data = {'command': 'oracle', 'q': 5, 's': '2', 'N': 40, 'D': 40}
        loose = job_runner.job_key(data)
        with override_settings(ASAI=dict(ENGINE, CACHE_ENABLED=True, ORACLE_TOLERANCE=1e-30)):
            strict = job_runner.job_key(data)
        self.assertNotEqual(loose, strict)

    def test_tolerance_change_recomputes_oracle(self):
        calls = []

        def fake(data):
            calls.append(data['command'])
            return {'rel_error': 0.0}, 0

        with patch.dict(job_runner.DISPATCH, {'oracle': fake}):
            call_command('oracle', '--q', '5', '--N', '8', '--D', '8', stdout=StringIO(), stderr=StringIO())
            call_command('oracle', '--q', '5', '--N', '8', '--D', '8', stdout=StringIO(), stderr=StringIO())
            with override_settings(ASAI=dict(ENGINE, CACHE_ENABLED=True, ORACLE_TOLERANCE=1e-4)):
                call_command('oracle', '--q', '5', '--N', '8', '--D', '8', stdout=StringIO(), stderr=StringIO())
        self.assertEqual(len(calls), 2)
