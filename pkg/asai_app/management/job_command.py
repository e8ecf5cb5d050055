"""
Общая основа management-команд движка: флаги JobSpec, валидация, запуск, коды выхода
"""
import json
import logging

from django.core.management.base import BaseCommand, CommandError

from asai_app.exceptions import EXIT_USAGE, AsaiError
from asai_app.serializers import JobSpecSerializer
from asai_app.services.job_runner import render, run_job

logger = logging.getLogger(__name__)

# флаг -> поле JobSpec
FLAG_FIELDS = ('shape', 'satake', 'p', 'basis_disc', 'psi_twist', 'q', 's', 'N', 'D', 'nmax', 'decay')


class JobCommand(BaseCommand):
    """Команда, выполняющая одно задание JobSpec и печатающая JSON."""

    job = None

    def add_arguments(self, parser):
        parser.add_argument('--spec', help='JSON-файл с JobSpec; явные флаги имеют приоритет')
        parser.add_argument('--out', help='Записать JSON в файл вместо stdout')
        self.add_job_arguments(parser)

    def add_job_arguments(self, parser):
        pass

    def _payload(self, options) -> dict:
        payload = {}
        if options.get('spec'):
            try:
                with open(options['spec'], encoding='utf-8') as handle:
                    payload.update(json.load(handle))
            except (OSError, ValueError) as e:
                self._fail({'error': f'Cannot read JobSpec: {e}'}, EXIT_USAGE, options)
        for name in FLAG_FIELDS:
            if options.get(name) is not None:
                payload[name] = options[name]
        payload['command'] = self.job
        return payload

    def _emit(self, text: str, options):
        if options.get('out'):
            with open(options['out'], 'w', encoding='utf-8') as handle:
                handle.write(text + '\n')
        else:
            self.stdout.write(text)

    def _fail(self, document: dict, code: int, options):
        self._emit(render(document), options)
        raise CommandError(document.get('error', 'Job failed'), returncode=code)

    def handle(self, *args, **options):
        payload = self._payload(options)
        serializer = JobSpecSerializer(data=payload)
        if not serializer.is_valid():
            logger.warning(f"Rejected {self.job} job: {serializer.errors}")
            self._fail({'error': 'Invalid job specification', 'details': serializer.errors}, EXIT_USAGE, options)

        try:
            exit_code, output = run_job(serializer.validated_data)
        except AsaiError as e:
            logger.warning(f"{self.job} job failed: {e}")
            self._fail({'error': str(e), 'type': type(e).__name__}, e.exit_code, options)
        except Exception as e:
            logger.exception(f"Unexpected error in {self.job} job: {e}")
            raise CommandError(f'Unexpected error: {e}', returncode=1)

        self._emit(output, options)
        if exit_code:
            raise CommandError(f'{self.job}: identity check failed', returncode=exit_code)
        self.stderr.write(self.style.SUCCESS(f'{self.job} completed'))


def add_rep_arguments(parser, default_shape='cubic_tame'):
    parser.add_argument('--shape', help=f'split | quad_line | cubic_unram | cubic_tame (по умолчанию {default_shape})')
    parser.add_argument('--satake', help="'symbolic' (по умолчанию) или значения через запятую: a1,b1,a2,b2,...")
    parser.add_argument('--p', type=int, dest='p', help='Вычетная характеристика')
    parser.add_argument('--psi-twist', dest='psi_twist', help="a в ψ^a: рациональное число или 'v:unit'")


def add_basis_argument(parser):
    parser.add_argument('--basis-disc', dest='basis_disc', help="Δ_{E/F}(α) базиса: рациональное число или 'v:unit'")
