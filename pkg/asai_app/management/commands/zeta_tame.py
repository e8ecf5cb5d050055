"""
Management команда: точная сборка дзета-интеграла для ручного кубического E
"""
from asai_app.management.job_command import JobCommand


class Command(JobCommand):
    help = 'Z^(0), Z^(1) и Z = Z^(0) + q^2 Z^(1) с проверкой промежуточных тождеств (JSON)'
    job = 'zeta-tame'

    def add_job_arguments(self, parser):
        parser.add_argument('--satake', help="'symbolic' (по умолчанию) или 'α,β' (точные рациональные)")
        parser.add_argument('--p', type=int, dest='p', help='Вычетная характеристика (p != 2, 3)')
