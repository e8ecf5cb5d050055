"""
Management команда: численный оракул усечённого дзета-интеграла
"""
from asai_app.management.job_command import JobCommand


class Command(JobCommand):
    help = 'Усечённая сумма дзета-интеграла против замкнутой формы (JSON)'
    job = 'oracle'

    def add_job_arguments(self, parser):
        parser.add_argument('--q', type=int, dest='q', help='Порядок поля вычетов')
        parser.add_argument('--s', dest='s', help='Комплексное s, например 2 или 2+0.5j')
        parser.add_argument('--N', type=int, dest='N', help='Число членов по n')
        parser.add_argument('--D', type=int, dest='D', help='Глубина оболочек по x')
        parser.add_argument('--satake', help="'α,β' комплексными числами; по умолчанию e^{iπ/7}, e^{-iπ/3}")
        parser.add_argument('--decay', action='store_true', default=None, help='Добавить отчёт о затухании хвоста')
