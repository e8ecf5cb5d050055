"""
Management команда: значения W(a(ϖ^n)) для φ = 1_{o×o} против формулы Шинтани
"""
from asai_app.management.job_command import JobCommand


class Command(JobCommand):
    help = 'Функция Уиттекера семейства главной серии с φ = 1_{o×o} при n = 0..nmax (JSON)'
    job = 'whittaker'

    def add_job_arguments(self, parser):
        parser.add_argument('--p', type=int, dest='p', help='Вычетная характеристика')
        parser.add_argument('--nmax', type=int, dest='nmax', help='Наибольший порядок ν')
