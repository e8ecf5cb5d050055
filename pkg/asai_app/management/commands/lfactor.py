"""
Management команда: L-, ε- и γ-факторы Asai-cube на стороне Вейля-Делиня
"""
from asai_app.management.job_command import JobCommand, add_rep_arguments


class Command(JobCommand):
    help = 'L(s, As Π), ε(s, As Π, ψ) и γ(s, As Π, ψ) для неразветвлённых данных (JSON)'
    job = 'lfactor'

    def add_job_arguments(self, parser):
        add_rep_arguments(parser)
