"""
Management команда: проверка равенства γ-факторов для неразветвлённых Π
"""
from asai_app.management.job_command import JobCommand, add_basis_argument, add_rep_arguments


class Command(JobCommand):
    help = 'Проверка γ_PSR = ω_Π(Δ)|Δ|^{2s-1} ω_{K/F}(-1) γ; код выхода 3 при любом невыполненном тождестве'
    job = 'verify-theorem1'

    def add_job_arguments(self, parser):
        add_rep_arguments(parser)
        add_basis_argument(parser)
