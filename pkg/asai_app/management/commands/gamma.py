"""
Management команда: γ_PSR из дзета-интегралов вместе с поправочным множителем
"""
from asai_app.management.job_command import JobCommand, add_basis_argument, add_rep_arguments


class Command(JobCommand):
    help = 'γ_PSR(s, As Π, ψ, α), поправочный множитель и γ(s, As Π, ψ) (JSON)'
    job = 'gamma'

    def add_job_arguments(self, parser):
        add_rep_arguments(parser)
        add_basis_argument(parser)
