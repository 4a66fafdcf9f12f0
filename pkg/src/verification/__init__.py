"""Identity and invariant oracle suite."""

from .suite import CheckResult, certificate_fields, format_table, identity_errors, run_suite

__all__ = [
    'CheckResult',
    'certificate_fields',
    'format_table',
    'identity_errors',
    'run_suite',
]
