"""Verification utilities."""

from .verification import CheckResult, IdentityChecker

__all__ = ['CheckResult', 'IdentityChecker']
