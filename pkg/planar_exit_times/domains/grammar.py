"""
Text form of domain specifications: ``kind[:key=value[,key=value...]]``.

Examples: ``disc:r0=1``, ``wedge:p=0.25``, ``ngram:n=5,mu1=0.3,mu2=0.1``, ``lens``.
"""

import logging
from typing import Dict

from pydantic import TypeAdapter, ValidationError

from ..errors import DomainParseError
from ..schemas.models import DomainSpec

logger = logging.getLogger(__name__)

_ADAPTER = TypeAdapter(DomainSpec)

KINDS = (
    'disc', 'halfdisc', 'wedge', 'polygon', 'ngram', 'lens', 'ellipse',
    'rectangle', 'strip', 'cutout', 'triangle', 'right-triangle',
)


def _split_fields(kind: str, body: str) -> Dict[str, str]:
    fields: Dict[str, str] = {}
    for item in filter(None, (part.strip() for part in body.split(','))):
        key, sep, value = item.partition('=')
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise DomainParseError(f"malformed field '{item}' in {kind} domain (expected key=value)")
        if key in fields:
            raise DomainParseError(f"duplicate field '{key}' in {kind} domain")
        fields[key] = value
    return fields


def parse_domain(text: str) -> DomainSpec:
    """
    Parse the textual form of a domain.

    Args:
        text: e.g. ``rectangle:a=1,b=0.5``

    Returns:
        Validated DomainSpec

    Raises:
        DomainParseError: unknown kind, malformed fields or invalid parameters
    """
    kind, _, body = text.strip().partition(':')
    kind = kind.strip().lower()
    if kind not in KINDS:
        raise DomainParseError(f"unknown domain kind '{kind}'; expected one of {', '.join(KINDS)}")

    fields = _split_fields(kind, body)
    try:
        domain = _ADAPTER.validate_python({'kind': kind, **fields})
    except ValidationError as e:
        problems = '; '.join(
            f"{'.'.join(str(p) for p in err['loc'][1:]) or kind}: {err['msg']}" for err in e.errors()
        )
        raise DomainParseError(f"invalid {kind} domain '{text}': {problems}") from e

    logger.debug(f"Parsed domain {domain!r}")
    return domain


def format_domain(domain: DomainSpec) -> str:
    """Inverse of parse_domain, fields in declaration order."""
    values = domain.model_dump(exclude={'kind'})
    if not values:
        return domain.kind
    body = ','.join(f"{key}={value:.17g}" if isinstance(value, float) else f"{key}={value}"
                    for key, value in values.items())
    return f"{domain.kind}:{body}"
