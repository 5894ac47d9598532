"""Suite report model"""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, List, Optional

from core.models import q_str

RELATIONS = ('<=', '>=', '==', '<', 'holds')
STATUSES = ('pass', 'fail', 'measured')


def _q(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else q_str(value)


@dataclass
class AssertionRow:
    """One asserted inequality with the certificate that lets it be re-checked

    A measured row records a comparison outside the hypotheses of the
    estimate it mirrors; it never fails the suite.
    """

    instance: str
    claim: str
    lhs: Optional[Fraction]
    relation: str
    rhs: Optional[Fraction]
    ok: bool
    certificate: Dict[str, Any] = field(default_factory=dict)
    note: str = ''
    measured: bool = False

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def status(self) -> str:
        if self.measured:
            return 'measured'
        return 'pass' if self.ok else 'fail'

    def to_dict(self) -> Dict[str, Any]:
        return {
            'instance': self.instance,
            'claim': self.claim,
            'lhs': _q(self.lhs),
            'relation': self.relation,
            'rhs': _q(self.rhs),
            'status': self.status,
            'certificate': self.certificate,
            'note': self.note,
        }


def _decide(lhs: Fraction, relation: str, rhs: Fraction) -> bool:
    return {
        '<=': lambda: lhs <= rhs,
        '>=': lambda: lhs >= rhs,
        '==': lambda: lhs == rhs,
        '<': lambda: lhs < rhs,
    }[relation]()


def check(instance: str, claim: str, lhs, relation: str, rhs, certificate: Dict = None, note: str = '') -> AssertionRow:
    """Build a row and decide it exactly"""
    lhs = None if lhs is None else Fraction(lhs)
    rhs = None if rhs is None else Fraction(rhs)
    return AssertionRow(instance, claim, lhs, relation, rhs, _decide(lhs, relation, rhs), certificate or {}, note)


def measure(instance: str, claim: str, lhs, relation: str, rhs, certificate: Dict = None, note: str = '') -> AssertionRow:
    """Record the comparison without asserting it; the outcome goes to the certificate"""
    lhs = None if lhs is None else Fraction(lhs)
    rhs = None if rhs is None else Fraction(rhs)
    certificate = {**(certificate or {}), 'comparison_holds': _decide(lhs, relation, rhs)}
    return AssertionRow(instance, claim, lhs, relation, rhs, True, certificate, note, measured=True)


def holds(instance: str, claim: str, ok: bool, certificate: Dict = None, note: str = '') -> AssertionRow:
    return AssertionRow(instance, claim, None, 'holds', None, bool(ok), certificate or {}, note)


@dataclass
class SuiteReport:
    suite: str
    params: Dict[str, Any]
    rows: List[AssertionRow] = field(default_factory=list)
    certificates: List[str] = field(default_factory=list)
    runtime: float = 0.0
    created: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> List[AssertionRow]:
        return [r for r in self.rows if not r.ok]

    def add(self, row: AssertionRow) -> AssertionRow:
        self.rows.append(row)
        return row

    def summary(self) -> Dict[str, int]:
        counts = {status: 0 for status in STATUSES}
        for r in self.rows:
            counts[r.status] += 1
        return {'total': len(self.rows), 'passed': counts['pass'], 'failed': counts['fail'],
                'measured': counts['measured']}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'params': self.params,
            'status': 'pass' if self.ok else 'fail',
            'summary': self.summary(),
            'rows': [r.to_dict() for r in self.rows],
            'certificates': list(self.certificates),
            'meta': {'created': self.created, 'runtime_seconds': round(self.runtime, 3)},
        }
