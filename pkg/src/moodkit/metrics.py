"""System-level design metrics over a validated class model.

Six ratios, each a quotient of feature counts summed over all classes:

* ``mhf`` / ``ahf``: hidden methods / attributes over defined ones.
* ``mif`` / ``aif``: inherited methods / attributes over available ones
  (defined + inherited).
* ``pf``: overriding methods over the number of override opportunities
  (new methods times descendant count, summed per class).
* ``cf``: client relationships over the TC^2 - TC possible ordered pairs,
  not counting couplings into a class's own ancestors.

Ratios with a zero denominator are returned as structured undefined values
rather than 0 or an exception, so reports can distinguish total absence
from no opportunity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .class_model import ClassModel, ClassTallies, _ancestors, tallies


@dataclass(frozen=True)
class MetricValue:
    """A ratio with its exact integer numerator and denominator.

    ``value`` is None exactly when ``denominator`` is 0, in which case
    ``undefined_reason`` says why there was nothing to measure.
    """

    numerator: int
    denominator: int
    undefined_reason: Optional[str] = None

    def __post_init__(self):
        if (self.denominator == 0) != (self.undefined_reason is not None):
            raise ValueError("undefined_reason must accompany a zero denominator")

    @property
    def value(self) -> Optional[float]:
        if self.denominator == 0:
            return None
        return self.numerator / self.denominator

    @property
    def defined(self) -> bool:
        return self.denominator > 0

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "undefined_reason": self.undefined_reason,
        }


@dataclass(frozen=True)
class MoodReport:
    mhf: MetricValue
    ahf: MetricValue
    mif: MetricValue
    aif: MetricValue
    pf: MetricValue
    cf: MetricValue
    tc: int

    def to_json(self) -> dict:
        return {
            "mhf": self.mhf.to_json(),
            "ahf": self.ahf.to_json(),
            "mif": self.mif.to_json(),
            "aif": self.aif.to_json(),
            "pf": self.pf.to_json(),
            "cf": self.cf.to_json(),
            "tc": self.tc,
        }


def _all_tallies(model: ClassModel) -> list[ClassTallies]:
    return [tallies(model, decl.name) for decl in model]


def _ratio(num: int, den: int, reason: str) -> MetricValue:
    if den == 0:
        return MetricValue(num, 0, reason)
    return MetricValue(num, den)


def mhf(model: ClassModel) -> MetricValue:
    ts = _all_tallies(model)
    return _ratio(sum(t.m_h for t in ts), sum(t.m_d for t in ts),
                  "no defined methods")


def ahf(model: ClassModel) -> MetricValue:
    ts = _all_tallies(model)
    return _ratio(sum(t.a_h for t in ts), sum(t.a_d for t in ts),
                  "no defined attributes")


def mif(model: ClassModel) -> MetricValue:
    ts = _all_tallies(model)
    return _ratio(sum(t.m_i for t in ts), sum(t.m_a for t in ts),
                  "no available methods")


def aif(model: ClassModel) -> MetricValue:
    ts = _all_tallies(model)
    return _ratio(sum(t.a_i for t in ts), sum(t.a_a for t in ts),
                  "no available attributes")


def pf(model: ClassModel) -> MetricValue:
    ts = _all_tallies(model)
    return _ratio(sum(t.m_o for t in ts),
                  sum(t.m_n * t.dc for t in ts),
                  "no polymorphic opportunities")


def cf(model: ClassModel) -> MetricValue:
    tc = len(model)
    if tc < 2:
        return MetricValue(0, 0, "TC < 2")
    clients = 0
    for decl in model:
        ancestors = _ancestors(model, decl.name)
        # Duplicate uses entries count once: is_client is a 0/1 predicate.
        for target in set(decl.uses):
            if target != decl.name and target in model and target not in ancestors:
                clients += 1
    return MetricValue(clients, tc * tc - tc)


def compute_all(model: ClassModel) -> MoodReport:
    """All six metrics plus the class count, as one immutable report."""
    return MoodReport(
        mhf=mhf(model), ahf=ahf(model), mif=mif(model), aif=aif(model),
        pf=pf(model), cf=cf(model), tc=len(model))


_BY_NAME: dict[str, Callable[[ClassModel], MetricValue]] = {
    "mhf": mhf, "ahf": ahf, "mif": mif, "aif": aif, "pf": pf, "cf": cf,
}


def by_name(name: str) -> Callable[[ClassModel], MetricValue]:
    """Look up one metric function by its lowercase report key."""
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown metric {name!r}") from None
