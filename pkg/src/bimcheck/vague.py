"""Defeasible classification of vague predicates into partial models.

An entity whose attribute value sits below the evidence threshold is proven
to satisfy the predicate; above the counter-evidence threshold it is proven
not to; anywhere in between, or with no value at all, the classifier
branches into two assumption-tagged partial models.  Partial-model counts
grow additively (one per determined entity, two per branching one) while a
grounding solver's global model count grows as 2^branches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .facts import Term, parse_program
from .linear import format_rational

EVIDENCE = "evidence"
ASSUMPTION = "assumption"

_NEGATIVE_LABELS = {"small": "big"}


class Determination(Enum):
    PROVEN = "proven"
    PROVEN_NOT = "proven_not"
    BRANCH = "branch"


@dataclass(frozen=True)
class ThresholdRule:
    """Evidence thresholds for one vague predicate over one attribute."""

    predicate: str = "small"
    attribute: str = "size"
    evidence_below: Fraction = Fraction(10)
    counterevidence_above: Fraction = Fraction(20)

    def __post_init__(self) -> None:
        if self.evidence_below > self.counterevidence_above:
            raise ValueError("evidence threshold above counter-evidence threshold")

    @property
    def negative_label(self) -> str:
        return _NEGATIVE_LABELS.get(self.predicate, f"-{self.predicate}")


@dataclass(frozen=True)
class Literal:
    positive: bool
    predicate: str
    entity: str
    provenance: str

    def __str__(self) -> str:
        sign = "" if self.positive else "-"
        return f"{sign}{self.predicate}({self.entity})"


@dataclass(frozen=True)
class PartialModel:
    literals: frozenset[Literal]

    @property
    def consistent(self) -> bool:
        seen = {(lit.positive, lit.predicate, lit.entity) for lit in self.literals}
        return not any((not pos, pred, ent) in seen for pos, pred, ent in seen)

    def __str__(self) -> str:
        parts = sorted(str(lit) for lit in self.literals)
        return "{" + ", ".join(parts) + "}"


@dataclass
class FactSet:
    """Entities with optional numeric attributes, in declaration order."""

    entities: list[str] = field(default_factory=list)
    kinds: dict[str, str] = field(default_factory=dict)
    attributes: dict[str, dict[str, Fraction]] = field(default_factory=dict)

    def declare(self, kind: str, entity: str) -> None:
        if entity not in self.kinds:
            self.entities.append(entity)
            self.kinds[entity] = kind

    def set_attribute(self, entity: str, attribute: str, value: Fraction) -> None:
        self.attributes.setdefault(entity, {})[attribute] = value

    def has(self, entity: str) -> bool:
        return entity in self.kinds

    def value(self, entity: str, attribute: str) -> Fraction | None:
        return self.attributes.get(entity, {}).get(attribute)

    @staticmethod
    def from_terms(terms: Iterable[Term]) -> "FactSet":
        facts = FactSet()
        for t in terms:
            if len(t.args) == 1 and isinstance(t.args[0], Term) and not t.args[0].args:
                facts.declare(t.functor, t.args[0].functor)
            elif (
                len(t.args) == 2
                and isinstance(t.args[0], Term)
                and not t.args[0].args
                and isinstance(t.args[1], Fraction)
            ):
                entity = t.args[0].functor
                if not facts.has(entity):
                    facts.declare("entity", entity)
                facts.set_attribute(entity, t.functor, t.args[1])
        return facts

    @staticmethod
    def from_text(text: str) -> "FactSet":
        return FactSet.from_terms(parse_program(text))


def classify_value(value: Fraction | None, rule: ThresholdRule) -> Determination:
    """Strict thresholds: boundary values and unknown values both branch."""
    if value is not None and value < rule.evidence_below:
        return Determination.PROVEN
    if value is not None and value > rule.counterevidence_above:
        return Determination.PROVEN_NOT
    return Determination.BRANCH


def classify(facts: FactSet, entity: str, rule: ThresholdRule) -> Determination:
    if not facts.has(entity):
        raise KeyError(entity)
    return classify_value(facts.value(entity, rule.attribute), rule)


def models_for_value(
    entity: str, value: Fraction | None, rule: ThresholdRule
) -> list[PartialModel]:
    det = classify_value(value, rule)
    pred = rule.predicate
    if det is Determination.PROVEN:
        return [PartialModel(frozenset({Literal(True, pred, entity, EVIDENCE)}))]
    if det is Determination.PROVEN_NOT:
        return [PartialModel(frozenset({Literal(False, pred, entity, EVIDENCE)}))]
    return [
        PartialModel(frozenset({Literal(True, pred, entity, ASSUMPTION)})),
        PartialModel(frozenset({Literal(False, pred, entity, ASSUMPTION)})),
    ]


def models_for(facts: FactSet, entity: str, rule: ThresholdRule) -> list[PartialModel]:
    if not facts.has(entity):
        raise KeyError(entity)
    return models_for_value(entity, facts.value(entity, rule.attribute), rule)


@dataclass(frozen=True)
class Answer:
    entity: str
    label: str
    model: PartialModel
    value: Fraction | None
    determination: Determination


def query_room_is(
    facts: FactSet, rule: ThresholdRule, entities: Sequence[str] | None = None
) -> list[Answer]:
    """All partial-model answers: one per determined entity, two per branch."""
    names = list(entities) if entities is not None else list(facts.entities)
    answers = []
    for e in names:
        if not facts.has(e):
            raise KeyError(e)
        value = facts.value(e, rule.attribute)
        det = classify_value(value, rule)
        for model in models_for_value(e, value, rule):
            lit = next(iter(model.literals))
            label = rule.predicate if lit.positive else rule.negative_label
            answers.append(Answer(e, label, model, value, det))
    return answers


def _branch_entities(
    facts: FactSet, rule: ThresholdRule, entities: Sequence[str] | None
) -> tuple[list[str], list[str]]:
    names = list(entities) if entities is not None else list(facts.entities)
    branch, determined = [], []
    for e in names:
        if not facts.has(e):
            raise KeyError(e)
        if classify_value(facts.value(e, rule.attribute), rule) is Determination.BRANCH:
            branch.append(e)
        else:
            determined.append(e)
    return determined, branch


def count_global_models(
    facts: FactSet, rule: ThresholdRule, entities: Sequence[str] | None = None
) -> int:
    """2^(branching entities): the stable-model count a grounder would emit."""
    _, branch = _branch_entities(facts, rule, entities)
    return 2 ** len(branch)


def enumerate_global_models(
    facts: FactSet,
    rule: ThresholdRule,
    entities: Sequence[str] | None = None,
    cap: int = 1024,
) -> list[frozenset[Literal]]:
    """Materialize every global model as a literal set; refuses above `cap`."""
    determined, branch = _branch_entities(facts, rule, entities)
    total = 2 ** len(branch)
    if total > cap:
        raise ValueError(f"{total} global models exceed the enumeration cap {cap}")
    base = []
    for e in determined:
        det = classify_value(facts.value(e, rule.attribute), rule)
        base.append(Literal(det is Determination.PROVEN, rule.predicate, e, EVIDENCE))
    models = []
    for signs in itertools.product((True, False), repeat=len(branch)):
        literals = list(base)
        literals.extend(
            Literal(sign, rule.predicate, e, ASSUMPTION)
            for e, sign in zip(branch, signs)
        )
        models.append(frozenset(literals))
    return models


def justify(answer: Answer, rule: ThresholdRule) -> str:
    """Plain-text justification tree for one answer, deterministic."""
    head = f"room_is({answer.entity}, {answer.label})"
    attr = rule.attribute
    if answer.determination is Determination.PROVEN:
        reason = (
            f"evidence: {attr}({answer.entity}) = "
            f"{format_rational(answer.value)} < {format_rational(rule.evidence_below)}"
        )
    elif answer.determination is Determination.PROVEN_NOT:
        reason = (
            f"evidence: {attr}({answer.entity}) = "
            f"{format_rational(answer.value)} > {format_rational(rule.counterevidence_above)}"
        )
    else:
        assumed = rule.predicate if answer.label == rule.predicate else f"-{rule.predicate}"
        if answer.value is None:
            basis = f"{attr}({answer.entity}) unknown"
        else:
            basis = (
                f"{attr}({answer.entity}) = {format_rational(answer.value)} in "
                f"[{format_rational(rule.evidence_below)}, "
                f"{format_rational(rule.counterevidence_above)}]"
            )
        reason = f"assumption: {basis}; no evidence for or against; assumed {assumed}"
    return f"{head}\n  {reason}"
