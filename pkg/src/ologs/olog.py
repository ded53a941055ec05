"""Ologs: a presented category together with its linguistic labeling.

Labels live on generators only; the label of a composite path is always
derived, by concatenating verb phrases through the intermediate noun
phrases and intersecting author sets along the way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import Path, PathCategory
from .errors import UnknownEquation
from .language import (
    AuthorSet,
    ConcatVerb,
    NounPhrase,
    Sentence,
    UNIT,
    VerbPhrase,
    read_equivalence,
)
from .report import ValidationReport

DERIVED_PREFIX = "~derived/"


@dataclass(frozen=True)
class TypeLabel:
    noun: NounPhrase
    authors: AuthorSet


@dataclass(frozen=True)
class AspectLabel:
    verb: VerbPhrase
    authors: AuthorSet


@dataclass
class LinguisticStructure:
    type_labels: dict[str, TypeLabel]
    aspect_labels: dict[str, AspectLabel]
    fact_authors: dict[str, AuthorSet] = field(default_factory=dict)


@dataclass
class Olog:
    name: str
    category: PathCategory
    structure: LinguisticStructure

    def noun(self, obj: str) -> NounPhrase:
        return self.structure.type_labels[obj].noun

    def type_authors(self, obj: str) -> AuthorSet:
        return self.structure.type_labels[obj].authors

    def aspect(self, gen: str) -> AspectLabel:
        return self.structure.aspect_labels[gen]


def derived_aspect(o: Olog, p: Path) -> AspectLabel:
    """Verb phrase and author set of a composite path.

    The verb phrase is the left-nested concatenation of the generator
    labels through the intermediate noun phrases; the author set is the
    intersection of the generator author sets.  An identity path yields
    the unit verb phrase endorsed by the authors of its object.
    """
    o.category.check_path(p)
    if p.is_identity:
        return AspectLabel(UNIT, o.type_authors(p.source))
    labels = [o.aspect(name) for name in p.arrows]
    verb: VerbPhrase = labels[0].verb
    auth = labels[0].authors
    for name, label in zip(p.arrows[1:], labels[1:]):
        via = o.noun(o.category.generator(name).source)
        verb = ConcatVerb(verb, via, label.verb)
        auth = auth & label.authors
    return AspectLabel(verb, auth)


def derived_authors(o: Olog, p: Path) -> AuthorSet:
    return derived_aspect(o, p).authors


def derived_sentence(o: Olog, p: Path) -> Sentence:
    return Sentence(
        subject=o.noun(p.source),
        verb=derived_aspect(o, p).verb,
        obj=o.noun(o.category.target_of(p)),
    )


def generator_sentence(o: Olog, gen: str) -> Sentence:
    g = o.category.generator(gen)
    return Sentence(o.noun(g.source), o.aspect(gen).verb, o.noun(g.target))


def validate_olog(o: Olog) -> ValidationReport:
    """Check labeling coverage and all author-subset invariants."""
    report = ValidationReport()
    structure = o.structure
    for obj in o.category.objects:
        if obj not in structure.type_labels:
            report.add("missing-type-label", f"object {obj!r} has no noun phrase")
    for g in o.category.generators:
        label = structure.aspect_labels.get(g.name)
        if label is None:
            report.add("missing-aspect-label",
                       f"generator {g.name!r} has no verb phrase")
            continue
        if g.source in structure.type_labels and g.target in structure.type_labels:
            allowed = (structure.type_labels[g.source].authors
                       & structure.type_labels[g.target].authors)
            extra = label.authors - allowed
            if extra:
                report.add(
                    "aspect-author-violation",
                    f"authors {sorted(extra)} of aspect {g.name!r} do not "
                    f"endorse both endpoint types",
                )
    if not report.ok:
        return report
    for eq in o.category.equations:
        fact = structure.fact_authors.get(eq.name)
        if fact is None:
            report.add("missing-fact-authors",
                       f"equation {eq.name!r} has no author set")
            continue
        allowed = derived_authors(o, eq.left) & derived_authors(o, eq.right)
        extra = fact - allowed
        if extra:
            report.add(
                "fact-author-violation",
                f"authors {sorted(extra)} of fact {eq.name!r} do not "
                f"endorse both derived aspects",
            )
    return report


def read_fact(o: Olog, eq_name: str) -> str:
    for eq in o.category.equations:
        if eq.name == eq_name:
            return read_equivalence(
                derived_sentence(o, eq.left), derived_sentence(o, eq.right)
            )
    raise UnknownEquation(eq_name)


def restrict_to_author(o: Olog, author: str) -> Olog:
    """Sub-olog of everything the given author endorses."""

    def endorsed(labels, key):
        label = labels.get(key)
        return label is not None and author in label.authors

    objects = tuple(
        obj for obj in o.category.objects
        if endorsed(o.structure.type_labels, obj)
    )
    kept_objs = set(objects)
    generators = tuple(
        g for g in o.category.generators
        if (endorsed(o.structure.aspect_labels, g.name)
            and g.source in kept_objs and g.target in kept_objs)
    )
    kept_gens = {g.name for g in generators}
    equations = tuple(
        eq for eq in o.category.equations
        if (author in o.structure.fact_authors.get(eq.name, frozenset())
            and set(eq.left.arrows) <= kept_gens
            and set(eq.right.arrows) <= kept_gens
            and eq.left.source in kept_objs)
    )
    category = PathCategory(objects, generators, equations)
    structure = LinguisticStructure(
        type_labels={obj: o.structure.type_labels[obj] for obj in objects},
        aspect_labels={g.name: o.structure.aspect_labels[g.name]
                       for g in generators},
        fact_authors={eq.name: o.structure.fact_authors[eq.name]
                      for eq in equations},
    )
    return Olog(f"{o.name}/{author}", category, structure)
