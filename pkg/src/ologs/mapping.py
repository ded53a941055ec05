"""Mappings between ologs and between their instances.

An olog morphism is a functor between the underlying categories plus a
component aspect per source object and a square fact per source
generator.  Instance morphisms are per-object token functions, checked
for naturality and for conformance against declared correspondence
tables; conformance can never be inferred, only checked against what
authors have declared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod

from .category import CatFunctor, DEFAULT_BOUND, Path, validate_functor
from .errors import InvalidFunctor, SearchSpaceTooLarge
from .language import AuthorSet, Sentence, UNIT, read_verb
from .olog import (
    AspectLabel,
    LinguisticStructure,
    Olog,
    derived_aspect,
    derived_authors,
)
from .instance import Instance, InstanceTable, evaluate_path
from .report import ValidationReport

DEFAULT_SEARCH_LIMIT = 10 ** 6


@dataclass
class OlogMorphism:
    source: Olog
    target: Olog
    functor: CatFunctor
    components: dict[str, AspectLabel]
    square_authors: dict[str, AuthorSet] = field(default_factory=dict)

    def component_sentence(self, obj: str) -> Sentence:
        """The sentence read off a component: L(c) noun, component verb, M(Fc) noun."""
        comp = self.components[obj]
        return Sentence(
            self.source.noun(obj),
            comp.verb,
            self.target.noun(self.functor.apply_object(obj)),
        )


def pullback_structure(f: CatFunctor, target_olog: Olog) -> LinguisticStructure:
    """The linguistic structure on f.source obtained by relabeling along f."""
    if f.target != target_olog.category:
        raise InvalidFunctor("functor target does not match the labeled category")
    type_labels = {
        c: target_olog.structure.type_labels[f.apply_object(c)]
        for c in f.source.objects
    }
    aspect_labels = {}
    for g in f.source.generators:
        image = f.apply(Path(g.source, (g.name,)))
        aspect_labels[g.name] = derived_aspect(target_olog, image)
    fact_authors = {}
    for eq in f.source.equations:
        fact_authors[eq.name] = (
            derived_authors(target_olog, f.apply(eq.left))
            & derived_authors(target_olog, f.apply(eq.right))
        )
    return LinguisticStructure(type_labels, aspect_labels, fact_authors)


def pullback_olog(f: CatFunctor, target_olog: Olog, name: str | None = None) -> Olog:
    return Olog(
        name or f"{target_olog.name}.pullback",
        f.source,
        pullback_structure(f, target_olog),
    )


def cartesian_morphism(f: CatFunctor, target_olog: Olog) -> OlogMorphism:
    """The morphism (C, f*(M)) -> (D, M) with unit components.

    Component and square author sets are the largest ones the subset
    invariants allow.
    """
    pulled = pullback_olog(f, target_olog)
    components = {
        c: AspectLabel(UNIT, pulled.type_authors(c)) for c in f.source.objects
    }
    square_authors = {}
    for g in f.source.generators:
        image = f.apply(Path(g.source, (g.name,)))
        square_authors[g.name] = (
            pulled.aspect(g.name).authors
            & components[g.target].authors
            & components[g.source].authors
            & derived_authors(target_olog, image)
        )
    return OlogMorphism(pulled, target_olog, f, components, square_authors)


def validate_linguistic_functor(
    m: OlogMorphism, bound: int = DEFAULT_BOUND
) -> ValidationReport:
    """Check the functor, component-author, and square-author invariants."""
    report = validate_functor(m.functor, bound)
    if not report.ok:
        return report
    src, dst, f = m.source, m.target, m.functor
    for c in src.category.objects:
        comp = m.components.get(c)
        if comp is None:
            report.add("missing-component", f"object {c!r} has no component aspect")
            continue
        allowed = src.type_authors(c) & dst.type_authors(f.apply_object(c))
        extra = comp.authors - allowed
        if extra:
            report.add(
                "component-author-violation",
                f"authors {sorted(extra)} of component at {c!r} do not "
                f"endorse both types",
            )
    if not report.ok:
        return report
    for g in src.category.generators:
        fact = m.square_authors.get(g.name, frozenset())
        image = f.apply(Path(g.source, (g.name,)))
        down_then_across = (
            src.aspect(g.name).authors & m.components[g.target].authors
        )
        across_then_down = (
            m.components[g.source].authors & derived_authors(dst, image)
        )
        extra = fact - (down_then_across & across_then_down)
        if extra:
            report.add(
                "square-author-violation",
                f"authors {sorted(extra)} of the square at {g.name!r} do not "
                f"endorse both composite aspects",
            )
        elif not fact:
            # Legal (facts may go unendorsed) but worth surfacing.
            report.warn(
                "empty-square-authors",
                f"no one endorses the square at {g.name!r}",
            )
    return report


def pullback_instance(f: CatFunctor, j: Instance, name: str | None = None) -> Instance:
    """Re-tabulate an instance on f.target as an instance on f.source."""
    pulled = pullback_olog(f, j.olog, name)
    tokens = {c: j.token_set(f.apply_object(c)) for c in f.source.objects}
    functions = {}
    for g in f.source.generators:
        image = f.apply(Path(g.source, (g.name,)))
        functions[g.name] = {
            x: evaluate_path(j, image, x)
            for x in j.token_set(f.apply_object(g.source))
        }
    return Instance(pulled, tokens, functions)


def correspondence_pairs(table: InstanceTable) -> frozenset[tuple[str, str]]:
    if len(table.header) != 2:
        raise ValueError("correspondence tables have two columns")
    return frozenset((row[0], row[1]) for row in table.rows)


def component_table_header(m: OlogMorphism, obj: str) -> tuple[str, str]:
    """Header convention for a component's correspondence table."""
    comp = m.components[obj]
    dst_noun = m.target.noun(m.functor.apply_object(obj))
    return (
        str(m.source.noun(obj)),
        f"{read_verb(comp.verb)} {dst_noun}, namely",
    )


@dataclass
class InstanceMorphism:
    source: Instance
    target: Instance
    over: OlogMorphism
    component_functions: dict[str, dict[str, str]]
    declared_correspondences: dict[str, frozenset] = field(default_factory=dict)


def check_naturality(p: InstanceMorphism) -> ValidationReport:
    """Check totality of components and every naturality square on tokens."""
    report = ValidationReport()
    m = p.over
    i, j = p.source, p.target
    for c in m.source.category.objects:
        comp = p.component_functions.get(c, {})
        dst_tokens = set(j.token_set(m.functor.apply_object(c)))
        for x in i.token_set(c):
            if x not in comp:
                report.add("component-totality",
                           f"component at {c!r} has no value for {x!r}")
            elif comp[x] not in dst_tokens:
                report.add("component-range",
                           f"component at {c!r} sends {x!r} outside the "
                           f"target tokens")
    if not report.ok:
        return report
    for g in m.source.category.generators:
        image = m.functor.apply(Path(g.source, (g.name,)))
        p_src = p.component_functions.get(g.source, {})
        p_tgt = p.component_functions.get(g.target, {})
        for x in i.token_set(g.source):
            through_source = evaluate_path(j, image, p_src[x])
            through_target = p_tgt[i.function(g.name)[x]]
            if through_source != through_target:
                report.add(
                    "naturality-violation",
                    f"square at generator {g.name!r} fails on token {x!r}",
                )
    return report


def check_conformance(p: InstanceMorphism) -> ValidationReport:
    """Every pair (x, p_c(x)) must appear among the declared correspondences."""
    report = ValidationReport()
    for c in p.over.source.category.objects:
        declared = p.declared_correspondences.get(c, frozenset())
        comp = p.component_functions.get(c, {})
        for x in p.source.token_set(c):
            pair = (x, comp.get(x))
            if pair not in declared:
                report.add(
                    "unendorsed-correspondence",
                    f"pair ({x!r}, {comp.get(x)!r}) at {c!r} is not declared",
                )
    return report


def search_conforming(
    m: OlogMorphism,
    i: Instance,
    j: Instance,
    correspondences: dict[str, frozenset],
    limit: int = DEFAULT_SEARCH_LIMIT,
) -> tuple[int, list[InstanceMorphism]]:
    """Enumerate all total component families; keep the natural, conforming ones.

    Returns (candidate count, survivors).  Candidates are enumerated in
    lexicographic token order, so the output order is canonical.
    """
    objs = sorted(m.source.category.objects)
    domains = {c: sorted(i.token_set(c)) for c in objs}
    codomains = {
        c: sorted(j.token_set(m.functor.apply_object(c))) for c in objs
    }
    count = prod(
        len(codomains[c]) ** len(domains[c]) for c in objs
    )
    if count > limit:
        raise SearchSpaceTooLarge(count, limit)
    per_object = []
    for c in objs:
        choices = [
            dict(zip(domains[c], values))
            for values in itertools.product(codomains[c], repeat=len(domains[c]))
        ]
        per_object.append(choices)
    survivors = []
    for combo in itertools.product(*per_object):
        candidate = InstanceMorphism(
            source=i,
            target=j,
            over=m,
            component_functions=dict(zip(objs, combo)),
            declared_correspondences=correspondences,
        )
        if check_naturality(candidate).ok and check_conformance(candidate).ok:
            survivors.append(candidate)
    return count, survivors


def check_co_instantiated(
    m: OlogMorphism,
    q_components: dict[str, dict[str, str]],
    correspondences: dict[str, frozenset],
    i: Instance,
    j: Instance,
) -> ValidationReport:
    """Reversed-orientation check: data flows against the functor.

    Here q maps the pulled-back tokens of j onto tokens of i, per source
    object, and the naturality squares and declared correspondences are
    checked with the roles swapped accordingly.
    """
    report = ValidationReport()
    f = m.functor
    for c in f.source.objects:
        comp = q_components.get(c, {})
        dst_tokens = set(i.token_set(c))
        for x in j.token_set(f.apply_object(c)):
            if x not in comp:
                report.add("component-totality",
                           f"component at {c!r} has no value for {x!r}")
            elif comp[x] not in dst_tokens:
                report.add("component-range",
                           f"component at {c!r} sends {x!r} outside the "
                           f"target tokens")
    if not report.ok:
        return report
    for g in f.source.generators:
        image = f.apply(Path(g.source, (g.name,)))
        q_src = q_components.get(g.source, {})
        q_tgt = q_components.get(g.target, {})
        for x in j.token_set(f.apply_object(g.source)):
            through_j = q_tgt[evaluate_path(j, image, x)]
            through_i = i.function(g.name)[q_src[x]]
            if through_j != through_i:
                report.add(
                    "naturality-violation",
                    f"square at generator {g.name!r} fails on token {x!r}",
                )
    for c in f.source.objects:
        declared = correspondences.get(c, frozenset())
        comp = q_components.get(c, {})
        for x in j.token_set(f.apply_object(c)):
            if (x, comp.get(x)) not in declared:
                report.add(
                    "unendorsed-correspondence",
                    f"pair ({x!r}, {comp.get(x)!r}) at {c!r} is not declared",
                )
    return report
