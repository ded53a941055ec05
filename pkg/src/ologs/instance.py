"""Instances: token sets per type and token functions per aspect.

Tokens are opaque strings compared by exact equality.  Tables follow the
convention that a one-column header is the noun phrase of a type, and a
two-column header is (noun phrase, verb reading + object noun + ", namely")
for a generator.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path as FsPath

from .category import Path
from .errors import (
    AmbiguousHeader,
    DuplicateKey,
    MissingMapping,
    UnboundHeader,
    UnknownGenerator,
    UnknownToken,
)
from .language import read_correspondence, read_sentence, read_verb
from .olog import Olog, generator_sentence
from .report import ValidationReport


@dataclass
class Instance:
    olog: Olog
    tokens: dict[str, tuple[str, ...]]
    functions: dict[str, dict[str, str]] = field(default_factory=dict)

    def token_set(self, obj: str) -> tuple[str, ...]:
        return self.tokens.get(obj, ())

    def function(self, gen: str) -> dict[str, str]:
        if gen not in {g.name for g in self.olog.category.generators}:
            raise UnknownGenerator(gen)
        return self.functions.get(gen, {})


def evaluate_path(inst: Instance, p: Path, token: str) -> str:
    """Apply the token functions along p, left to right."""
    inst.olog.category.check_path(p)
    if token not in inst.token_set(p.source):
        raise UnknownToken(f"{token!r} is not a token at {p.source!r}")
    value = token
    for gen in p.arrows:
        mapping = inst.functions.get(gen, {})
        if value not in mapping:
            raise MissingMapping(
                f"token function of {gen!r} has no entry for {value!r}"
            )
        value = mapping[value]
    return value


def validate_instance(inst: Instance) -> ValidationReport:
    """Check totality, single-valuedness of ranges, and every declared fact.

    Fact checking evaluates both sides of each declared equation on
    every token of the shared source.
    """
    report = ValidationReport()
    cat = inst.olog.category
    for g in cat.generators:
        mapping = inst.functions.get(g.name, {})
        src_tokens = set(inst.token_set(g.source))
        tgt_tokens = set(inst.token_set(g.target))
        for x in inst.token_set(g.source):
            if x not in mapping:
                report.add("totality-violation",
                           f"{g.name!r} has no value for token {x!r}")
        for x, y in mapping.items():
            if x not in src_tokens:
                report.add("undeclared-token",
                           f"{g.name!r} maps undeclared token {x!r}")
            if y not in tgt_tokens:
                report.add("range-violation",
                           f"{g.name!r} sends {x!r} to {y!r}, which is not "
                           f"a token at {g.target!r}")
    if not report.ok:
        return report
    for eq in cat.equations:
        for x in inst.token_set(eq.left.source):
            left = evaluate_path(inst, eq.left, x)
            right = evaluate_path(inst, eq.right, x)
            if left != right:
                report.add(
                    "fact-violation",
                    f"equation {eq.name!r} fails on token {x!r}: "
                    f"{left!r} != {right!r}",
                )
    return report


@dataclass(frozen=True)
class InstanceTable:
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(self.header) not in (1, 2):
            raise ValueError("tables have one or two columns")
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError("row width does not match header")
        if len(set(self.rows)) != len(self.rows):
            raise ValueError("duplicate rows")


@dataclass(frozen=True)
class TableBinding:
    """What a table contributes to an instance: tokens or a function."""

    kind: str  # "tokens" | "function"
    target: str  # object id or generator id
    tokens: tuple[str, ...] = ()
    mapping: tuple[tuple[str, str], ...] = ()


def type_header(o: Olog, obj: str) -> tuple[str, ...]:
    return (str(o.noun(obj)),)


def generator_header(o: Olog, gen: str) -> tuple[str, ...]:
    g = o.category.generator(gen)
    verb = read_verb(o.aspect(gen).verb)
    return (str(o.noun(g.source)), f"{verb} {o.noun(g.target)}, namely")


def load_table(table: InstanceTable, o: Olog) -> TableBinding:
    """Bind a table to a type or generator by its header text."""
    if len(table.header) == 1:
        matches = [obj for obj in o.category.objects
                   if type_header(o, obj) == table.header]
        if not matches:
            raise UnboundHeader(f"no type reads {table.header[0]!r}")
        if len(matches) > 1:
            raise AmbiguousHeader(
                f"header {table.header[0]!r} matches types {matches}"
            )
        return TableBinding("tokens", matches[0],
                            tokens=tuple(row[0] for row in table.rows))
    matches = [g.name for g in o.category.generators
               if generator_header(o, g.name) == table.header]
    if not matches:
        raise UnboundHeader(f"no aspect reads {table.header!r}")
    if len(matches) > 1:
        raise AmbiguousHeader(f"header {table.header!r} matches aspects {matches}")
    seen = set()
    for row in table.rows:
        if row[0] in seen:
            raise DuplicateKey(f"two rows for token {row[0]!r}")
        seen.add(row[0])
    return TableBinding("function", matches[0],
                        mapping=tuple((row[0], row[1]) for row in table.rows))


def render_correspondences(inst: Instance, gen: str) -> list[str]:
    """One correspondence sentence per (x, f(x)) pair, in token order."""
    sentence = generator_sentence(inst.olog, gen)
    mapping = inst.function(gen)
    g = inst.olog.category.generator(gen)
    return [
        read_correspondence(sentence, x, mapping[x])
        for x in inst.token_set(g.source)
        if x in mapping
    ]


def read_table_file(path) -> InstanceTable:
    with open(path, newline="", encoding="utf-8") as handle:
        rows = [tuple(row) for row in csv.reader(handle) if row]
    if not rows:
        raise ValueError(f"{path}: empty table file")
    return InstanceTable(header=rows[0], rows=tuple(rows[1:]))


def write_table_file(path, table: InstanceTable) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(table.header)
        writer.writerows(table.rows)


def load_bundle(directory, o: Olog) -> Instance:
    """Load a directory of CSV tables keyed by type/generator id.

    Each file binds by its filename; the header is cross-checked
    against the binding the header text itself would produce.
    """
    directory = FsPath(directory)
    tokens: dict[str, tuple[str, ...]] = {}
    functions: dict[str, dict[str, str]] = {}
    gen_names = {g.name for g in o.category.generators}
    for path in sorted(directory.glob("*.csv")):
        table = read_table_file(path)
        binding = load_table(table, o)
        name = path.stem
        if name in set(o.category.objects):
            if binding.kind != "tokens" or binding.target != name:
                raise UnboundHeader(
                    f"{path.name}: header binds to {binding.target!r}, "
                    f"not to type {name!r}"
                )
            tokens[name] = binding.tokens
        elif name in gen_names:
            if binding.kind != "function" or binding.target != name:
                raise UnboundHeader(
                    f"{path.name}: header binds to {binding.target!r}, "
                    f"not to aspect {name!r}"
                )
            functions[name] = dict(binding.mapping)
        else:
            raise UnboundHeader(f"{path.name}: no type or aspect named {name!r}")
    return Instance(o, tokens, functions)


def write_bundle(directory, inst: Instance) -> None:
    directory = FsPath(directory)
    directory.mkdir(parents=True, exist_ok=True)
    o = inst.olog
    for obj, toks in inst.tokens.items():
        table = InstanceTable(type_header(o, obj), tuple((t,) for t in toks))
        write_table_file(directory / f"{obj}.csv", table)
    for gen, mapping in inst.functions.items():
        g = o.category.generator(gen)
        rows = tuple((x, mapping[x]) for x in inst.token_set(g.source)
                     if x in mapping)
        table = InstanceTable(generator_header(o, gen), rows)
        write_table_file(directory / f"{gen}.csv", table)


def instance_sentences(inst: Instance) -> list[str]:
    """All generator sentences of the underlying olog (reading aid)."""
    return [read_sentence(generator_sentence(inst.olog, g.name))
            for g in inst.olog.category.generators]
