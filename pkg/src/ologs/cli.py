"""Command-line surface: validation, readings, pullbacks, migration, search.

Exit codes: 0 success, 1 validation failure, 2 usage or parse error.
Diagnostics go to stderr; reports to stdout (as JSON with --json).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FsPath

from .category import DEFAULT_BOUND
from .dsl import (
    MappingDocument,
    document_from_olog,
    load_olog,
    morphism_from_document,
    parse_mapping,
    serialize_olog,
)
from .errors import OlogError, ParseError
from .instance import load_bundle, read_table_file, write_bundle
from .language import read_sentence
from .mapping import (
    DEFAULT_SEARCH_LIMIT,
    InstanceMorphism,
    check_conformance,
    check_naturality,
    component_table_header,
    correspondence_pairs,
    pullback_instance,
    pullback_olog,
    search_conforming,
    validate_linguistic_functor,
)
from .olog import generator_sentence, derived_sentence, read_fact, validate_olog
from .report import ValidationReport


def _emit(report: ValidationReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_json()))
    else:
        for finding in report.findings:
            print(f"{finding.code}: {finding.message}", file=sys.stderr)
        for finding in report.warnings:
            print(f"warning {finding.code}: {finding.message}", file=sys.stderr)
    return 0 if report.ok else 1


def _load_mapping(path: str):
    map_path = FsPath(path)
    with open(map_path, encoding="utf-8") as handle:
        doc = parse_mapping(handle.read())
    base = map_path.parent
    source = load_olog(base / doc.source_ref)
    target = load_olog(base / doc.target_ref)
    return doc, base, morphism_from_document(doc, source, target)


def _load_correspondences(doc: MappingDocument, base: FsPath, m) -> dict:
    tables = {}
    for obj, rel in doc.tables.items():
        table = read_table_file(base / rel)
        expected = component_table_header(m, obj)
        if table.header != expected:
            raise OlogError(
                f"{rel}: header {table.header!r} does not match the "
                f"component convention {expected!r}"
            )
        tables[obj] = correspondence_pairs(table)
    return tables


def cmd_validate(args) -> int:
    olog = load_olog(args.olog_file)
    return _emit(validate_olog(olog), args.json)


def cmd_read(args) -> int:
    olog = load_olog(args.olog_file)
    report = ValidationReport()
    lines = []
    for g in olog.category.generators:
        lines.append(("sentence", read_sentence(generator_sentence(olog, g.name))))
    if args.facts:
        for eq in olog.category.equations:
            lines.append(("sentence",
                          read_sentence(derived_sentence(olog, eq.left))))
            lines.append(("sentence",
                          read_sentence(derived_sentence(olog, eq.right))))
            lines.append(("fact", read_fact(olog, eq.name)))
    if args.json:
        for code, message in lines:
            report.add(code, message)
        print(json.dumps(report.to_json()))
    else:
        for _, message in lines:
            print(message)
    return 0


def cmd_check_instance(args) -> int:
    olog = load_olog(args.olog_file)
    report = validate_olog(olog)
    if report.ok:
        try:
            instance = load_bundle(args.csv_dir, olog)
        except OlogError as exc:
            report.add("bad-bundle", str(exc))
        else:
            from .instance import validate_instance

            report = validate_instance(instance)
    return _emit(report, args.json)


def cmd_check_mapping(args) -> int:
    doc, base, m = _load_mapping(args.map_file)
    report = validate_olog(m.source)
    report.extend(validate_olog(m.target))
    if report.ok:
        report = validate_linguistic_functor(m, args.bound)
    if report.ok and args.src_data and args.dst_data:
        i = load_bundle(args.src_data, m.source)
        j = load_bundle(args.dst_data, m.target)
        correspondences = _load_correspondences(doc, base, m)
        components = {}
        for obj, pairs in correspondences.items():
            mapping = {}
            for x, y in sorted(pairs):
                if x in mapping:
                    report.add(
                        "ambiguous-correspondence",
                        f"table at {obj!r} declares two partners for {x!r}",
                    )
                mapping[x] = y
            components[obj] = mapping
        if report.ok:
            p = InstanceMorphism(i, j, m, components, correspondences)
            report.extend(check_naturality(p))
            if report.ok:
                report.extend(check_conformance(p))
    return _emit(report, args.json)


def cmd_pullback(args) -> int:
    doc, _, m = _load_mapping(args.map_file)
    pulled = pullback_olog(m.functor, m.target, f"{doc.name}.pullback")
    text = serialize_olog(document_from_olog(pulled))
    FsPath(args.out).write_text(text, encoding="utf-8")
    return 0


def cmd_migrate(args) -> int:
    _, _, m = _load_mapping(args.map_file)
    j = load_bundle(args.dst_data, m.target)
    pulled = pullback_instance(m.functor, j)
    write_bundle(args.out, pulled)
    return 0


def cmd_search_conforming(args) -> int:
    doc, base, m = _load_mapping(args.map_file)
    i = load_bundle(args.src_data, m.source)
    j = load_bundle(args.dst_data, m.target)
    correspondences = _load_correspondences(doc, base, m)
    count, survivors = search_conforming(m, i, j, correspondences, args.limit)
    if args.json:
        findings = [{"code": "candidates", "message": str(count)},
                    {"code": "conforming", "message": str(len(survivors))}]
        for morphism in survivors:
            parts = []
            for obj in sorted(morphism.component_functions):
                for x, y in sorted(morphism.component_functions[obj].items()):
                    parts.append(f"{obj}: {x} -> {y}")
            findings.append({"code": "morphism", "message": "; ".join(parts)})
        print(json.dumps({"ok": True, "findings": findings}))
    else:
        print(f"candidates: {count}")
        for index, morphism in enumerate(survivors, start=1):
            print(f"morphism {index}:")
            for obj in sorted(morphism.component_functions):
                for x, y in sorted(morphism.component_functions[obj].items()):
                    print(f"  {obj}: {x} -> {y}")
        print(f"conforming: {len(survivors)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="olog", description="Validate, read, and map ologs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="machine-readable report on stdout")

    p = sub.add_parser("validate", help="validate an olog file")
    p.add_argument("olog_file")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                   help="rewrite bound for path-equality checks")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("read", help="print the English sentences of an olog")
    p.add_argument("olog_file")
    p.add_argument("--facts", action="store_true",
                   help="also print fact readings")
    common(p)
    p.set_defaults(func=cmd_read)

    p = sub.add_parser("check-instance",
                       help="check a CSV bundle against an olog")
    p.add_argument("olog_file")
    p.add_argument("csv_dir")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    common(p)
    p.set_defaults(func=cmd_check_instance)

    p = sub.add_parser("check-mapping",
                       help="validate a mapping, optionally against data")
    p.add_argument("map_file")
    p.add_argument("--src-data", default=None)
    p.add_argument("--dst-data", default=None)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    common(p)
    p.set_defaults(func=cmd_check_mapping)

    p = sub.add_parser("pullback",
                       help="write the pulled-back olog of a mapping")
    p.add_argument("map_file")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("migrate",
                       help="re-tabulate target data along the mapping")
    p.add_argument("map_file")
    p.add_argument("--dst-data", required=True)
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_migrate)

    p = sub.add_parser("search-conforming",
                       help="enumerate conforming instance morphisms")
    p.add_argument("map_file")
    p.add_argument("--src-data", required=True)
    p.add_argument("--dst-data", required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_SEARCH_LIMIT)
    common(p)
    p.set_defaults(func=cmd_search_conforming)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (OlogError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
