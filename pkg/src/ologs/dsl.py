"""Line-oriented DSL for olog and mapping documents.

Olog grammar ("#" starts a comment, blank lines are ignored):

    olog "<name>"
    type <id> = "<noun phrase>" by {<author>, ...}
    aspect <id> : <type-id> -> <type-id> = "<verb phrase>" by {...}
    fact <id> : [<aspect-id> ; ...] ~ [<aspect-id> ; ...] by {...}

An identity path is written [1].  Mapping grammar:

    mapping "<name>"
    source "<olog file>"
    target "<olog file>"
    object <id> -> <id>
    aspect <id> -> [<aspect-id> ; ...]
    component <type-id> = "<verb phrase>" by {...}
    square <aspect-id> by {...}
    table <type-id> = "<csv file>"

Serialization is canonical: declarations sorted by kind then id, author
lists sorted, LF line endings, trailing newline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import Equation, Generator, Path, PathCategory
from .errors import DanglingReference, DuplicateId, ParseError, ShapeMismatch
from .language import AtomicVerb, NounPhrase, UNIT, read_verb
from .olog import AspectLabel, LinguisticStructure, Olog, TypeLabel

PUNCT = set("{}[],;:=~")


@dataclass(frozen=True)
class Token:
    kind: str  # WORD | STRING | PUNCT | ARROW
    value: str
    line: int
    column: int


def _tokenize_line(text: str, lineno: int) -> list[Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if text.startswith("->", i):
            tokens.append(Token("ARROW", "->", lineno, col))
            i += 2
            continue
        if ch in PUNCT:
            tokens.append(Token("PUNCT", ch, lineno, col))
            i += 1
            continue
        if ch == '"':
            out = []
            i += 1
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n and text[i + 1] in '"\\':
                    out.append(text[i + 1])
                    i += 2
                else:
                    out.append(text[i])
                    i += 1
            if i >= n:
                raise ParseError(lineno, col, "unterminated string")
            i += 1
            tokens.append(Token("STRING", "".join(out), lineno, col))
            continue
        j = i
        while (j < n and not text[j].isspace() and text[j] not in PUNCT
               and text[j] != '"' and not text.startswith("->", j)
               and text[j] != "#"):
            j += 1
        tokens.append(Token("WORD", text[i:j], lineno, col))
        i = j
    return tokens


class _LineParser:
    def __init__(self, tokens: list[Token], lineno: int):
        self.tokens = tokens
        self.lineno = lineno
        self.pos = 0

    def _here(self) -> tuple[int, int]:
        if self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            return tok.line, tok.column
        if self.tokens:
            last = self.tokens[-1]
            return last.line, last.column + len(last.value)
        return self.lineno, 1

    def fail(self, expected: str):
        line, col = self._here()
        got = (f"{self.tokens[self.pos].value!r}"
               if self.pos < len(self.tokens) else "end of line")
        raise ParseError(line, col, f"expected {expected}, got {got}")

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, value: str | None = None, expected: str | None = None) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind or (value is not None and tok.value != value):
            self.fail(expected or value or kind.lower())
        self.pos += 1
        return tok

    def word(self, expected: str = "identifier") -> str:
        return self.take("WORD", expected=expected).value

    def string(self, expected: str = "quoted string") -> str:
        return self.take("STRING", expected=expected).value

    def punct(self, value: str) -> None:
        self.take("PUNCT", value, f"'{value}'")

    def arrow(self) -> None:
        self.take("ARROW", expected="'->'")

    def authors(self) -> tuple[str, ...]:
        self.take("WORD", "by", "'by'")
        self.punct("{")
        names = []
        tok = self.peek()
        if tok and tok.kind == "PUNCT" and tok.value == "}":
            self.punct("}")
            return ()
        while True:
            names.append(self.word("author identifier"))
            tok = self.peek()
            if tok and tok.kind == "PUNCT" and tok.value == ",":
                self.punct(",")
                continue
            break
        self.punct("}")
        return tuple(names)

    def path_ids(self) -> tuple[str, ...] | None:
        """[f ; g] as a tuple of ids; [1] (identity) as None."""
        self.punct("[")
        first = self.word("aspect identifier or '1'")
        if first == "1":
            self.punct("]")
            return None
        ids = [first]
        while True:
            tok = self.peek()
            if tok and tok.kind == "PUNCT" and tok.value == ";":
                self.punct(";")
                ids.append(self.word("aspect identifier"))
                continue
            break
        self.punct("]")
        return tuple(ids)

    def end(self) -> None:
        if self.pos != len(self.tokens):
            self.fail("end of line")


@dataclass(frozen=True)
class TypeDecl:
    name: str
    noun: str
    authors: tuple[str, ...]


@dataclass(frozen=True)
class AspectDecl:
    name: str
    source: str
    target: str
    verb: str
    authors: tuple[str, ...]


@dataclass(frozen=True)
class FactDecl:
    name: str
    left: tuple[str, ...] | None  # None encodes the identity path
    right: tuple[str, ...] | None
    authors: tuple[str, ...]


@dataclass
class OlogDocument:
    name: str
    types: list[TypeDecl] = field(default_factory=list)
    aspects: list[AspectDecl] = field(default_factory=list)
    facts: list[FactDecl] = field(default_factory=list)


def _nonblank_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize_line(raw, lineno)
        if tokens:
            yield _LineParser(tokens, lineno)


def parse_olog(text: str) -> OlogDocument:
    lines = list(_nonblank_lines(text))
    if not lines:
        raise ParseError(1, 1, "expected 'olog \"<name>\"'")
    head = lines[0]
    head.take("WORD", "olog", "'olog'")
    doc = OlogDocument(head.string("olog name"))
    head.end()
    for lp in lines[1:]:
        keyword = lp.word("'type', 'aspect', or 'fact'")
        if keyword == "type":
            name = lp.word("type identifier")
            lp.punct("=")
            noun = lp.string("noun phrase")
            auth = lp.authors()
            lp.end()
            doc.types.append(TypeDecl(name, noun, auth))
        elif keyword == "aspect":
            name = lp.word("aspect identifier")
            lp.punct(":")
            source = lp.word("source type")
            lp.arrow()
            target = lp.word("target type")
            lp.punct("=")
            verb = lp.string("verb phrase")
            auth = lp.authors()
            lp.end()
            doc.aspects.append(AspectDecl(name, source, target, verb, auth))
        elif keyword == "fact":
            name = lp.word("fact identifier")
            lp.punct(":")
            left = lp.path_ids()
            lp.punct("~")
            right = lp.path_ids()
            auth = lp.authors()
            lp.end()
            doc.facts.append(FactDecl(name, left, right, auth))
        else:
            lp.pos = 0
            lp.fail("'type', 'aspect', or 'fact'")
    return doc


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _authors_text(authors) -> str:
    return "{" + ", ".join(sorted(authors)) + "}"


def _path_text(ids: tuple[str, ...] | None) -> str:
    if not ids:
        return "[1]"
    return "[" + " ; ".join(ids) + "]"


def serialize_olog(doc: OlogDocument) -> str:
    lines = [f"olog {_quote(doc.name)}"]
    for t in sorted(doc.types, key=lambda d: d.name):
        lines.append(
            f"type {t.name} = {_quote(t.noun)} by {_authors_text(t.authors)}"
        )
    for a in sorted(doc.aspects, key=lambda d: d.name):
        lines.append(
            f"aspect {a.name} : {a.source} -> {a.target} = "
            f"{_quote(a.verb)} by {_authors_text(a.authors)}"
        )
    for fct in sorted(doc.facts, key=lambda d: d.name):
        lines.append(
            f"fact {fct.name} : {_path_text(fct.left)} ~ {_path_text(fct.right)} "
            f"by {_authors_text(fct.authors)}"
        )
    return "\n".join(lines) + "\n"


def olog_from_document(doc: OlogDocument) -> Olog:
    """Build the olog, checking references, duplicates, and noun phrases."""
    type_names = [t.name for t in doc.types]
    aspect_names = [a.name for a in doc.aspects]
    fact_names = [f.name for f in doc.facts]
    for names, kind in ((type_names, "type"), (aspect_names, "aspect"),
                        (fact_names, "fact")):
        seen = set()
        for name in names:
            if name in seen:
                raise DuplicateId(f"{kind} {name!r} declared twice")
            seen.add(name)
    declared_types = set(type_names)
    declared_aspects = {a.name: a for a in doc.aspects}
    generators = []
    for a in doc.aspects:
        for endpoint in (a.source, a.target):
            if endpoint not in declared_types:
                raise DanglingReference(
                    f"aspect {a.name!r} refers to undeclared type {endpoint!r}"
                )
        generators.append(Generator(a.name, a.source, a.target))

    def build_path(ids, other_ids, fact_name):
        if ids is None and other_ids is None:
            raise ShapeMismatch(
                f"fact {fact_name!r}: both sides are identity paths; "
                f"the object cannot be inferred"
            )
        if ids is None:
            first = other_ids[0]
            if first not in declared_aspects:
                raise DanglingReference(
                    f"fact {fact_name!r} refers to undeclared aspect {first!r}"
                )
            return Path(declared_aspects[first].source)
        for gen in ids:
            if gen not in declared_aspects:
                raise DanglingReference(
                    f"fact {fact_name!r} refers to undeclared aspect {gen!r}"
                )
        return Path(declared_aspects[ids[0]].source, tuple(ids))

    equations = []
    for fct in doc.facts:
        left = build_path(fct.left, fct.right, fct.name)
        right = build_path(fct.right, fct.left, fct.name)
        equations.append(Equation(fct.name, left, right))
    category = PathCategory(tuple(type_names), tuple(generators), tuple(equations))
    structure = LinguisticStructure(
        type_labels={t.name: TypeLabel(NounPhrase(t.noun), frozenset(t.authors))
                     for t in doc.types},
        aspect_labels={a.name: AspectLabel(AtomicVerb(a.verb),
                                           frozenset(a.authors))
                       for a in doc.aspects},
        fact_authors={f.name: frozenset(f.authors) for f in doc.facts},
    )
    return Olog(doc.name, category, structure)


def document_from_olog(o: Olog) -> OlogDocument:
    """Inverse of olog_from_document, up to canonical ordering.

    Composite and unit verb phrases (as arise from pullbacks) are
    flattened to their readings.
    """
    doc = OlogDocument(o.name)
    for obj in o.category.objects:
        label = o.structure.type_labels[obj]
        doc.types.append(TypeDecl(obj, str(label.noun), tuple(sorted(label.authors))))
    for g in o.category.generators:
        label = o.structure.aspect_labels[g.name]
        doc.aspects.append(AspectDecl(
            g.name, g.source, g.target, read_verb(label.verb),
            tuple(sorted(label.authors)),
        ))
    for eq in o.category.equations:
        auth = o.structure.fact_authors.get(eq.name, frozenset())
        doc.facts.append(FactDecl(
            eq.name,
            eq.left.arrows or None,
            eq.right.arrows or None,
            tuple(sorted(auth)),
        ))
    return doc


def load_olog(path) -> Olog:
    with open(path, encoding="utf-8") as handle:
        return olog_from_document(parse_olog(handle.read()))


@dataclass
class MappingDocument:
    name: str
    source_ref: str = ""
    target_ref: str = ""
    object_map: dict[str, str] = field(default_factory=dict)
    aspect_map: dict[str, tuple[str, ...] | None] = field(default_factory=dict)
    components: dict[str, tuple[str, tuple[str, ...]]] = field(default_factory=dict)
    squares: dict[str, tuple[str, ...]] = field(default_factory=dict)
    tables: dict[str, str] = field(default_factory=dict)


def parse_mapping(text: str) -> MappingDocument:
    lines = list(_nonblank_lines(text))
    if not lines:
        raise ParseError(1, 1, "expected 'mapping \"<name>\"'")
    head = lines[0]
    head.take("WORD", "mapping", "'mapping'")
    doc = MappingDocument(head.string("mapping name"))
    head.end()
    for lp in lines[1:]:
        keyword = lp.word("a mapping declaration")
        if keyword == "source":
            doc.source_ref = lp.string("olog file path")
        elif keyword == "target":
            doc.target_ref = lp.string("olog file path")
        elif keyword == "object":
            src = lp.word("object identifier")
            lp.arrow()
            dst = lp.word("object identifier")
            if src in doc.object_map:
                raise DuplicateId(f"object {src!r} mapped twice")
            doc.object_map[src] = dst
        elif keyword == "aspect":
            src = lp.word("aspect identifier")
            lp.arrow()
            path = lp.path_ids()
            if src in doc.aspect_map:
                raise DuplicateId(f"aspect {src!r} mapped twice")
            doc.aspect_map[src] = path
        elif keyword == "component":
            obj = lp.word("object identifier")
            lp.punct("=")
            verb = lp.string("verb phrase")
            auth = lp.authors()
            if obj in doc.components:
                raise DuplicateId(f"component at {obj!r} declared twice")
            doc.components[obj] = (verb, auth)
        elif keyword == "square":
            gen = lp.word("aspect identifier")
            auth = lp.authors()
            if gen in doc.squares:
                raise DuplicateId(f"square at {gen!r} declared twice")
            doc.squares[gen] = auth
        elif keyword == "table":
            obj = lp.word("object identifier")
            lp.punct("=")
            doc.tables[obj] = lp.string("csv file path")
        else:
            lp.pos = 0
            lp.fail("'source', 'target', 'object', 'aspect', 'component', "
                    "'square', or 'table'")
        lp.end()
    return doc


def serialize_mapping(doc: MappingDocument) -> str:
    lines = [f"mapping {_quote(doc.name)}"]
    if doc.source_ref:
        lines.append(f"source {_quote(doc.source_ref)}")
    if doc.target_ref:
        lines.append(f"target {_quote(doc.target_ref)}")
    for src in sorted(doc.object_map):
        lines.append(f"object {src} -> {doc.object_map[src]}")
    for src in sorted(doc.aspect_map):
        lines.append(f"aspect {src} -> {_path_text(doc.aspect_map[src])}")
    for obj in sorted(doc.components):
        verb, auth = doc.components[obj]
        lines.append(
            f"component {obj} = {_quote(verb)} by {_authors_text(auth)}"
        )
    for gen in sorted(doc.squares):
        lines.append(f"square {gen} by {_authors_text(doc.squares[gen])}")
    for obj in sorted(doc.tables):
        lines.append(f"table {obj} = {_quote(doc.tables[obj])}")
    return "\n".join(lines) + "\n"


def morphism_from_document(doc: MappingDocument, source: Olog, target: Olog):
    """Build the olog morphism against already-loaded endpoint ologs."""
    from .category import CatFunctor
    from .mapping import OlogMorphism

    src_objects = set(source.category.objects)
    dst_objects = set(target.category.objects)
    for src, dst in doc.object_map.items():
        if src not in src_objects:
            raise DanglingReference(f"unknown source object {src!r}")
        if dst not in dst_objects:
            raise DanglingReference(f"unknown target object {dst!r}")
    generator_map = {}
    for name, ids in doc.aspect_map.items():
        try:
            g = source.category.generator(name)
        except Exception:
            raise DanglingReference(f"unknown source aspect {name!r}") from None
        if ids is None:
            image_source = doc.object_map.get(g.source)
            if image_source is None:
                raise DanglingReference(
                    f"aspect {name!r} maps to an identity but object "
                    f"{g.source!r} has no image"
                )
            generator_map[name] = Path(image_source)
        else:
            for gen in ids:
                target.category.generator(gen)  # raises if unknown
            first = target.category.generator(ids[0])
            generator_map[name] = Path(first.source, tuple(ids))
    functor = CatFunctor(source.category, target.category,
                         dict(doc.object_map), generator_map)
    components = {
        obj: AspectLabel(
            UNIT if verb == "is of course" else AtomicVerb(verb),
            frozenset(auth),
        )
        for obj, (verb, auth) in doc.components.items()
    }
    squares = {gen: frozenset(auth) for gen, auth in doc.squares.items()}
    return OlogMorphism(source, target, functor, components, squares)
