"""Finitely presented categories: paths, path equality, functors.

A category is given by objects, generator arrows, and declared equations
between parallel paths.  Equality of paths is decided by bounded
bidirectional rewriting with the declared equations; this is sound but
necessarily incomplete (the word problem is undecidable in general), so
the negative answer only means "not proved within the bound".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DuplicateId,
    InvalidFunctor,
    InvalidPath,
    NonComposable,
    ShapeMismatch,
    UnknownGenerator,
    UnknownObject,
)
from .report import ValidationReport

DEFAULT_BOUND = 8


@dataclass(frozen=True)
class Generator:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A composable run of generators; an empty run is the identity."""

    source: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_identity(self) -> bool:
        return not self.arrows


@dataclass(frozen=True)
class Equation:
    """A declared equality between two parallel paths."""

    name: str
    left: Path
    right: Path

    def sides(self) -> tuple[Path, Path]:
        return (self.left, self.right)


@dataclass
class PathCategory:
    objects: tuple[str, ...]
    generators: tuple[Generator, ...]
    equations: tuple[Equation, ...] = ()
    _gen_index: dict[str, Generator] = field(init=False, repr=False)

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise UnknownObject("duplicate object identifiers")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise UnknownGenerator("duplicate generator identifiers")
        self._gen_index = {g.name: g for g in self.generators}
        objs = set(self.objects)
        for g in self.generators:
            if g.source not in objs or g.target not in objs:
                raise UnknownObject(
                    f"generator {g.name!r} has endpoint outside the category"
                )
        eq_names = [e.name for e in self.equations]
        if len(set(eq_names)) != len(eq_names):
            raise DuplicateId("duplicate equation identifiers")
        for e in self.equations:
            self.check_path(e.left)
            self.check_path(e.right)
            if (e.left.source != e.right.source
                    or self.target_of(e.left) != self.target_of(e.right)):
                raise ShapeMismatch(
                    f"equation {e.name!r}: sides do not share endpoints"
                )

    def __eq__(self, other):
        if not isinstance(other, PathCategory):
            return NotImplemented
        return (self.objects == other.objects
                and self.generators == other.generators
                and self.equations == other.equations)

    def generator(self, name: str) -> Generator:
        try:
            return self._gen_index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def equation(self, name: str) -> Equation:
        for e in self.equations:
            if e.name == name:
                return e
        from .errors import UnknownEquation
        raise UnknownEquation(name)

    def check_path(self, p: Path) -> None:
        """Raise InvalidPath unless p is a composable run rooted in this category."""
        if p.source not in self._obj_set():
            raise InvalidPath(f"unknown source object {p.source!r}")
        at = p.source
        for name in p.arrows:
            g = self._gen_index.get(name)
            if g is None:
                raise InvalidPath(f"unknown generator {name!r}")
            if g.source != at:
                raise InvalidPath(
                    f"generator {name!r} does not compose at object {at!r}"
                )
            at = g.target

    def _obj_set(self) -> set[str]:
        return set(self.objects)

    def path(self, source: str, arrows=()) -> Path:
        p = Path(source, tuple(arrows))
        self.check_path(p)
        return p

    def target_of(self, p: Path) -> str:
        at = p.source
        for name in p.arrows:
            at = self.generator(name).target
        return at

    def objects_along(self, p: Path) -> list[str]:
        """Object sequence visited by p, of length len(p) + 1."""
        objs = [p.source]
        for name in p.arrows:
            objs.append(self.generator(name).target)
        return objs

    def compose(self, p: Path, q: Path) -> Path:
        if self.target_of(p) != q.source:
            raise NonComposable(
                f"cannot compose: path ends at {self.target_of(p)!r}, "
                f"next starts at {q.source!r}"
            )
        return Path(p.source, p.arrows + q.arrows)

    def identity(self, obj: str) -> Path:
        if obj not in self._obj_set():
            raise UnknownObject(obj)
        return Path(obj)

    def _rewrites(self, p: Path):
        """All paths reachable from p by one equation applied to a subpath."""
        objs = self.objects_along(p)
        out = []
        for eq in self.equations:
            for frm, to in (eq.sides(), eq.sides()[::-1]):
                k = len(frm.arrows)
                for i in range(len(p.arrows) - k + 1):
                    if p.arrows[i:i + k] != frm.arrows:
                        continue
                    if objs[i] != frm.source:
                        continue
                    out.append(Path(p.source,
                                    p.arrows[:i] + to.arrows + p.arrows[i + k:]))
        return out

    def path_equal(self, p: Path, q: Path, bound: int = DEFAULT_BOUND) -> bool:
        """Decide p = q by at most `bound` bidirectional rewrites.

        True means provably equal; False only means not proved within
        the bound.
        """
        self.check_path(p)
        self.check_path(q)
        if p.source != q.source or self.target_of(p) != self.target_of(q):
            raise ShapeMismatch("paths do not share endpoints")
        if p == q:
            return True
        seen = {p}
        frontier = [p]
        for _ in range(bound):
            nxt = []
            for r in frontier:
                for s in self._rewrites(r):
                    if s == q:
                        return True
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            if not nxt:
                return False
            frontier = nxt
        return False


@dataclass
class CatFunctor:
    """A functor between presented categories.

    Generators map to paths in the target; the action extends to all
    paths by splicing.
    """

    source: PathCategory
    target: PathCategory
    object_map: dict[str, str]
    generator_map: dict[str, Path]

    def apply_object(self, obj: str) -> str:
        try:
            return self.object_map[obj]
        except KeyError:
            raise UnknownObject(obj) from None

    def apply(self, p: Path) -> Path:
        """Image of a path: map the source and splice generator images."""
        arrows: tuple[str, ...] = ()
        for name in p.arrows:
            image = self.generator_map.get(name)
            if image is None:
                raise UnknownGenerator(name)
            arrows += image.arrows
        return Path(self.apply_object(p.source), arrows)


def compose_functors(f: CatFunctor, g: CatFunctor) -> CatFunctor:
    """g after f, as a functor f.source -> g.target."""
    if f.target is not g.source and f.target != g.source:
        raise InvalidFunctor("functors are not composable")
    return CatFunctor(
        source=f.source,
        target=g.target,
        object_map={c: g.apply_object(d) for c, d in f.object_map.items()},
        generator_map={name: g.apply(p) for name, p in f.generator_map.items()},
    )


def identity_functor(c: PathCategory) -> CatFunctor:
    return CatFunctor(
        source=c,
        target=c,
        object_map={o: o for o in c.objects},
        generator_map={g.name: Path(g.source, (g.name,)) for g in c.generators},
    )


def validate_functor(f: CatFunctor, bound: int = DEFAULT_BOUND) -> ValidationReport:
    """Check endpoint constraints and equation preservation."""
    report = ValidationReport()
    src, dst = f.source, f.target
    dst_objects = set(dst.objects)
    for obj in src.objects:
        image = f.object_map.get(obj)
        if image is None:
            report.add("missing-object-image", f"object {obj!r} has no image")
        elif image not in dst_objects:
            report.add("bad-object-image",
                       f"object {obj!r} maps to unknown object {image!r}")
    for g in src.generators:
        image = f.generator_map.get(g.name)
        if image is None:
            report.add("missing-generator-image",
                       f"generator {g.name!r} has no image")
            continue
        try:
            dst.check_path(image)
        except InvalidPath as exc:
            report.add("bad-generator-image", f"generator {g.name!r}: {exc}")
            continue
        want_src = f.object_map.get(g.source)
        want_tgt = f.object_map.get(g.target)
        if image.source != want_src or dst.target_of(image) != want_tgt:
            report.add(
                "endpoint-violation",
                f"image of generator {g.name!r} runs "
                f"{image.source!r} -> {dst.target_of(image)!r}, "
                f"expected {want_src!r} -> {want_tgt!r}",
            )
    if not report.ok:
        return report
    for eq in src.equations:
        left = f.apply(eq.left)
        right = f.apply(eq.right)
        if not dst.path_equal(left, right, bound):
            report.add(
                "equation-not-preserved",
                f"image of equation {eq.name!r} not proved equal "
                f"within bound {bound}",
            )
    return report
