"""Class-model representation and the per-class tallies the metrics consume.

A :class:`ClassModel` is an immutable directed graph of class declarations:
inheritance edges (``parents``), client edges (``uses``), and per-class
feature lists (methods and attributes).  :func:`validate` reports structural
problems as diagnostics; :func:`tallies` derives the feature counts used by
the metric formulas; :func:`descendants` counts the proper subtree below a
class.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import UnknownClassError


class Visibility(enum.Enum):
    VISIBLE = "visible"
    HIDDEN = "hidden"


class MethodKind(enum.Enum):
    NEW = "new"
    OVERRIDE = "override"


@dataclass(frozen=True)
class MethodDecl:
    """A method declaration.

    ``override_target`` is the (ancestor class, method name) pair being
    redefined; it is present exactly when ``kind`` is OVERRIDE.
    """

    name: str
    visibility: Visibility = Visibility.VISIBLE
    kind: MethodKind = MethodKind.NEW
    override_target: Optional[tuple[str, str]] = None

    def __post_init__(self):
        if (self.kind is MethodKind.OVERRIDE) != (self.override_target is not None):
            raise ValueError(
                f"method {self.name!r}: kind {self.kind.value!r} inconsistent "
                f"with override_target {self.override_target!r}")


@dataclass(frozen=True)
class AttributeDecl:
    name: str
    visibility: Visibility = Visibility.VISIBLE


@dataclass(frozen=True)
class ClassDecl:
    name: str
    parents: tuple[str, ...] = ()
    methods: tuple[MethodDecl, ...] = ()
    attributes: tuple[AttributeDecl, ...] = ()
    uses: tuple[str, ...] = ()

    def __post_init__(self):
        # Accept any sequence; store tuples so declarations hash and compare.
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "uses", tuple(self.uses))

    def method_names(self) -> set[str]:
        return {m.name for m in self.methods}

    def attribute_names(self) -> set[str]:
        return {a.name for a in self.attributes}


class ClassModel:
    """Ordered, name-keyed collection of class declarations.

    Immutable after construction; all derived queries are read-only, so a
    model can be shared freely across threads.
    """

    def __init__(self, classes: Iterable[ClassDecl]):
        self._classes = tuple(classes)
        by_name: dict[str, ClassDecl] = {}
        for decl in self._classes:
            if decl.name in by_name:
                raise ValueError(f"duplicate class name: {decl.name!r}")
            by_name[decl.name] = decl
        self._by_name = by_name

    @property
    def classes(self) -> tuple[ClassDecl, ...]:
        return self._classes

    def __len__(self) -> int:
        return len(self._classes)

    def __iter__(self) -> Iterator[ClassDecl]:
        return iter(self._classes)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassModel):
            return NotImplemented
        return self._classes == other._classes

    def __hash__(self):
        return hash(self._classes)

    def __repr__(self) -> str:
        return f"ClassModel({[c.name for c in self._classes]!r})"

    def get(self, name: str) -> ClassDecl:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownClassError(name) from None


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding: a stable code, a message, and the class involved."""

    code: str
    message: str
    class_name: Optional[str] = None


@dataclass(frozen=True)
class ClassTallies:
    """Feature counts for one class.

    Method counts: visible/hidden/defined/inherited/available/new/overriding.
    Attribute counts mirror them minus the new/override split.  ``dc`` is the
    number of strict descendants.
    """

    m_v: int
    m_h: int
    m_d: int
    m_i: int
    m_a: int
    m_n: int
    m_o: int
    a_v: int
    a_h: int
    a_d: int
    a_i: int
    a_a: int
    dc: int


# Diagnostic codes
EMPTY_MODEL = "EMPTY_MODEL"
CYCLE = "CYCLE"
UNRESOLVED_NAME = "UNRESOLVED_NAME"
SELF_REFERENCE = "SELF_REFERENCE"
DUPLICATE_METHOD = "DUPLICATE_METHOD"
DUPLICATE_ATTRIBUTE = "DUPLICATE_ATTRIBUTE"
SHADOWING = "SHADOWING"
BAD_OVERRIDE = "BAD_OVERRIDE"


def validate(model: ClassModel) -> list[Diagnostic]:
    """Check every model invariant; an empty list means the model is valid.

    Structural problems (dangling names, cycles, duplicate features) are
    always reported.  Inheritance-sensitive checks (shadowing, override
    targets) run only when the parent graph is resolvable and acyclic,
    since they are meaningless otherwise.
    """
    diags: list[Diagnostic] = []
    if len(model) == 0:
        return [Diagnostic(EMPTY_MODEL, "model declares no classes")]

    parent_graph_ok = True
    for decl in model:
        seen: set[str] = set()
        for m in decl.methods:
            if m.name in seen:
                diags.append(Diagnostic(
                    DUPLICATE_METHOD,
                    f"method {m.name!r} declared more than once in {decl.name!r}",
                    decl.name))
            seen.add(m.name)
        seen = set()
        for a in decl.attributes:
            if a.name in seen:
                diags.append(Diagnostic(
                    DUPLICATE_ATTRIBUTE,
                    f"attribute {a.name!r} declared more than once in {decl.name!r}",
                    decl.name))
            seen.add(a.name)

        if decl.name in decl.parents:
            diags.append(Diagnostic(
                SELF_REFERENCE, f"{decl.name!r} lists itself as a parent", decl.name))
            parent_graph_ok = False
        if decl.name in decl.uses:
            diags.append(Diagnostic(
                SELF_REFERENCE, f"{decl.name!r} lists itself in uses", decl.name))

        for parent in decl.parents:
            if parent != decl.name and parent not in model:
                diags.append(Diagnostic(
                    UNRESOLVED_NAME,
                    f"{decl.name!r} extends unknown class {parent!r}", decl.name))
                parent_graph_ok = False
        for used in decl.uses:
            if used != decl.name and used not in model:
                diags.append(Diagnostic(
                    UNRESOLVED_NAME,
                    f"{decl.name!r} uses unknown class {used!r}", decl.name))
        for m in decl.methods:
            if m.override_target is not None and m.override_target[0] not in model:
                diags.append(Diagnostic(
                    UNRESOLVED_NAME,
                    f"{decl.name!r}.{m.name} overrides method of unknown class "
                    f"{m.override_target[0]!r}", decl.name))
                parent_graph_ok = False

    cycles = _inheritance_cycles(model)
    for members in cycles:
        diags.append(Diagnostic(
            CYCLE,
            "inheritance cycle: " + " -> ".join(members + (members[0],)),
            members[0]))
    if cycles:
        parent_graph_ok = False

    if parent_graph_ok:
        diags.extend(_check_inheritance_semantics(model))
    return diags


def _inheritance_cycles(model: ClassModel) -> list[tuple[str, ...]]:
    """Strongly connected components of size > 1 in the parent graph.

    Each component yields one diagnostic; members are reported in name order
    so output is deterministic.  Unresolved parent edges are ignored here
    (they get their own diagnostic).
    """
    edges = {c.name: [p for p in c.parents if p in model and p != c.name]
             for c in model}
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = [0]
    sccs: list[tuple[str, ...]] = []

    def strongconnect(start: str):
        # Iterative Tarjan: (node, edge iterator) frames.
        work = [(start, iter(edges[start]))]
        index[start] = low[start] = counter[0]
        counter[0] += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(edges[succ])))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) > 1:
                    sccs.append(tuple(sorted(component)))

    for decl in model:
        if decl.name not in index:
            strongconnect(decl.name)
    sccs.sort()
    return sccs


def _check_inheritance_semantics(model: ClassModel) -> list[Diagnostic]:
    """Shadowing and override-target checks; requires an acyclic, resolved graph."""
    diags: list[Diagnostic] = []
    for decl in model:
        ancestors = _ancestors(model, decl.name)
        inherited_methods = {name for _, name in _available_methods_of_parents(model, decl)}
        inherited_attrs = {name for _, name in _available_attrs_of_parents(model, decl)}
        for m in decl.methods:
            if m.kind is MethodKind.NEW and m.name in inherited_methods:
                diags.append(Diagnostic(
                    SHADOWING,
                    f"{decl.name!r}.{m.name} shadows an inherited method; "
                    "declare it with 'overrides' or rename it", decl.name))
            elif m.kind is MethodKind.OVERRIDE:
                target_cls, target_meth = m.override_target
                if target_meth != m.name:
                    diags.append(Diagnostic(
                        BAD_OVERRIDE,
                        f"{decl.name!r}.{m.name} cannot override differently "
                        f"named method {target_cls}.{target_meth}", decl.name))
                elif target_cls not in ancestors:
                    diags.append(Diagnostic(
                        BAD_OVERRIDE,
                        f"{decl.name!r}.{m.name}: {target_cls!r} is not an "
                        "ancestor", decl.name))
                elif target_meth not in _defined_or_inherited_method_names(model, target_cls):
                    diags.append(Diagnostic(
                        BAD_OVERRIDE,
                        f"{decl.name!r}.{m.name}: no method {target_meth!r} in "
                        f"ancestor {target_cls!r}", decl.name))
        for a in decl.attributes:
            if a.name in inherited_attrs:
                diags.append(Diagnostic(
                    SHADOWING,
                    f"{decl.name!r}.{a.name} shadows an inherited attribute",
                    decl.name))
    return diags


def _ancestors(model: ClassModel, name: str) -> set[str]:
    """Transitive parent closure, excluding the class itself."""
    out: set[str] = set()
    frontier = list(model.get(name).parents)
    while frontier:
        cur = frontier.pop()
        if cur in out or cur not in model:
            continue
        out.add(cur)
        frontier.extend(model.get(cur).parents)
    return out


def _available_features(model: ClassModel, name: str,
                        cache: dict[str, tuple[frozenset, frozenset]],
                        ) -> tuple[frozenset, frozenset]:
    """(methods, attributes) available in a class.

    Each feature is identified by its (origin class, name) pair: locally
    declared features originate here (an override re-originates the method),
    inherited ones keep the origin of the declaring ancestor.  Union over
    multiple parents collapses features with the same identity, so a diamond
    contributes a feature once; an inherited feature is dropped when its name
    is declared locally.
    """
    if name in cache:
        return cache[name]
    decl = model.get(name)
    local_m = frozenset((name, m.name) for m in decl.methods)
    local_a = frozenset((name, a.name) for a in decl.attributes)
    local_m_names = decl.method_names()
    local_a_names = decl.attribute_names()
    inh_m: set[tuple[str, str]] = set()
    inh_a: set[tuple[str, str]] = set()
    for parent in decl.parents:
        pm, pa = _available_features(model, parent, cache)
        inh_m.update(f for f in pm if f[1] not in local_m_names)
        inh_a.update(f for f in pa if f[1] not in local_a_names)
    result = (local_m | inh_m, local_a | inh_a)
    cache[name] = result
    return result


def _available_methods_of_parents(model: ClassModel, decl: ClassDecl) -> set[tuple[str, str]]:
    cache: dict[str, tuple[frozenset, frozenset]] = {}
    out: set[tuple[str, str]] = set()
    for parent in decl.parents:
        out.update(_available_features(model, parent, cache)[0])
    return out


def _available_attrs_of_parents(model: ClassModel, decl: ClassDecl) -> set[tuple[str, str]]:
    cache: dict[str, tuple[frozenset, frozenset]] = {}
    out: set[tuple[str, str]] = set()
    for parent in decl.parents:
        out.update(_available_features(model, parent, cache)[1])
    return out


def _defined_or_inherited_method_names(model: ClassModel, name: str) -> set[str]:
    cache: dict[str, tuple[frozenset, frozenset]] = {}
    return {n for _, n in _available_features(model, name, cache)[0]}


def tallies(model: ClassModel, name: str) -> ClassTallies:
    """Feature counts for one class of a valid model.

    Inherited counts cover every feature reachable through the transitive
    parent closure that is not declared locally; overriding a method counts
    it as locally defined, not inherited.  Raises UnknownClassError for an
    absent name.
    """
    decl = model.get(name)
    m_v = sum(1 for m in decl.methods if m.visibility is Visibility.VISIBLE)
    m_h = len(decl.methods) - m_v
    m_n = sum(1 for m in decl.methods if m.kind is MethodKind.NEW)
    m_o = len(decl.methods) - m_n
    a_v = sum(1 for a in decl.attributes if a.visibility is Visibility.VISIBLE)
    a_h = len(decl.attributes) - a_v

    cache: dict[str, tuple[frozenset, frozenset]] = {}
    local_m_names = decl.method_names()
    local_a_names = decl.attribute_names()
    inh_m: set[tuple[str, str]] = set()
    inh_a: set[tuple[str, str]] = set()
    for parent in decl.parents:
        pm, pa = _available_features(model, parent, cache)
        inh_m.update(f for f in pm if f[1] not in local_m_names)
        inh_a.update(f for f in pa if f[1] not in local_a_names)

    m_d = len(decl.methods)
    a_d = len(decl.attributes)
    return ClassTallies(
        m_v=m_v, m_h=m_h, m_d=m_d, m_i=len(inh_m), m_a=m_d + len(inh_m),
        m_n=m_n, m_o=m_o,
        a_v=a_v, a_h=a_h, a_d=a_d, a_i=len(inh_a), a_a=a_d + len(inh_a),
        dc=descendants(model, name),
    )


def descendants(model: ClassModel, name: str) -> int:
    """Number of classes whose transitive parent closure includes ``name``."""
    model.get(name)
    return sum(1 for other in model
               if other.name != name and name in _ancestors(model, other.name))
