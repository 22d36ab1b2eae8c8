"""Textual AVM syntax: read and print feature structures as s-expressions.

Syntax (documented in the README):

* AVM node:       ``(type (FEAT value) ...)`` — a featureless node may be
  written as the bare type symbol, e.g. ``fin`` or ``none``.
* closed list:    ``(list v1 v2 ...)``
* open list:      ``(openlist v1 v2 ...)`` — known prefix, unconstrained tail
* append:         ``(append l1 l2 ...)`` — list concatenation
* set:            ``(set)`` or ``(set v)``
* reentrancy:     ``#1=value`` tags a node at its first occurrence,
  ``#1#`` refers back to it.

Printing produces canonical text: features sorted by name, tags numbered
in depth-first discovery order, so ``read(print(x))`` is structure-equal to
``x`` (the round-trip invariant tested in the suite).
"""
from __future__ import annotations

import re
from typing import Optional

from . import sexpr
from .tfs import (
    APPEND,
    AVM,
    CLOSED,
    OPEN,
    SET,
    ConfigurationError,
    FeatureStructure,
    Node,
    TypeHierarchy,
    _canonicalize,
    validate,
)

_TAG_DEF = re.compile(r"^#(\d+)=$")
_TAG_REF = re.compile(r"^#(\d+)#$")

_LIST_HEADS = {"list": CLOSED, "openlist": OPEN, "append": APPEND, "set": SET}


class AvmSyntaxError(Exception):
    """Ill-formed AVM text; carries the source position in the message."""


def print_fs(fs: FeatureStructure, indent: bool = True) -> str:
    """Render a structure in the canonical textual syntax."""
    shared = _shared_nodes(fs)
    tags: dict[int, int] = {}
    printed: set[int] = set()

    def render(i: int):
        if i in printed:
            return sexpr.Symbol(f"#{tags[i]}#")
        printed.add(i)
        prefix = ""
        if i in shared:
            tags[i] = len(tags) + 1
            prefix = f"#{tags[i]}="
        node = fs.nodes[i]
        if node.kind == AVM:
            if not node.feats:
                body = sexpr.Symbol(node.type)
            else:
                items = [sexpr.Symbol(node.type)]
                for f, c in node.feats:
                    items.append(sexpr.SList((sexpr.Symbol(f), render(c))))
                body = sexpr.SList(tuple(items))
        else:
            head = {CLOSED: "list", OPEN: "openlist", APPEND: "append", SET: "set"}[node.kind]
            items = [sexpr.Symbol(head)]
            items.extend(render(c) for c in node.elems)
            body = sexpr.SList(tuple(items))
        if prefix:
            if isinstance(body, sexpr.Symbol):
                return sexpr.Symbol(prefix + body.name)
            return sexpr.SList((sexpr.Symbol(prefix), body))
        return body

    form = render(fs.root)
    text = sexpr.write(form) if indent else sexpr._write_flat(form)
    return text


def _shared_nodes(fs: FeatureStructure) -> set[int]:
    indeg: dict[int, int] = {}
    for node in fs.nodes:
        children = [c for _, c in node.feats] if node.kind == AVM else node.elems
        for c in children:
            indeg[c] = indeg.get(c, 0) + 1
    return {i for i, d in indeg.items() if d > 1}


def read_fs(text: str, hierarchy: TypeHierarchy,
            templates: Optional[dict[str, FeatureStructure]] = None,
            check: bool = True) -> FeatureStructure:
    """Parse the canonical textual syntax back into a structure.

    ``templates`` maps names to reusable structures; a bare symbol naming a
    template expands to a fresh copy.  With ``check`` the result is
    validated against the hierarchy's appropriateness table.
    """
    forms = _fuse_tags(sexpr.parse_all(text))
    if len(forms) != 1:
        raise AvmSyntaxError(f"expected exactly one AVM, got {len(forms)} forms")
    return build_fs(forms[0], hierarchy, templates, check=check)


def _fuse_tags(items) -> list:
    """Merge a bare ``#N=`` symbol with the following value into one form."""
    out = []
    i = 0
    items = list(items)
    while i < len(items):
        item = items[i]
        if isinstance(item, sexpr.Symbol) and _TAG_DEF.match(item.name):
            if i + 1 >= len(items):
                raise AvmSyntaxError(f"line {item.line}: dangling tag {item.name}")
            out.append(sexpr.SList((item, items[i + 1]), item.line, item.col))
            i += 2
        else:
            out.append(item)
            i += 1
    return out


def build_fs(form, hierarchy: TypeHierarchy,
             templates: Optional[dict[str, FeatureStructure]] = None,
             check: bool = True) -> FeatureStructure:
    """Like :func:`read_fs` but starting from an already-parsed form."""
    templates = templates or {}
    store: dict[int, Node] = {}
    counter = [0]
    tags: dict[str, int] = {}

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def graft_template(fs: FeatureStructure) -> int:
        offset = counter[0]
        for j, node in enumerate(fs.nodes):
            nid = fresh()
            if node.kind == AVM:
                store[nid] = Node(AVM, node.type, tuple((f, c + offset) for f, c in node.feats))
            else:
                store[nid] = Node(node.kind, "", (), tuple(c + offset for c in node.elems))
        return offset

    def build(expr) -> int:
        if isinstance(expr, sexpr.Symbol):
            name = expr.name
            ref = _TAG_REF.match(name)
            if ref:
                if ref.group(1) not in tags:
                    raise AvmSyntaxError(
                        f"line {expr.line}: reference #{ref.group(1)}# precedes its definition")
                return tags[ref.group(1)]
            m = re.match(r"^#(\d+)=(.+)$", name)
            if m:
                nid = build(sexpr.Symbol(m.group(2), expr.line, expr.col))
                tags[m.group(1)] = nid
                return nid
            if name in templates:
                return graft_template(templates[name])
            if name not in hierarchy:
                raise AvmSyntaxError(f"line {expr.line}: unknown type or template {name!r}")
            nid = fresh()
            store[nid] = Node(AVM, name)
            return nid
        if isinstance(expr, str):
            raise AvmSyntaxError("string literal where a value was expected")
        if not isinstance(expr, sexpr.SList) or len(expr) == 0:
            raise AvmSyntaxError(f"line {getattr(expr, 'line', '?')}: empty value")
        head = expr.items[0]
        if isinstance(head, sexpr.Symbol):
            m = _TAG_DEF.match(head.name)
            if m:
                tag = m.group(1)
                if len(expr.items) != 2:
                    raise AvmSyntaxError(f"line {head.line}: #{tag}= must tag exactly one value")
                # references only resolve after the tagged value is built, so
                # cyclic text cannot be expressed (self-references error out)
                inner = build(expr.items[1])
                tags[tag] = inner
                return inner
        if not isinstance(head, sexpr.Symbol):
            raise AvmSyntaxError(f"line {expr.line}: value must start with a symbol")
        items = [head] + _fuse_tags(expr.items[1:])
        if head.name in _LIST_HEADS:
            kind = _LIST_HEADS[head.name]
            elems = tuple(build(x) for x in items[1:])
            if kind == SET and len(elems) > 1:
                raise AvmSyntaxError(f"line {head.line}: sets hold at most one element")
            if kind == APPEND and len(elems) < 2:
                raise AvmSyntaxError(f"line {head.line}: append needs at least two parts")
            nid = fresh()
            store[nid] = Node(kind, "", (), elems)
            return nid
        if head.name in templates:
            if len(items) > 1:
                raise AvmSyntaxError(f"line {head.line}: template {head.name!r} takes no features")
            return graft_template(templates[head.name])
        if head.name not in hierarchy:
            raise AvmSyntaxError(f"line {head.line}: unknown type or template {head.name!r}")
        nid = fresh()
        feats = []
        for item in items[1:]:
            pair = _fuse_tags(item.items) if isinstance(item, sexpr.SList) else None
            if pair is None or len(pair) != 2 or not isinstance(pair[0], sexpr.Symbol):
                raise AvmSyntaxError(f"line {head.line}: features of {head.name!r} must be (NAME value) pairs")
            feats.append((pair[0].name, pair[1]))
        seen = set()
        for f, _ in feats:
            if f in seen:
                raise AvmSyntaxError(f"line {head.line}: duplicate feature {f!r}")
            seen.add(f)
        built = tuple((f, build(v)) for f, v in feats)
        store[nid] = Node(AVM, head.name, built)
        return nid

    root = build(form)
    if _cyclic(store, root):
        raise AvmSyntaxError("cyclic structure in AVM text")
    fs = _canonicalize(store, root)
    if check:
        try:
            validate(fs, hierarchy)
        except ConfigurationError as exc:
            raise AvmSyntaxError(str(exc)) from exc
    return fs


def _cyclic(store: dict[int, Node], root: int) -> bool:
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[int, int] = {}
    stack = [(root, False)]
    while stack:
        cur, done = stack.pop()
        if done:
            color[cur] = BLACK
            continue
        if color.get(cur, WHITE) == BLACK:
            continue
        if color.get(cur, WHITE) == GRAY:
            return True
        color[cur] = GRAY
        stack.append((cur, True))
        node = store[cur]
        children = [c for _, c in node.feats] if node.kind == AVM else list(node.elems)
        for child in children:
            if color.get(child, WHITE) == GRAY:
                return True
            if color.get(child, WHITE) == WHITE:
                stack.append((child, False))
    return False
