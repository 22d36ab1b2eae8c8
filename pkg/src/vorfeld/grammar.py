"""Sign geometry and the combination schemata.

A sign couples a feature structure (SYNSEM plus, for phrasal signs, a
typed daughter structure) with a word order domain.  Five schemata combine
signs:

* head-complement: binary; saturates the last (most oblique) element of a
  closed COMPS list.  A single fixed saturation order keeps the Mittelfeld
  free of spurious bracketings.
* head-adjunct: the adjunct's MOD value unifies with the head's synsem;
  the adjunct stays a separate domain element, so it may end up
  discontinuous from its head.
* verb-cluster: a verb selecting a verbal complement (VCOMP) combines with
  it; the full synsem of the embedded sign (including LEX, which lives
  outside LOC) unifies with the VCOMP value, so only LEX + material
  clusters.  Argument attraction follows from the lexical reentrancies
  alone: the head's COMPS is tagged to the embedded SUBJ/COMPS lists, so
  unifying the VCOMP instantiates it.
* pvp-slash-intro: saturates the VCOMP by moving its LOC value into
  SLASH, licensed by an actually present verbal projection elsewhere in
  the string.  Only LOC is unified (LEX is invisible across the
  dependency), and the licenser contributes nothing to the mother's
  domain; its arguments are attracted exactly as in clustering, so the
  resulting COMPS list is fully instantiated.
* filler-head: binds the SLASH element against a fronted filler and
  inserts the filler's material into the clause domain.

All schemata share the head daughter's HEAD value with the mother (Head
Feature Principle) and union the daughters' SLASH sets (Nonlocal Feature
Principle), failing when the union would exceed one element.  Schema
application never mutates the daughters and returns None on failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import orderdomain as od
from .orderdomain import (
    Domain,
    DomainElement,
    EMPTY_DOMAIN,
    SCHEMA_FILLER_HEAD,
    SCHEMA_HEAD_ADJUNCT,
    SCHEMA_HEAD_COMPLEMENT,
    SCHEMA_SLASH_INTRO,
    SCHEMA_VERB_CLUSTER,
    mask_min,
    mask_span,
)
from .tfs import (
    APPEND,
    AVM,
    CLOSED,
    OPEN,
    FeatureStructure,
    PathError,
    TypeHierarchy,
    Workspace,
    path_get,
)

# feature geometry of the fragment
P_SYNSEM = ("SYNSEM",)
P_LOC = ("SYNSEM", "LOC")
P_CAT = ("SYNSEM", "LOC", "CAT")
P_HEAD = ("SYNSEM", "LOC", "CAT", "HEAD")
P_VFORM = ("SYNSEM", "LOC", "CAT", "HEAD", "VFORM")
P_CASE = ("SYNSEM", "LOC", "CAT", "HEAD", "CASE")
P_SUBJ = ("SYNSEM", "LOC", "CAT", "HEAD", "SUBJ")
P_MOD = ("SYNSEM", "LOC", "CAT", "HEAD", "MOD")
P_COMPS = ("SYNSEM", "LOC", "CAT", "COMPS")
P_VCOMP = ("SYNSEM", "LOC", "CAT", "VCOMP")
P_LEX = ("SYNSEM", "LEX")
P_SLASH = ("SYNSEM", "NONLOC", "INHER", "SLASH")

TYPE_LEXICAL = "lexical-sign"
TYPE_PHRASAL = "phrasal-sign"


class ModeError(Exception):
    """An operation was used outside its parsing mode."""


@dataclass(frozen=True)
class SignFacts:
    """Cheap category summary used for combination prechecks."""

    head: Optional[str]
    vform: Optional[str]
    case: Optional[str]
    lex: Optional[str]
    comps_kind: Optional[str]
    comps_len: int
    vcomp: str  # 'none' | 'sel' | 'open' | 'missing'
    slash: Optional[int]
    has_mod: bool
    comps_last_head: Optional[str] = None
    comps_last_case: Optional[str] = None
    vcomp_vform: Optional[str] = None
    mod_head: Optional[str] = None


@dataclass(frozen=True, eq=False)
class Sign:
    """A word or phrase: feature structure, order domain, derivation record."""

    hierarchy: TypeHierarchy
    fs: FeatureStructure
    dom: Domain
    schema: Optional[str]
    dtrs: tuple["Sign", ...]
    facts: SignFacts
    synsem_fs: FeatureStructure

    @property
    def coverage(self) -> int:
        return self.dom.coverage

    def resolve(self, path: Sequence[str]) -> int:
        return self.fs.resolve(path)


def _type_or_none(fs: FeatureStructure, path) -> Optional[str]:
    try:
        node = fs.nodes[fs.resolve(path)]
    except PathError:
        return None
    return node.type if node.kind == AVM else node.kind


def _type_from(fs: FeatureStructure, start: int, path) -> Optional[str]:
    cur = start
    for feat in path:
        node = fs.nodes[cur]
        if node.kind != AVM:
            return None
        for name, child in node.feats:
            if name == feat:
                cur = child
                break
        else:
            return None
    node = fs.nodes[cur]
    return node.type if node.kind == AVM else node.kind


def _facts(fs: FeatureStructure) -> SignFacts:
    head = _type_or_none(fs, P_HEAD)
    comps_kind = None
    comps_len = 0
    comps_last_head = None
    comps_last_case = None
    try:
        comps = fs.nodes[fs.resolve(P_COMPS)]
        comps_kind = comps.kind
        comps_len = len(comps.elems)
        if comps.kind == CLOSED and comps.elems:
            comps_last_head = _type_from(fs, comps.elems[-1], ("LOC", "CAT", "HEAD"))
            comps_last_case = _type_from(fs, comps.elems[-1], ("LOC", "CAT", "HEAD", "CASE"))
    except PathError:
        pass
    vcomp_type = _type_or_none(fs, P_VCOMP)
    vcomp_vform = None
    if vcomp_type is None:
        vcomp = "missing"
    elif vcomp_type == "none":
        vcomp = "none"
    elif vcomp_type == "synsem":
        vcomp = "sel"
        vcomp_vform = _type_or_none(fs, P_VCOMP + ("LOC", "CAT", "HEAD", "VFORM"))
    else:
        vcomp = "open"
    slash: Optional[int] = None
    try:
        slash = len(fs.nodes[fs.resolve(P_SLASH)].elems)
    except PathError:
        pass
    mod_head = _type_or_none(fs, P_MOD + ("LOC", "CAT", "HEAD"))
    has_mod = False
    try:
        fs.resolve(P_MOD)
        has_mod = True
    except PathError:
        pass
    return SignFacts(
        head=head,
        vform=_type_or_none(fs, P_VFORM),
        case=_type_or_none(fs, P_CASE),
        lex=_type_or_none(fs, P_LEX),
        comps_kind=comps_kind,
        comps_len=comps_len,
        vcomp=vcomp,
        slash=slash,
        has_mod=has_mod,
        comps_last_head=comps_last_head,
        comps_last_case=comps_last_case,
        vcomp_vform=vcomp_vform,
        mod_head=mod_head,
    )


def make_sign(hierarchy: TypeHierarchy, fs: FeatureStructure, dom: Domain,
              schema: Optional[str] = None, dtrs: tuple[Sign, ...] = ()) -> Sign:
    return Sign(hierarchy, fs, dom, schema, dtrs, _facts(fs), path_get(fs, P_SYNSEM))


def lexical_sign(hierarchy: TypeHierarchy, fs: FeatureStructure,
                 tokens: Sequence[str], start: int) -> Sign:
    """Wrap a lexical entry structure as a sign covering ``tokens`` at ``start``."""
    sign = make_sign(hierarchy, fs, EMPTY_DOMAIN)
    element = DomainElement(tuple(tokens), mask_span(start, len(tokens)), sign.synsem_fs)
    return Sign(hierarchy, fs, Domain((element,)), None, (), sign.facts, sign.synsem_fs)


# ---------------------------------------------------------------------------
# schema plumbing


def _slash_node(ws: Workspace, root: int) -> Optional[int]:
    try:
        return ws.resolve(root, P_SLASH)
    except PathError:
        return None


def _union_slash(ws: Workspace, roots: Sequence[int]) -> Optional[int]:
    """SLASH set of the mother: union of the daughters', capped at one element."""
    nonempty = []
    for r in roots:
        node = _slash_node(ws, r)
        if node is not None and ws.elems_of(node):
            nonempty.append(node)
    if len(nonempty) > 1:
        return None
    if nonempty:
        return nonempty[0]
    return ws.set_value([])


def _try_resolve(ws: Workspace, root: int, path) -> Optional[int]:
    try:
        return ws.resolve(root, path)
    except PathError:
        return None


def _compatible(hierarchy: TypeHierarchy, a: Optional[str], b: Optional[str]) -> bool:
    return a is None or b is None or hierarchy.glb(a, b) is not None


def _slash_overflow(a: Sign, b: Sign) -> bool:
    return a.facts.slash == 1 and b.facts.slash == 1


def _insert_comp_dom(head: Sign, comp: Sign) -> Optional[Domain]:
    """Complements compact into one element; complementizer heads stay
    transparent; phonologically empty complements contribute nothing."""
    if head.facts.head == "comp":
        return od.domain_union(head.dom, comp.dom)
    if not comp.dom.elements:
        return head.dom
    element = od.compact(comp.dom.elements, synsem=comp.synsem_fs)
    if element is None:
        return None
    return od.domain_union(head.dom, Domain((element,)))


def _underspecified_mother(head: Sign, other: Sign, schema: str, dom: Optional[Domain],
                           cluster: bool) -> Optional[Sign]:
    """Mother for trace-mode combinations on underspecified heads.

    The head imposes no constraint on the other daughter (that is the
    defect being demonstrated), so no unification is needed; the mother is
    built from the daughters' synsems alone — and memoized, since the
    other daughter contributes nothing beyond a possible SLASH element —
    to keep the exploding chart affordable.
    """
    if dom is None:
        return None
    if head.facts.slash == 1 and other.facts.slash == 1:
        return None
    donor = other.synsem_fs if (head.facts.slash != 1 and other.facts.slash == 1) else None
    fs = _underspec_fs(head.hierarchy, head.synsem_fs, donor, cluster)
    if fs is None:
        return None
    return make_sign(head.hierarchy, fs, dom, schema, (head, other))


_UNDERSPEC_CACHE: dict = {}


def _underspec_fs(hierarchy: TypeHierarchy, head_synsem: FeatureStructure,
                  slash_donor: Optional[FeatureStructure],
                  cluster: bool) -> Optional[FeatureStructure]:
    key = (id(hierarchy), head_synsem.nodes,
           slash_donor.nodes if slash_donor is not None else None, cluster)
    if key in _UNDERSPEC_CACHE:
        return _UNDERSPEC_CACHE[key]
    ws = Workspace(hierarchy)
    h = ws.graft(head_synsem)
    if slash_donor is not None:
        d = ws.graft(slash_donor)
        slash = _try_resolve(ws, d, ("NONLOC", "INHER", "SLASH"))
    else:
        slash = _try_resolve(ws, h, ("NONLOC", "INHER", "SLASH"))
    if slash is None:
        slash = ws.set_value([])
    if cluster:
        comps = ws.resolve(h, ("LOC", "CAT", "COMPS"))
        vcomp = ws.atom("none")
        lex = ws.atom("+")
    else:
        comps = ws.open_list([])
        vcomp = ws.resolve(h, ("LOC", "CAT", "VCOMP"))
        lex = ws.atom("-")
    cat = ws.avm("cat", HEAD=ws.resolve(h, ("LOC", "CAT", "HEAD")),
                 COMPS=comps, VCOMP=vcomp)
    nonloc = ws.avm("nonlocal", INHER=ws.avm("inherited", SLASH=slash))
    synsem = ws.avm("synsem", LOC=ws.avm("local", CAT=cat), NONLOC=nonloc, LEX=lex)
    fs = ws.extract(ws.avm(TYPE_PHRASAL, SYNSEM=synsem))
    _UNDERSPEC_CACHE[key] = fs
    return fs


def _mother(ws: Workspace, struct_type: str, struct_feats: dict[str, int],
            loc: int, lex: Optional[int], slash: int) -> int:
    nonloc = ws.avm("nonlocal", INHER=ws.avm("inherited", SLASH=slash))
    feats = {"LOC": loc, "NONLOC": nonloc}
    if lex is not None:
        feats["LEX"] = lex
    synsem = ws.avm("synsem", **feats)
    dtrs = ws.avm(struct_type, **struct_feats)
    return ws.avm(TYPE_PHRASAL, SYNSEM=synsem, DTRS=dtrs)


def _finish(ws: Workspace, root: int, hierarchy: TypeHierarchy, dom: Optional[Domain],
            schema: str, dtrs: tuple[Sign, ...]) -> Optional[Sign]:
    if dom is None:
        return None
    fs = ws.extract(root)
    if fs is None:
        return None
    return make_sign(hierarchy, fs, dom, schema, dtrs)


# ---------------------------------------------------------------------------
# the schemata


def apply_head_complement(head: Sign, comp: Sign, allow_open: bool = False) -> Optional[Sign]:
    """Saturate the last element of the head's COMPS list with ``comp``.

    The head's verbal complement must already be discharged (VCOMP none):
    clusters form before complements attach.  The complement enters the
    head's domain as a single compacted element, except under a
    complementizer head, whose clausal complement stays domain-transparent
    so the linearization checks can see the verb cluster.

    With ``allow_open`` (the trace-mode demonstration) a head with an
    underspecified COMPS list accepts any complement whatsoever and keeps
    its valence underspecified — a trace, or anything built on one,
    qualifies; this is exactly the defect the licensing schema exists to
    avoid.
    """
    open_comps = head.facts.comps_kind in (OPEN, APPEND)
    if _slash_overflow(head, comp):
        return None
    if open_comps:
        if not allow_open or head.facts.vcomp not in ("none", "open"):
            return None
        return _underspecified_mother(head, comp, SCHEMA_HEAD_COMPLEMENT,
                                      _insert_comp_dom(head, comp), cluster=False)
    if head.facts.vcomp != "none":
        return None
    if head.facts.comps_kind != CLOSED or head.facts.comps_len == 0:
        return None
    if not _compatible(head.hierarchy, head.facts.comps_last_head, comp.facts.head):
        return None
    if not _compatible(head.hierarchy, head.facts.comps_last_case, comp.facts.case):
        return None

    ws = Workspace(head.hierarchy)
    h = ws.graft(head.fs)
    c = ws.graft(comp.fs)
    elems = ws.elems_of(ws.resolve(h, P_COMPS))
    if not ws.unify_nodes(elems[-1], ws.resolve(c, P_SYNSEM)):
        return None
    new_comps = ws.closed_list(elems[:-1])
    slash = _union_slash(ws, (h, c))
    if slash is None:
        return None
    cat = ws.avm(
        "cat",
        HEAD=ws.resolve(h, P_HEAD),
        COMPS=new_comps,
        VCOMP=ws.resolve(h, P_VCOMP),
    )
    loc = ws.avm("local", CAT=cat)
    root = _mother(
        ws, "head-complement-structure",
        {"HEAD-DTR": h, "COMP-DTRS": ws.closed_list([c])},
        loc, ws.atom("-"), slash,
    )
    dom = _insert_comp_dom(head, comp)
    return _finish(ws, root, head.hierarchy, dom, SCHEMA_HEAD_COMPLEMENT, (head, comp))


def apply_head_adjunct(head: Sign, adjunct: Sign) -> Optional[Sign]:
    """Attach a modifier; its MOD value unifies with the head's synsem.

    The mother shares the head's whole CAT (category, valence) and LEX
    value; the adjunct joins the domain as its own element and may end up
    separated from the head.
    """
    if not adjunct.facts.has_mod:
        return None
    if not _compatible(head.hierarchy, adjunct.facts.mod_head, head.facts.head):
        return None
    if _slash_overflow(head, adjunct):
        return None
    ws = Workspace(head.hierarchy)
    h = ws.graft(head.fs)
    a = ws.graft(adjunct.fs)
    if not ws.unify_nodes(ws.resolve(a, P_MOD), ws.resolve(h, P_SYNSEM)):
        return None
    slash = _union_slash(ws, (h, a))
    if slash is None:
        return None
    root = _mother(
        ws, "head-adjunct-structure",
        {"HEAD-DTR": h, "ADJUNCT-DTR": a},
        ws.resolve(h, P_LOC), _try_resolve(ws, h, P_LEX), slash,
    )
    dom = od.domain_union(head.dom, adjunct.dom)
    return _finish(ws, root, head.hierarchy, dom, SCHEMA_HEAD_ADJUNCT, (head, adjunct))


def apply_verb_cluster(head: Sign, cluster: Sign) -> Optional[Sign]:
    """Combine a verb with its verbal complement into a (partial) cluster.

    The embedded sign's full synsem unifies with the head's VCOMP value,
    which the lexical entries restrict to LEX +, bse form and VCOMP none;
    the entry-level reentrancies then instantiate the head's valence
    (argument attraction).  The mother is LEX + so it can be embedded in
    turn, and both daughters' domains survive as separate elements.

    A head whose VCOMP is merely underspecified (a trace) also qualifies:
    nothing rules the combination out, which is part of the overgeneration
    the trace account suffers from.  Licensing-mode signs always pin VCOMP
    to none or a synsem, so this only surfaces in trace mode.
    """
    if head.facts.vcomp not in ("sel", "open"):
        return None
    if cluster.facts.head != "verb":
        return None
    if _slash_overflow(head, cluster):
        return None
    if head.facts.vcomp == "open":
        # an underspecified selector accepts any verbal sign and learns
        # nothing from it (its VCOMP value carries no reentrancies)
        return _underspecified_mother(head, cluster, SCHEMA_VERB_CLUSTER,
                                      od.domain_union(head.dom, cluster.dom),
                                      cluster=True)
    if not _compatible(head.hierarchy, head.facts.vcomp_vform, cluster.facts.vform):
        return None
    ws = Workspace(head.hierarchy)
    h = ws.graft(head.fs)
    c = ws.graft(cluster.fs)
    if not ws.unify_nodes(ws.resolve(h, P_VCOMP), ws.resolve(c, P_SYNSEM)):
        return None
    slash = _union_slash(ws, (h, c))
    if slash is None:
        return None
    cat = ws.avm(
        "cat",
        HEAD=ws.resolve(h, P_HEAD),
        COMPS=ws.resolve(h, P_COMPS),
        VCOMP=ws.atom("none"),
    )
    loc = ws.avm("local", CAT=cat)
    root = _mother(
        ws, "head-cluster-structure",
        {"HEAD-DTR": h, "CLUSTER-DTR": c, "COMP-DTRS": ws.closed_list([])},
        loc, ws.atom("+"), slash,
    )
    dom = od.domain_union(head.dom, cluster.dom)
    return _finish(ws, root, head.hierarchy, dom, SCHEMA_VERB_CLUSTER, (head, cluster))


def apply_pvp_slash_introduction(head: Sign, licenser: Sign) -> Optional[Sign]:
    """Discharge the head's VCOMP into SLASH, licensed by a real projection.

    Only the licenser's LOC unifies with the VCOMP restriction — LEX lives
    outside LOC, so a phrasal (LEX −) projection licenses the dependency
    that clustering would reject.  The licenser's arguments are attracted
    through the same entry reentrancies as in clustering, so the mother's
    COMPS comes out fully instantiated; an underspecified result is
    rejected.  The licenser contributes nothing to the mother's domain.
    """
    if head.facts.vcomp != "sel":
        return None
    if licenser.facts.head != "verb":
        return None
    if head.facts.slash != 0 or licenser.facts.slash != 0:
        return None
    if not _compatible(head.hierarchy, head.facts.vcomp_vform, licenser.facts.vform):
        return None
    if head.dom.coverage & licenser.dom.coverage:
        return None
    ws = Workspace(head.hierarchy)
    h = ws.graft(head.fs)
    li = ws.graft(licenser.fs)
    vcomp_loc = _try_resolve(ws, h, P_VCOMP + ("LOC",))
    if vcomp_loc is None:
        return None
    if not ws.unify_nodes(vcomp_loc, ws.resolve(li, P_SYNSEM + ("LOC",))):
        return None
    cat = ws.avm(
        "cat",
        HEAD=ws.resolve(h, P_HEAD),
        COMPS=ws.resolve(h, P_COMPS),
        VCOMP=ws.atom("none"),
    )
    loc = ws.avm("local", CAT=cat)
    slash = ws.set_value([ws.find(vcomp_loc)])
    root = _mother(
        ws, "complement-slash-licencing-structure",
        {"HEAD-DTR": h, "VCOMP-DTR": li},
        loc, ws.atom("+"), slash,
    )
    mother = _finish(ws, root, head.hierarchy, head.dom, SCHEMA_SLASH_INTRO, (head, licenser))
    if mother is None or not check_comps_closed(mother):
        return None
    return mother


def apply_filler_head(filler: Sign, head: Sign) -> Optional[Sign]:
    """Bind the clause's SLASH element against the fronted filler.

    The head must be a saturated finite clause carrying exactly one SLASH
    element; the filler's LOC unifies with it and the filler's domain
    material is inserted (pre-verbal block compacted into the Vorfeld).
    The parser additionally requires the filler to be the very edge that
    licensed the dependency.
    """
    if head.facts.slash != 1 or filler.facts.slash != 0:
        return None
    if head.facts.head != "verb" or head.facts.vform != "fin":
        return None
    if head.facts.comps_kind != CLOSED or head.facts.comps_len != 0:
        return None
    verb_pos = finite_verb_position(head)
    if verb_pos is None:
        return None
    ws = Workspace(head.hierarchy)
    h = ws.graft(head.fs)
    f = ws.graft(filler.fs)
    slash_elems = ws.elems_of(ws.resolve(h, P_SLASH))
    if not ws.unify_nodes(slash_elems[0], ws.resolve(f, P_SYNSEM + ("LOC",))):
        return None
    root = _mother(
        ws, "filler-head-structure",
        {"HEAD-DTR": h, "FILLER-DTR": f},
        ws.resolve(h, P_LOC), _try_resolve(ws, h, P_LEX), ws.set_value([]),
    )
    dom = od.insert_filler_domain(head.dom, filler, verb_pos)
    return _finish(ws, root, head.hierarchy, dom, SCHEMA_FILLER_HEAD, (filler, head))


# ---------------------------------------------------------------------------
# well-formedness and clause conditions


def check_comps_closed(sign: Sign) -> bool:
    """No underspecified valence list survives in a discharged sign.

    A sign still selecting its verbal complement defers the check: its
    valence is tagged to the embedded verb's lists and becomes instantiated
    the moment the complement (or its licenser) is found.  Once VCOMP is
    discharged, every list in the structure must have determinate length;
    a trace in the verbal-complement slot leaves the attracted COMPS list
    open, which is precisely the defect this predicate detects.
    """
    if sign.facts.vcomp in ("sel", "open", "missing"):
        return True
    return not any(node.kind in (OPEN, APPEND) for node in sign.fs.nodes)


def finite_verb_position(sign: Sign) -> Optional[int]:
    """Position of the unique finite-verb element of the sign's domain."""
    positions = [
        mask_min(e.coverage)
        for e in sign.dom.elements
        if od._is_finite_verb(e)
    ]
    if len(positions) != 1:
        return None
    return positions[0]


def is_complete_clause(sign: Sign, clause_type: str) -> bool:
    """Root condition: saturated, SLASH bound, category per clause type."""
    f = sign.facts
    if f.slash != 0 or f.comps_kind != CLOSED or f.comps_len != 0:
        return False
    if clause_type == od.V2:
        return f.head == "verb" and f.vform == "fin" and f.vcomp == "none"
    return f.head == "comp"


# ---------------------------------------------------------------------------
# traces (the pre-licensing account, kept to demonstrate its defect)


def make_vcomp_trace(head_requirement: FeatureStructure, mode: str,
                     hierarchy: TypeHierarchy) -> Sign:
    """A phonologically empty verbal complement.

    The trace's LOC is shared with its own SLASH element and everything
    else is maximally underspecified: open valence lists, unconstrained
    verb form.  ``head_requirement`` is unified into the trace's synsem
    (it flows into the SLASH element through the sharing); use
    :func:`generic_verbal_synsem` for the weakest restriction.  Only
    available in trace mode.
    """
    if mode != "trace":
        raise ModeError("traces are only available in trace mode")
    ws = Workspace(hierarchy)
    loc = ws.avm(
        "local",
        CAT=ws.avm(
            "cat",
            HEAD=ws.avm("verb", SUBJ=ws.open_list([])),
            COMPS=ws.open_list([]),
            VCOMP=ws.avm("vcomp-val"),
        ),
    )
    synsem = ws.avm(
        "synsem",
        LOC=loc,
        NONLOC=ws.avm("nonlocal", INHER=ws.avm("inherited", SLASH=ws.set_value([loc]))),
    )
    root = ws.avm(TYPE_LEXICAL, SYNSEM=synsem)
    req = ws.graft(head_requirement)
    if not ws.unify_nodes(synsem, req):
        raise ValueError("head requirement is incompatible with a verbal trace")
    fs = ws.extract(root)
    if fs is None:
        raise ValueError("head requirement is incompatible with a verbal trace")
    return make_sign(hierarchy, fs, EMPTY_DOMAIN)


def generic_verbal_synsem(hierarchy: TypeHierarchy) -> FeatureStructure:
    """The weakest synsem restriction a verbal-complement trace satisfies."""
    ws = Workspace(hierarchy)
    root = ws.avm("synsem", LOC=ws.avm("local", CAT=ws.avm("cat", HEAD=ws.avm("verb"))))
    fs = ws.extract(root)
    assert fs is not None
    return fs
