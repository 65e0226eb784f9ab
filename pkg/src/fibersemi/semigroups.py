"""Finite semigroups given by Cayley tables.

Elements are opaque hashable labels; the table maps index pairs to the index
of the product.  Green's relations, ideal categories, morphism checks and the
amalgam data type all work at this level, so the same code serves matrix
semigroups, cone semigroups and hand-built fixtures alike.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .gf import GuardExceeded

ASSOC_GUARD = 1500  # largest order for the exhaustive associativity check


class NotAssociative(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"operation not associative at triple {witness}")


@dataclass(frozen=True)
class FiniteSemigroup:
    elements: tuple
    table: tuple
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, label) -> int:
        return self._index[label]

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def mul_labels(self, a, b):
        return self.elements[self.table[self._index[a]][self._index[b]]]

    def to_json(self):
        return {
            "elements": [_label_to_json(x) for x in self.elements],
            "table": [list(r) for r in self.table],
        }


def _label_to_json(x):
    if isinstance(x, tuple):
        return [_label_to_json(y) for y in x]
    return x

def _label_from_json(x):
    if isinstance(x, list):
        return tuple(_label_from_json(y) for y in x)
    return x


def _associativity_witness(table):
    """First (i,j,k) with (ij)k != i(jk), or None.  Vectorized per row."""
    t = np.asarray(table, dtype=np.int32)
    n = len(t)
    for i in range(n):
        left = t[t[i], :]        # left[j,k] = (ij)k
        right = t[i, t]          # right[j,k] = i(jk)
        bad = left != right
        if bad.any():
            j, k = np.unravel_index(np.argmax(bad), bad.shape)
            return (i, int(j), int(k))
    return None


def from_table(elements, table) -> FiniteSemigroup:
    """Validate closure and associativity, then wrap.

    Raises NotAssociative with a witness triple of labels, ValueError on a
    malformed table, GuardExceeded past the desk-scale order limit.
    """
    elements = tuple(elements)
    n = len(elements)
    if n > ASSOC_GUARD:
        raise GuardExceeded(f"order {n} exceeds associativity guard {ASSOC_GUARD}")
    if len(set(elements)) != n:
        raise ValueError("duplicate element labels")
    table = tuple(tuple(r) for r in table)
    if len(table) != n or any(len(r) != n for r in table):
        raise ValueError("table must be square of the same order as the element list")
    for r in table:
        for x in r:
            if not (0 <= x < n):
                raise ValueError(f"table entry {x} out of range")
    if n:
        w = _associativity_witness(table)
        if w is not None:
            raise NotAssociative(tuple(elements[i] for i in w))
    return FiniteSemigroup(elements, table)


def semigroup_from_json(d) -> FiniteSemigroup:
    return from_table([_label_from_json(x) for x in d["elements"]], d["table"])


def from_multiplication(elements, op) -> FiniteSemigroup:
    """Build a table from a closed binary operation on the labels."""
    elements = tuple(elements)
    idx = {x: i for i, x in enumerate(elements)}
    table = []
    for a in elements:
        row = []
        for b in elements:
            c = op(a, b)
            if c not in idx:
                raise ValueError(f"operation not closed: {a} * {b} = {c}")
            row.append(idx[c])
        table.append(tuple(row))
    return from_table(elements, table)


# ---------------------------------------------------------------------------
# idempotents, regularity, ideals, Green's relations

def idempotents(s: FiniteSemigroup):
    return tuple(i for i in range(s.order) if s.table[i][i] == i)


def is_regular(s: FiniteSemigroup) -> bool:
    rn = range(s.order)
    return all(any(s.table[s.table[a][x]][a] == a for x in rn) for a in rn)


def principal_ideals(s: FiniteSemigroup, a: int):
    """Literal products (Sa, aS, SaS) as index sets; no identity adjoined."""
    rn = range(s.order)
    left = frozenset(s.table[x][a] for x in rn)
    right = frozenset(s.table[a][x] for x in rn)
    two = frozenset(s.table[x][s.table[a][y]] for x in rn for y in rn)
    return left, right, two


@dataclass(frozen=True)
class GreenStructure:
    l_classes: tuple
    r_classes: tuple
    h_classes: tuple
    d_classes: tuple

    def class_of(self, kind, i):
        for cls in getattr(self, kind + "_classes"):
            if i in cls:
                return cls
        raise KeyError(i)

    def to_json(self):
        return {
            "l_classes": [list(c) for c in self.l_classes],
            "r_classes": [list(c) for c in self.r_classes],
            "h_classes": [list(c) for c in self.h_classes],
            "d_classes": [list(c) for c in self.d_classes],
        }

    @staticmethod
    def from_json(d):
        return GreenStructure(*(
            tuple(tuple(c) for c in d[k])
            for k in ("l_classes", "r_classes", "h_classes", "d_classes")
        ))


def _partition(keys):
    groups = defaultdict(list)
    for i, k in enumerate(keys):
        groups[k].append(i)
    classes = [tuple(sorted(v)) for v in groups.values()]
    classes.sort(key=lambda c: c[0])
    return tuple(classes)


def green_relations(s: FiniteSemigroup) -> GreenStructure:
    """L, R, H, D via monoid-completed ideals S^1 a = Sa u {a}.

    The completion keeps L and R reflexive on non-regular semigroups;
    principal_ideals still reports the literal product sets.
    """
    rn = range(s.order)
    lkeys, rkeys = [], []
    for a in rn:
        la = frozenset(s.table[x][a] for x in rn) | {a}
        ra = frozenset(s.table[a][x] for x in rn) | {a}
        lkeys.append(la)
        rkeys.append(ra)
    l_classes = _partition(lkeys)
    r_classes = _partition(rkeys)
    h_classes = _partition(list(zip(lkeys, rkeys)))
    # D = join of L and R: connected components under either relation
    parent = list(rn)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for classes in (l_classes, r_classes):
        for cls in classes:
            for x in cls[1:]:
                union(cls[0], x)
    d_classes = _partition([find(i) for i in rn])
    return GreenStructure(l_classes, r_classes, h_classes, d_classes)


# ---------------------------------------------------------------------------
# morphisms and amalgams

@dataclass(frozen=True)
class SemigroupMorphism:
    source: FiniteSemigroup
    target: FiniteSemigroup
    mapping: tuple  # source index -> target index

    def apply_label(self, a):
        return self.target.elements[self.mapping[self.source.index(a)]]


@dataclass(frozen=True)
class MorphismReport:
    is_hom: bool
    is_injective: bool
    witnesses: dict

    @property
    def ok(self):
        return self.is_hom and self.is_injective


def verify_morphism(f: SemigroupMorphism) -> MorphismReport:
    """Exhaustive homomorphism and injectivity check with witnesses."""
    s, t, m = f.source, f.target, f.mapping
    if len(m) != s.order or any(not (0 <= x < t.order) for x in m):
        raise ValueError("mapping is not a total function into the target")
    witnesses = {}
    is_hom = True
    for i in range(s.order):
        for j in range(s.order):
            if m[s.table[i][j]] != t.table[m[i]][m[j]]:
                is_hom = False
                witnesses["hom"] = (s.elements[i], s.elements[j])
                break
        if not is_hom:
            break
    is_injective = len(set(m)) == s.order
    if not is_injective:
        seen = {}
        for i, x in enumerate(m):
            if x in seen:
                witnesses["injective"] = (s.elements[seen[x]], s.elements[i])
                break
            seen[x] = i
    return MorphismReport(is_hom, is_injective, witnesses)


@dataclass(frozen=True)
class Amalgam:
    core: FiniteSemigroup
    branches: tuple
    embeddings: tuple  # SemigroupMorphism core -> branch, one per branch


@dataclass(frozen=True)
class AmalgamReport:
    disjoint: bool
    embedding_reports: tuple
    witnesses: dict

    @property
    def ok(self):
        return self.disjoint and all(r.ok for r in self.embedding_reports)


def verify_amalgam(a: Amalgam) -> AmalgamReport:
    """Pairwise disjointness of element labels plus one morphism report per embedding."""
    witnesses = {}
    families = [("core", set(a.core.elements))]
    families += [(f"branch{i}", set(b.elements)) for i, b in enumerate(a.branches)]
    disjoint = True
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            common = families[i][1] & families[j][1]
            if common:
                disjoint = False
                witnesses["disjoint"] = (families[i][0], families[j][0], sorted(common)[0])
    reports = []
    for i, (phi, branch) in enumerate(zip(a.embeddings, a.branches)):
        if phi.source is not a.core and phi.source != a.core:
            raise ValueError(f"embedding {i} does not start at the core")
        if phi.target is not branch and phi.target != branch:
            raise ValueError(f"embedding {i} does not land in branch {i}")
        reports.append(verify_morphism(phi))
    return AmalgamReport(disjoint, tuple(reports), witnesses)


def amalgam_to_json(a: Amalgam):
    return {
        "core": a.core.to_json(),
        "branches": [b.to_json() for b in a.branches],
        "embeddings": [
            [[i, j] for i, j in enumerate(phi.mapping)] for phi in a.embeddings
        ],
    }


def null_semigroup_fixture() -> Amalgam:
    """The four-element null semigroup with its two one-generator extensions.

    Core U = {u,v,w,z} with all products z.  Branch one adjoins a with
    au = ua = v; branch two adjoins b with bv = vb = w; every other product
    is z.  Embeddings are the inclusions, with labels tagged by owner.
    """
    def build(tag, extra, special):
        names = ["u", "v", "w", "z"] + ([extra] if extra else [])
        labels = [(tag, x) for x in names]
        def op(a, b):
            return (tag, special.get((a[1], b[1]), "z"))
        return from_multiplication(labels, op)

    core = build("U", None, {})
    s1 = build("S1", "a", {("a", "u"): "v", ("u", "a"): "v"})
    s2 = build("S2", "b", {("b", "v"): "w", ("v", "b"): "w"})
    embeddings = []
    for branch, tag in ((s1, "S1"), (s2, "S2")):
        mapping = tuple(branch.index((tag, x[1])) for x in core.elements)
        embeddings.append(SemigroupMorphism(core, branch, mapping))
    return Amalgam(core, (s1, s2), tuple(embeddings))


# ---------------------------------------------------------------------------
# the category of principal left ideals

@dataclass(frozen=True)
class IdealCategoryData:
    objects: tuple       # frozensets of element indices, one per distinct Se
    representatives: tuple  # for each object, the least idempotent generating it
    homs: dict           # (i, j) -> tuple of translation maps; each map is a
                         # tuple of (source index, image index) pairs
    inclusions: dict     # (i, j) -> True where object i is a subset of object j


def build_left_ideal_category(s: FiniteSemigroup) -> IdealCategoryData:
    """Objects are the distinct ideals Se over idempotents e; morphisms are
    the right translations x -> xu for u in eSf, deduplicated extensionally."""
    if not is_regular(s):
        raise ValueError("ideal category requires a regular semigroup")
    rn = range(s.order)
    seen = {}
    for e in idempotents(s):
        ideal = frozenset(s.table[x][e] for x in rn)
        if ideal not in seen:
            seen[ideal] = e
    objects = tuple(sorted(seen, key=lambda c: (len(c), sorted(c))))
    reps = tuple(seen[obj] for obj in objects)
    homs = {}
    inclusions = {}
    for i, src in enumerate(objects):
        e = reps[i]
        src_sorted = tuple(sorted(src))
        for j, dst in enumerate(objects):
            f = reps[j]
            translations = set()
            for x in rn:
                u = s.table[s.table[e][x]][f]
                tr = tuple((a, s.table[a][u]) for a in src_sorted)
                if any(img not in dst for _, img in tr):
                    raise AssertionError("right translation left the target ideal")
                translations.add(tr)
            homs[(i, j)] = tuple(sorted(translations))
            if src <= dst:
                inclusions[(i, j)] = True
    return IdealCategoryData(objects, reps, homs, inclusions)


# ---------------------------------------------------------------------------
# eggbox export

def _label_str(x):
    if isinstance(x, tuple):
        return "(" + ",".join(_label_str(y) for y in x) + ")"
    return str(x)


def eggbox_dot(s: FiniteSemigroup, g: GreenStructure) -> str:
    """Graphviz rendering: one cluster per D-class, an HTML grid of H-cells
    with rows the R-classes and columns the L-classes."""
    lines = ["digraph eggbox {", '  graph [fontname="monospace"];']
    for d_i, dcls in enumerate(g.d_classes):
        dset = set(dcls)
        rows = [r for r in g.r_classes if set(r) <= dset]
        cols = [l for l in g.l_classes if set(l) <= dset]
        cells = []
        for r in rows:
            row_cells = []
            for l in cols:
                h = sorted(set(r) & set(l))
                text = "<BR/>".join(_label_str(s.elements[i]) for i in h)
                row_cells.append(f"<TD>{text}</TD>")
            cells.append("<TR>" + "".join(row_cells) + "</TR>")
        table = '<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">' + "".join(cells) + "</TABLE>"
        lines.append(f"  subgraph cluster_{d_i} {{")
        lines.append(f'    label="D{d_i}";')
        lines.append(f"    d{d_i} [shape=plaintext, label=<{table}>];")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def eggbox_export(s: FiniteSemigroup, g: GreenStructure):
    """(DOT document, JSON document) for the Green structure."""
    dot = eggbox_dot(s, g)
    doc = json.dumps(g.to_json(), sort_keys=True, separators=(",", ":")) + "\n"
    return dot, doc
