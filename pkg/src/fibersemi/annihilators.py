"""The annihilator category of GF(p)^n and its identification with the
subspace category of the dual space.

Objects are the annihilators of nonzero subspaces, which are exactly the
proper subspaces of the dual (zero included); its cone semigroup realizes the
opposite of the singular endomorphism semigroup through transposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf
from . import semigroups as sg
from . import subspace_category as sc
from .gf import Endo, Subspace


@dataclass(frozen=True)
class DualObjectTag:
    """A nonzero subspace paired with its annihilator in dual coordinates."""
    primal: Subspace
    dual: Subspace

    def to_json(self):
        return {"primal": self.primal.to_json(), "dual": self.dual.to_json()}


class AnnihilatorCategory:
    """Annihilators of nonzero subspaces, with all linear maps between them.

    dual_category is the subspace category of the dual space; tags align its
    objects with their primal partners.
    """

    def __init__(self, p, n, tags, dual_category):
        self.p = p
        self.n = n
        self.tags = tags
        self.dual_category = dual_category

    @property
    def objects(self):
        return self.dual_category.objects

    def tag_for_dual(self, y: Subspace) -> DualObjectTag:
        return self.tags[self.dual_category.index(y)]


def build_annihilator_category(p, n) -> AnnihilatorCategory:
    """Index the annihilators A° of all nonzero A and check they are exactly
    the proper subspaces of the dual, with containment reversed."""
    nonzero = [a for a in gf.enumerate_subspaces(p, n) if a.dim > 0]
    duals = {gf.annihilator(a): a for a in nonzero}
    dual_category = sc.build_category(p, n)
    if set(duals) != set(dual_category.objects):
        raise AssertionError("annihilators of nonzero subspaces must be the proper dual subspaces")
    for a in nonzero:
        for b in nonzero:
            if b.contains_subspace(a):
                if not gf.annihilator(a).contains_subspace(gf.annihilator(b)):
                    raise AssertionError("annihilator failed to reverse containment")
    tags = tuple(DualObjectTag(duals[y], y) for y in dual_category.objects)
    return AnnihilatorCategory(p, n, tags, dual_category)


@dataclass(frozen=True)
class DualIsoReport:
    object_pairs: tuple      # (annihilator object, dual-space object), identical sets
    counts_match: bool
    double_annihilator_ok: bool
    order_reversal_ok: bool
    hom_sizes_match: bool

    @property
    def ok(self):
        return (self.counts_match and self.double_annihilator_ok
                and self.order_reversal_ok and self.hom_sizes_match)


def iso_to_dual_subspace_category(acat: AnnihilatorCategory) -> DualIsoReport:
    """Exhibit the identification with the subspace category of the dual.

    Annihilator objects are realized as canonical subspaces of the dual, so
    the object bijection is A -> A° against the dual category's own list and
    the morphism bijection is the identity on linear maps; composition is
    then preserved by construction.  What is checked: the two object lists
    coincide with matching counts, annihilation is an order-reversing
    bijection with (A°)° = A, and every hom-set has the size the dual side
    predicts from the dimensions.
    """
    dcat = acat.dual_category
    pairs = tuple((t.dual, obj) for t, obj in zip(acat.tags, dcat.objects))
    counts = (
        len(acat.tags) == len(dcat.objects)
        and len({t.primal for t in acat.tags}) == len(acat.tags)
    )
    double = all(gf.annihilator(t.dual) == t.primal for t in acat.tags)
    reversal = True
    for s in acat.tags:
        for t in acat.tags:
            forward = t.primal.contains_subspace(s.primal)
            backward = s.dual.contains_subspace(t.dual)
            if forward != backward:
                reversal = False
    hom_sizes = True
    p = acat.p
    for y in dcat.objects:
        for z in dcat.objects:
            expected = p ** (y.dim * z.dim)
            if sum(1 for _ in gf.all_linear_maps(y, z)) != expected:
                hom_sizes = False
    return DualIsoReport(pairs, counts, double, reversal, hom_sizes)


def normal_dual_object(cat: sc.SubspaceCategory, cone: sc.Cone) -> DualObjectTag:
    """The kernel of an idempotent cone's endomorphism with its annihilator;
    the concrete face of the cone's hom-functor."""
    if sc.cone_compose(cat, cone, cone) != cone:
        raise ValueError("normal dual object requires an idempotent cone")
    e = sc.cone_to_endo(cat, cone)
    if e is None:
        raise ValueError("cone has no inducing endomorphism")
    kernel = e.kernel()
    return DualObjectTag(kernel, gf.annihilator(kernel))


@dataclass(frozen=True)
class DualConeSemigroupReport:
    semigroup: sg.FiniteSemigroup
    anti_isomorphism: sg.MorphismReport
    reversal_ok: bool


def build_ta_semigroup(p, n) -> DualConeSemigroupReport:
    """Cone semigroup of the annihilator category via the dual-space
    identification, plus the transpose anti-isomorphism from the primal side.

    The returned semigroup is the cone semigroup over the dual space; its
    labels are matrices acting on dual coordinates.  Transposition is checked
    to reverse products: the map sends alpha to the dual cone of alpha^T, and
    the verified morphism is alpha -> that image over the opposite table.
    """
    acat = build_annihilator_category(p, n)
    ta, cones, endos = sc.enumerate_normal_cones(acat.dual_category)
    primal = gf.enumerate_endos(p, n, singular_only=True)
    sing = sg.from_multiplication(primal, lambda a, b: a * b)
    # anti-isomorphism: check alpha -> rho^(alpha^T) against the reversed table
    opposite = sg.from_table(sing.elements, tuple(zip(*sing.table)))
    mapping = tuple(ta.index(gf.transpose(a).rows) for a in opposite.elements)
    report = sg.verify_morphism(sg.SemigroupMorphism(opposite, ta, mapping))
    # (alpha^T).(beta^T) in TA must be (beta.alpha)^T
    reversal_ok = True
    for a in primal:
        ia = ta.index(gf.transpose(a).rows)
        for b in primal:
            lhs = ta.elements[ta.table[ia][ta.index(gf.transpose(b).rows)]]
            if lhs != gf.transpose(b * a).rows:
                reversal_ok = False
                break
        if not reversal_ok:
            break
    return DualConeSemigroupReport(ta, report, reversal_ok)
