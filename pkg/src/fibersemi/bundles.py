"""Semigroup amalgams built from the fibers of a vector bundle.

Fibers are modeled purely as finite-dimensional spaces over GF(p).  Each
fiber contributes the linked-pair semigroup of its dimension; a core of
dimension at most the smallest fiber embeds into every branch through the
leading-coordinate block embedding, and tagging keeps all element sets
disjoint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import crossconn as xc
from . import gf
from . import semigroups as sg
from .gf import Endo


@dataclass(frozen=True)
class FiberFamilySpec:
    p: int
    k: int
    dims: tuple
    eps: tuple  # one automorphism per fiber


def fiber_family(p, k, dims, eps=None) -> FiberFamilySpec:
    """Validated fiber family: dimensions within the bundle dimension and one
    invertible map per fiber (identity when unspecified)."""
    gf.check_field(p)
    dims = tuple(dims)
    if not dims:
        raise ValueError("fiber family needs at least one fiber")
    for d in dims:
        if not (1 <= d <= k):
            raise ValueError(f"fiber dimension {d} outside 1..{k}")
    if eps is None:
        eps = tuple(gf.identity_endo(p, d) for d in dims)
    else:
        eps = tuple(eps)
        if len(eps) != len(dims):
            raise ValueError("need one automorphism per fiber")
        for e, d in zip(eps, dims):
            if e.n != d or e.p != p:
                raise ValueError("automorphism shape does not match its fiber")
            if not e.is_invertible():
                raise ValueError("fiber automorphism must be invertible")
    return FiberFamilySpec(p, k, dims, eps)


def _tag_semigroup(s: sg.FiniteSemigroup, tag) -> sg.FiniteSemigroup:
    return sg.FiniteSemigroup(tuple((tag, x) for x in s.elements), s.table)


@dataclass(frozen=True)
class CoreSpec:
    m: int
    eps_w: Endo
    cross: xc.CrossConnSemigroup
    semigroup: sg.FiniteSemigroup  # tagged copy


def build_core(spec: FiberFamilySpec, m=None, eps_w=None) -> CoreSpec:
    """Core semigroup on a spanned space of dimension m (default the smallest
    fiber dimension), with elements tagged apart from every branch."""
    if m is None:
        m = min(spec.dims)
    if not (1 <= m <= min(spec.dims)):
        raise ValueError(f"core dimension {m} must lie in 1..{min(spec.dims)}")
    if eps_w is None:
        eps_w = gf.identity_endo(spec.p, m)
    elif eps_w.n != m or not eps_w.is_invertible():
        raise ValueError("core automorphism must be invertible of the core dimension")
    cross = xc.build_cross_conn_semigroup(eps_w)
    return CoreSpec(m, eps_w, cross, _tag_semigroup(cross.semigroup, "core"))


def block_embed(alpha: Endo, d: int) -> Endo:
    """Extend an m x m matrix to d x d by acting on the leading m coordinates
    and killing the rest: v -> ((v.proj).alpha).include."""
    m = alpha.n
    rows = []
    for i in range(d):
        if i < m:
            rows.append(tuple(alpha.rows[i]) + (0,) * (d - m))
        else:
            rows.append((0,) * d)
    return Endo(alpha.p, d, tuple(rows))


def build_embedding(core: CoreSpec, spec: FiberFamilySpec, i: int,
                    branch: xc.CrossConnSemigroup,
                    branch_tagged: sg.FiniteSemigroup) -> sg.SemigroupMorphism:
    """Monomorphism from the core into branch i via the block embedding on
    first coordinates, verified exhaustively."""
    d = spec.dims[i]
    if core.m > d:
        raise ValueError("core dimension exceeds fiber dimension")
    eps_i = spec.eps[i]
    cc_i = xc.cross_connection(eps_i, verify=False)
    branch_index = {pr.first.rows: j for j, pr in enumerate(branch.pairs)}
    mapping = []
    for pr in core.cross.pairs:
        img = block_embed(pr.first, d)
        j = branch_index[img.rows]
        if branch.pairs[j].second != cc_i.conjugate(img):
            raise AssertionError("branch pair out of sync with its automorphism")
        mapping.append(j)
    phi = sg.SemigroupMorphism(core.semigroup, branch_tagged, tuple(mapping))
    report = sg.verify_morphism(phi)
    if not (report.is_hom and report.is_injective):
        raise AssertionError(f"embedding into fiber {i} failed verification: {report.witnesses}")
    return phi


@dataclass(frozen=True)
class BundleAmalgam:
    spec: FiberFamilySpec
    core: CoreSpec
    branches: tuple          # CrossConnSemigroup per fiber
    amalgam: sg.Amalgam      # tagged semigroups and embeddings
    report: sg.AmalgamReport

    def to_json(self):
        doc = sg.amalgam_to_json(self.amalgam)
        doc.update({
            "p": self.spec.p,
            "m": self.core.m,
            "fiber_dims": list(self.spec.dims),
        })
        return doc


def assemble_amalgam(spec: FiberFamilySpec, m=None, eps_w=None) -> BundleAmalgam:
    """Core, branches and verified embeddings for the whole fiber family."""
    core = build_core(spec, m, eps_w)
    branches = []
    tagged = []
    embeddings = []
    for i, d in enumerate(spec.dims):
        branch = xc.build_cross_conn_semigroup(spec.eps[i])
        branch_tagged = _tag_semigroup(branch.semigroup, ("fiber", i))
        embeddings.append(build_embedding(core, spec, i, branch, branch_tagged))
        branches.append(branch)
        tagged.append(branch_tagged)
    amalgam = sg.Amalgam(core.semigroup, tuple(tagged), tuple(embeddings))
    report = sg.verify_amalgam(amalgam)
    if not report.ok:
        raise AssertionError(f"amalgam verification failed: {report.witnesses}")
    return BundleAmalgam(spec, core, tuple(branches), amalgam, report)


def amalgam_json(b: BundleAmalgam) -> str:
    return json.dumps(b.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


def amalgam_dot(b: BundleAmalgam) -> str:
    """Core-to-branch embedding diagram."""
    lines = ["digraph amalgam {", "  rankdir=LR;"]
    lines.append(f'  core [shape=box, label="core U (dim {b.core.m}, order {b.core.semigroup.order})"];')
    for i, (d, branch) in enumerate(zip(b.spec.dims, b.branches)):
        lines.append(f'  fiber{i} [shape=box, label="fiber {i} (dim {d}, order {branch.order})"];')
        lines.append(f'  core -> fiber{i} [label="phi{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
