"""Command-line front end: enumeration sweeps, verification runs and export
of tables and diagrams.

Every command writes deterministic output (stable ordering, seeded sampling,
no timestamps), so identical configurations produce byte-identical artifacts.
Exit status is 0 only when every requested verification passed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import annihilators as ann
from . import bundles as bn
from . import crossconn as xc
from . import gf
from . import semigroups as sg
from . import subspace_category as sc


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sing_semigroup(p, n):
    elems = gf.enumerate_endos(p, n, singular_only=True)
    return sg.from_multiplication(elems, lambda a, b: a * b)


# ---------------------------------------------------------------------------
# verification checks; each returns (ok, witness-or-None)

def _check_cardinalities(p, n, seed):
    cases = [(p, n)]
    if (p, n) == (2, 2):
        cases += [(3, 2), (2, 3)]
    for cp, cn in cases:
        got = len(gf.enumerate_endos(cp, cn, singular_only=True))
        want = gf.singular_count(cp, cn)
        brute = sum(1 for e in gf.enumerate_endos(cp, cn) if e.rank < cn)
        if got != want or brute != want:
            return False, {"p": cp, "n": cn, "enumerated": got, "closed_form": want}
    return True, None


def _check_regularity(p, n, seed):
    sing = _sing_semigroup(p, n)
    if not sg.is_regular(sing):
        return False, {"failure": "singular semigroup not regular"}
    got = len(sg.idempotents(sing))
    want = sum(
        p ** (a.dim * (n - a.dim))
        for a in gf.enumerate_subspaces(p, n, proper_only=True)
    )
    if got != want:
        return False, {"idempotents": got, "expected": want}
    if (p, n) == (2, 2):
        if got != 7:
            return False, {"idempotents": got, "expected": 7}
        cone_sg, _, _ = sc.enumerate_normal_cones(sc.build_category(2, 2))
        if not sg.is_regular(cone_sg):
            return False, {"failure": "cone semigroup not regular"}
    return True, None


def _check_green(p, n, seed):
    elems = gf.enumerate_endos(p, n, singular_only=True)
    sing = sg.from_multiplication(elems, lambda a, b: a * b)
    green = sg.green_relations(sing)
    images = [e.image() for e in elems]
    kernels = [e.kernel() for e in elems]
    for cls in green.l_classes:
        if len({images[i] for i in cls}) != 1:
            return False, {"failure": "L class with mixed images"}
    if len(green.l_classes) != len(set(images)):
        return False, {"failure": "L classes do not match image partition"}
    for cls in green.r_classes:
        if len({kernels[i] for i in cls}) != 1:
            return False, {"failure": "R class with mixed kernels"}
    if len(green.r_classes) != len(set(kernels)):
        return False, {"failure": "R classes do not match kernel partition"}
    if (p, n) == (2, 2):
        if len(green.d_classes) != 2:
            return False, {"d_classes": len(green.d_classes)}
        big = max(green.d_classes, key=len)
        rs = [c for c in green.r_classes if set(c) <= set(big)]
        ls = [c for c in green.l_classes if set(c) <= set(big)]
        hs = [c for c in green.h_classes if set(c) <= set(big)]
        if not (len(rs) == 3 and len(ls) == 3 and len(hs) == 9
                and all(len(h) == 1 for h in hs)):
            return False, {"failure": "rank-1 class is not a 3x3 grid of singletons"}
    return True, None


def _check_factorization(p, n, seed):
    cat = sc.build_category(p, n)
    for f in cat.all_morphisms():
        nf = sc.normal_factorization(f)
        if nf.recomposed() != f or not nf.u.is_iso():
            return False, {"failure": "factorization identity", "dom": f.dom.to_json()}
    for i, j in cat.inclusion_pairs:
        a, b = cat.objects[i], cat.objects[j]
        if gf.inclusion_map(a, b).compose(sc.retraction(b, a)) != gf.identity_map(a):
            return False, {"failure": "retraction law", "sub": a.to_json()}
    if (p, n) == (2, 2):
        rng = random.Random(seed)
        cat3 = sc.build_category(2, 3)
        for _ in range(10_000):
            a = rng.choice(cat3.objects)
            b = rng.choice(cat3.objects)
            m = tuple(
                tuple(rng.randrange(2) for _ in range(b.dim))
                for _ in range(a.dim)
            )
            f = gf.LinearMap(a, b, m)
            nf = sc.normal_factorization(f)
            if nf.recomposed() != f or not nf.u.is_iso():
                return False, {"failure": "sampled factorization", "matrix": [list(r) for r in m]}
    return True, None


def _check_cone_semigroup(p, n, seed):
    cat = sc.build_category(p, n)
    cone_sg, cones, endos = sc.enumerate_normal_cones(cat)
    sing_elems = gf.enumerate_endos(p, n, singular_only=True)
    if cone_sg.order != len(sing_elems):
        return False, {"cones": cone_sg.order, "singular": len(sing_elems)}
    principal = {sc.principal_cone(cat, a) for a in sing_elems}
    if set(cones) != principal:
        return False, {"failure": "non-principal normal cone found"}
    sing = sg.from_multiplication(sing_elems, lambda a, b: a * b)
    mapping = tuple(cone_sg.index(a.rows) for a in sing.elements)
    rep = sg.verify_morphism(sg.SemigroupMorphism(sing, cone_sg, mapping))
    if not (rep.is_hom and rep.is_injective and len(set(mapping)) == cone_sg.order):
        return False, {"failure": "cone map is not an isomorphism", **rep.witnesses}
    for a in sing_elems:
        for b in sing_elems:
            lhs = sc.cone_compose(cat, sc.principal_cone(cat, a), sc.principal_cone(cat, b))
            if lhs != sc.principal_cone(cat, a * b):
                return False, {"failure": "cone composition", "a": a.to_json(), "b": b.to_json()}
    return True, None


def _check_m_sets(p, n, seed):
    cat = sc.build_category(p, n)
    for e in gf.enumerate_endos(p, n, singular_only=True):
        if e * e != e:
            continue
        from_iso = set(sc.m_set(cat, sc.principal_cone(cat, e)))
        from_sum = {a for a in cat.objects if gf.is_direct_sum(a, e.kernel())}
        if from_iso != from_sum:
            return False, {"idempotent": e.to_json()}
    return True, None


def _check_dual_category(p, n, seed):
    acat = ann.build_annihilator_category(p, n)
    rep = ann.iso_to_dual_subspace_category(acat)
    if not rep.ok:
        return False, {"failure": "dual category identification"}
    if (p, n) == (2, 2):
        acat3 = ann.build_annihilator_category(2, 3)
        if len(acat3.objects) != 15:
            return False, {"objects_2_3": len(acat3.objects)}
        ta = ann.build_ta_semigroup(2, 2)
        if not (ta.semigroup.order == 10 and ta.anti_isomorphism.ok and ta.reversal_ok):
            return False, {"failure": "dual cone semigroup"}
    return True, None


def _check_cross_connections(p, n, seed):
    sing = _sing_semigroup(p, n)
    cat = sc.build_category(p, n)
    for eps in gf.enumerate_automorphisms(p, n):
        cc = xc.cross_connection(eps, verify=False)
        cov = xc.verify_cross_connection(cc)
        if not cov.ok:
            return False, {"eps": eps.to_json(), "failure": "covering"}
        s = xc.build_cross_conn_semigroup(eps)
        if s.order != sing.order:
            return False, {"eps": eps.to_json(), "order": s.order}
        mapping = tuple(sing.index(gf.Endo(p, n, lbl[0])) for lbl in s.semigroup.elements)
        rep = sg.verify_morphism(sg.SemigroupMorphism(s.semigroup, sing, mapping))
        if not (rep.is_hom and rep.is_injective and sg.is_regular(s.semigroup)):
            return False, {"eps": eps.to_json(), "failure": "first projection"}
        for a in cat.objects:
            for y in cat.objects:
                if not xc.linking_bijection(cc, a, y).bijective:
                    return False, {"eps": eps.to_json(), "a": a.to_json(), "y": y.to_json()}
    return True, None


def _check_null_amalgam(p, n, seed):
    am = sg.null_semigroup_fixture()
    s1, s2 = am.branches
    facts = [
        s1.mul_labels(("S1", "a"), ("S1", "u")) == ("S1", "v"),
        s1.mul_labels(("S1", "u"), ("S1", "a")) == ("S1", "v"),
        s1.mul_labels(("S1", "a"), ("S1", "a")) == ("S1", "z"),
        s2.mul_labels(("S2", "b"), ("S2", "v")) == ("S2", "w"),
        s2.mul_labels(("S2", "v"), ("S2", "b")) == ("S2", "w"),
        am.core.mul_labels(("U", "u"), ("U", "v")) == ("U", "z"),
    ]
    if not all(facts):
        return False, {"failure": "fixture products"}
    rep = sg.verify_amalgam(am)
    return rep.ok, None if rep.ok else {"witnesses": rep.witnesses}


def _check_bundle_amalgam(p, n, seed, dims=(2, 2, 3), m=2):
    spec = bn.fiber_family(p, max(dims), dims)
    bundle = bn.assemble_amalgam(spec, m=m)
    orders = [b.order for b in bundle.branches]
    want = [len(gf.enumerate_endos(p, d, singular_only=True)) for d in dims]
    if orders != want:
        return False, {"orders": orders, "expected": want}
    if bundle.core.semigroup.order != len(gf.enumerate_endos(p, m, singular_only=True)):
        return False, {"core_order": bundle.core.semigroup.order}
    if not bundle.report.ok:
        return False, {"witnesses": bundle.report.witnesses}
    labels = set(bundle.amalgam.core.elements)
    for b in bundle.amalgam.branches:
        if labels & set(b.elements):
            return False, {"failure": "tag collision"}
        labels |= set(b.elements)
    return True, None


CHECKS = (
    ("cardinalities", _check_cardinalities),
    ("regularity-idempotents", _check_regularity),
    ("green-eggbox", _check_green),
    ("normal-factorization", _check_factorization),
    ("cone-semigroup", _check_cone_semigroup),
    ("m-sets", _check_m_sets),
    ("dual-category", _check_dual_category),
    ("cross-connections", _check_cross_connections),
    ("null-amalgam", _check_null_amalgam),
    ("bundle-amalgam", _check_bundle_amalgam),
)


def run_checks(p, n, seed, table_path=None):
    report = []
    for name, fn in CHECKS:
        try:
            ok, witness = fn(p, n, seed)
        except gf.GuardExceeded as exc:
            ok, witness = False, {"guard": str(exc)}
        report.append({"check": name, "status": "pass" if ok else "fail",
                       "witness": witness})
    if table_path:
        report.append(_table_check(table_path))
    return report


def _table_check(path):
    name = "table-associativity"
    try:
        with open(path) as fh:
            doc = json.load(fh)
        sg.semigroup_from_json(doc)
    except sg.NotAssociative as exc:
        return {"check": name, "status": "fail",
                "witness": {"triple": list(exc.witness)}}
    except (OSError, ValueError, KeyError) as exc:
        return {"check": name, "status": "fail", "witness": {"error": str(exc)}}
    return {"check": name, "status": "pass", "witness": None}


# ---------------------------------------------------------------------------
# subcommands

def cmd_enumerate(args):
    p, n = args.field, args.dim
    sing = gf.enumerate_endos(p, n, singular_only=True)
    smg = sg.from_multiplication(sing, lambda a, b: a * b)
    doc = {
        "field": p,
        "dim": n,
        "singular_endomorphisms": len(sing),
        "closed_form": gf.singular_count(p, n),
        "idempotents": len(sg.idempotents(smg)),
        "proper_subspaces": len(gf.enumerate_subspaces(p, n, proper_only=True)),
        "subspaces": len(gf.enumerate_subspaces(p, n)),
    }
    if args.format == "json":
        _emit(_dump(doc), args.out)
    else:
        lines = [f"{k}: {v}" for k, v in doc.items()]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify_all(args):
    report = run_checks(args.field, args.dim, args.seed, args.table)
    failed = [r["check"] for r in report if r["status"] != "pass"]
    if args.format == "json":
        _emit(_dump(report), args.out)
    else:
        lines = [f"{r['status'].upper()} {r['check']}"
                 + (f" witness={json.dumps(r['witness'], sort_keys=True)}"
                    if r["witness"] else "")
                 for r in report]
        tail = "all checks passed" if not failed else "failed: " + ", ".join(failed)
        _emit("\n".join(lines) + "\n" + tail + "\n", args.out)
    return 0 if not failed else 1


def cmd_green(args):
    p, n = args.field, args.dim
    sing = gf.enumerate_endos(p, n, singular_only=True)
    smg = sg.from_multiplication(sing, lambda a, b: a * b)
    green = sg.green_relations(smg)
    if args.format == "dot":
        _emit(sg.eggbox_dot(smg, green), args.out)
    elif args.format == "json":
        _emit(_dump(green.to_json()), args.out)
    else:
        _emit(
            f"order: {smg.order}\n"
            f"L classes: {len(green.l_classes)}\n"
            f"R classes: {len(green.r_classes)}\n"
            f"H classes: {len(green.h_classes)}\n"
            f"D classes: {len(green.d_classes)}\n",
            args.out,
        )
    return 0


def cmd_cones(args):
    p, n = args.field, args.dim
    cat = sc.build_category(p, n)
    smg, cones, _ = sc.enumerate_normal_cones(cat)
    if args.format == "json":
        _emit(sc.cone_semigroup_json(cat, smg, cones), args.out)
    else:
        _emit(
            f"objects: {len(cat.objects)}\n"
            f"normal cones: {smg.order}\n"
            f"regular: {sg.is_regular(smg)}\n",
            args.out,
        )
    return 0


def _parse_eps(text, p, n):
    rows = json.loads(text)
    e = gf.endo([tuple(r) for r in rows], p)
    if e.n != n:
        raise ValueError(f"automorphism must be {n}x{n}")
    if not e.is_invertible():
        raise ValueError("--eps matrix is singular")
    return e


def cmd_crossconn(args):
    p, n = args.field, args.dim
    if args.all_eps:
        eps_list = list(gf.enumerate_automorphisms(p, n))
    elif args.eps:
        eps_list = [_parse_eps(args.eps, p, n)]
    else:
        eps_list = [gf.identity_endo(p, n)]
    built = [xc.build_cross_conn_semigroup(e) for e in eps_list]
    if args.format == "json":
        _emit(_dump([s.to_json() for s in built]), args.out)
    else:
        lines = [f"eps={s.eps.rows} order={s.order}" for s in built]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_amalgam(args):
    p = args.field
    dims = tuple(int(x) for x in args.dims.split(","))
    spec = bn.fiber_family(p, max(dims), dims)
    bundle = bn.assemble_amalgam(spec, m=args.core_dim)
    if args.format == "dot":
        _emit(bn.amalgam_dot(bundle), args.out)
    elif args.format == "json":
        _emit(bn.amalgam_json(bundle), args.out)
    else:
        lines = [f"core: dim {bundle.core.m}, order {bundle.core.semigroup.order}"]
        for i, b in enumerate(bundle.branches):
            lines.append(f"fiber {i}: dim {dims[i]}, order {b.order}")
        lines.append(f"verified: {bundle.report.ok}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if bundle.report.ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="fibersemi",
        description="Singular endomorphism semigroups over GF(p): Green structure, "
                    "cone semigroups, cross-connections and bundle amalgams.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, dims=False):
        sp.add_argument("--field", type=int, default=2, help="prime field modulus")
        if not dims:
            sp.add_argument("--dim", type=int, default=2, help="ambient dimension")
        sp.add_argument("--format", choices=("table", "json", "dot"), default="table")
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    spe = sub.add_parser("enumerate", help="count endomorphisms, idempotents, subspaces")
    common(spe)
    spe.set_defaults(fn=cmd_enumerate)

    spv = sub.add_parser("verify-all", help="run every verification check")
    common(spv)
    spv.add_argument("--seed", type=int, default=0, help="sampling seed")
    spv.add_argument("--table", default=None, help="also validate a Cayley-table JSON file")
    spv.set_defaults(fn=cmd_verify_all)

    spg = sub.add_parser("green", help="Green structure and eggbox diagram")
    common(spg)
    spg.set_defaults(fn=cmd_green)

    spc = sub.add_parser("cones", help="the semigroup of normal cones")
    common(spc)
    spc.set_defaults(fn=cmd_cones)

    spx = sub.add_parser("crossconn", help="linked-pair semigroups per automorphism")
    common(spx)
    spx.add_argument("--eps", default=None, help="automorphism as a JSON matrix literal")
    spx.add_argument("--all-eps", action="store_true", help="sweep every automorphism")
    spx.set_defaults(fn=cmd_crossconn)

    spa = sub.add_parser("amalgam", help="bundle-fiber amalgam")
    common(spa, dims=True)
    spa.add_argument("--dims", default="2,2,3", help="comma-separated fiber dimensions")
    spa.add_argument("--core-dim", type=int, default=None, help="core dimension (default min)")
    spa.set_defaults(fn=cmd_amalgam)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except gf.GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, sg.NotAssociative) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
