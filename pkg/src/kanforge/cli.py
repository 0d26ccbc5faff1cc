"""Command-line front end.

Exit codes: 0 every check passed, 1 a check was refuted (the certificate
carries a witness), 2 the input was malformed or a budget was exceeded.
"""
from __future__ import annotations

import argparse
import sys

from . import exchange as ex
from .corpus import ABELIAN, cyclic, small_groups
from .errors import BudgetExceeded, KanforgeError, budget
from .groupoid import (FiniteGroupoid, cech_groupoid, check_bibundle, check_groupoid, check_morita,
                       group_groupoid, left_principal, nerve_groupoid, pair_groupoid, right_principal)
from .hyper import check_1_hypercover, check_hypercover, product_cover, pullback_two_groupoid
from .kan import classify_n_groupoid, fill_horn, horn_maps
from .simplicial import (SimplicialMap, TruncatedSimplicialSet, check_simplicial_identities, simplex,
                         skeleton)
from .stacky import (bigon_roundtrip, check_inverse_axiom, check_stacky, stacky_from_two_groupoid,
                     two_groupoid_from_stacky)
from .two_gpd import abelian_two_group, check_two_groupoid, nerve_two_groupoid, promote_groupoid

PASS, REFUTED, MALFORMED = 0, 1, 2


class Refuted(Exception):
    """Raised inside a command to finish with exit code 1 and a certificate."""

    def __init__(self, doc: dict):
        super().__init__(doc["body"].get("summary", "refuted"))
        self.doc = doc


def _emit(args, doc: dict) -> None:
    text = ex.dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict(args, command: str, ok: bool, summary: str, **fields) -> int:
    doc = ex.certificate(command, "pass" if ok else "refuted", summary=summary, **fields)
    _emit(args, doc)
    print(f"{command}: {'PASS' if ok else 'REFUTED'}: {summary}", file=sys.stderr)
    return PASS if ok else REFUTED


def _as_simplicial(kind: str, obj, dim: int) -> TruncatedSimplicialSet:
    if kind == "simplicial":
        return obj if obj.trunc_dim <= dim else obj.truncate(dim)
    if kind == "groupoid":
        return nerve_groupoid(obj, dim)
    if kind == "two_groupoid":
        return nerve_two_groupoid(obj, dim)
    raise ex.ExchangeError(f"field 'header.kind': a {kind} document has no underlying simplicial set")


# ---------------------------------------------------------------------------
# commands

def cmd_check(args) -> int:
    kind, body = ex.read(args.path)
    if args.kind and args.kind != kind:
        raise ex.ExchangeError(f"field 'header.kind': expected {args.kind!r}, got {kind!r}")
    if kind == "span":
        return _morita_span(args, body)
    obj = ex.from_document(kind, body)
    if kind == "simplicial":
        X = obj if args.dim is None or args.dim >= obj.trunc_dim else obj.truncate(args.dim)
        bad = check_simplicial_identities(X)
        labels = sorted({v.identity for v in bad})
        return _verdict(args, "check", not bad,
                        "simplicial identities hold" if not bad else "violated: " + "; ".join(labels),
                        kind=kind, checked_dim=X.trunc_dim, failures=bad[:20])
    if kind == "groupoid":
        bad = check_groupoid(obj)
        return _verdict(args, "check", not bad, "groupoid axioms hold" if not bad else
                        "violated: " + ", ".join(sorted({b[0] for b in bad})), kind=kind, failures=bad[:20])
    if kind == "bibundle":
        bad = check_bibundle(obj)
        return _verdict(args, "check", not bad, "bibundle axioms hold" if not bad else
                        "violated: " + ", ".join(sorted({b[0] for b in bad})), kind=kind, failures=bad[:20],
                        right_principal=right_principal(obj) if not bad else None,
                        left_principal=left_principal(obj) if not bad else None)
    if kind == "two_groupoid":
        rep = check_two_groupoid(obj)
        return _verdict(args, "check", rep.ok, "2-groupoid axioms hold" if rep.ok else
                        "violated: " + ", ".join(sorted(rep.labels())), kind=kind, failures=rep.failures[:20])
    if kind == "stacky":
        rep = check_stacky(obj)
        return _verdict(args, "check", rep.ok, "stacky groupoid axioms hold" if rep.ok else
                        "violated: " + ", ".join(sorted(rep.labels())), kind=kind, failures=rep.failures[:20])
    raise ex.ExchangeError(f"field 'header.kind': cannot check a {kind} document")


def cmd_classify(args) -> int:
    kind, obj = ex.load(args.path)
    X = _as_simplicial(kind, obj, args.dim)
    c = classify_n_groupoid(X, min(args.dim, X.trunc_dim))
    statuses = {f"{m},{j}": st.status for (m, j), st in sorted(c.report.items())}
    ok = c.n is not None and (args.expect is None or c.n == args.expect)
    if c.n is None:
        witness = {"m": c.failure.m, "j": c.failure.j, "horn": c.failure.empty_witness}
    elif not ok:
        worst = max((st for st in c.report.values() if not st.unique), key=lambda s: s.m, default=None)
        witness = None if worst is None else {"m": worst.m, "j": worst.j, "horn": worst.multiple_witness[0],
                                              "fillers": worst.multiple_witness[1]}
    else:
        witness = None
    return _verdict(args, "classify", ok, str(c), n=c.n, checked_dim=c.checked_dim, status=statuses,
                    witness=witness)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise ex.ExchangeError(f"expected a comma-separated list of integers, got {text!r}") from None


def cmd_fill_horn(args) -> int:
    kind, obj = ex.load(args.path)
    X = _as_simplicial(kind, obj, args.m)
    h = tuple(_int_list(args.horn))
    if h not in set(horn_maps(X, args.m, args.j)):
        raise ex.ExchangeError(f"{h} is not a Lambda[{args.m},{args.j}] horn in this simplicial set")
    fillers = fill_horn(X, args.m, args.j, h)
    return _verdict(args, "fill-horn", bool(fillers), f"{len(fillers)} filler(s)", m=args.m, j=args.j,
                    horn=h, fillers=fillers)


def cmd_nerve(args) -> int:
    kind, obj = ex.load(args.path)
    if kind == "groupoid":
        X = nerve_groupoid(obj, args.dim)
    elif kind == "two_groupoid":
        X = nerve_two_groupoid(obj, args.dim, method=args.method)
    else:
        raise ex.ExchangeError(f"field 'header.kind': the nerve needs a groupoid or two_groupoid, got {kind!r}")
    _emit(args, ex.to_document(X))
    return PASS


def cmd_bigons(args) -> int:
    kind, obj = ex.load(args.path)
    if kind == "two_groupoid":
        G = stacky_from_two_groupoid(obj).G
    elif kind == "stacky":
        G = obj.G
    else:
        raise ex.ExchangeError(f"field 'header.kind': expected two_groupoid or stacky, got {kind!r}")
    _emit(args, ex.to_document(G))
    return PASS


def cmd_correspond(args) -> int:
    kind, obj = ex.load(args.path)
    if args.direction == "to-stacky":
        if kind != "two_groupoid":
            raise ex.ExchangeError("field 'header.kind': to-stacky needs a two_groupoid document")
        _emit(args, ex.to_document(stacky_from_two_groupoid(obj)))
        return PASS
    if args.direction == "to-2gpd":
        if kind != "stacky":
            raise ex.ExchangeError("field 'header.kind': to-2gpd needs a stacky document")
        rep = check_stacky(obj)
        if not rep.ok:
            return _verdict(args, "correspond", False, "input fails the stacky axioms", failures=rep.failures[:20])
        _emit(args, ex.to_document(two_groupoid_from_stacky(obj)))
        return PASS
    if kind == "two_groupoid":
        S = stacky_from_two_groupoid(obj)
        back = two_groupoid_from_stacky(S)
        same = back == obj
        return _verdict(args, "correspond", same, "data-identical" if same else "data differs",
                        direction="roundtrip", start="two_groupoid", stacky_ok=check_stacky(S).ok)
    if kind == "stacky":
        rep = check_stacky(obj)
        bad = list(rep.failures) or bigon_roundtrip(obj)
        return _verdict(args, "correspond", not bad, "bigon groupoid isomorphic via b_l" if not bad
                        else "roundtrip failed", direction="roundtrip", start="stacky", failures=bad[:20])
    raise ex.ExchangeError(f"field 'header.kind': roundtrip needs two_groupoid or stacky, got {kind!r}")


def _map_levels(path: str, Z: TruncatedSimplicialSet, X: TruncatedSimplicialSet) -> SimplicialMap:
    kind, body = ex.read(path)
    if kind != "map":
        raise ex.ExchangeError(f"field 'header.kind': expected 'map', got {kind!r}")
    return ex.map_from_body(body, Z, X)


def _cert_fields(cert) -> dict:
    return {"n": cert.n, "levels": [{"k": l.k, "required": l.required, "pb_size": l.pb_size,
                                     "fibre_sizes": [len(f) for f in l.fibres], "ok": l.ok,
                                     "witness": l.witness} for l in cert.levels],
            "extra": cert.extra, "failure": cert.failure}


def cmd_hypercover(args) -> int:
    kz, Z = ex.load(args.path_z)
    kx, X = ex.load(args.path_x)
    N = args.check_dim if args.check_dim is not None else args.n + 1
    Z, X = _as_simplicial(kz, Z, N), _as_simplicial(kx, X, N)
    f = _map_levels(args.map, Z, X)
    check = check_1_hypercover if args.one else check_hypercover
    try:
        cert = check(f, args.n, args.check_dim)
    except KanforgeError as exc:
        if isinstance(exc, BudgetExceeded):
            raise
        return _verdict(args, "hypercover", False, f"precondition fails: {exc}")
    what = "1-hypercover" if args.one else "hypercover"
    return _verdict(args, "hypercover", cert.ok, what if cert.ok else f"not a {what}", **_cert_fields(cert))


def _morita_span(args, body) -> int:
    n = ex._int(ex._get(body, "n", "body."), "body.n")
    Z = ex.simplicial_from_body(ex._get(body, "Z", "body."), "body.Z.")
    X = ex.simplicial_from_body(ex._get(body, "X", "body."), "body.X.")
    Y = ex.simplicial_from_body(ex._get(body, "Y", "body."), "body.Y.")
    f = ex.map_from_body(ex._get(body, "f", "body."), Z, X, "body.f.")
    g = ex.map_from_body(ex._get(body, "g", "body."), Z, Y, "body.g.")
    try:
        cf, cg = check_1_hypercover(f, n), check_1_hypercover(g, n)
    except KanforgeError as exc:
        return _verdict(args, "morita", False, f"precondition fails: {exc}")
    ok = cf.ok and cg.ok
    return _verdict(args, "morita", ok, "span of 1-hypercovers" if ok else "a leg is not a 1-hypercover",
                    f=_cert_fields(cf), g=_cert_fields(cg))


def cmd_morita(args) -> int:
    kind, body = ex.read(args.path)
    if kind == "span":
        return _morita_span(args, body)
    if kind == "bibundle":
        E = ex.bibundle_from_body(body)
        bad = check_bibundle(E)
        r, l = (right_principal(E), left_principal(E)) if not bad else (False, False)
        ok = not bad and not check_morita(E)
        return _verdict(args, "morita", ok, "Morita bibundle" if ok else "not a Morita bibundle",
                        failures=bad[:20], right_principal=r, left_principal=l)
    if kind == "stacky":
        S = ex.stacky_from_body(body)
        bad = check_inverse_axiom(S)
        return _verdict(args, "morita", not bad, "inverse bibundle is Morita" if not bad else
                        "inverse bibundle is not Morita", failures=bad[:20])
    raise ex.ExchangeError(f"field 'header.kind': morita needs span, bibundle or stacky, got {kind!r}")


# ---------------------------------------------------------------------------
# generators

def _group_table(name: str):
    if name in ABELIAN:
        return ABELIAN[name]
    if name in small_groups():
        return small_groups()[name]
    if name.startswith("Z/") and name[2:].isdigit() and int(name[2:]) > 0:
        return cyclic(int(name[2:]))
    raise ex.ExchangeError(f"unknown group {name!r}; use Z/n or one of {sorted(small_groups())}")


def _groupoid_param(args) -> FiniteGroupoid:
    if args.pair:
        return pair_groupoid(args.pair)
    if args.base:
        return cech_groupoid(_int_list(args.base))
    return group_groupoid(_group_table(args.group or "Z/2"))


def _perturbed_delta2() -> TruncatedSimplicialSet:
    """Delta[2] with d_0 and d_1 of the degenerate simplex 011 swapped."""
    X = simplex(2).to_simplicial(2)
    x = X.degens[1][1][X.labels[1].index((0, 1))]   # the simplex 011
    faces = [list(map(list, lv)) for lv in X.faces]
    faces[2][0][x], faces[2][1][x] = faces[2][1][x], faces[2][0][x]
    return TruncatedSimplicialSet(X.sizes, tuple(tuple(map(tuple, lv)) for lv in faces), X.degens)


def _broken_coco():
    """Z/3 with m_0 the plain sum: the coherence with degeneracies fails."""
    return abelian_two_group(cyclic(3), m0=lambda a, b, c: (a + b + c) % 3)


def cmd_generate(args) -> int:
    fam = args.family
    if fam == "group-nerve":
        obj = nerve_groupoid(group_groupoid(_group_table(args.group or "Z/2")), args.dim)
    elif fam in ("groupoid", "pair", "cech"):
        obj = _groupoid_param(args)
    elif fam == "groupoid-nerve":
        obj = nerve_groupoid(_groupoid_param(args), args.dim)
    elif fam == "abelian2group":
        obj = abelian_two_group(_group_table(args.group or "Z/2"))
    elif fam == "promoted":
        obj = promote_groupoid(_groupoid_param(args))
    elif fam == "pullback":
        X = abelian_two_group(_group_table(args.group or "Z/2"))
        copies = _int_list(args.copies) if args.copies else [2]
        obj, _ = pullback_two_groupoid(X, product_cover(X, copies, args.arrow_copies))
    elif fam == "stacky":
        obj = stacky_from_two_groupoid(promote_groupoid(_groupoid_param(args)) if (args.pair or args.base)
                                       else abelian_two_group(_group_table(args.group or "Z/2")))
    elif fam == "delta":
        obj = simplex(args.m).to_simplicial(args.dim)
    elif fam == "skeleton":
        obj, _ = skeleton(simplex(args.m).to_simplicial(args.dim), args.k)
    elif fam == "perturbed-delta2":
        obj = _perturbed_delta2()
    elif fam == "broken-coco":
        obj = _broken_coco()
    else:  # argparse restricts choices
        raise ex.ExchangeError(f"unknown family {fam!r}")
    _emit(args, ex.to_document(obj))
    return PASS


FAMILIES = ("group-nerve", "groupoid", "pair", "cech", "groupoid-nerve", "abelian2group", "promoted",
            "pullback", "stacky", "delta", "skeleton", "perturbed-delta2", "broken-coco")


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kanforge",
        description="Machine checks for finite simplicial sets, groupoids, 2-groupoids and stacky groupoids. "
                    "Exit codes: 0 pass, 1 refuted (certificate carries a witness), 2 malformed input.")
    p.add_argument("--budget", type=int, default=None,
                   help="maximum number of elements of any enumerated set (default: $KANFORGE_BUDGET or 10^6)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("-o", "--out", help="write the output document here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "Verify the axioms of a document: simplicial identities, groupoid and "
             "bibundle axioms, 2-groupoid axioms (Kan, m-compatibility, coherence, pentagon) or the stacky "
             "groupoid axioms (associator, cube condition, unit coherences, inverse).")
    sp.add_argument("path")
    sp.add_argument("--kind", choices=ex.KINDS)
    sp.add_argument("--dim", type=int, default=None, help="check only up to this level")

    sp = add("classify", cmd_classify, "Find the least n with unique horn fillers above n (n-groupoid level), "
             "verified up to --dim; refuted when a horn has no filler.")
    sp.add_argument("path")
    sp.add_argument("--dim", type=int, default=4)
    sp.add_argument("--expect", type=int, default=None, help="refute unless the level equals this n")

    sp = add("fill-horn", cmd_fill_horn, "List the fillers of a horn Lambda[m,j] given by its faces "
             "(k != j, increasing); refuted when there is none.")
    sp.add_argument("path")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--horn", required=True, help="comma-separated face indices")

    sp = add("nerve", cmd_nerve, "Nerve of a groupoid or 2-groupoid through --dim; the result is a 1- or "
             "2-groupoid.")
    sp.add_argument("path")
    sp.add_argument("--dim", type=int, default=4)
    sp.add_argument("--method", choices=("membership", "induction"), default="membership")

    sp = add("bigons", cmd_bigons, "Groupoid of bigons (triangles with degenerate d_2) of a 2-groupoid.")
    sp.add_argument("path")

    sp = add("correspond", cmd_correspond, "Pass between 2-groupoids and stacky groupoids; roundtrip reports "
             "data identity (from a 2-groupoid) or the bigon groupoid isomorphism (from stacky data).")
    sp.add_argument("path")
    sp.add_argument("--direction", choices=("to-stacky", "to-2gpd", "roundtrip"), required=True)

    sp = add("hypercover", cmd_hypercover, "Certify a strict map Z -> X as a hypercover of n-groupoids: "
             "Z_k -> PB(dDelta[k], Z, Delta[k], X) onto below n and bijective from n on.")
    sp.add_argument("path_z")
    sp.add_argument("path_x")
    sp.add_argument("--map", required=True, help="document of kind 'map' with the level maps")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--check-dim", type=int, default=None)
    sp.add_argument("--one", action="store_true", help="also require a bijection on 0-simplices")

    sp = add("morita", cmd_morita, "Morita witnesses: a biprincipal bibundle, a span of 1-hypercovers, or "
             "the inverse bibundle of stacky data.")
    sp.add_argument("path")

    sp = add("generate", cmd_generate, "Emit a corpus document.")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--group", help="Z/n or a small group name such as S3, Q8, A4")
    sp.add_argument("--pair", type=int, default=None, help="pair groupoid on this many objects")
    sp.add_argument("--base", default=None, help="Cech groupoid of the map U -> B given as a list")
    sp.add_argument("--dim", type=int, default=4)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--copies", default=None, help="points over each object, comma-separated")
    sp.add_argument("--arrow-copies", type=int, default=1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.budget is not None:
            with budget(args.budget):
                return args.func(args)
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED
    except KanforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
