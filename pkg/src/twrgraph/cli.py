"""Command line entry point: ``twrgraph <subcommand> --q Q ...``.

Exit status: 0 when every check passes, 1 when a check fails, 2 on a usage
error (bad arguments, q not a prime power, unsupported q without --force).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from . import linalg as la
from .catalog import SUPPORTED_GRAPH_Q, Catalog, CatalogError, check_hypothesis
from .graph import (LEFT, RIGHT, CosetGraph, block_action_check, pi_block_check,
                    star_quotient_check, two_arc_orbit_check)
from .rsub import bilinear_cross_check, check_R, connectivity_premise, construct_R, corrupt
from .wreath import Wreath, verify_c_hat

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def catalog_for(q: int | None) -> Catalog:
    if q is None:
        raise UsageError("--q is required")
    pm = la.prime_power(q)
    if pm is None or q < 4:
        raise UsageError("q = %d is not a prime power >= 4" % q)
    try:
        return Catalog(*pm)
    except CatalogError as exc:
        raise UsageError(str(exc)) from exc


def metadata(cat: Catalog, seed: int) -> dict:
    return {
        "version": __version__,
        "modulus": list(cat.F.spec.modulus),
        "modulus_str": la.poly_str(cat.F.spec.modulus),
        "vector_order": "lexicographic on field codes, zero vector last",
        "T_order": "sorted image sequences on projective points [1:0], [x:1]",
        "action": "right, left-to-right composition",
        "seed": seed,
    }


class Report:
    """Ordered check records; stops at the first failure when asked to."""

    def __init__(self, cat: Catalog, seed: int, timings: bool = False):
        self.cat = cat
        self.seed = seed
        self.timings = timings
        self.checks: list[dict] = []

    def add(self, name: str, ok: bool, detail=None, elapsed: float | None = None) -> bool:
        rec = {"name": name, "status": "pass" if ok else "fail", "detail": detail or {}}
        if self.timings and elapsed is not None:
            rec["elapsed_s"] = round(elapsed, 3)
        self.checks.append(rec)
        return ok

    def run(self, name: str, fn):
        t0 = time.perf_counter()
        ok, detail = fn()
        return self.add(name, ok, detail, time.perf_counter() - t0)

    @property
    def failed(self):
        return next((c["name"] for c in self.checks if c["status"] != "pass"), None)

    def to_json(self) -> dict:
        c = self.cat
        return {"q": c.q, "p": c.p, "m": c.m,
                "status": "pass" if self.failed is None else "fail",
                "first_failure": self.failed,
                "checks": self.checks,
                "metadata": metadata(c, self.seed)}


def emit(obj, args) -> None:
    text = json.dumps(obj, indent=None if args.json else 2, sort_keys=False)
    if args.out and args.command not in ("ball", "construct-r"):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- subcommands --------------------------------------------------------------

def cmd_hypothesis(args) -> int:
    cat = catalog_for(args.q)
    rep = Report(cat, args.seed, args.timings)
    h = check_hypothesis(cat)
    d = h.to_json()
    rep.add("P 2-transitive of p-power degree", h.two_transitive and h.degree_is_p_power, d)
    rep.add("centre of the vector stabilizer divisible by p", h.centre_ok,
            {"stabilizer_order": h.stabilizer_order, "centre_order": h.centre_order})
    rep.add("image of phi is PSL(2,q)", h.phi_ok,
            {"image_order": h.image_order, "psl_order": h.psl_order,
             "kernel_order": h.kernel_order})
    emit(rep.to_json(), args)
    return EXIT_OK if rep.failed is None else EXIT_FAIL


def cmd_catalog(args) -> int:
    cat = catalog_for(args.q)
    d = cat.to_json()
    d["hypothesis"] = check_hypothesis(cat).to_json()
    d["metadata"] = metadata(cat, args.seed)
    emit(d, args)
    return EXIT_OK


def cmd_construct_r(args) -> int:
    cat = catalog_for(args.q)
    r = construct_R(cat)
    checks = check_R(cat, r)
    d = r.to_json()
    d["checks"] = [c.to_json() for c in checks]
    d["metadata"].update(metadata(cat, args.seed))
    text = json.dumps(d, indent=None if args.json else 2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def _gate_graph_q(cat: Catalog, force: bool) -> None:
    if cat.q not in SUPPORTED_GRAPH_Q and not force:
        raise UsageError("graph checks are supported for q in %s; pass --force to override"
                         % (SUPPORTED_GRAPH_Q,))


def _ball_check(G: CosetGraph, center, radius: int):
    b = G.ball(center, radius)
    closed = b.closed()
    degrees = sorted({len(b.adjacency[x]) for x in closed})
    ok = b.is_bipartite() and degrees == [G.k]
    return b, ok, {"radius": radius, "vertices": len(b), "closed": len(closed),
                   "layer_sizes": [len(layer) for layer in b.layers],
                   "bipartite": b.is_bipartite(), "closed_degrees": degrees}


def adjacency_oracle(G: CosetGraph, ball) -> tuple[bool, dict]:
    """Adjacency predicate vs reference neighbour enumeration on all Left x Right pairs."""
    lefts = [x for x in ball.vertices if x.side == LEFT]
    rights = [x for x in ball.vertices if x.side == RIGHT]
    bad = 0
    pairs = 0
    for a in lefts:
        nb = set(G.neighbors_by_transversal(a))
        for b in rights:
            pairs += 1
            adj = G.adjacent(a, b)
            if adj != (b in nb) or adj != G.adjacent_via_left(a, b):
                bad += 1
    return bad == 0, {"pairs": pairs, "disagreements": bad}


def cmd_verify_graph(args) -> int:
    cat = catalog_for(args.q)
    _gate_graph_q(cat, args.force)
    rep = Report(cat, args.seed, args.timings)

    def finish():
        emit(rep.to_json(), args)
        return EXIT_OK if rep.failed is None else EXIT_FAIL

    h = check_hypothesis(cat)
    if not rep.add("hypothesis", h.ok, h.to_json()):
        return finish()
    W = Wreath(cat)
    ch = verify_c_hat(W)
    if not rep.add("diagonal subgroup twisted by Q", ch.ok, ch.to_json()):
        return finish()
    r = construct_R(cat)
    if args.inject_fault:
        r = corrupt(r)
    for c in check_R(cat, r, W):
        if not rep.add(c.name, c.ok, c.detail):
            return finish()
    bc = bilinear_cross_check(cat, r)
    if not rep.add("R equals the perp of ker F", bool(bc.get("equals_R")), bc):
        return finish()
    c = connectivity_premise(cat, r, W)
    if not rep.add(c.name, c.ok, c.detail):
        return finish()

    G = CosetGraph(cat, r, threads=args.threads)
    ball_u, ok, d = _ball_check(G, G.u, 2)
    if not rep.add("valency and bipartite at u", ok, d):
        return finish()
    ball_v, ok, d = _ball_check(G, G.v, 2)
    if not rep.add("valency and bipartite at v", ok, d):
        return finish()
    if not rep.run("adjacency formula agrees with enumeration",
                   lambda: adjacency_oracle(G, ball_u)):
        return finish()
    for name, center, gens in (("two-arc transitive at u", G.u, G.stabilizer_gens_u()),
                               ("two-arc transitive at v", G.v, G.stabilizer_gens_v())):
        d = two_arc_orbit_check(G, center, gens)
        ok = (d["one_arcs"] == G.k and d["one_arc_orbits"] == 1
              and d["count"] == G.k * (G.k - 1) and d["orbit_count"] == 1)
        if not rep.add(name, ok, d):
            return finish()
    d = star_quotient_check(G, G.ball(G.u, 1), samples=500, seed=args.seed)
    ok = d["invariant_constant"] and d["neighbor_values_distinct"] and d["star"]
    if not rep.add("star quotient", ok, d):
        return finish()
    d = block_action_check(G)
    ok = (d["order"] == d["expected_order"] and d["nhat_regular"]
          and d["stabilizer_order"] == d["points"] and d["identity_fixed_by_P"]
          and d["kernel_order"] == d["expected_kernel_order"]
          and d["translations_in_kernel"] and d["primitive"])
    if not rep.add("block action of type HS", ok, d):
        return finish()
    d = pi_block_check(G, ball_u, samples=200, seed=args.seed)
    ok = d["u_shares_cell_with_f_t"] and d["block_property"]
    if not rep.add("Pi block property", ok, d):
        return finish()
    rep.add("connectivity", True,
            {"basis": "theory-backed",
             "premise": "R not centralised by V ker(phi) (verified above)"})
    return finish()


def vertex_label(G: CosetGraph, x) -> dict | list:
    f = [int(t) for t in x.f()]
    if x.side == LEFT:
        return {"f": f}
    return {"w": x.w, "vector": list(G.cat.vectors[x.w]), "c": f}


def cmd_ball(args) -> int:
    cat = catalog_for(args.q)
    _gate_graph_q(cat, args.force)
    if args.radius < 0:
        raise UsageError("--radius must be non-negative")
    if args.dot and args.radius > 1:
        raise UsageError("--dot needs radius <= 1")
    r = construct_R(cat)
    G = CosetGraph(cat, r, threads=args.threads)
    center = G.u if args.side == "left" else G.v
    b = G.ball(center, args.radius)
    idx = b.index()
    nbrs: dict = {x: set() for x in b.vertices}
    for x, ys in b.adjacency.items():
        for y in ys:
            if y in idx:
                nbrs[x].add(y)
                nbrs[y].add(x)
    closed = set(b.closed())
    lines = []
    for x in b.vertices:
        lines.append(json.dumps({"id": idx[x], "side": "left" if x.side == LEFT else "right",
                                 "depth": b.depth[x], "label": vertex_label(G, x),
                                 "closed": x in closed,
                                 "neighbors": sorted(idx[y] for y in nbrs[x])}))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        dot = ["graph ball {"]
        for x in b.vertices:
            shape = "circle" if x.side == LEFT else "box"
            dot.append('  %d [shape=%s, label="%s%d"];'
                       % (idx[x], shape, "L" if x.side == LEFT else "R", idx[x]))
        for x in b.vertices:
            for y in sorted(nbrs[x], key=idx.get):
                if idx[x] < idx[y]:
                    dot.append("  %d -- %d;" % (idx[x], idx[y]))
        dot.append("}")
        with open(args.dot, "w") as fh:
            fh.write("\n".join(dot) + "\n")
    summary = {"q": cat.q, "side": args.side, "radius": args.radius, "vertices": len(b),
               "layer_sizes": [len(layer) for layer in b.layers],
               "bipartite": b.is_bipartite(), "closed_degrees": sorted(b.degrees())}
    print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK


def cmd_remark(args) -> int:
    from .remark import remark_report

    d = remark_report()
    d["metadata"] = {"version": __version__, "generators": ["I + E_01", "cyclic shift"],
                     "base_vector": "e_0"}
    emit(d, args)
    return EXIT_OK if d["ok"] else EXIT_FAIL


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field order (prime power >= 4)")
    common.add_argument("--out", help="write the report (or ball jsonl) to this file")
    common.add_argument("--json", action="store_true", help="compact single-line JSON")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=la.SEED,
                        help="seed for sampling-based checks (default 0x5EED)")
    common.add_argument("--threads", type=int, default=1, help="threads for ball expansion")
    common.add_argument("--timings", action="store_true",
                        help="include elapsed times (reports are then not reproducible)")

    ap = argparse.ArgumentParser(prog="twrgraph", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("hypothesis", parents=[common], help="check the group-theoretic hypothesis")
    sub.add_parser("catalog", parents=[common], help="dump field, generators and orders")
    sub.add_parser("construct-r", parents=[common], help="construct R and write it as JSON")
    v = sub.add_parser("verify-graph", parents=[common], help="run the full check battery")
    v.add_argument("--inject-fault", action="store_true", help="perturb the R basis first")
    v.add_argument("--force", action="store_true", help="allow q outside the supported set")
    b = sub.add_parser("ball", parents=[common], help="export a ball as JSON lines")
    b.add_argument("--side", choices=["left", "right"], default="left")
    b.add_argument("--radius", type=int, default=1)
    b.add_argument("--dot", help="also write a DOT file (radius <= 1)")
    b.add_argument("--force", action="store_true")
    sub.add_parser("remark-asl52", parents=[common], help="the SL(5,2) induced module check")
    return ap


COMMANDS = {
    "hypothesis": cmd_hypothesis,
    "catalog": cmd_catalog,
    "construct-r": cmd_construct_r,
    "verify-graph": cmd_verify_graph,
    "ball": cmd_ball,
    "remark-asl52": cmd_remark,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.threads < 1:
        print("twrgraph: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print("twrgraph: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
