"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py --q 5 --radius 3
"""

import argparse
import json
import timeit

import numpy as np

from twrgraph import _kernels_py, kernels
from twrgraph.catalog import Catalog
from twrgraph.graph import CosetGraph
from twrgraph.rsub import construct_R

try:
    from twrgraph import _kernels
except ImportError:
    _kernels = None

NAMES = ("tuple_mul", "tuple_twist", "coset_lexmin", "coset_members")


def use(impl):
    for name in NAMES:
        setattr(kernels, name, getattr(impl, name))


def micro(impl, c, R, n, repeat):
    rng = np.random.default_rng(0)
    tmul = np.ascontiguousarray(c.tmul)
    conj = np.ascontiguousarray(c.conj_table[1])
    fs = rng.integers(0, len(c.T_elements), size=(n, c.k)).astype(np.int32)
    idx = rng.permutation(c.k).astype(np.int32)
    out = {}
    cases = {
        "tuple_mul": lambda: [impl.tuple_mul(tmul, f, f) for f in fs],
        "tuple_twist": lambda: [impl.tuple_twist(conj, f, idx) for f in fs],
        "coset_lexmin": lambda: [impl.coset_lexmin(tmul, R, f) for f in fs],
    }
    for name, fn in cases.items():
        out[name] = min(timeit.repeat(fn, number=1, repeat=repeat)) / n * 1e6
    return out


def ball_time(impl, c, r, radius, repeat):
    use(impl)
    G = CosetGraph(c, r)
    return min(timeit.repeat(lambda: G.ball(G.u, radius), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--n", type=int, default=2000, help="calls per micro benchmark")
    ap.add_argument("--radius", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    c = Catalog.for_q(args.q)
    r = construct_R(c)
    backends = [("numpy", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("cython", _kernels))
    rows = {}
    for name, impl in backends:
        res = {k + "_us": round(v, 2) for k, v in micro(impl, c, r.elements, args.n,
                                                        args.repeat).items()}
        res["ball_s"] = round(ball_time(impl, c, r, args.radius, args.repeat), 4)
        rows[name] = res
    if args.json:
        print(json.dumps({"q": args.q, "radius": args.radius, "results": rows}))
        return
    cols = list(next(iter(rows.values())))
    print("q=%d radius=%d" % (args.q, args.radius))
    print("%-8s" % "backend" + "".join("%16s" % k for k in cols))
    for name, res in rows.items():
        print("%-8s" % name + "".join("%16s" % res[k] for k in cols))
    if len(rows) == 2:
        print("%-8s" % "speedup" + "".join(
            "%15.1fx" % (rows["numpy"][k] / rows["cython"][k]) for k in cols))


if __name__ == "__main__":
    main()
