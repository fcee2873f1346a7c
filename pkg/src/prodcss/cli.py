"""Command-line interface: construct codes, print parameters, search
distances, analyze meta-checks and run Monte Carlo simulations.

Exit codes: 0 success, 1 usage or configuration error, 2 internal
invariant violation, 3 distance search exhausted without a find.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bitlin, build, meta, sim, zoo
from .css import CssCode, PauliVector, is_logical_failure, new_css, search_min_logical, stats
from .decode import BpConfig

FAMILIES = (
    "spc",
    "asymmetric",
    "symmetric",
    "dfold",
    "shor",
    "bicycle",
    "hpc",
    "tanner",
    "random-css",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _two_qubit_component() -> CssCode:
    h = bitlin.BitMatrix.from_bits(np.ones((1, 2), dtype=np.uint8))
    return new_css(h, h)


def build_code(args) -> tuple[CssCode, dict]:
    """Construct the requested code; returns it with its metadata fields."""
    fam = args.code_family
    info = {"family": fam, "seed": getattr(args, "seed", 0)}
    if fam == "spc":
        params = build.SpcParams(args.D, args.s)
        info.update(D=args.D, s=args.s)
        return build.spc(params), info
    if fam == "shor":
        info.update(D=args.D)
        return build.shor_code(args.D), info
    if fam == "asymmetric":
        comp = build.shor_code(args.D) if args.component == "shor" else _two_qubit_component()
        info.update(D=args.D, component=args.component)
        return build.asymmetric_product(comp, comp), info
    if fam == "symmetric":
        comp = build.shor_code(args.D) if args.component == "shor" else _two_qubit_component()
        info.update(component=args.component)
        return build.symmetric_product(comp, comp, comp, comp), info
    if fam == "dfold":
        comp = build.shor_code(3) if args.component == "shor" else _two_qubit_component()
        info.update(D=args.D, component=args.component)
        return build.dfold_product([comp] * (args.D * args.D), args.D), info
    if fam == "bicycle":
        spec = zoo.BicycleSpec(args.n, args.row_weight, args.k, seed=args.seed)
        info.update(n=args.n, row_weight=args.row_weight, k=args.k)
        return zoo.bicycle(spec), info
    if fam == "hpc":
        return zoo.hypergraph_product(zoo.hpc_seed_matrix()), info
    if fam == "tanner":
        return zoo.quantum_tanner(), info
    if fam == "random-css":
        info.update(n=args.n, r=args.r)
        return zoo.random_css(args.n, args.r, seed=args.seed), info
    raise UsageError(f"unknown family {fam!r}")


def load_code(prefix: str) -> CssCode:
    hx = bitlin.read_alist(prefix + ".hx.alist")
    hz = bitlin.read_alist(prefix + ".hz.alist")
    return new_css(hx, hz)


def _resolve_code(args) -> tuple[CssCode, dict]:
    if getattr(args, "load", None):
        return load_code(args.load), {"family": "file", "seed": 0}
    if not getattr(args, "code_family", None):
        raise UsageError("provide --code-family or --load")
    return build_code(args)


def _print_stats(code: CssCode) -> None:
    st = stats(code)
    print(f"[[{st.n},{st.k}]]")
    print(
        f"mx={st.mx} mz={st.mz} meta_x={st.meta_x} meta_z={st.meta_z} "
        f"wr_x={st.wr_x} wr_z={st.wr_z} wc_x={st.wc_x} wc_z={st.wc_z}"
    )


def cmd_construct(args) -> int:
    code, info = _resolve_code(args)
    _print_stats(code)
    if args.out:
        bitlin.write_alist(code.hx, args.out + ".hx.alist")
        bitlin.write_alist(code.hz, args.out + ".hz.alist")
        with open(args.out + ".meta.txt", "w") as fh:
            fh.write(f"n={code.n}\n")
            for k, v in info.items():
                fh.write(f"{k}={v}\n")
        print(f"wrote {args.out}.hx.alist {args.out}.hz.alist {args.out}.meta.txt")
    return 0


def cmd_params(args) -> int:
    code, _ = _resolve_code(args)
    _print_stats(code)
    if args.code_family == "spc":
        pred = build.predict_spc_stats(build.SpcParams(args.D, args.s))
        print(
            f"predicted: n={pred.n} k={pred.k} m={pred.mx} meta={pred.meta_x} "
            f"wr={pred.wr_x} wc={pred.wc_x} d={pred.delta_x}"
        )
    return 0


def cmd_distance(args) -> int:
    code, _ = _resolve_code(args)
    if args.witness_only:
        if args.code_family != "spc":
            raise UsageError("--witness-only applies to the spc family")
        w, v = build.spc_logical_witnesses(build.SpcParams(args.D, args.s))
        pw = PauliVector.from_xz(w, np.zeros_like(w))
        ok = is_logical_failure(code, pw)
        print(f"witness weight {int(w.sum())} logical: {ok}")
        return 0 if ok else 2
    rep = search_min_logical(code, args.max_weight)
    if rep.found_weight is None:
        print(f"d >= {args.max_weight + 1} (no logical error up to {args.max_weight})")
        return 3
    print(
        f"d = {rep.found_weight} (multiplicities X={rep.multiplicity_x} "
        f"Y={rep.multiplicity_y} Z={rep.multiplicity_z})"
    )
    return 0


def cmd_metacheck(args) -> int:
    code, _ = _resolve_code(args)
    minimum, actual, pct = meta.measurement_overhead(code)
    print(f"measurements: minimum={minimum} actual={actual} overhead={100 * pct:.2f}%")
    if args.code_family == "spc" and args.D == 3 and not args.generic:
        mcx = meta.spc3_metacheck(args.s, "x")
        mcz = meta.spc3_metacheck(args.s, "z")
    else:
        mcx = meta.metacheck_from_pcm(code.hx)
        mcz = meta.metacheck_from_pcm(code.hz)
    print(f"meta-check rows: x={mcx.matrix.rows} z={mcz.matrix.rows}")
    if args.certify:
        for name, mc, h in (("x", mcx, code.hx), ("z", mcz, code.hz)):
            if not mc.matrix.mul(h).is_zero():
                print(f"sector {name}: M @ H != 0")
                return 2
            ok = _certify_weight2(mc.matrix)
            wmin = int(h.to_bits().sum(axis=0).min())
            print(
                f"sector {name}: M@H=0, no kernel vector of weight <= 2 "
                f"({'pass' if ok else 'FAIL'}), min column weight {wmin}"
            )
            if not ok:
                return 2
    if args.out:
        bitlin.write_alist(mcx.matrix, args.out + ".mx.alist")
        bitlin.write_alist(mcz.matrix, args.out + ".mz.alist")
        print(f"wrote {args.out}.mx.alist {args.out}.mz.alist")
    return 0


def _certify_weight2(m: bitlin.BitMatrix) -> bool:
    """Exhaustive check that no vector of weight 1 or 2 is in ker(M)."""
    cols = m.to_bits().T
    if not cols.any(axis=1).all():
        return False
    packed = bitlin.pack_rows(np.ascontiguousarray(cols))
    seen = set()
    for i in range(packed.shape[0]):
        key = packed[i].tobytes()
        if key in seen:
            return False
        seen.add(key)
    return True


def cmd_simulate(args) -> int:
    code, info = _resolve_code(args)
    if args.channel == "erasure":
        values = args.beta
        if not values:
            raise UsageError("erasure channel needs at least one --beta")
        channels = [sim.erasure(b) for b in values]
    else:
        values = args.epsilon
        if not values:
            raise UsageError("depolarizing channel needs at least one --epsilon")
        if args.decoder == "bp-extended":
            channels = [sim.depolarizing_readout(e, args.p) for e in values]
        else:
            channels = [sim.depolarizing(e) for e in values]

    metachecks = None
    if args.decoder == "bp-extended":
        if args.code_family == "spc" and args.D == 3:
            metachecks = (
                meta.spc3_metacheck(args.s, "x"),
                meta.spc3_metacheck(args.s, "z"),
            )
        else:
            metachecks = (
                meta.metacheck_from_pcm(code.hx),
                meta.metacheck_from_pcm(code.hz),
            )

    points = []
    name = info.get("family", "code")
    for ch in channels:
        cfg = None
        if args.decoder in ("bp", "bp-extended"):
            cfg = BpConfig(
                epsilon=ch.epsilon,
                p_readout=ch.p,
                max_iters=args.max_iters,
            )
        pt = sim.run_point(
            code,
            args.decoder,
            ch,
            args.trials,
            args.seed,
            cfg=cfg,
            metachecks=metachecks,
            jobs=args.jobs,
        )
        points.append(pt)
        print(sim.format_csv_row(name, pt))
    if args.out:
        sim.write_csv(args.out, name, points)
        print(f"wrote {args.out}")
    return 0


def _add_family_args(p: _Parser) -> None:
    p.add_argument("--code-family", choices=FAMILIES)
    p.add_argument("--load", help="prefix of .hx.alist/.hz.alist files")
    p.add_argument("--D", type=int, default=3)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--component", choices=("xxzz", "shor"), default="xxzz")
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--r", type=int, default=169)
    p.add_argument("--k", type=int, default=174)
    p.add_argument("--row-weight", type=int, default=8)


def make_parser() -> _Parser:
    top = _Parser(prog="prodcss", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and write alist files")
    _add_family_args(p)
    p.add_argument("--out", help="output path prefix")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("params", help="print code parameters")
    _add_family_args(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("distance", help="exact low-weight distance search")
    _add_family_args(p)
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--witness-only", action="store_true")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("metacheck", help="meta-check analysis")
    _add_family_args(p)
    p.add_argument("--generic", action="store_true")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--out", help="output path prefix for meta-check alists")
    p.set_defaults(func=cmd_metacheck)

    p = sub.add_parser("simulate", help="Monte Carlo logical error rates")
    _add_family_args(p)
    p.add_argument("--decoder", choices=sim.DECODERS, required=True)
    p.add_argument("--channel", choices=("erasure", "depolarizing"), required=True)
    p.add_argument("--beta", type=float, action="append", default=[])
    p.add_argument("--epsilon", type=float, action="append", default=[])
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--max-iters", type=int, default=64)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_simulate)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
