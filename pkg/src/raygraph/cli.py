"""Command line entry point. Reports go to stdout as JSON, summaries to stderr."""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import acceptance
from .coding import CodeParseError, RayCode, alpha, gamma, max_index, parse_code
from .graphs import LOOP, RAY, build_slice, delta_sample, distance, enumerate_codes, qi_check
from .mcg import apply, parse_moves
from .model import AlphabetError, WindowError, canonical, crossing_counts
from .qm import AxisSegment, MorseConfig, homogenize, q_w
from .unicorn import OrientedLoop, check_thin_triangle, unicorn_path


def code(text: str):
    return parse_code(text)


def _segment(text: str) -> AxisSegment:
    a, _, b = text.partition("..")
    a, b = int(a), int(b)
    return AxisSegment(min(a, b), max(a, b), a <= b)


def _oriented(text: str) -> OrientedLoop:
    rev = text.startswith("-")
    return OrientedLoop(parse_code(text.lstrip("+-"), loop=True), rev)


def _emit(args, report, text=None):
    if args.json or text is None:
        print(json.dumps(report, default=str))
    else:
        print(text)


def cmd_gen(args):
    c = alpha(args.alpha) if args.alpha is not None else gamma(args.gamma)
    _emit(args, {"code": str(c), "letters": len(c.word)}, str(c))


def cmd_canon(args):
    c = canonical(args.code)
    _emit(args, {"input": str(args.code), "canonical": str(c)}, str(c))


def cmd_act(args):
    mc = parse_moves(args.moves)
    out = apply(mc, args.code)
    _emit(args, {"moves": str(mc), "input": str(args.code), "image": str(out)}, str(out))


def cmd_intersect(args):
    geom, fwd = crossing_counts(args.c1, args.c2)
    report = {"c1": str(args.c1), "c2": str(args.c2), "I": geom}
    text = str(geom)
    if args.signed:
        bwd = crossing_counts(args.c2, args.c1)[1]
        report.update({"forward": fwd, "backward": bwd})
        text = f"I = {geom}, forward {fwd}, backward {bwd}"
    _emit(args, report, text)


def cmd_distance(args):
    kind = RAY if isinstance(args.c1, RayCode) else LOOP
    N = max(args.N, 1 + max_index([args.c1, args.c2]))
    sl = build_slice(kind, args.L, N, [args.c1, args.c2])
    cert = distance(sl, args.c1, args.c2)
    print(f"{kind} slice L={args.L} N={N}: {len(sl.vertices)} vertices, {sl.n_edges} edges", file=sys.stderr)
    print(cert.to_json())


def cmd_unicorn(args):
    a, b = args.l1, args.l2
    if args.via is not None:
        d = args.via
    else:
        codes, _ = enumerate_codes(LOOP, args.L, args.N)
        d = OrientedLoop(random.Random(args.seed).choice(codes))
    path = unicorn_path(a, b)
    report = {"a": str(a), "b": str(b), "path": [str(c) for c in path.vertices],
              "thin_triangle": check_thin_triangle(a, b, d)}
    print(f"path of {len(path)} vertices, thin: {report['thin_triangle']['thin']}", file=sys.stderr)
    print(json.dumps(report))


def cmd_qi_check(args):
    pool = build_slice(RAY, args.L, args.N).vertices
    rng = random.Random(args.seed)
    pairs = [tuple(rng.sample(pool, 2)) for _ in range(args.pairs)]
    r = qi_check(pairs)
    print(f"certified {r['certified']}, undecided {r['undecided']}, violations {r['violations']}",
          file=sys.stderr)
    print(json.dumps(r))
    return 1 if r["violations"] or r["companion_violations"] else 0


def cmd_delta(args):
    sl = build_slice(LOOP, args.L, args.N)
    r = delta_sample(sl, args.triangles, args.seed)
    print(f"max thinness {r['max_thinness']} over {r['triangles']} triangles", file=sys.stderr)
    print(json.dumps(r))


def cmd_qm(args):
    mc = parse_moves(args.moves)
    cfg = MorseConfig(args.B)
    if args.homogenize:
        r = homogenize(mc, args.w, args.p, args.homogenize, cfg=cfg)
    else:
        r = q_w(mc, args.w, args.p, cfg=cfg)
    print(json.dumps(r, default=str))


def cmd_verify(args):
    only = args.only.split(",") if args.only else None
    rows = acceptance.run_all(only, log=lambda s: print(s, file=sys.stderr))
    print(json.dumps(rows, default=str))
    return 0 if all(r["ok"] for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--L", type=int, default=4, help="slice length bound")
    common.add_argument("--N", type=int, default=2, help="slice index bound")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--B", type=int, default=1, help="Morse parameter")
    common.add_argument("--json", action="store_true", help="JSON even for one-line results")

    p = argparse.ArgumentParser(prog="raygraph")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("gen", parents=[common], help="print alpha_k or gamma_k")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--alpha", type=int)
    grp.add_argument("--gamma", type=int)
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("canon", parents=[common], help="canonical form of a code")
    s.add_argument("code", type=code)
    s.set_defaults(fn=cmd_canon)

    s = sub.add_parser("act", parents=[common], help="image of a code under a move word")
    s.add_argument("moves")
    s.add_argument("code", type=code)
    s.set_defaults(fn=cmd_act)

    s = sub.add_parser("intersect", parents=[common], help="intersection counts")
    s.add_argument("--signed", action="store_true")
    s.add_argument("c1", type=code)
    s.add_argument("c2", type=code)
    s.set_defaults(fn=cmd_intersect)

    s = sub.add_parser("distance", parents=[common], help="distance certificate in a slice")
    s.add_argument("c1", type=code)
    s.add_argument("c2", type=code)
    s.set_defaults(fn=cmd_distance)

    s = sub.add_parser("unicorn", parents=[common], help="unicorn path and thin-triangle report")
    s.add_argument("l1", type=_oriented, help="loop code, prefix '-' to reverse")
    s.add_argument("l2", type=_oriented)
    s.add_argument("--via", type=_oriented, help="third loop for the triangle (default: seeded sample)")
    s.set_defaults(fn=cmd_unicorn)

    s = sub.add_parser("qi-check", parents=[common], help="ray/loop quasi-isometry bounds")
    s.add_argument("--pairs", type=int, default=100)
    s.set_defaults(fn=cmd_qi_check)

    s = sub.add_parser("delta", parents=[common], help="thin-triangle sampling in a loop slice")
    s.add_argument("--triangles", type=int, default=200)
    s.set_defaults(fn=cmd_delta)

    s = sub.add_parser("qm", parents=[common], help="counting quasimorphism of a move word")
    s.add_argument("moves")
    s.add_argument("--w", type=_segment, default=AxisSegment(0, 2), help="axis segment a..b")
    s.add_argument("--p", type=code, default=alpha(0), help="base ray")
    s.add_argument("--homogenize", type=int, default=0, metavar="N")
    s.set_defaults(fn=cmd_qm)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    s.add_argument("--only", help="comma separated criterion numbers")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args) or 0
    except (CodeParseError, WindowError, AlphabetError, ValueError) as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
