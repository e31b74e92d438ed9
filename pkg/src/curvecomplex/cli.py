"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 an
enumeration bound was exhausted (the stage is named on stderr).

Reports go to stdout as JSON with sorted keys, so reruns with the same
arguments print the same bytes.  Timings are left out unless asked for.
Figures are written only when ``--plot`` names a file.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import format_report, historical_table, vcd_bounds
from .certificates import CONSTANT, HomotopyCertificate, check_certificate
from .complexes import CurveBall, build_curve_complex, build_ht_graph, enumerate_cells
from .curves import make_curve
from .errors import BoundExhausted, CertificateError, CurveComplexError
from .jmap import c_prime, verify_lemma5
from .loops import complete_to_cut_system, reduce_loop
from .simplicial import connected_components, dimension, sort_key
from .triangulation import Triangulation, build_standard_triangulation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
CERT_FORMAT = "curvecomplex-certificates/1"


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _emit(obj) -> None:
    sys.stdout.write(_dump(obj) + "\n")


def _surface(g: int) -> Triangulation:
    if g < 1:
        raise UsageError(f"genus must be at least 1, got {g}")
    return build_standard_triangulation(g)


# -- certificate files ------------------------------------------------------------


def encode_vertex(v):
    """A vertex of C' (a set of classes) as a sorted list of coordinate lists."""
    return sorted(list(c.coords) for c in v)


def decode_vertex(T: Triangulation, data) -> frozenset:
    return frozenset(make_curve(T, tuple(int(x) for x in coords)) for coords in data)


def encode_loop(loop):
    return [encode_vertex(v) for v in loop]


def certificate_entry(name: str, source, target, cert: HomotopyCertificate) -> dict:
    return {
        "name": name,
        "source": encode_loop(source),
        "target": CONSTANT if target in (None, CONSTANT) else encode_loop(target),
        "moves": cert.to_json(encode_vertex),
    }


def write_certificates(path: str, genus: int, entries: list) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dump({"format": CERT_FORMAT, "genus": genus, "complex": "C'",
                        "certificates": entries}) + "\n")


def replay_certificates(data: dict) -> list[dict]:
    """Check every certificate in a loaded file; one result dict per entry."""
    if data.get("format") != CERT_FORMAT:
        raise UsageError("not a certificate file")
    T = _surface(int(data["genus"]))
    ball = CurveBall(T, 0, classes=[])
    K = c_prime(ball)
    curves = {}

    def decode(v):
        key = tuple(tuple(int(x) for x in coords) for coords in v)
        for coords in key:
            if coords not in curves:
                curves[coords] = make_curve(T, coords)
        return frozenset(curves[coords] for coords in key)

    out = []
    for entry in data["certificates"]:
        res = {"name": entry.get("name", ""), "moves": len(entry["moves"])}
        try:
            source = [decode(v) for v in entry["source"]]
            target = entry["target"]
            if target != CONSTANT:
                target = [decode(v) for v in target]
            cert = HomotopyCertificate.from_json(entry["moves"], decode)
            check_certificate(K, source, target, cert)
            res["ok"] = True
        except CertificateError as exc:
            res.update(ok=False, index=exc.index, reason=exc.reason)
        except (CurveComplexError, KeyError, TypeError, ValueError) as exc:
            res.update(ok=False, index=-1, reason=f"malformed entry: {exc}")
        out.append(res)
    return out


# -- commands ---------------------------------------------------------------------


def cmd_surface(args) -> int:
    T = _surface(args.genus)
    text = T.dumps() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_complex(args) -> int:
    T = _surface(args.genus)
    if args.weight < 0:
        raise UsageError("weight must be non-negative")
    ball = CurveBall(T, args.weight)
    K = build_curve_complex(T, ball.classes, ball)
    f = K.f_vector()
    report = {
        "genus": args.genus,
        "weight": args.weight,
        "vertices": len(K.vertices),
        "separating": sum(1 for c in ball.classes if ball.separating(c)),
        "edges": f[1] if len(f) > 1 else 0,
        "simplices": len(K.simplices) - 1,
        "f_vector": f,
        "dimension": dimension(K),
        "components": len(connected_components(K)),
    }
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(K.to_dot("C"))
    if args.plot:
        from .plotting import plot_curve_complex
        plot_curve_complex(K, ball, args.plot)
    _emit(report)
    return EXIT_OK


def _ht_graph(args):
    T = _surface(args.genus)
    if args.weight < 0 or args.radius < 0:
        raise UsageError("weight and radius must be non-negative")
    ball = CurveBall(T, args.weight)
    try:
        base = complete_to_cut_system(ball, [], stage="base_cut_system")
    except BoundExhausted:
        return T, ball, None, None
    return T, ball, base, build_ht_graph(T, base, args.radius, ball=ball)


def cmd_ht(args) -> int:
    T, ball, base, G = _ht_graph(args)
    report = {"genus": args.genus, "weight": args.weight, "radius": args.radius,
              "vertices": 0, "edges": 0}
    if G is not None:
        report.update(vertices=len(G.vertices), edges=len(G.edges),
                      base=[list(c.coords) for c in sorted(base, key=sort_key)])
        if args.cells:
            cells = enumerate_cells(G, max_len=args.max_len)
            counts = {}
            for _, ct in cells:
                counts[ct.kind] = counts.get(ct.kind, 0) + 1
            report["cells"] = {k: counts.get(k, 0) for k in ("I", "II", "III")}
        if args.json_out:
            with open(args.json_out, "w", encoding="utf-8") as fh:
                fh.write(G.dumps() + "\n")
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(G.to_dot())
        if args.plot:
            from .plotting import plot_ht_graph
            plot_ht_graph(G, args.plot)
    elif args.cells:
        report["cells"] = {"I": 0, "II": 0, "III": 0}
    _emit(report)
    return EXIT_OK


def cmd_verify_cells(args) -> int:
    T, ball, _, G = _ht_graph(args)
    if G is None:
        _emit({"genus": args.genus, "counts": {}, "all_accepted": True, "failures": [],
               "certificate_moves": 0})
        return EXIT_OK
    enumerate_cells(G, max_len=args.max_len)
    aux = CurveBall(T, args.aux_weight) if args.aux_weight else None
    rep = verify_lemma5(G, aux_ball=aux)
    out = {k: rep[k] for k in ("counts", "all_accepted", "failures", "certificate_moves")}
    out.update(genus=args.genus, weight=args.weight, radius=args.radius,
               vertices=len(G.vertices), edges=len(G.edges))
    if args.cert:
        index = {v: k for k, v in enumerate(G.vertices)}
        entries = [certificate_entry(f"type {r.kind} cell " + "-".join(str(index[v]) for v in r.cycle),
                                     r.source, CONSTANT, r.certificate)
                   for r in rep["results"] if r.accepted]
        write_certificates(args.cert, args.genus, entries)
    if args.plot:
        from .plotting import plot_cell_report
        plot_cell_report(rep["counts"], args.plot)
    _emit(out)
    return EXIT_OK if rep["all_accepted"] else EXIT_FAIL


def _load_loop(path: str, genus: int | None):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, list):
        data = {"loop": data}
    g = data.get("genus", genus)
    if g is None:
        raise UsageError("the loop file has no genus and --genus was not given")
    if genus is not None and g != genus:
        raise UsageError(f"loop file is for genus {g}, not {genus}")
    T = _surface(int(g))
    try:
        loop = [make_curve(T, tuple(int(x) for x in c)) for c in data["loop"]]
    except (CurveComplexError, ValueError, TypeError) as exc:
        raise UsageError(f"bad loop: {exc}") from exc
    return T, loop


def cmd_reduce(args) -> int:
    T, loop = _load_loop(args.loop, args.genus)
    ball = CurveBall(T, args.weight)
    for a, b in zip(loop, loop[1:] + loop[:1]):
        if len(loop) > 1 and (a == b or ball.i(a, b) != 0):
            raise UsageError("consecutive classes of the loop must be distinct and disjoint")
    red = reduce_loop(loop, ball, check_capping=args.check_capping)
    report = json.loads(_dump(red.report))
    if not args.timings:
        for st in report.get("stages", {}).values():
            st.pop("seconds", None)
    out = {
        "genus": T.genus,
        "weight": args.weight,
        "beta": [[[list(c.coords) for c in sorted(Z, key=sort_key)] for Z in sorted(v, key=sort_key)]
                 for v in red.beta],
        "target": CONSTANT if red.target == CONSTANT else encode_loop(red.target),
        "report": report,
    }
    if args.cert:
        write_certificates(args.cert, T.genus,
                           [certificate_entry("reduction", red.source, red.target, red.certificate)])
    if args.plot:
        from .plotting import plot_reduction
        plot_reduction(red.report, args.plot)
    _emit(out)
    return EXIT_OK if red.report.get("verified") else EXIT_FAIL


def cmd_verify_cert(args) -> int:
    try:
        with open(args.cert, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read certificate file: {exc}") from exc
    results = replay_certificates(data)
    ok = all(r["ok"] for r in results)
    _emit({"certificates": results, "all_ok": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bounds(args) -> int:
    try:
        rep = vcd_bounds(args.genus, args.connectivity)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        _emit({"report": rep.to_json(),
               "table": [r.__dict__ for r in historical_table(args.genus)]})
    else:
        sys.stdout.write(format_report(rep))
    if args.plot:
        from .plotting import plot_bounds
        plot_bounds(max(args.genus, 10), args.connectivity, args.plot)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvecomplex", description="Curve complexes, cut systems and homotopy certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("surface", help="standard one-vertex triangulation as JSON")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_surface)

    s = sub.add_parser("complex", help="enumerated ball of the curve complex")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--dot")
    s.add_argument("--plot")
    s.set_defaults(func=cmd_complex)

    def ht_args(s):
        s.add_argument("--genus", type=int, required=True)
        s.add_argument("--radius", type=int, required=True)
        s.add_argument("--weight", type=int, required=True)
        s.add_argument("--max-len", type=int, default=5)
        s.add_argument("--plot")

    s = sub.add_parser("ht", help="ball of the cut-system graph")
    ht_args(s)
    s.add_argument("--cells", action="store_true")
    s.add_argument("--dot")
    s.add_argument("--json-out")
    s.set_defaults(func=cmd_ht)

    s = sub.add_parser("verify-cells", help="certify the J-image of every enumerated cell")
    ht_args(s)
    s.add_argument("--aux-weight", type=int, default=0)
    s.add_argument("--cert")
    s.set_defaults(func=cmd_verify_cells)

    s = sub.add_parser("reduce", help="reduce a loop of classes to the J-image of a cut-system loop")
    s.add_argument("--loop", required=True)
    s.add_argument("--genus", type=int)
    s.add_argument("--weight", type=int, default=12)
    s.add_argument("--cert")
    s.add_argument("--check-capping", action="store_true")
    s.add_argument("--timings", action="store_true")
    s.add_argument("--plot")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("verify-cert", help="replay a certificate file")
    s.add_argument("--cert", required=True)
    s.set_defaults(func=cmd_verify_cert)

    s = sub.add_parser("bounds", help="vcd bound arithmetic")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--connectivity", type=int, default=2)
    s.add_argument("--json", action="store_true")
    s.add_argument("--plot")
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BoundExhausted as exc:
        sys.stderr.write(f"BOUND_EXHAUSTED stage={exc.stage} {exc.detail}\n")
        return EXIT_BOUND
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
