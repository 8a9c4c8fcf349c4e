"""Command-line frontend.

Exit codes: 0 success, 1 verified-negative result (no solution, no
homomorphism, rejected code), 2 usage or input error, 3 budget or timeout
exhaustion.  Every search result is written beside a replayable
certificate which `check-cert` re-verifies from first principles.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
import time

from .certs import (
    check_certificate,
    code_certificate,
    coloring_certificate,
    homomorphism_certificate,
    hypergraph_coloring_certificate,
    ic_certificate,
)
from .errors import BudgetExhausted, NetgapError
from .gaplab import (
    Extremal,
    gap_exact,
    gap_formulas,
    gap_table_rows,
    psi,
    qs_exact,
    qv_exact,
)
from .graphs import ugraph_from_json, ugraph_to_json
from .lincode import code_from_json, code_to_json, search_solution, verify_solution
from .mdsic import (
    ic_from_json,
    ic_is_valid,
    ic_max_size,
    ic_size_bound,
    ic_to_json,
    linear_code_to_json,
    min_distance,
    rs_code,
)
from .networks import (
    build_combination,
    build_kneser,
    extend_messages,
    network_from_json,
    network_to_dot,
    network_to_json,
    parallelize,
)
from .qkneser import (
    DEFAULT_BUDGET,
    build_qkneser,
    build_qkneser_hyper,
    canonical_coloring,
    chromatic_number,
    find_homomorphism,
)
from .skeleton import reverse_skeleton, skeleton, skeleton_to_dot, skeleton_to_json

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _read_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _write_json(path: str, obj: dict) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _emit(args, obj: dict, human: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(human)


def _write_output(args, obj: dict, human: str) -> None:
    if getattr(args, "output", None):
        _write_json(args.output, obj)
        print(f"wrote {args.output}")
    else:
        _emit(args, obj, human)


def _qkneser_graph_json(g) -> dict:
    obj = ugraph_to_json(g)
    if g.labels is not None:
        obj["labels"] = {
            str(i): [list(row) for row in s.basis.row_list()] for i, s in enumerate(g.labels)
        }
    return obj


def _named_colors(g, coloring: dict) -> dict:
    names = g.names or tuple(str(v) for v in range(g.num_vertices))
    return {names[v]: c for v, c in coloring.items()}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    if args.what in ("comb", "kneser") and len(args.params) != 3:
        raise ValueError(f"build {args.what} needs exactly three parameters")
    if args.what == "comb":
        net = build_combination(args.params[0], args.params[1], args.params[2])
    elif args.what == "kneser":
        q, t, h = args.params
        mode = "implicit" if args.implicit else "materialized"
        built = build_kneser(q, t, h, mode, max_terminal_scan=args.max_subspaces)
        if args.implicit:
            sample = [list(s) for s in built.stream_terminals(10)]
            obj = {
                "kind": "kneser-implicit",
                "q": q,
                "t": t,
                "h": h,
                "middle_nodes": len(built.middles),
                "terminal_rule": "h-subsets of middle labels summing to F_q^{ht}",
                "sample_terminals": sample,
            }
            _write_output(args, obj, f"implicit K_{{{q},{t};{h}}}: {len(built.middles)} middle nodes")
            return EXIT_OK
        net = built
    elif args.what == "from-graph":
        if not args.graph:
            raise ValueError("build from-graph needs --graph")
        net = reverse_skeleton(ugraph_from_json(_read_json(args.graph)))
    elif args.what == "extend":
        if not args.network or args.messages is None:
            raise ValueError("build extend needs --network and --messages")
        net = extend_messages(network_from_json(_read_json(args.network)), args.messages)
    elif args.what == "parallelize":
        if not args.network or args.factor is None:
            raise ValueError("build parallelize needs --network and --factor")
        net = parallelize(network_from_json(_read_json(args.network)), args.factor)
    elif args.what == "prune":
        if not args.network:
            raise ValueError("build prune needs --network")
        from .networks import prune, validate_network

        net = prune(network_from_json(_read_json(args.network), validate=False))
        validate_network(net)
    else:
        raise ValueError(f"unknown build target {args.what!r}")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(network_to_dot(net))
    _write_output(
        args,
        network_to_json(net),
        f"network: {len(net.nodes)} nodes, {len(net.edges)} edges, "
        f"{len(net.terminals)} terminals, h={net.h}",
    )
    return EXIT_OK


def cmd_skeleton(args) -> int:
    net = network_from_json(_read_json(args.network))
    skel = skeleton(net)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(skeleton_to_dot(skel))
    if args.dimacs:
        from .graphs import ugraph_to_dimacs

        with open(args.dimacs, "w") as fh:
            fh.write(ugraph_to_dimacs(skel.graph))
    classes = {cid: sorted(m) for cid, m in skel.classes.items()}
    human = [f"skeleton: {skel.graph.num_vertices} classes, {len(skel.graph.edges)} edges"]
    for cid in skel.class_ids:
        human.append(f"  {cid}: {{{', '.join(classes[cid])}}}")
    _write_output(args, skeleton_to_json(skel), "\n".join(human))
    return EXIT_OK


def _chi_target(args):
    if not (args.qkneser or args.qkneser_hyper or args.graph):
        raise ValueError("chi needs --graph, --qkneser, or --qkneser-hyper")
    if args.qkneser:
        q, n, m = args.qkneser
        g = build_qkneser(q, n, m, limit=args.max_subspaces)
        return g, None, f"qK_{{{n}:{m}}} over F_{q}"
    if args.qkneser_hyper:
        q, t, h = args.qkneser_hyper
        hyper = build_qkneser_hyper(q, t, h, limit=args.max_subspaces)
        return hyper.co_occurrence(), hyper, f"qK^{h}_{{{h * t}:{t}}} over F_{q}"
    g = ugraph_from_json(_read_json(args.graph))
    return g, None, args.graph


def cmd_chi(args) -> int:
    target, hyper, desc = _chi_target(args)
    if args.dimacs:
        from .graphs import ugraph_to_dimacs

        with open(args.dimacs, "w") as fh:
            fh.write(ugraph_to_dimacs(target))
    res = chromatic_number(target, args.budget)
    if hyper is not None:
        cert = hypergraph_coloring_certificate(
            hyper.num_vertices, hyper.hyperedges, res.coloring, context=desc
        )
    else:
        cert = coloring_certificate(
            _qkneser_graph_json(target), _named_colors(target, res.coloring), context=desc
        )
    _write_json(args.cert, cert)
    if res.exact:
        _emit(
            args,
            {"chi": res.chi, "exact": True, "certificate": args.cert},
            f"chi({desc}) = {res.chi}\ncoloring certificate: {args.cert}",
        )
        return EXIT_OK
    _emit(
        args,
        {"chi_lower": res.lo, "chi_upper": res.hi, "exact": False, "certificate": args.cert},
        f"chi({desc}) in [{res.lo}, {res.hi}] (budget exhausted)\nbest coloring: {args.cert}",
    )
    return EXIT_BUDGET


def cmd_hom(args) -> int:
    g1 = ugraph_from_json(_read_json(args.source))
    if args.to_qkneser:
        q, n, m = args.to_qkneser
        g2 = build_qkneser(q, n, m, limit=args.max_subspaces)
        desc2 = f"qK_{{{n}:{m}}} over F_{q}"
    elif args.to_complete:
        from .graphs import complete_graph

        g2 = complete_graph(args.to_complete)
        desc2 = f"K_{args.to_complete}"
    elif args.target:
        g2 = ugraph_from_json(_read_json(args.target))
        desc2 = args.target
    else:
        raise ValueError("hom needs --to, --to-qkneser, or --to-complete")
    try:
        phi = find_homomorphism(g1, g2, args.budget)
    except BudgetExhausted:
        _emit(args, {"status": "unknown"}, "undecided: budget exhausted")
        return EXIT_BUDGET
    if phi is None:
        _emit(
            args,
            {"status": "nonexistent"},
            f"no homomorphism into {desc2} (complete search)",
        )
        return EXIT_NEGATIVE
    names1 = g1.names or tuple(str(v) for v in range(g1.num_vertices))
    names2 = g2.names or tuple(str(v) for v in range(g2.num_vertices))
    cert = homomorphism_certificate(
        ugraph_to_json(g1),
        ugraph_to_json(g2),
        {names1[v]: names2[w] for v, w in phi.items()},
        context=f"{args.source} -> {desc2}",
    )
    _write_json(args.cert, cert)
    _emit(
        args,
        {"status": "found", "certificate": args.cert},
        f"homomorphism found; certificate: {args.cert}",
    )
    return EXIT_OK


def cmd_coloring(args) -> int:
    q, n, m = args.qkneser
    colors = canonical_coloring(q, n, m, limit=args.max_subspaces)
    g = build_qkneser(q, n, m, limit=args.max_subspaces)
    cert = coloring_certificate(
        _qkneser_graph_json(g),
        _named_colors(g, colors),
        context=f"canonical coloring of qK_{{{n}:{m}}} over F_{q}",
    )
    _write_json(args.cert, cert)
    used = len(set(colors.values()))
    _emit(
        args,
        {"num_colors": used, "certificate": args.cert},
        f"canonical coloring uses {used} colors; certificate: {args.cert}",
    )
    return EXIT_OK


def cmd_solve(args) -> int:
    net = network_from_json(_read_json(args.network))
    try:
        code = search_solution(net, args.q, args.t, args.budget)
    except BudgetExhausted:
        _emit(args, {"status": "unknown"}, "undecided: budget exhausted")
        return EXIT_BUDGET
    if code is None:
        _emit(
            args,
            {"status": "nonexistent"},
            f"no ({args.q},{args.t})-linear solution (complete search)",
        )
        return EXIT_NEGATIVE
    cert = code_certificate(network_to_json(net), code_to_json(code), context=args.network)
    _write_json(args.cert, cert)
    _emit(
        args,
        {"status": "found", "certificate": args.cert},
        f"solution found; certificate: {args.cert}",
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    net = network_from_json(_read_json(args.network))
    code = code_from_json(_read_json(args.code))
    verdict = verify_solution(net, code)
    nt = net.h * code.t
    lines = [f"{'terminal':<16} rank (need {nt})"]
    for term, r in verdict.terminal_ranks.items():
        lines.append(f"{term:<16} {r}")
    lines.append("ACCEPT" if verdict.ok else f"REJECT: {verdict.failure}")
    _emit(
        args,
        {"accept": verdict.ok, "terminal_ranks": verdict.terminal_ranks, "failure": verdict.failure},
        "\n".join(lines),
    )
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


def cmd_mds(args) -> int:
    code = rs_code(args.q, args.r, args.h)
    d = min_distance(code)
    obj = linear_code_to_json(code)
    obj["distance"] = d
    if args.output:
        _write_json(args.output, obj)
    _emit(
        args,
        obj,
        f"[{args.r},{args.h},{d}]_{args.q} generator:\n"
        + "\n".join(str(list(row)) for row in code.generator.row_list()),
    )
    return EXIT_OK


def cmd_ic(args) -> int:
    if args.action in ("bound", "search") and None in (args.q, args.t, args.h, args.alpha):
        raise ValueError(f"ic {args.action} needs --q --t --h --alpha")
    if args.action == "bound":
        value = ic_size_bound(args.q, args.t, args.h, args.alpha)
        _emit(args, {"bound": value}, f"size bound: {value}")
        return EXIT_OK
    if args.action == "check":
        if not args.witness or args.alpha is None:
            raise ValueError("ic check needs --witness and --alpha")
        config = ic_from_json(_read_json(args.witness))
        ok = ic_is_valid(config, args.alpha)
        _emit(
            args,
            {"valid": ok, "size": len(config.members)},
            f"{'valid' if ok else 'INVALID'} configuration of size {len(config.members)}",
        )
        return EXIT_OK if ok else EXIT_NEGATIVE
    result = ic_max_size(args.q, args.t, args.h, args.alpha, args.budget, limit=args.max_subspaces)
    cert = ic_certificate(
        ic_to_json(result.witness),
        args.alpha,
        context=f"maximum ({args.t};{args.h},{args.alpha})_{args.q} configuration",
    )
    _write_json(args.cert, cert)
    obj = {
        "size": result.size,
        "bound": result.bound,
        "exact": result.exact,
        "certificate": args.cert,
    }
    human = (
        f"max size {'=' if result.exact else '>='} {result.size} "
        f"(proven bound {result.bound}); witness: {args.cert}"
    )
    _emit(args, obj, human)
    return EXIT_OK if result.exact else EXIT_BUDGET


def cmd_psi(args) -> int:
    value = psi(int(args.x)) if args.x == int(args.x) else psi(args.x)
    _emit(args, {"psi": value}, str(value))
    return EXIT_OK


def _certificate_from_extremal(net, extremal: Extremal) -> dict | None:
    payload = extremal.certificate
    if payload is None:
        return None
    kind = payload[0]
    if kind == "coloring":
        _, skel, res = payload
        return coloring_certificate(
            ugraph_to_json(skel.graph),
            _named_colors(skel.graph, res.coloring),
            context="skeleton coloring",
        )
    if kind == "code":
        code = payload[1]
        return code_certificate(network_to_json(net), code_to_json(code))
    if kind == "hom":
        _, skel, target, phi = payload
        names1 = skel.graph.names
        return homomorphism_certificate(
            ugraph_to_json(skel.graph),
            ugraph_to_json(target),
            {names1[v]: str(w) for v, w in phi.items()},
            context="skeleton into q-Kneser graph",
        )
    if kind == "ic":
        witness = payload[1]
        return ic_certificate(ic_to_json(witness), witness.h, context="vector solution as IC")
    return None


def _load_gap_network(args):
    if not (args.kneser or args.comb or args.network):
        raise ValueError("need --network, --kneser, or --comb")
    if args.kneser:
        q, t, h = args.kneser
        return build_kneser(q, t, h, max_terminal_scan=args.max_subspaces), f"K_{{{q},{t};{h}}}"
    if args.comb:
        h, r, s = args.comb
        return build_combination(h, r, s), f"N_{{{h},{r},{s}}}"
    net = network_from_json(_read_json(args.network))
    return net, args.network


def _extremal_json(e: Extremal) -> dict:
    if e.exact:
        return {"value": e.value, "method": e.method}
    return {"lower": e.lo, "upper": e.hi, "method": e.method}


def cmd_qs(args) -> int:
    net, desc = _load_gap_network(args)
    res = qs_exact(net, args.budget, method=args.method)
    cert = _certificate_from_extremal(net, res)
    if cert is not None:
        _write_json(args.cert, cert)
    if res.exact:
        _emit(
            args,
            {"q_s": res.value, "method": res.method, "certificate": args.cert if cert else None},
            f"q_s({desc}) = {res.value}  [{res.method}]",
        )
        return EXIT_OK
    _emit(
        args,
        {"q_s_lower": res.lo, "q_s_upper": res.hi, "method": res.method},
        f"q_s({desc}) in [{res.lo}, {res.hi}] (budget exhausted)",
    )
    return EXIT_BUDGET


def cmd_qv(args) -> int:
    net, desc = _load_gap_network(args)
    res = qv_exact(net, args.budget)
    cert = _certificate_from_extremal(net, res)
    if cert is not None:
        _write_json(args.cert, cert)
    if res.exact:
        _emit(
            args,
            {"q_v": res.value, "method": res.method, "certificate": args.cert if cert else None},
            f"q_v({desc}) = {res.value}  [{res.method}]",
        )
        return EXIT_OK
    _emit(
        args,
        {"q_v_lower": res.lo, "q_v_upper": res.hi, "method": res.method},
        f"q_v({desc}) in [{res.lo}, {res.hi}] (budget exhausted)",
    )
    return EXIT_BUDGET


def cmd_gap(args) -> int:
    net, desc = _load_gap_network(args)
    report = gap_exact(net, args.budget, description=desc)
    for label, extremal in (("qs", report.qs), ("qv", report.qv)):
        cert = _certificate_from_extremal(net, extremal)
        if cert is not None:
            _write_json(f"{args.cert_prefix}-{label}-cert.json", cert)
    if report.exact:
        _emit(
            args,
            {
                "network": desc,
                "q_v": report.qv.value,
                "q_s": report.qs.value,
                "gap": report.gap,
                "methods": report.methods,
            },
            f"{desc}: q_v={report.qv.value} q_s={report.qs.value} gap={report.gap}  [{report.methods}]",
        )
        return EXIT_OK
    lo, hi = report.gap
    _emit(
        args,
        {
            "network": desc,
            "q_v": _extremal_json(report.qv),
            "q_s": _extremal_json(report.qs),
            "gap_bracket": [lo, hi],
            "methods": report.methods,
        },
        f"{desc}: gap in [{lo}, {hi}] (budget exhausted; {report.methods})",
    )
    return EXIT_BUDGET


def cmd_formula(args) -> int:
    params = {}
    for assign in args.params:
        key, _, value = assign.partition("=")
        params[key] = int(value)
    res = gap_formulas(args.kind, **params)
    flag = "" if res.hypotheses_ok else "  [outside stated hypotheses]"
    _emit(
        args,
        {"kind": res.kind, "value": res.value, "hypotheses_ok": res.hypotheses_ok, "note": res.note},
        f"{res.kind}({', '.join(args.params)}) = {res.value}{flag}\n{res.note}",
    )
    return EXIT_OK


def cmd_gap_table(args) -> int:
    rows = gap_table_rows(
        qs=tuple(args.q), ts=tuple(args.t), exact_limit=args.exact_limit, budget=args.budget
    )
    header = "network,q_v,q_s,gap,methods,runtime"
    lines = [header]
    for row in rows:
        lines.append(
            f"{row['network']},{row['q_v']},{row['q_s']},{row['gap']},{row['methods']},{row['runtime_s']}"
        )
    csv_text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(csv_text)
        print(f"wrote {args.output}")
    else:
        print(csv_text, end="")
    return EXIT_OK


def cmd_check_cert(args) -> int:
    all_ok = True
    for path in args.certs:
        ok, message = check_certificate(_read_json(path))
        print(f"{path}: {'OK' if ok else 'FAIL'} - {message}")
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p, cert_default: str | None = None) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search-node budget")
    p.add_argument("--max-subspaces", type=int, default=10**6, help="enumeration limit")
    p.add_argument("--timeout-secs", type=float, default=None, help="wall-clock limit")
    p.add_argument("--seed", type=int, default=None, help="reserved; all algorithms deterministic")
    if cert_default is not None:
        p.add_argument("--cert", default=cert_default, help="certificate output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netgap",
        description="Scalar/vector network-coding solutions of combination networks: "
        "builders, exact searches, and gap certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a network")
    p.add_argument("what", choices=["comb", "kneser", "from-graph", "extend", "parallelize", "prune"])
    p.add_argument("params", type=int, nargs="*", help="comb: h r s | kneser: q t h")
    p.add_argument("--graph", help="undirected graph JSON (from-graph)")
    p.add_argument("--network", help="network JSON (extend/parallelize)")
    p.add_argument("--messages", type=int, help="new message count (extend)")
    p.add_argument("--factor", type=int, help="parallelization factor")
    p.add_argument("--implicit", action="store_true", help="implicit Kneser terminals")
    p.add_argument("-o", "--output", help="write network JSON here")
    p.add_argument("--dot", help="also write DOT here")
    _add_common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("skeleton", help="edge-class skeleton of a network")
    p.add_argument("--network", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--dot")
    p.add_argument("--dimacs")
    _add_common(p)
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("chi", help="exact chromatic number")
    p.add_argument("--graph", help="graph JSON")
    p.add_argument("--qkneser", type=int, nargs=3, metavar=("Q", "N", "M"))
    p.add_argument("--qkneser-hyper", type=int, nargs=3, metavar=("Q", "T", "H"))
    p.add_argument("--dimacs", help="also export the (co-occurrence) graph as DIMACS")
    _add_common(p, cert_default="chi-cert.json")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("hom", help="graph homomorphism search")
    p.add_argument("--from", required=True, help="source graph JSON", dest="source")
    p.add_argument("--to", help="target graph JSON", dest="target")
    p.add_argument("--to-qkneser", type=int, nargs=3, metavar=("Q", "N", "M"))
    p.add_argument("--to-complete", type=int, metavar="K")
    _add_common(p, cert_default="hom-cert.json")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("coloring", help="canonical q-Kneser coloring")
    p.add_argument("--qkneser", type=int, nargs=3, metavar=("Q", "N", "M"), required=True)
    _add_common(p, cert_default="coloring-cert.json")
    p.set_defaults(func=cmd_coloring)

    p = sub.add_parser("solve", help="exhaustive (q,t)-solution search")
    p.add_argument("--network", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    _add_common(p, cert_default="solution-cert.json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="verify a network code")
    p.add_argument("--network", required=True)
    p.add_argument("--code", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mds", help="Reed-Solomon generator and distance")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("-o", "--output")
    _add_common(p)
    p.set_defaults(func=cmd_mds)

    p = sub.add_parser("ic", help="independent configurations")
    p.add_argument("action", choices=["search", "check", "bound"])
    p.add_argument("--q", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--alpha", type=int)
    p.add_argument("--witness", help="IC JSON (check)")
    _add_common(p, cert_default="ic-cert.json")
    p.set_defaults(func=cmd_ic)

    p = sub.add_parser("psi", help="smallest prime power >= x")
    p.add_argument("x", type=float)
    _add_common(p)
    p.set_defaults(func=cmd_psi)

    for name, func in (("qs", cmd_qs), ("qv", cmd_qv)):
        p = sub.add_parser(name, help=f"exact {name.replace('q', 'q_')}")
        p.add_argument("--network")
        p.add_argument("--kneser", type=int, nargs=3, metavar=("Q", "T", "H"))
        p.add_argument("--comb", type=int, nargs=3, metavar=("H", "R", "S"))
        if name == "qs":
            p.add_argument("--method", choices=["auto", "chi", "search"], default="auto")
        _add_common(p, cert_default=f"{name}-cert.json")
        p.set_defaults(func=func)

    p = sub.add_parser("gap", help="exact gap with certificates")
    p.add_argument("--network")
    p.add_argument("--kneser", type=int, nargs=3, metavar=("Q", "T", "H"))
    p.add_argument("--comb", type=int, nargs=3, metavar=("H", "R", "S"))
    p.add_argument("--cert-prefix", default="gap", help="certificate path prefix")
    _add_common(p)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("formula", help="closed-form gap bounds")
    p.add_argument(
        "kind",
        choices=[
            "kneser-h2",
            "minimal-h2-upper",
            "kneser-h2-t2-lower",
            "kneser-h3-lower",
            "combination-upper",
        ],
    )
    p.add_argument("params", nargs="+", help="assignments like q=2 t=2 h=3 r=5")
    _add_common(p)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("gap-table", help="CSV table of Kneser-network gaps")
    p.add_argument("--q", type=int, nargs="+", default=[2, 3])
    p.add_argument("--t", type=int, nargs="+", default=[1, 2])
    p.add_argument("--exact-limit", type=int, default=4, help="resolve q^t <= this exactly")
    p.add_argument("-o", "--output")
    _add_common(p)
    p.set_defaults(func=cmd_gap_table)

    p = sub.add_parser("check-cert", help="re-verify certificates")
    p.add_argument("certs", nargs="+")
    _add_common(p)
    p.set_defaults(func=cmd_check_cert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    timeout = getattr(args, "timeout_secs", None)
    if timeout:
        def _on_alarm(signum, frame):
            raise BudgetExhausted("wall-clock timeout")

        signal.signal(signal.SIGALRM, _on_alarm)
        signal.setitimer(signal.ITIMER_REAL, timeout)
    start = time.time()
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"budget exhausted after {time.time() - start:.1f}s: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NetgapError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if timeout:
            signal.setitimer(signal.ITIMER_REAL, 0)


def run() -> None:
    sys.exit(main())
