"""Command-line front end: ``qcluster <command> --seed FILE ...``.

Exit status is 0 on success, 1 when a mathematical check fails (a witness
is printed) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .decomp import verify_decomposition
from .errors import ClusterError, InputError
from .inner import (check_p_membership, classify_inner, generic_vector, gtransform_from_dict,
                    pattern_solutions)
from .poisson import bracket_eval, check_compatible, poisson_from_dict, verify_poisson_axioms
from .qtorus import TorusElement
from .seeds import enumerate_exchange_graph, load_seed, mutate_word, parse_word, seed_summary
from .textform import format_matrix


class Failure(Exception):
    """A check ran and failed; carries the text to print."""

    def __init__(self, text, payload=None):
        super().__init__(text)
        self.payload = payload


def _load_json(path, what):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _seed(args):
    if not args.seed:
        raise InputError("--seed is required")
    return load_seed(args.seed)


def _poisson(args, m):
    if not args.poisson:
        raise InputError("--poisson is required")
    try:
        return poisson_from_dict(_load_json(args.poisson, "Poisson"), m)
    except InputError as exc:
        raise InputError(f"{args.poisson}: {exc}") from None


def _g(args, m):
    if not args.g:
        raise InputError("--g is required")
    try:
        return gtransform_from_dict(_load_json(args.g, "g"), m)
    except InputError as exc:
        raise InputError(f"{args.g}: {exc}") from None


def _vec(v):
    return "(" + ",".join(map(str, v)) + ")"


# -- commands ----------------------------------------------------------------


def cmd_validate(args):
    s = _seed(args)
    return f"D = diag({','.join(map(str, s.D))})", {"D": list(s.D)}


def cmd_mutate(args):
    s = mutate_word(_seed(args), parse_word(args.word or ""))
    return seed_summary(s), s.to_dict()


def cmd_graph(args):
    g = enumerate_exchange_graph(_seed(args), args.depth)
    shape = "cycle" if g.is_cycle() else "path" if g.is_path() else "other"
    lines = [f"nodes = {len(g.seeds)}", f"edges = {len(g.edges)}", f"shape = {shape}"]
    for i, h in enumerate(g.hashes):
        nbrs = " ".join(f"{k}:{g.hashes[b]}" for k, b in sorted(g.arcs.get(i, [])))
        lines.append(f"{h} depth={g.depths[i]} -> {nbrs}".rstrip())
    variables = g.cluster_variables()
    lines.append(f"cluster variables = {len(variables)}")
    lines.extend(f"  {v}" for v in variables)
    data = g.to_dict()
    data["shape"] = shape
    return "\n".join(lines), data


def cmd_bracket(args):
    s = _seed(args)
    p = _poisson(args, s.m)
    if args.a is None or args.b is None:
        raise InputError("bracket needs --a and --b")
    a = TorusElement.parse(args.a, s.m)
    b = TorusElement.parse(args.b, s.m)
    v = bracket_eval(p, a, b, s.Lambda)
    return str(v), {"value": str(v)}


def cmd_check_compatible(args):
    s = _seed(args)
    rep = check_compatible(_poisson(args, s.m), s, args.depth)
    if not rep.ok:
        raise Failure(rep.summary(), rep.to_dict())
    return rep.summary(), rep.to_dict()


def cmd_classify_inner(args):
    s = _seed(args)
    g = _g(args, s.m)
    membership = check_p_membership(g, s.Lambda)
    if not membership.ok:
        raise Failure(f"not in P: {membership.summary()}",
                      {"membership": membership.summary(), "pair": membership.pair})
    c = classify_inner(g, s.Lambda, check_membership=False)
    central = {e: v for e, v in c.remainder.items() if v}
    lines = [f"k0 = {c.k0}", f"membership: {membership.summary()}"]
    values = set(c.remainder.values())
    if not central:
        lines.append("central remainder: none")
    elif len(values) == 1:
        lines.append(f"central remainder: {values.pop()} on every window monomial")
    else:
        lines.append("central remainder:")
        lines.extend(f"  X^{_vec(e)}: {v}" for e, v in sorted(central.items()))
    data = {
        "k0": str(c.k0),
        "remainder": {_vec(e): str(v) for e, v in sorted(central.items())},
        "untested_pairs": len(membership.untested),
    }
    return "\n".join(lines), data


def cmd_solve_lemma22(args):
    s = _seed(args)
    if args.h is None:
        raise InputError("solve-lemma22 needs --h")
    sol = pattern_solutions(s.Lambda, args.h)
    lines = [f"h = {args.h}"]
    for pattern, a in sol.solutions:
        lines.append("pattern {" + ",".join(map(str, pattern)) + "}: a = " + _vec(a))
    data = {"h": args.h, "solutions": [{"pattern": list(p), "a": list(a)} for p, a in sol.solutions]}
    return "\n".join(lines), data


def cmd_generic_vector(args):
    v = generic_vector(_seed(args).Lambda)
    return f"m0 = {_vec(v)}", {"m0": list(v)}


def cmd_decompose(args):
    s = _seed(args)
    rep = verify_decomposition(s.B, s.Lambda, args.radius)
    if not rep.ok:
        raise Failure(rep.summary(), rep.to_dict())
    return rep.summary(), rep.to_dict()


def cmd_verify_axioms(args):
    s = _seed(args)
    rep = verify_poisson_axioms(_poisson(args, s.m), s.Lambda, args.radius)
    data = {"ok": rep.ok, "condition": rep.condition, "checked": rep.checked,
            "witness": [list(e) for e in rep.witness] if rep.witness else None,
            "Lambda": format_matrix(s.Lambda)}
    if not rep.ok:
        raise Failure(rep.summary(), data)
    return rep.summary(), data


COMMANDS = {
    "validate": (cmd_validate, "check the compatible pair and print D"),
    "mutate": (cmd_mutate, "apply a mutation word and print the seed"),
    "graph": (cmd_graph, "enumerate the exchange graph"),
    "bracket": (cmd_bracket, "evaluate {a, b}"),
    "check-compatible": (cmd_check_compatible, "log-canonical check on every cluster to a depth"),
    "classify-inner": (cmd_classify_inner, "reduce an inner bracket to k0 times the commutator"),
    "solve-lemma22": (cmd_solve_lemma22, "integer solutions of the exponent pattern system"),
    "generic-vector": (cmd_generic_vector, "smallest generic nonnegative vector"),
    "decompose": (cmd_decompose, "split the seed into blocks and check the gluing"),
    "verify-axioms": (cmd_verify_axioms, "Leibniz, antisymmetry and Jacobi on a window"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="qcluster", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--seed", help="seed JSON file")
        p.add_argument("--poisson", help="Poisson JSON file")
        p.add_argument("--g", help="g-transform JSON file")
        p.add_argument("--word", help="mutation word, e.g. 1,2,1")
        p.add_argument("--depth", type=int, default=3)
        p.add_argument("--radius", type=int, default=2)
        p.add_argument("--h", type=int, help="row index for solve-lemma22")
        p.add_argument("--a", help="first bracket argument")
        p.add_argument("--b", help="second bracket argument")
        p.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def _emit(args, text, data, stream):
    if args.json:
        stream.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        stream.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    fn = COMMANDS[args.command][0]
    try:
        text, data = fn(args)
    except Failure as exc:
        payload = dict(exc.payload or {}, ok=False)
        _emit(args, str(exc), payload, sys.stdout)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ClusterError as exc:
        if args.json:
            sys.stdout.write(json.dumps({"ok": False, "error": str(exc)}, sort_keys=True) + "\n")
        else:
            print(f"failed: {exc}")
        return 1
    _emit(args, text, data, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
