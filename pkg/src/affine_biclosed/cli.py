"""Command-line front end.

Every command prints one JSON document (or DOT for ``braid graph``) with a
``"schema": 1`` field. Exit status: 0 on success, 1 on a domain or input error
(reported as a JSON error object), 2 when a verification fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, List, Optional, Sequence

from . import braid, lattice, oracle, words
from . import roots as R
from .affine import AffineRoot, EPSet, closure, closure_window, is_positive, safe_window
from .biclosed import (BiclosedCanonical, generators, is_finitely_generated, recognize)
from .lattice import BElement

SCHEMA = 1
DEFAULT_WINDOW = 12


class CliError(Exception):
    def __init__(self, kind: str, message: str, **extra):
        super().__init__(message)
        self.kind, self.message, self.extra = kind, message, extra


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


# -- input decoding -------------------------------------------------------------------

def _read_input(args) -> Any:
    if args.input is None:
        if sys.stdin is None or sys.stdin.isatty():
            raise CliError("missing_input", f"'{args.verb}' needs JSON input via --in FILE")
        text = sys.stdin.read()
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError("missing_input", f"cannot read {args.input}: {exc.strerror}")
    if not text.strip():
        raise CliError("missing_input", f"'{args.verb}' needs JSON input")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("malformed_json", exc.msg, line=exc.lineno, column=exc.colno,
                       position=exc.pos)


def _field(data, key):
    if isinstance(data, dict):
        if key not in data:
            raise CliError("malformed_input", f"input object needs a {key!r} field")
        return data[key]
    return data


def _root(obj) -> AffineRoot:
    try:
        return AffineRoot.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError("malformed_input", f"bad affine root {obj!r}") from exc


def _roots(objs) -> List[AffineRoot]:
    if not isinstance(objs, list):
        raise CliError("malformed_input", "expected a list of affine roots")
    return [_root(o) for o in objs]


def _positive_roots(tag: str, objs) -> List[AffineRoot]:
    rs = R.get(tag)
    out = _roots(objs)
    for r in out:
        if r.dir not in rs.root_set:
            raise CliError("precondition", f"{list(r.dir)} is not a root of {tag}")
        if not is_positive(r):
            raise CliError("precondition", f"{r} is not a positive affine root")
    return out


def _word(tag: str, obj) -> words.WBar:
    if isinstance(obj, dict) and "period" in obj:
        return words.from_periodic(tag, obj.get("prefix", []), obj["period"])
    return words.from_json(tag, obj)


def _set(tag: str, obj) -> EPSet:
    """An EPSet given directly or as a canonical form {"w", "L", "K"}."""
    if isinstance(obj, dict) and "w" in obj:
        return BiclosedCanonical.from_json(tag, obj).epset
    return EPSet.from_json(tag, obj)


def _pair(data, what: str):
    if not isinstance(data, list) or len(data) != 2:
        raise CliError("malformed_input", f"expected a list of two {what}")
    return data


# -- commands ----------------------------------------------------------------------------

def cmd_roots(args):
    rs = R.get(args.type)
    return {
        "roots": [list(r) for r in rs.roots],
        "positive": [list(r) for r in rs.positive],
        "simple": [list(r) for r in rs.simple],
        "highest": list(rs.highest),
        "cartan": [list(row) for row in rs.cartan],
    }


def cmd_closure(args):
    gens = _positive_roots(args.type, _field(_read_input(args), "gens"))
    hull = closure(args.type, gens)
    out = {"closure": hull.to_json(), "rays": sorted(list(d) for d in hull.ray_directions())}
    n = args.window
    if n >= safe_window(gens):
        agrees = closure_window(args.type, gens, n) == hull.truncate(n)
        out["window_check"] = {"window": n, "agrees": agrees}
        if not agrees:
            raise VerificationFailed(out)
    else:
        out["window_check"] = {"window": n, "agrees": None,
                               "reason": f"window below the safe margin {safe_window(gens)}"}
    return out


def cmd_biclosed(args):
    data = _read_input(args)
    tag = args.type
    if args.action == "canonicalize":
        bc = recognize(_set(tag, data))
        return {"canonical": bc.to_json(), "epset": bc.epset.to_json()}
    if args.action == "membership":
        s = _set(tag, _field(data, "set"))
        r = _root(_field(data, "root"))
        return {"root": r.to_json(), "member": r in s}
    bc = recognize(_set(tag, data))
    if not is_finitely_generated(bc):
        raise CliError("precondition", "the set is not finitely generated",
                       canonical=bc.to_json())
    gens = sorted(generators(bc))
    same = closure(tag, gens) == bc.epset
    out = {"canonical": bc.to_json(), "generators": [r.to_json() for r in gens],
           "closure_matches": same}
    if not same:
        raise VerificationFailed(out)
    return out


def _word_json(x: words.WBar):
    return {"word": words.to_json(x), "inversion_set": words.inversion_set(x).to_json()}


def cmd_word(args):
    tag = args.type
    if args.action == "maximal":
        return {"maximal": [_word_json(x) for x in words.maximal_elements(tag)]}
    data = _read_input(args)
    if args.action == "inversions":
        return _word_json(_word(tag, data))
    if not isinstance(data, list) or not data:
        raise CliError("malformed_input", "expected a nonempty list of words")
    xs = [_word(tag, d) for d in data]
    if args.action == "meet":
        out = xs[0]
        for x in xs[1:]:
            out = words.meet(out, x)
        return _word_json(out)
    return _word_json(words.join_bounded(xs))


def cmd_lattice(args):
    tag = args.type
    data = _read_input(args)
    if args.action == "complement":
        b = BElement.from_json(tag, data)
        c = lattice.complement(b)
        return {"element": c.to_json(), "epset": c.epset.to_json()}
    b1, b2 = (BElement.from_json(tag, d) for d in _pair(data, "biclosed elements"))
    out = lattice.join(b1, b2) if args.action == "join" else lattice.meet(b1, b2)
    return {"element": out.to_json(), "epset": out.epset.to_json()}


def cmd_braid(args):
    tag = args.type
    data = _read_input(args)
    if args.action == "graph":
        g = braid.build_braid_graph(tag, _positive_roots(tag, _field(data, "roots")), args.budget)
        if args.format == "dot":
            return g.to_dot()
        return g.to_json()
    if args.action == "realize":
        order = _positive_roots(tag, _field(data, "order"))
        got = braid.realize(tag, order, args.budget)
        out = {"status": got.status, "reason": got.reason, "witness": None, "chain": None}
        if got.witness is not None:
            out["witness"] = got.witness.to_json()
            out["chain"] = [b.to_json() for b in braid.witness_chain(tuple(order), got.witness)]
            if not braid.verify_witness(tuple(order), got.witness):
                raise VerificationFailed(out)
        return out
    o1 = tuple(_positive_roots(tag, _field(data, "from")))
    o2 = tuple(_positive_roots(tag, _field(data, "to")))
    path = braid.connect(tag, o1, o2, args.budget)
    out = path.to_json()
    out["verified"] = braid.verify_path(tag, path, o2)
    if not out["verified"]:
        raise VerificationFailed(out)
    return out


def cmd_verify(args):
    names = args.suites or sorted(oracle.SUITES)
    reports = []
    for name in names:
        params = {"seed": args.seed}
        if args.type_given:
            params["type"] = args.type
        if args.window_given:
            params["window"] = args.window
        if args.budget_given:
            params["budget"] = args.budget
        reports.append(oracle.run_suite(name, params).to_json())
    out = {"reports": reports, "ok": all(r["ok"] for r in reports)}
    if not out["ok"]:
        raise VerificationFailed(out)
    return out


COMMANDS = {"roots": cmd_roots, "closure": cmd_closure, "biclosed": cmd_biclosed,
            "word": cmd_word, "lattice": cmd_lattice, "braid": cmd_braid, "verify": cmd_verify}


# -- parsing and output -----------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", choices=R.TYPES, default=None)
    common.add_argument("--window", type=int, default=None)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--in", dest="input", default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="affine-biclosed", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    sub.add_parser("roots", parents=[common])
    sub.add_parser("closure", parents=[common])
    for verb, actions in (("biclosed", ("membership", "canonicalize", "generators")),
                          ("word", ("inversions", "meet", "join", "maximal")),
                          ("lattice", ("join", "meet", "complement")),
                          ("braid", ("graph", "connect", "realize"))):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("action", choices=actions)
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("suites", nargs="*", metavar="SUITE")
    return p


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = None
    try:
        args = _parser().parse_args(argv)
        args.type_given = args.type is not None
        args.window_given = args.window is not None
        args.budget_given = args.budget is not None
        args.type = args.type or "A2"
        args.window = DEFAULT_WINDOW if args.window is None else args.window
        args.budget = braid.DEFAULT_BUDGET if args.budget is None else args.budget
        if args.window < 1 or args.budget < 0:
            raise CliError("usage", "--window must be >= 1 and --budget >= 0")
        if args.format == "dot" and not (args.verb == "braid" and args.action == "graph"):
            raise CliError("usage", "--format dot is only available for 'braid graph'")
        result = COMMANDS[args.verb](args)
        if isinstance(result, str):
            _emit(result, args.out)
        else:
            _emit(_dump({"schema": SCHEMA, "type": args.type, **result}), args.out)
        return 0
    except VerificationFailed as exc:
        _emit(_dump({"schema": SCHEMA, "verification_failed": True, **exc.payload}),
              args.out if args else None)
        return 2
    except CliError as exc:
        err = {"kind": exc.kind, "message": exc.message, **exc.extra}
        sys.stdout.write(_dump({"schema": SCHEMA, "error": err}))
        return 1
    except (ValueError, RecursionError, RuntimeError, KeyError, TypeError) as exc:
        err = {"kind": type(exc).__name__, "message": str(exc)}
        sys.stdout.write(_dump({"schema": SCHEMA, "error": err}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
