"""Command-line front end.

Exit codes: 0 on success, 1 on domain errors (unsupported descriptor and
operation combinations, failed oracle checks), 2 on usage and parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, TextIO

from . import __version__
from .arith import divisors
from .closure import closure_cyclic, is_closed_cyclic, membership_in_closure
from .errors import ParseError, ProvcloseError
from .freeword import Word, parse_word, power, root_exp
from .oracle import (
    CATALOG_ENV,
    Catalog,
    catalog_from_env,
    find_separating_quotient,
    necessary_condition_check,
)
from .variety import Pseudovariety, parse_variety

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="provclose",
                     description="Closures of cyclic subgroups of free groups in pro-V topologies.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, variety=True, v=False, w=True, catalog=False):
        p = sub.add_parser(name, help=help)
        if variety:
            p.add_argument("-V", "--variety", required=True,
                           help="G, GP:2,3, GP:!2, O, N, S, Su, Ab:6, Vp:3")
        if v:
            p.add_argument("-v", "--candidate", required=True, help="candidate word")
        if w:
            p.add_argument("-w", "--word", required=True, help="generator of the cyclic subgroup")
        if catalog:
            p.add_argument("--catalog", help=f"catalog JSON file (default: ${CATALOG_ENV} "
                                             "or the built-in catalog)")
        p.add_argument("--rank", type=int, help="ambient rank (default: largest index used)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    add("root", "primitive root and exponent of a word", variety=False)
    add("closure", "closure generator of <w>")
    add("is-closed", "decide whether <w> is closed")
    add("member", "decide whether v lies in the closure of <w>", v=True)
    add("separate", "search the catalog for a quotient separating v from <w>",
        v=True, catalog=True)
    add("verify", "check the closure formula against the finite-quotient oracle", catalog=True)
    batch = add("batch", "process newline-delimited words from a file", w=False, catalog=True)
    batch.add_argument("-f", "--file", required=True, help="input file ('-' for stdin)")
    batch.add_argument("--op", choices=("closure", "is-closed", "verify"), default="closure")
    return parser


def _closure_doc(w: Word, V: Pseudovariety) -> dict:
    doc = closure_cyclic(w, V).to_dict()
    doc["oracle"] = {"status": "not-run"}
    return doc


def _is_closed_doc(w: Word, V: Pseudovariety) -> dict:
    verdict = is_closed_cyclic(w, V)
    return {"input": str(w), "variety": str(V), "closed": verdict.closed,
            "reason": verdict.reason, "detail": verdict.detail}


def _verify_doc(w: Word, V: Pseudovariety, catalog: Catalog) -> dict:
    res = closure_cyclic(w, V)
    doc = res.to_dict()
    necessary = necessary_condition_check(res.generator, w, V, catalog)
    separations = []
    if res.root is not None:
        for j in divisors(res.exponent):
            if j % res.closure_exponent == 0:
                continue
            v = power(res.root, j)
            found = find_separating_quotient(v, w, V, catalog)
            separations.append({
                "j": j, "word": str(v),
                "status": "separated" if found else "inconclusive",
                "witness": found.to_dict() if found else None,
            })
    if not necessary.passed:
        status = "fail"
    elif any(s["status"] == "inconclusive" for s in separations):
        status = "inconclusive"
    else:
        status = "pass"
    oracle: dict[str, Any] = {"status": status, "necessary": necessary.to_dict(),
                              "separation": separations}
    if necessary.counterexample is not None:
        oracle["witness"] = necessary.counterexample.to_dict()
    doc["oracle"] = oracle
    return doc


def _text(command: str, doc: dict) -> str:
    if command == "root":
        return f"{doc['input']} = ({doc['root']})^{doc['exponent']}"
    if command in ("closure", "verify"):
        lines = [f"Cl_{doc['variety']}(<{doc['input']}>) = <{doc['generator']}>"]
        for step in doc["trace"]:
            cite = f" [{step['cites']}]" if step["cites"] else ""
            vals = ", ".join(f"{k}={v}" for k, v in step["values"].items())
            lines.append(f"  {step['rule']}{cite}: {vals}")
        lines.append(f"  closed: {str(doc['closed']).lower()}")
        oracle = doc.get("oracle", {})
        if oracle.get("status") != "not-run":
            lines.append(f"  oracle: {oracle.get('status')}")
            for s in oracle.get("separation", []):
                where = s["witness"]["group"] if s["witness"] else "none found"
                lines.append(f"    u^{s['j']} = {s['word']}: {s['status']} ({where})")
        return "\n".join(lines)
    if command == "is-closed":
        return f"{str(doc['closed']).lower()} [{doc['reason']}] {doc['detail']}"
    if command == "member":
        return str(doc["member"]).lower()
    if command == "separate":
        if doc["status"] == "inconclusive":
            return "inconclusive: no catalog group separates"
        wit = doc["witness"]
        images = ", ".join(f"{k} -> {v}" for k, v in wit["images"].items())
        return f"separated by {wit['group']}: {images}"
    return json.dumps(doc, ensure_ascii=False)


def _emit(doc: dict, command: str, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, ensure_ascii=False) + "\n")
    else:
        out.write(_text(command, doc) + "\n")


def _single(args, catalog_loader) -> tuple[dict, int]:
    cmd = args.command
    w = parse_word(args.word, args.rank)
    if cmd == "root":
        u, e = root_exp(w)
        return {"input": str(w), "root": str(u), "exponent": e}, EXIT_OK
    V = parse_variety(args.variety)
    if cmd == "closure":
        return _closure_doc(w, V), EXIT_OK
    if cmd == "is-closed":
        return _is_closed_doc(w, V), EXIT_OK
    v = parse_word(args.candidate, args.rank) if hasattr(args, "candidate") else None
    if cmd == "member":
        res = closure_cyclic(w, V)
        return {"candidate": str(v), "input": str(w), "variety": str(V),
                "closure_generator": str(res.generator),
                "member": membership_in_closure(v, w, V)}, EXIT_OK
    catalog = catalog_loader()
    if cmd == "separate":
        found = find_separating_quotient(v, w, V, catalog)
        return {"candidate": str(v), "input": str(w), "variety": str(V),
                "status": "separated" if found else "inconclusive",
                "witness": found.to_dict() if found else None}, EXIT_OK
    if cmd == "verify":
        doc = _verify_doc(w, V, catalog)
        return doc, EXIT_DOMAIN if doc["oracle"]["status"] == "fail" else EXIT_OK
    raise AssertionError(cmd)


def _batch(args, catalog_loader, out: TextIO) -> int:
    V = parse_variety(args.variety)
    catalog = catalog_loader() if args.op == "verify" else None
    code = EXIT_OK
    stream = sys.stdin if args.file == "-" else open(args.file, encoding="utf-8")
    with stream:
        for lineno, line in enumerate(stream, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                w = parse_word(text, args.rank)
                if args.op == "closure":
                    doc = _closure_doc(w, V)
                elif args.op == "is-closed":
                    doc = _is_closed_doc(w, V)
                else:
                    doc = _verify_doc(w, V, catalog)
                    if doc["oracle"]["status"] == "fail":
                        code = max(code, EXIT_DOMAIN)
            except ParseError as exc:
                doc, code = {"error": str(exc)}, EXIT_USAGE
            except ProvcloseError as exc:
                doc, code = {"error": str(exc)}, max(code, EXIT_DOMAIN)
            _emit({"line": lineno, **doc}, args.op, args.format, out)
            out.flush()
    return code


def run(argv=None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    def catalog_loader():
        return catalog_from_env(getattr(args, "catalog", None))

    try:
        if args.command == "batch":
            return _batch(args, catalog_loader, out)
        doc, code = _single(args, catalog_loader)
    except ParseError as exc:
        err.write(f"provclose: parse error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"provclose: {exc}\n")
        return EXIT_USAGE
    except ProvcloseError as exc:
        err.write(f"provclose: {exc}\n")
        return EXIT_DOMAIN
    _emit(doc, args.command, args.format, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
