"""Command-line front end.

Thin client over the HTTP service: each subcommand assembles a JSON
request, posts it (in-process by default, to --server when given), and
wraps the response in a report envelope printed to standard output:

    {"command": ..., "inputs": <sha256 of the request payload>,
     "results": ..., "status": "ok"}

or, on failure,

    {"command": ..., "inputs": ..., "status": "error",
     "error": {"code": ..., "message": ..., "violations": [...]}}

Exit codes: 0 success, 1 computation error (or unreachable server),
2 malformed input, 3 model or map validation failure. Reports are
byte-identical across runs for identical inputs.
"""

from __future__ import annotations

import argparse
import asyncio
import hashlib
import json
import os
import sys

import httpx

from .errors import InputError
from .graded_ring import CohomologyModel
from .manifests import dumps_canonical, load_json, load_space

__all__ = ["parse_space", "run_command", "main", "entry"]

_EXIT_BY_CODE = {"bad-input": 2, "invalid-model": 3, "computation-error": 1}


def parse_space(path: str) -> CohomologyModel:
    """Load and validate a space manifest file."""
    return load_space(path)


# ======================================================================
# argument parsing
# ======================================================================

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cotrace",
        description="Coincidence Lefschetz and Reidemeister trace "
                    "invariants over exact integer arithmetic.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default runs "
                             "in-process")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_spaces_flag(sub):
        sub.add_argument("--space", action="append", default=[],
                         metavar="FILE",
                         help="extra space manifest; repeatable")

    sub = commands.add_parser(
        "lefschetz", help="Lefschetz number of a ring self-map")
    sub.add_argument("--map", required=True, metavar="FILE",
                     help="map manifest file")
    add_spaces_flag(sub)

    sub = commands.add_parser(
        "coincide", help="coincidence class and trace legs of a pair")
    sub.add_argument("--f", required=True, metavar="FILE")
    sub.add_argument("--g", required=True, metavar="FILE")
    add_spaces_flag(sub)

    sub = commands.add_parser(
        "selfcoincide", help="self-coincidence Euler class of a map")
    sub.add_argument("--f", required=True, metavar="FILE")
    add_spaces_flag(sub)

    sub = commands.add_parser(
        "s1bundle", help="Reidemeister trace of the circle-bundle "
                         "projection over CP^n with Euler number k")
    sub.add_argument("--n", required=True, type=int)
    sub.add_argument("--k", required=True, type=int)

    sub = commands.add_parser(
        "sphere", help="coincidence trace for maps S^m -> S^n from "
                       "degrees and Hopf invariants (realizability of "
                       "odd Hopf invariants is not checked)")
    sub.add_argument("--m", required=True, type=int)
    sub.add_argument("--n", required=True, type=int)
    sub.add_argument("--hopf-f", type=int, default=0)
    sub.add_argument("--hopf-g", type=int, default=0)

    sub = commands.add_parser(
        "gysin", help="total-space cohomology of a circle bundle from "
                      "its base and Euler class")
    sub.add_argument("--base", required=True,
                     help="builtin space name or manifest file")
    sub.add_argument("--euler", required=True,
                     help="degree-2 class, `label` or `<int>*label`")
    add_spaces_flag(sub)

    sub = commands.add_parser(
        "snf", help="Smith normal form with unimodular witnesses")
    sub.add_argument("--matrix", required=True, metavar="FILE",
                     help="JSON file holding an integer matrix "
                          "as a list of rows")

    sub = commands.add_parser(
        "validate", help="check a space or map manifest against the "
                         "ring axioms")
    sub.add_argument("file", metavar="FILE")
    add_spaces_flag(sub)

    sub = commands.add_parser("serve", help="run the HTTP service")
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--port", type=int, default=8000)

    return parser


# ======================================================================
# request assembly
# ======================================================================

def _load_extra_spaces(args) -> list:
    return [load_json(path) for path in getattr(args, "space", [])]


def _build_request(args):
    """Returns (endpoint, payload). Raises InputError on unreadable or
    malformed files; semantic checks happen server-side."""
    command = args.command
    if command == "lefschetz":
        return "/lefschetz", {"map": load_json(args.map),
                              "spaces": _load_extra_spaces(args)}
    if command == "coincide":
        return "/coincide", {"f": load_json(args.f), "g": load_json(args.g),
                             "spaces": _load_extra_spaces(args)}
    if command == "selfcoincide":
        return "/selfcoincide", {"f": load_json(args.f),
                                 "spaces": _load_extra_spaces(args)}
    if command == "s1bundle":
        return "/s1bundle", {"n": args.n, "k": args.k}
    if command == "sphere":
        return "/sphere", {"m": args.m, "n": args.n,
                           "hopf_f": args.hopf_f, "hopf_g": args.hopf_g}
    if command == "gysin":
        base = load_json(args.base) if os.path.exists(args.base) else args.base
        return "/gysin", {"base": base, "euler": args.euler,
                          "spaces": _load_extra_spaces(args)}
    if command == "snf":
        matrix = load_json(args.matrix)
        if not isinstance(matrix, list):
            raise InputError("matrix file must hold a JSON list of rows")
        return "/snf", {"matrix": matrix}
    if command == "validate":
        manifest = load_json(args.file)
        if not isinstance(manifest, dict):
            raise InputError("manifest file must hold a JSON object")
        return "/validate", {"manifest": manifest,
                             "spaces": _load_extra_spaces(args)}
    raise InputError("unknown command %r" % command)


def _digest(payload) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


# ======================================================================
# transport
# ======================================================================

async def _post_async(server, endpoint, payload):
    if server is None:
        from .service import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://cotrace.local") as client:
            return await client.post(endpoint, json=payload)
    async with httpx.AsyncClient(base_url=server, timeout=60.0) as client:
        return await client.post(endpoint, json=payload)


def _post(server, endpoint, payload):
    return asyncio.run(_post_async(server, endpoint, payload))


# ======================================================================
# report envelope
# ======================================================================

def _error_report(command, inputs, code, message, violations=None):
    error = {"code": code, "message": message}
    if violations is not None:
        error["violations"] = list(violations)
    return {"command": command, "inputs": inputs,
            "status": "error", "error": error}


def _report_from_response(command, inputs, response):
    body = response.json()
    if response.status_code == 200:
        return ({"command": command, "inputs": inputs, "results": body,
                 "status": "ok"}, 0)
    if isinstance(body, dict) and "code" in body:
        code = body["code"]
        report = _error_report(command, inputs, code,
                               body.get("message", ""),
                               body.get("violations"))
        return report, _EXIT_BY_CODE.get(code, 1)
    detail = body.get("detail", body) if isinstance(body, dict) else body
    message = ("request failed framework validation: "
               + json.dumps(detail, sort_keys=True))
    return _error_report(command, inputs, "bad-input", message), 2


def run_command(argv=None):
    """Returns (report dict, exit code). `serve` blocks and returns
    (None, 0) on shutdown."""
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return None, 0

    try:
        endpoint, payload = _build_request(args)
    except InputError as exc:
        inputs = _digest({"argv": list(argv) if argv is not None
                          else sys.argv[1:]})
        return _error_report(args.command, inputs, "bad-input", str(exc)), 2

    inputs = _digest(payload)
    try:
        response = _post(args.server, endpoint, payload)
    except httpx.HTTPError as exc:
        report = _error_report(args.command, inputs, "unreachable",
                               "cannot reach %s: %s" % (args.server, exc))
        return report, 1
    return _report_from_response(args.command, inputs, response)


def main(argv=None) -> int:
    report, code = run_command(argv)
    if report is not None:
        print(dumps_canonical(report))
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
