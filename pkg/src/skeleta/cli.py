"""Command-line entry point.

Every subcommand prints one JSON document to stdout (``export-dot`` prints
DOT).  Exit status: 0 success, 1 when the mathematics says no (invalid,
obstructed, not a face, ...), 2 for usage or I/O problems.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .connectivity import PreconditionError, n_connected_criterion, vertex_connectivity
from .duality import (
    DualityError,
    characteristic_function,
    is_simplicial_complex_poset,
    manifold3_check,
    simplicial_poset,
)
from .faces import FaceError, InvariantViolation, enumerate_faces, extend_face
from .generators import gen_cube, gen_k1, gen_product, gen_simplex
from .gf2 import format_bits
from .obstruction import SymmetricExpr, localization_sum, realizability_check
from .poly import CapacityError
from .search import SearchSpec, SearchSpecError, search
from .skeleton import ColoredSkeleton, DocumentParseError, SkeletonError, load, validate


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


class _Input:
    def __init__(self, path: str):
        self.raw = _read(path)
        self.sha256 = hashlib.sha256(self.raw).hexdigest()
        try:
            self.skeleton = load(self.raw)
        except DocumentParseError as exc:
            raise UsageError(f"{path}: {exc}") from None


def _emit(report: dict, code: int = 0) -> int:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return code


def _valid_or_fail(inp: _Input) -> dict | None:
    report = validate(inp.skeleton)
    if report.ok:
        return None
    return {"error": "skeleton fails the axioms", "kind": "invalid", "validation": report.to_json(),
            "input_sha256": inp.sha256}


def cmd_validate(args) -> int:
    inp = _Input(args.input)
    report = validate(inp.skeleton)
    out = report.to_json()
    out.update({"input_sha256": inp.sha256, "k": inp.skeleton.k, "n": inp.skeleton.n,
                "connected": inp.skeleton.is_connected()})
    return _emit(out, 0 if report.ok else 1)


def cmd_faces(args) -> int:
    inp = _Input(args.input)
    if (bad := _valid_or_fail(inp)) is not None:
        return _emit(bad, 1)
    faces = enumerate_faces(inp.skeleton, args.dim, force=args.force)
    counts: dict[str, int] = {}
    for F in faces:
        counts[str(F.dim)] = counts.get(str(F.dim), 0) + 1
    return _emit({"input_sha256": inp.sha256, "counts": counts, "faces": [F.to_json() for F in faces]})


def cmd_face_extend(args) -> int:
    inp = _Input(args.input)
    if (bad := _valid_or_fail(inp)) is not None:
        return _emit(bad, 1)
    edges = [e for e in (args.edges or "").split(",") if e]
    result = extend_face(inp.skeleton, args.vertex, edges)
    out = {"input_sha256": inp.sha256}
    if result:
        out["face"] = result.to_json()
        return _emit(out)
    out.update(result.to_json())
    return _emit(out, 1)


def cmd_obstruct(args) -> int:
    inp = _Input(args.input)
    s = inp.skeleton
    if (bad := _valid_or_fail(inp)) is not None:
        return _emit(bad, 1)
    out = {"input_sha256": inp.sha256}
    if args.f is not None:
        f = SymmetricExpr.parse(args.f)
        total = localization_sum(s, f)
        out.update({"f": str(f), "sum": str(total), "polynomial": total.is_polynomial(),
                    "denominator": [format_bits(x, s.k) for x in total.denominator],
                    "numerator": str(total.numerator)})
        return _emit(out, 0 if total.is_polynomial() else 1)
    verdict = realizability_check(s, args.max_degree)
    out.update(verdict.to_json())
    return _emit(out, 1 if verdict.obstructed else 0)


def cmd_connectivity(args) -> int:
    inp = _Input(args.input)
    s = inp.skeleton
    out = {"input_sha256": inp.sha256}
    if args.criterion:
        if (bad := _valid_or_fail(inp)) is not None:
            return _emit(bad, 1)
        result = n_connected_criterion(s)
        out.update(result.to_json())
        contradiction = result.hypothesis_holds and not result.connectivity_conclusion
        return _emit(out, 1 if contradiction else 0)
    out.update(vertex_connectivity(s).to_json())
    return _emit(out)


def cmd_poset(args) -> int:
    inp = _Input(args.input)
    if (bad := _valid_or_fail(inp)) is not None:
        return _emit(bad, 1)
    poset = simplicial_poset(inp.skeleton)
    out = {"input_sha256": inp.sha256}
    if args.f_vector:
        out.update({"rank": poset.rank, "f_vector": poset.f_vector})
    else:
        out.update(poset.to_json())
    code = 0
    if args.check_complex:
        check = is_simplicial_complex_poset(inp.skeleton)
        out["simplicial_complex"] = check.ok
        if not check.ok:
            out["witness"] = {"facets": list(check.witness), "components": check.components}
            code = 1
    return _emit(out, code)


def cmd_lambda(args) -> int:
    inp = _Input(args.input)
    if (bad := _valid_or_fail(inp)) is not None:
        return _emit(bad, 1)
    out = characteristic_function(inp.skeleton).to_json()
    out["input_sha256"] = inp.sha256
    return _emit(out)


def cmd_manifold3(args) -> int:
    inp = _Input(args.input)
    if (bad := _valid_or_fail(inp)) is not None:
        return _emit(bad, 1)
    ok, f = manifold3_check(inp.skeleton)
    return _emit({"input_sha256": inp.sha256, "f_vector": f, "manifold3": ok}, 0 if ok else 1)


def _graph_from_file(path: str) -> ColoredSkeleton:
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: JSON parse error at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise SkeletonError(f"{path}: expected an object with 'vertices' and 'edges'")
    edges = []
    for i, e in enumerate(doc["edges"]):
        if isinstance(e, dict):
            edges.append((e.get("id", f"e{i}"), *e["ends"]))
        else:
            edges.append(tuple(e))
    return gen_k1(doc["vertices"], edges)


def cmd_gen(args) -> int:
    if args.kind == "simplex":
        s = gen_simplex(_int(args.args, 1))
    elif args.kind == "cube":
        s = gen_cube(_int(args.args, 1))
    elif args.kind == "k1":
        if len(args.args) != 1:
            raise UsageError("gen k1 takes one graph file")
        s = _graph_from_file(args.args[0])
    else:
        if len(args.args) != 2:
            raise UsageError("gen product takes two skeleton files")
        a, b = (_Input(p).skeleton for p in args.args)
        s = gen_product(a, b)
    text = json.dumps(s.to_json(), indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    sys.stdout.write(text)
    return 0


def _int(values: list[str], count: int) -> int:
    if len(values) != count:
        raise UsageError("expected a single integer argument")
    try:
        return int(values[0])
    except ValueError:
        raise UsageError(f"not an integer: {values[0]!r}") from None


def cmd_search(args) -> int:
    raw = _read(args.specfile)
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.specfile}: JSON parse error at line {exc.lineno}: {exc.msg}") from None
    if args.seed is not None:
        doc["seed"] = args.seed
    try:
        spec = SearchSpec.from_json(doc)
    except (SearchSpecError, TypeError) as exc:
        raise UsageError(f"{args.specfile}: {exc}") from None
    result = search(spec)
    out = result.to_json()
    out["input_sha256"] = hashlib.sha256(raw).hexdigest()
    if not args.stats:
        out.pop("nodes", None)
    return _emit(out, 0 if result else 1)


def cmd_export_dot(args) -> int:
    inp = _Input(args.input)
    s = inp.skeleton
    lines = [f"// input_sha256 {inp.sha256}", "graph skeleton {"]
    for p in s.vertices:
        lines.append(f"  {json.dumps(p)};")
    for e in s.edges:
        color = format_bits(e.color, s.k)
        lines.append(f"  {json.dumps(e.u)} -- {json.dumps(e.v)} [id={json.dumps(e.id)}, label=\"{color}\"];")
    lines.append("}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skeleta", description="Abstract 1-skeletons of (Z2)^k-actions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", required=True, metavar="FILE")
        p.set_defaults(func=func)
        return p

    with_input("validate", cmd_validate, "check the coloring axioms")
    p = with_input("faces", cmd_faces, "enumerate faces")
    p.add_argument("--dim", type=int, metavar="M")
    p.add_argument("--force", action="store_true", help="enumerate even where extension is not unique")
    p = with_input("face-extend", cmd_face_extend, "extend edges at a vertex to a face")
    p.add_argument("--vertex", required=True, metavar="V")
    p.add_argument("--edges", default="", metavar="ID,ID,...")
    p = with_input("obstruct", cmd_obstruct, "localization sums and realizability verdicts")
    p.add_argument("--f", metavar="EXPR", help='symmetric expression such as "s2*s3"')
    p.add_argument("--max-degree", type=int, metavar="D")
    p = with_input("connectivity", cmd_connectivity, "vertex connectivity")
    p.add_argument("--criterion", action="store_true", help="also check the face-intersection criterion")
    p = with_input("poset", cmd_poset, "simplicial poset of a type (n, n) skeleton")
    p.add_argument("--f-vector", action="store_true")
    p.add_argument("--check-complex", action="store_true")
    with_input("lambda", cmd_lambda, "characteristic function")
    with_input("manifold3", cmd_manifold3, "f-vector criterion for type (4, 4)")
    with_input("export-dot", cmd_export_dot, "Graphviz export")

    p = sub.add_parser("gen", help="generate a skeleton")
    p.add_argument("kind", choices=["simplex", "cube", "k1", "product"])
    p.add_argument("args", nargs="*")
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("search", help="search for a skeleton matching a spec file")
    p.add_argument("specfile")
    p.add_argument("--seed", type=int, metavar="S")
    p.add_argument("--stats", action="store_true", help="include node counts (not byte-stable across budgets)")
    p.set_defaults(func=cmd_search)
    return parser


DOMAIN_ERRORS = (SkeletonError, FaceError, DualityError, PreconditionError, InvariantViolation,
                 CapacityError, ArithmeticError, ValueError)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"skeleta: {exc}\n")
        return 2
    except DOMAIN_ERRORS as exc:
        report = {"error": str(exc), "kind": type(exc).__name__}
        path = getattr(args, "input", None) or getattr(args, "specfile", None)
        if path:
            report["input_sha256"] = hashlib.sha256(_read(path)).hexdigest()
        return _emit(report, 1)


if __name__ == "__main__":
    sys.exit(main())
