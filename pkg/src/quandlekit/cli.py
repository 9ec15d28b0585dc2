"""Command-line front end: ``quandlekit validate|inn|present|closure|factor|enumerate``.

Quandle files are JSON objects with ``size``, ``table`` (row ``x``, column
``y`` holds ``x |> y``) and optional ``name`` and ``labels``.  Hom files hold
``source``, ``target`` (an inline quandle object or a path relative to the
hom file) and ``map``.

Exit codes: 0 success, 1 parse error, 2 axiom failure, 3 disconnected
quandle, 4 non-normal subgroup, 5 no factorization, 6 other precondition
failure, 7 two internal computations disagreed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import (
    enumerate_connected_by_triples,
    enumerate_connected_exhaustive,
    EXHAUSTIVE_LIMIT,
)
from .coset import from_presentation, to_presentation
from .errors import (
    AxiomError,
    ConsistencyError,
    DomainError,
    NotConnectedError,
    NotNormalError,
    QuandleKitError,
    TableError,
)
from .factorize import check_agreement, factor_oracle
from .permgroup import Permutation, generate
from .quandle import Quandle, QuandleHom, check_hom, is_connected, is_isomorphic, orbits, validate
from .quotient import closure_formulas, orbit_quotient

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_AXIOM = 2
EXIT_DISCONNECTED = 3
EXIT_NOT_NORMAL = 4
EXIT_NO_FACTORIZATION = 5
EXIT_PRECONDITION = 6
EXIT_INTERNAL = 7


class ParseError(QuandleKitError):
    """A document cannot be read as a quandle or hom file."""


# serialization ---------------------------------------------------------------


def dumps_quandle(Q: Quandle, name: str | None = None, labels=None) -> str:
    """Deterministic text for a quandle file: one table row per line."""
    lines = ["{"]
    if name is not None:
        lines.append(f"  \"name\": {json.dumps(name)},")
    lines.append(f"  \"size\": {Q.size},")
    if labels is not None:
        lines.append(f"  \"labels\": {json.dumps([str(s) for s in labels])},")
    lines.append("  \"table\": [")
    rows = [json.dumps(list(r)) for r in Q.table]
    lines.extend(f"    {r}," for r in rows[:-1])
    lines.append(f"    {rows[-1]}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _read_json(path: Path):
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc.msg}, line {exc.lineno})") from exc


def quandle_from_document(doc) -> Quandle:
    if not isinstance(doc, dict):
        raise ParseError("quandle document must be a JSON object")
    if "table" not in doc or "size" not in doc:
        raise ParseError("quandle document needs 'size' and 'table'")
    size, table = doc["size"], doc["table"]
    if isinstance(size, bool) or not isinstance(size, int):
        raise ParseError("'size' must be an integer")
    if not isinstance(table, list) or len(table) != size:
        raise ParseError(f"'table' must be a list of {size} rows")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != size):
        raise ParseError(f"'labels' must be a list of {size} strings")
    return validate(table)


def load_quandle(path) -> Quandle:
    return quandle_from_document(_read_json(Path(path)))


def load_hom(path) -> QuandleHom:
    path = Path(path)
    doc = _read_json(path)
    if not isinstance(doc, dict) or not {"source", "target", "map"} <= set(doc):
        raise ParseError("hom document needs 'source', 'target' and 'map'")
    ends = []
    for key in ("source", "target"):
        part = doc[key]
        if isinstance(part, str):
            ends.append(load_quandle(path.parent / part))
        else:
            ends.append(quandle_from_document(part))
    mapping = doc["map"]
    if not isinstance(mapping, list):
        raise ParseError("'map' must be a list of integers")
    return check_hom(mapping, *ends)


# reporting -------------------------------------------------------------------


def _plain(obj):
    """JSON-ready form of witnesses and report values."""
    if isinstance(obj, Permutation):
        return str(obj)
    if isinstance(obj, (frozenset, set)):
        return sorted(_plain(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def _blocks(partition) -> list[list[int]]:
    return [sorted(b) for b in partition]


class Report:
    def __init__(self, command: str):
        self.data: dict = {"command": command}
        self.lines: list[str] = []

    def add(self, key: str, value, text: str | None = None) -> None:
        self.data[key] = _plain(value)
        self.lines.append(text if text is not None else f"{key}: {self.data[key]}")


# commands --------------------------------------------------------------------


def cmd_validate(args, report: Report) -> int:
    Q = load_quandle(args.path)
    report.add("size", Q.size)
    report.add("axioms", ["i", "ii", "iii"], "axioms i, ii, iii: ok")
    return EXIT_OK


def cmd_inn(args, report: Report) -> int:
    Q = load_quandle(args.path)
    G = Q.inn
    report.add("order", G.order)
    report.add("generators", list(Q.symmetries), "generators: " + " ".join(str(s) for s in Q.symmetries))
    report.add("orbits", _blocks(orbits(Q)))
    report.add("connected", is_connected(Q))
    return EXIT_OK


def cmd_present(args, report: Report) -> int:
    Q = load_quandle(args.path)
    if not is_connected(Q):
        raise NotConnectedError("quandle is not connected", witness=_blocks(orbits(Q)))
    p, ident = to_presentation(Q, args.base)
    report.add("base", args.base)
    report.add("group_order", p.group.order)
    report.add("group_generators", list(p.group.generators))
    report.add("stabilizer", list(p.stabilizer.elements))
    report.add("eta", p.eta)
    report.add("cosets", [c.representative for c in p.cosets])
    report.add("coset_to_element", ident)
    report.add("coset_table", p.table(), "coset table:\n" + "\n".join(f"  {row}" for row in p.table()))
    R, _, _ = from_presentation(p)
    ok = is_isomorphic(R, Q) is not None and all(
        ident[p.operation(i, j)] == Q.table[ident[i]][ident[j]] for i in range(p.size) for j in range(p.size)
    )
    if not ok:
        raise ConsistencyError("coset operation does not reproduce the quandle")
    report.add("formula_check", ok, "operation formula Hg |> Hc = H g c^-1 eta c: ok")
    return EXIT_OK


def _parse_subgroup(Q: Quandle, texts) -> list[Permutation]:
    gens = []
    for text in texts or []:
        try:
            gens.append(Permutation.from_cycles(text, Q.size))
        except (DomainError, ValueError) as exc:
            raise ParseError(f"bad permutation {text!r}: {exc}") from exc
    return gens


def cmd_closure(args, report: Report) -> int:
    Q = load_quandle(args.path)
    gens = _parse_subgroup(Q, args.subgroup)
    for g in gens:
        if g not in Q.inn:
            raise DomainError(f"{g} is not an inner automorphism", witness=g)
    N = generate(Q.size, gens)
    orbit_quotient(Q, N)  # raises NotNormalError with a conjugation witness
    via_kernel, via_stabilizers = closure_formulas(Q, N)
    if via_kernel != via_stabilizers:
        raise ConsistencyError("closure formulas disagree", witness=(via_kernel.order, via_stabilizers.order))
    report.add("subgroup_order", N.order)
    report.add("subgroup", list(N.elements))
    report.add("closure_via_kernel_order", via_kernel.order)
    report.add("closure_via_stabilizers_order", via_stabilizers.order)
    report.add("closure", list(via_kernel.elements))
    report.add("realizable", via_kernel == N)
    return EXIT_OK


def _certificate_trace(cert) -> dict:
    pipe = cert.pipeline
    out = {}
    for key in ("N1", "N2", "N", "closure", "K", "K_image", "L"):
        if key in pipe:
            out[key] = list(pipe[key].elements)
    for key in ("quotient_1", "quotient_2", "descent"):
        if key in pipe:
            out[key + "_blocks"] = _blocks(pipe[key].blocks)
    for key in ("rigid_1", "rigid_2", "omega", "Phi"):
        if pipe.get(key) is not None:
            out[key] = list(pipe[key].map)
    for key in ("base_point", "r0", "s0", "eta", "closure_ok", "stabilizer_ok"):
        if key in pipe:
            out[key] = pipe[key]
    return _plain(out)


def cmd_factor(args, report: Report) -> int:
    g = load_hom(args.g)
    h = load_hom(args.h)
    for name, X in (("source", h.source), ("h target", h.target), ("g target", g.target)):
        if not is_connected(X):
            # a precondition of factor, so exit 6 rather than 3
            raise DomainError(f"{name} is not connected", witness=_blocks(orbits(X)))
    if args.oracle:
        phi, witness = factor_oracle(g, h)
        report.add("method", "oracle")
        if phi is None:
            report.add("exists", False)
            report.add("witness", witness, f"witness: h({witness[0]}) = h({witness[1]}) but g differs")
            return EXIT_NO_FACTORIZATION
        report.add("exists", True)
        report.add("phi", list(phi.map))
        return EXIT_OK
    result = check_agreement(g, h)
    cert = result.certificate
    report.add("method", "both")
    if not result.agree:
        raise ConsistencyError("; ".join(result.details))
    report.add("agree", True)
    report.add("exists", cert.exists)
    if args.trace:
        report.add("certificate", _certificate_trace(cert))
    if not cert.exists:
        report.add("failure_reason", cert.failure_reason.value)
        report.add("witness", cert.witness)
        return EXIT_NO_FACTORIZATION
    report.add("phi", list(cert.phi.map))
    return EXIT_OK


def cmd_enumerate(args, report: Report) -> int:
    n = args.n
    triples = exhaustive = None
    if args.method in ("exhaustive", "both"):
        exhaustive = enumerate_connected_exhaustive(n, limit=args.limit)
    if args.method in ("triples", "both"):
        triples = enumerate_connected_by_triples(n, args.max_group_order)
    records = exhaustive if exhaustive is not None else triples
    if triples is not None and exhaustive is not None:
        if [r.canonical_form for r in triples] != [r.canonical_form for r in exhaustive]:
            raise ConsistencyError(
                "triples and exhaustive enumerations disagree", witness=(len(triples), len(exhaustive))
            )
        report.add("agreement", True)
    report.add("method", args.method)
    report.add("count", len(records))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for i, rec in enumerate(records):
            name = f"connected_{n}_{i}"
            path = out / f"{name}.json"
            path.write_text(dumps_quandle(rec.quandle, name=name))
            written.append(str(path))
        report.add("files", written)
    return EXIT_OK


# entry point -----------------------------------------------------------------


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, (ParseError, TableError)):
        return EXIT_PARSE
    if isinstance(exc, AxiomError):
        return EXIT_AXIOM
    if isinstance(exc, NotConnectedError):
        return EXIT_DISCONNECTED
    if isinstance(exc, NotNormalError):
        return EXIT_NOT_NORMAL
    if isinstance(exc, ConsistencyError):
        return EXIT_INTERNAL
    return EXIT_PRECONDITION


class _Parser(argparse.ArgumentParser):
    # usage errors are parse errors; argparse's default 2 means an axiom failure here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report instead of text")

    parser = _Parser(prog="quandlekit", description="Finite quandle toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the quandle axioms")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("inn", parents=[common], help="inner automorphism group and orbits")
    p.add_argument("path")
    p.set_defaults(func=cmd_inn)

    p = sub.add_parser("present", parents=[common], help="coset presentation of a connected quandle")
    p.add_argument("path")
    p.add_argument("--base", type=int, default=0, help="base point (default 0)")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("closure", parents=[common], help="realizable closure of a normal subgroup of Inn")
    p.add_argument("path")
    p.add_argument(
        "--subgroup", action="append", metavar="PERM",
        help="generator in cycle notation, e.g. '(0 1 2)'; repeat for more (none: trivial subgroup)",
    )
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("factor", parents=[common], help="does g factor through h?")
    p.add_argument("g", help="hom file for g: Q -> R2")
    p.add_argument("h", help="hom file for h: Q -> R1")
    p.add_argument("--oracle", action="store_true", help="use only the brute-force decider")
    p.add_argument("--trace", action="store_true", help="include the structural certificate")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("enumerate", parents=[common], help="connected quandles of order n")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=["triples", "exhaustive", "both"], default="triples")
    p.add_argument("--max-group-order", type=int, default=56)
    p.add_argument("--limit", type=int, default=EXHAUSTIVE_LIMIT, help="largest n for exhaustive search")
    p.add_argument("--out", help="directory for quandle files")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = Report(args.command)
    try:
        code = args.func(args, report)
    except QuandleKitError as exc:
        code = _exit_code(exc)
        report.data.update(error=type(exc).__name__, message=str(exc), witness=_plain(exc.witness))
        if isinstance(exc, AxiomError):
            report.data["axiom"] = exc.axiom
        report.lines.append(f"error ({type(exc).__name__}): {exc}")
        if exc.witness is not None:
            report.lines.append(f"witness: {report.data['witness']}")
    report.data["exit_code"] = code
    if args.json:
        print(json.dumps(report.data, indent=2, sort_keys=True))
    else:
        print("\n".join(report.lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
