"""Command-line interface: ``lingrowth <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import acceptance
from .automaton import Verdict, certify
from .exactfield import FieldDescriptor, FieldError, parse_field
from .linalg import Matrix, ShapeError
from .ncgroebner import truncated_groebner
from .presentation import (
    HilbertData,
    Presentation,
    PresentationError,
    VLRSData,
    build_vlrs,
    family_fermat,
    family_lech,
    family_segment,
    from_recurrence,
    hilbert_closed,
)
from .recurrence import LinearRecurrence, from_orbit, minimal_recurrence, terms, zero_set

FAMILIES = ("fermat", "lech", "segment", "from-recurrence")


class UsageError(Exception):
    pass


def _csv_items(text: Optional[str], what: str) -> list[str]:
    if text is None:
        raise UsageError(f"--{what} is required")
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError(f"--{what} is empty")
    return items


def _field(args) -> FieldDescriptor:
    try:
        return parse_field(args.field)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _recurrence(args, fd: FieldDescriptor) -> LinearRecurrence:
    coeffs = [fd.parse(c) for c in _csv_items(args.coeffs, "coeffs")]
    init = [fd.parse(c) for c in _csv_items(args.init, "init")]
    return LinearRecurrence(fd, tuple(coeffs), tuple(init))


def family_data(args) -> VLRSData:
    """The quadruple named by ``--family``/``--data``."""
    if args.data:
        return VLRSData.from_json(_load_json(args.data))
    if args.family is None:
        raise UsageError("give --family, --data or --presentation")
    fd = _field(args)
    if args.family == "fermat":
        return family_fermat(fd.parse(args.alpha or "2"), fd.parse(args.beta or "-1"), fd)
    if args.family == "lech":
        if args.prime is None:
            raise UsageError("--prime is required for the lech family")
        return family_lech(args.prime)
    if args.family == "segment":
        return family_segment(args.rho if args.rho is not None else 3, fd.parse(args.alpha or "2"), fd)
    return from_recurrence(_recurrence(args, fd))


def _source(args) -> tuple[Optional[VLRSData], Presentation]:
    if args.presentation:
        obj = _load_json(args.presentation)
        data = VLRSData.from_json(obj["vlrs"]) if "vlrs" in obj else None
        return data, Presentation.from_json(obj)
    data = family_data(args)
    return data, build_vlrs(data)


def _emit(args, text: str, out=None) -> None:
    out = out or sys.stdout
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}", file=out)
    else:
        out.write(text)


def _horizon(args, default: int) -> int:
    N = default if args.n is None else args.n
    if N < 0:
        raise UsageError("horizon must be nonnegative")
    return N


def _check_cap(args, N: int) -> None:
    if N > args.cap:
        raise UsageError(f"Gröbner horizon {N} exceeds the cap {args.cap}; raise it with --cap")


# -- commands --------------------------------------------------------------------


def cmd_build(args) -> int:
    data = family_data(args)
    p = build_vlrs(data)
    formula = data.m ** 2 + 3 * data.m + 5 + data.r + data.l
    obj = p.to_json()
    obj["vlrs"] = data.to_json()
    _emit(args, json.dumps(obj, indent=2) + "\n")
    print(f"field={p.field} m={data.m} r={data.r} l={data.l} g={p.g} s={p.s}")
    print(f"check m^2+3m+5+r+l = {formula}: {'ok' if formula == p.s else 'FAILED'}")
    return 0 if formula == p.s else 1


def _table(args, columns: dict[str, HilbertData], N: int) -> str:
    names = list(columns)
    if args.format == "json":
        return json.dumps({k: list(v.values) for k, v in columns.items()}, indent=2) + "\n"
    if args.format == "csv" and len(names) == 1:
        return columns[names[0]].to_csv()
    sep = "," if args.format == "csv" else " "
    lines = [sep.join(["n"] + names)]
    for n in range(N + 1):
        lines.append(sep.join([str(n)] + [str(columns[k][n]) for k in names]))
    return "\n".join(lines) + "\n"


def cmd_hilbert(args) -> int:
    N = _horizon(args, 20)
    data, p = _source(args)
    method = args.method
    cols: dict[str, HilbertData] = {}
    if method in ("closed", "both"):
        if data is None:
            raise UsageError("the closed formula needs quadruple data (--family or --data)")
        cols["closed"] = hilbert_closed(data, N)
    if method in ("groebner", "both"):
        _check_cap(args, N)
        gb = truncated_groebner(p, None, N)
        cols["groebner"] = gb.hilbert()
        print(f"groebner basis through degree {N}: {len(gb)} elements from {p.s} relations", file=sys.stderr)
    _emit(args, _table(args, cols, N))
    if method == "both":
        a, b = cols["closed"].values, cols["groebner"].values
        if a == b:
            print("MATCH")
        else:
            first = next(d for d in range(N + 1) if a[d] != b[d])
            print(f"MISMATCH({first})")
            return 1
    return 0


def cmd_automaton(args) -> int:
    N = _horizon(args, 30)
    _, p = _source(args)
    cert = certify(p, N, args.guard, args.min_evidence)
    obj = cert.to_json()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "certificate.json").write_text(json.dumps(obj, indent=2) + "\n")
        if cert.automaton is not None:
            (out / "automaton.json").write_text(json.dumps(cert.automaton.to_json(), indent=2) + "\n")
            (out / "automaton.dot").write_text(cert.automaton.to_dot())
        if cert.series is not None:
            (out / "series.json").write_text(json.dumps(cert.series.to_json()) + "\n")
    print(f"horizon {N}, families {len(cert.families)}", end="")
    if cert.fit is not None and hasattr(cert.fit, "split_degree"):
        print(f", split degree {cert.fit.split_degree}, residue {len(cert.fit.residue)}", end="")
    print()
    for fam in cert.families:
        ex = fam.exponents.to_json() if fam.determined else {"observed": list(fam.observed)}
        print(f"  {''.join(fam.prefix) or '-'} ({''.join(fam.loop)})^n {''.join(fam.suffix) or '-'}: {json.dumps(ex)}")
    if cert.automaton is not None:
        print(f"automaton states {cert.automaton.n_states}")
    if cert.series is not None:
        print(f"series {cert.series}")
    for note in cert.notes:
        print(f"note: {note}")
    for fam in cert.offending:
        print(f"undetermined {''.join(fam.prefix)}|{''.join(fam.loop)}|{''.join(fam.suffix)} exponent prefix {list(fam.observed)}")
    print(cert.verdict.value)
    return 1 if cert.verdict is Verdict.MISMATCH else 0


def cmd_recurrence(args) -> int:
    fd = _field(args)
    action = args.action
    if action in ("terms", "zeros"):
        rec = _recurrence(args, fd)
        N = _horizon(args, 20)
        if action == "terms":
            vals = terms(rec, N)
            _emit(args, "\n".join(f"{n},{v}" for n, v in enumerate(vals)) + "\n")
        else:
            _emit(args, json.dumps(sorted(zero_set(rec, N))) + "\n")
        return 0
    if action == "fit":
        prefix = [fd.parse(t) for t in _csv_items(args.prefix, "prefix")]
        rec = minimal_recurrence(prefix)
        if rec is None:
            print("no recurrence of order at most half the prefix length")
            return 0
        _emit(args, json.dumps({"order": rec.order, **rec.to_json()}) + "\n")
        return 0
    # orbit
    u = [fd.parse(t) for t in _csv_items(args.u, "u")]
    v = [fd.parse(t) for t in _csv_items(args.v, "v")]
    if not args.M:
        raise UsageError("--M is required")
    M = Matrix.from_rows(fd, [[fd.parse(t) for t in row.split(",")] for row in args.M.split(";")])
    N = _horizon(args, 20)
    seq, rec = from_orbit(u, M, v, N)
    _emit(args, json.dumps({"terms": [str(a) for a in seq], "recurrence": rec.to_json()}) + "\n")
    return 0


def cmd_search(args) -> int:
    N = _horizon(args, 30)
    data, p = _source(args)
    if args.method == "groebner" or data is None:
        _check_cap(args, N)
        h = truncated_groebner(p, None, N).hilbert()
    else:
        h = hilbert_closed(data, N)
    hits = [n for n in range(args.n0, N + 1) if h[n] > args.c]
    print(f"bounded search over n in [{args.n0}, {N}] using {h.method}; nothing is claimed beyond {N}")
    _emit(args, json.dumps(hits) + "\n")
    return 0


def cmd_verify(args) -> int:
    only = [int(k) for k in _csv_items(args.only, "only")] if args.only else None
    print(f"seed {args.seed}")
    results = acceptance.run_all(args.seed, only)
    for r in results:
        print(r.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q, Fp or Fp(x), e.g. F11 or F7(x)")
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--alpha")
    common.add_argument("--beta")
    common.add_argument("--rho", type=int)
    common.add_argument("--prime", type=int)
    common.add_argument("--coeffs", help="comma-separated recurrence coefficients")
    common.add_argument("--init", help="comma-separated initial values")
    common.add_argument("--n", "-N", dest="n", type=int, help="horizon")
    common.add_argument("--method", choices=("closed", "groebner", "both"), default="closed")
    common.add_argument("--guard", type=int, default=3)
    common.add_argument("--min-evidence", type=int, default=3)
    common.add_argument("--out")
    common.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    common.add_argument("--presentation", help="presentation JSON (as written by build)")
    common.add_argument("--data", help="quadruple JSON {field, m, L, R, sigma}")
    common.add_argument("--cap", type=int, default=25, help="largest Gröbner horizon allowed")
    common.add_argument("--format", choices=("csv", "json", "text"), default="csv")

    parser = argparse.ArgumentParser(prog="lingrowth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="emit a presentation")
    sub.add_parser("hilbert", parents=[common], help="Hilbert values")
    sub.add_parser("automaton", parents=[common], help="fit and certify the automaton")
    rec = sub.add_parser("recurrence", parents=[common], help="recurrence utilities")
    rec.add_argument("action", choices=("terms", "zeros", "fit", "orbit"))
    rec.add_argument("--prefix")
    rec.add_argument("--u")
    rec.add_argument("--M", help="matrix rows separated by ';', entries by ','")
    rec.add_argument("--v")
    search = sub.add_parser("search", parents=[common], help="bounded search for h(n) > c")
    search.add_argument("--c", type=int, required=True)
    search.add_argument("--n0", type=int, default=0)
    ver = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    ver.add_argument("--only", help="comma-separated criterion numbers")
    return parser


COMMANDS = {
    "build": cmd_build,
    "hilbert": cmd_hilbert,
    "automaton": cmd_automaton,
    "recurrence": cmd_recurrence,
    "search": cmd_search,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FieldError, ShapeError, PresentationError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"lingrowth {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
