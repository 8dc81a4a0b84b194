"""Command-line interface: one subcommand per library operation.

Output is JSON by default (CSV via --format csv where tabular), written to
stdout.  Exit status 0 on success, 1 on a property violation or golden-fixture
mismatch, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import bounds as bounds_mod
from . import dilworth, height, search
from .divisibility import is_n_divisible, is_tail_n_divisible, max_division_index, reducibility
from .errors import InputError
from .periodicity import find_power
from .words import Word

__all__ = ["main", "run"]


def _parse_word(args) -> Word:
    return Word.from_text(args.word, alphabet_size=args.alphabet)


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _golden(path: Path, content: str) -> int:
    if path.exists():
        if path.read_text() == content:
            _emit({"golden": str(path), "status": "match"})
            return 0
        _emit({"golden": str(path), "status": "mismatch"})
        return 1
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content)
    _emit({"golden": str(path), "status": "written"})
    return 0


def _cmd_check_ndiv(args) -> int:
    w = _parse_word(args)
    if args.tail:
        witness = is_tail_n_divisible(w, args.n)
        payload = {"word": w.text, "n": args.n, "sense": "tail", "divisible": witness is not None}
        if witness is not None:
            payload["witness"] = witness.to_json_dict()
    else:
        witness = is_n_divisible(w, args.n)
        payload = {"word": w.text, "n": args.n, "sense": "ordinary", "divisible": witness is not None}
        if witness is not None:
            payload["witness"] = witness.to_json_dict()
        payload["max_index"] = max_division_index(w) if len(w) else 0
    _emit(payload)
    return 0


def _cmd_check_power(args) -> int:
    w = _parse_word(args)
    occ = find_power(w, args.d)
    payload = {"word": w.text, "d": args.d, "found": occ is not None}
    if occ is not None:
        payload["power"] = occ.to_json_dict()
    _emit(payload)
    return 0


def _cmd_reduce(args) -> int:
    w = _parse_word(args)
    verdict = reducibility(w, args.n, args.d)
    _emit({"word": w.text, "n": args.n, "d": args.d, **verdict.to_json_dict()})
    return 0


def _selector_csv(decomposition, p: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["position", "color", "tuple_hash"])
    for row in dilworth.selector_trace_rows(decomposition, p):
        writer.writerow(row)
    return buf.getvalue()


def _cmd_chains(args) -> int:
    w = _parse_word(args)
    outcome = dilworth.build_tail_poset(w, args.d)
    if outcome.poset is None:
        _emit({"word": w.text, "d": args.d, "power": outcome.power.to_json_dict()})
        return 0
    decomposition = dilworth.chain_decompose(outcome.poset)
    run = dilworth.selector_run_length(decomposition, args.p)
    trace = _selector_csv(decomposition, args.p)
    if args.golden:
        return _golden(Path(args.golden) / f"chains_{w.text}_d{args.d}_p{args.p}.csv", trace)
    if args.format == "csv":
        sys.stdout.write(trace)
        return 0
    _emit(
        {
            "word": w.text,
            "d": args.d,
            "p": args.p,
            "elements": len(outcome.poset),
            "chains": decomposition.chain_count,
            "colors": list(decomposition.colors),
            "run_length": run,
        }
    )
    return 0


def _cmd_height(args) -> int:
    w = _parse_word(args)
    decomposition = height.word_height(w, args.n)
    _emit(
        {
            "word": w.text,
            "n": args.n,
            "height": decomposition.height,
            "factors": [[f.root.text, f.exponent] for f in decomposition.factors],
        }
    )
    return 0


def _cmd_excise(args) -> int:
    w = _parse_word(args)
    trace = height.excise(w, args.n, max_steps=args.max_steps)
    lines = "".join(json.dumps(s.to_json_dict(), sort_keys=True) + "\n" for s in trace.steps)
    if args.golden:
        return _golden(Path(args.golden) / f"excise_{w.text}_n{args.n}.jsonl", lines)
    if args.format == "jsonl":
        sys.stdout.write(lines)
        return 0
    stats = height.fragment_statistics(trace)
    _emit(
        {
            "word": w.text,
            "n": args.n,
            "steps": [s.to_json_dict() for s in trace.steps],
            "remainder": trace.splice().text == w.text and "".join(
                w.alphabet.letter_text(w.letters[p]) for p in trace.final_positions
            ) or None,
            "piece_histogram": {str(k): v for k, v in sorted(stats.histogram.items())},
        }
    )
    return 0


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _cmd_bounds(args) -> int:
    ns = _parse_range(args.n)
    ds = _parse_range(args.d) if args.d else None
    rows = []
    for n in ns:
        for d in [n] if ds is None else ds:
            if d < n:
                continue
            psi = bounds_mod.word_length_bound(n, d, args.l, base=args.base)
            phi = bounds_mod.height_bound(n, args.l, base=args.base)
            ext = bounds_mod.external_bounds(n, args.l)
            rows.append(
                {
                    "n": n,
                    "d": d,
                    "l": args.l,
                    "psi_exact": psi.exact,
                    "psi_display": psi.display_int,
                    "phi_display": phi.display_int,
                    "upsilon": bounds_mod.essential_height_bound(n, args.l),
                    "lopatin": ext["lopatin"],
                    "kuzmin_lower": ext["kuzmin_lower"],
                    "gk_lower": str(ext["gk_lower"]),
                }
            )
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        header = ["n", "d", "l", "psi_exact", "psi_display", "phi_display", "upsilon", "lopatin", "kuzmin_lower", "gk_lower"]
        writer.writerow(header)
        for row in rows:
            writer.writerow([row[h] for h in header])
        return 0
    _emit({"rows": rows})
    return 0


def _cmd_search(args) -> int:
    query = search.AvoiderQuery(n=args.n, d=args.d, l=args.l, max_len=args.max_len, gate=args.gate)
    report = search.extremal_length(query, workers=args.workers)
    sys.stdout.write(report.to_json(include_timing=args.timing) + "\n")
    return 0


def _cmd_count(args) -> int:
    query = search.AvoiderQuery(n=args.n, d=args.d, l=args.l, max_len=args.max_len, gate=args.gate)
    counts = search.count_avoiders(query, workers=args.workers)
    _emit({"params": {"n": args.n, "d": args.d, "l": args.l, "max_len": args.max_len}, "counts": counts})
    return 0


def _cmd_audit(args) -> int:
    config = search.HarnessConfig(seed=args.seed)
    if args.quick:
        for name in (
            "comparable_tails", "few_factor_periods", "repeat_reducibility",
            "tail_reducibility", "process_sequences", "selector_recursions",
            "cycle_windows", "cycle_recursions", "excision_traces",
        ):
            setattr(config, name, 50)
    report = search.property_harness(config)
    payload = report.to_json_dict()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"audit_seed{args.seed}.json").write_text(json.dumps(payload, indent=2, sort_keys=True))
    _emit(payload)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="divwords", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def word_args(p):
        p.add_argument("--word", required=True, help="letters a..z, or dotted ranks like 3.1.2")
        p.add_argument("--alphabet", type=int, default=None, help="alphabet size when not implied by the word")

    p = sub.add_parser("check-ndiv", help="decide n-divisibility and print a witness")
    word_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tail", action="store_true", help="use the tail sense")
    p.set_defaults(fn=_cmd_check_ndiv)

    p = sub.add_parser("check-power", help="find a d-th power subword")
    word_args(p)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(fn=_cmd_check_power)

    p = sub.add_parser("reduce", help="n-divisible, contains a power, or neither")
    word_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("chains", help="tail poset, chain coloring, selector trace")
    word_args(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, default=1, help="selector prefix length")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--golden", default=None, help="write/verify the CSV trace under this directory")
    p.set_defaults(fn=_cmd_chains)

    p = sub.add_parser("height", help="minimal factorization into short-root powers")
    word_args(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_height)

    p = sub.add_parser("excise", help="run the periodic-fragment excision process")
    word_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--format", choices=["json", "jsonl"], default="json")
    p.add_argument("--golden", default=None, help="write/verify the JSONL trace under this directory")
    p.set_defaults(fn=_cmd_excise)

    p = sub.add_parser("bounds", help="closed-form bound table")
    p.add_argument("--n", required=True, help="single value or range like 2..5")
    p.add_argument("--d", default=None, help="single value or range; defaults to d = n")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--base", type=int, choices=[2, 3], default=3)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("search", help="exact extremal avoider length")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--gate", choices=["ordinary", "tail"], default="ordinary")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte determinism)")
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("count", help="avoider counts per length")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--gate", choices=["ordinary", "tail"], default="ordinary")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("audit", help="run the randomized audit batches")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="small batches for smoke runs")
    p.add_argument("--out", default=None, help="directory for the audit report")
    p.set_defaults(fn=_cmd_audit)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        parser.exit(2, f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
