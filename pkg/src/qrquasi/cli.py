"""``qr``: batch front end for models, tables, fits and [Q,R]=0 certificates.

Exit codes: 0 pass, 2 failed check or no quasi-polynomial, 3 input error,
4 gamma search exhausted.  Reports are JSON with sorted keys, so identical
inputs give byte-identical output; wall-clock timing is only added with
``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import _linalg as la
from .characters import Box
from .corpus import (canonical_json, document_hash, example_names, get_example,
                     model_from_document, model_to_document)
from .errors import CheckFailed, QRError, ZeroNotInDelta
from .localization import Polarization, index_character, multiplicity_function, truncated_series_oracle
from .polyhedra import _s


def _parse_k(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _parse_box(text: str) -> Box:
    try:
        ranges = []
        for part in text.split(","):
            lo, hi = part.split(":")
            ranges.append((int(lo), int(hi)))
        return Box.from_ranges(ranges)
    except ValueError:
        raise QRError(f"bad box {text!r}; expected lo:hi,lo:hi,...") from None


def _parse_vector(text: str) -> tuple:
    try:
        return la.vec(x for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise QRError(f"bad rational vector {text!r}") from None


def _load_model(args):
    if args.model:
        raw = Path(args.model).read_text(encoding="utf-8")
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise QRError(f"{args.model}: {exc}") from exc
        return model_from_document(doc), doc
    if args.example:
        model = get_example(args.example)
        return model, model_to_document(model)
    raise QRError("pass --model FILE or --example NAME")


def _report(args, doc, model, result, extra=None) -> dict:
    out = {
        "command": args.command,
        "arguments": {k: v for k, v in sorted(vars(args).items())
                      if k not in ("command", "func", "timing") and not k.startswith("_")
                      and v is not None},
        "input_sha256": document_hash(doc),
        "seed": args.seed,
        "polarization": [_s(x) for x in Polarization.for_model(model, args.seed).v],
        "result": result,
    }
    if extra:
        out.update(extra)
    return out


def _default_box(model, k: int) -> Box:
    return Box.around([la.scale(k, p.mu) for p in model.points])


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QR_THREADS", "1")))
    except ValueError:
        return 1


def _table_row(job):
    model, k, box, dominant, seed = job
    v = Polarization.for_model(model, seed)
    m = multiplicity_function(model, model.roots, v)
    rows = []
    for lam in box:
        if dominant and not model.roots.is_dominant(lam):
            continue
        val = m(k, lam)
        if val:
            rows.append({"k": k, "lambda": list(lam), "value": val})
    return rows


def _antisymmetry_ok(model, k: int, box: Box, seed: int) -> bool:
    from .root_lattice import shifted_action

    rs = model.roots
    if rs.is_torus:
        return True
    m = multiplicity_function(model, rs, Polarization.for_model(model, seed))
    for lam in box:
        base = m(k, lam)
        for w in rs.weyl_elements:
            img = shifted_action(w, lam, rs.rho)
            if all(la.frac(x).denominator == 1 for x in img) and m(k, la.intvec(img)) != w.sign * base:
                return False
    return True


def cmd_examples(args) -> int:
    if args.name == "list":
        _emit(args, {"examples": example_names(),
                     "products": "join names with '*', e.g. cp1*s2-symmetric"})
        return 0
    model = get_example(args.name)
    text = canonical_json(model_to_document(model))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_mult_table(args) -> int:
    model, doc = _load_model(args)
    ks = _parse_k(args.k)
    jobs = []
    for k in ks:
        box = _parse_box(args.box) if args.box else _default_box(model, k)
        jobs.append((model, k, box, args.dominant, args.seed))
    if _threads() > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=_threads()) as pool:
            chunks = list(pool.map(_table_row, jobs))
    else:
        chunks = [_table_row(j) for j in jobs]
    rows = [r for c in chunks for r in c]
    anti = all(_antisymmetry_ok(model, j[1], j[2], args.seed) for j in jobs)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k"] + [f"lambda{i + 1}" for i in range(model.rank)] + ["value"])
        for r in rows:
            w.writerow([r["k"]] + r["lambda"] + [r["value"]])
        sys.stdout.write(buf.getvalue())
        return 0
    result = {"kind": "m_G" if args.dominant else "m", "rows": rows, "antisymmetry_ok": anti}
    _emit(args, _report(args, doc, model, result))
    return 0


def cmd_oracle(args) -> int:
    model, doc = _load_model(args)
    rows = []
    for k in _parse_k(args.k):
        box = _parse_box(args.box) if args.box else _default_box(model, k)
        char = truncated_series_oracle(model, k, box)
        check = index_character(model, k, box, Polarization.for_model(model, args.seed))
        rows.append({"k": k, "box": str(box),
                     "entries": [{"lambda": list(lam), "value": char[lam]} for lam in char],
                     "matches_localization": char == check})
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k"] + [f"lambda{i + 1}" for i in range(model.rank)] + ["value"])
        for r in rows:
            for e in r["entries"]:
                w.writerow([r["k"]] + e["lambda"] + [e["value"]])
        sys.stdout.write(buf.getvalue())
        return 0
    _emit(args, _report(args, doc, model, {"characters": rows}))
    return 0


def cmd_fit_qp(args) -> int:
    from .moment_geometry import construct_p
    from .quasipoly import fit

    model, doc = _load_model(args)
    gamma = _parse_vector(args.gamma) if args.gamma else None
    try:
        con = construct_p(model, model.roots, gamma)
    except ZeroNotInDelta as exc:
        raise ZeroNotInDelta(f"{exc}; try: qr qr-check --mode vanishing") from exc
    degree = args.degree if args.degree is not None else model.dim // 2 + 1
    m = multiplicity_function(model, model.roots, Polarization.for_model(model, args.seed))
    qp = fit(m, con.region, degree, args.period, horizon=args.horizon)
    result = {"quasi_polynomial": qp.to_json(), "construction": con.to_json(),
              "period": qp.period, "degree": qp.degree}
    _emit(args, _report(args, doc, model, result, {"gamma": [_s(x) for x in con.gamma.gamma]}))
    return 0


def cmd_qr_check(args) -> int:
    from .reduction import ReducedLevelData, qr_check

    model, doc = _load_model(args)
    xi = _parse_vector(args.xi) if args.xi else None
    if xi is None and args.mode != "vanishing":
        raise QRError("--xi is required for this mode")
    level = None
    if args.level:
        level = ReducedLevelData.from_json(json.loads(Path(args.level).read_text(encoding="utf-8")))
    gamma = _parse_vector(args.gamma) if args.gamma else None
    v = Polarization.for_model(model, args.seed)
    try:
        cert = qr_check(model, model.roots, xi, args.kmax, args.mode, level=level, gamma=gamma, v=v)
        code = 0
    except CheckFailed as exc:
        cert, code = exc.certificate, 2
    if args.format == "table":
        sys.stdout.write(cert.table() + "\n")
    else:
        _emit(args, _report(args, doc, model, cert.to_json()))
    return code


def _emit(args, payload) -> None:
    if getattr(args, "timing", False) and isinstance(payload, dict):
        payload["timing_seconds"] = round(time.perf_counter() - args._start, 3)
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qr", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def model_args(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--model", help="model document (JSON)")
        g.add_argument("--example", help="built-in example name")
        sp.add_argument("--seed", type=int, default=0, help="polarization seed")
        sp.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    sp = sub.add_parser("examples", help="list or print example model documents")
    sp.add_argument("name", nargs="?", default="list")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_examples)

    sp = sub.add_parser("mult-table", help="table of m(k, lambda) or m_G(k, lambda)")
    model_args(sp)
    sp.add_argument("--k", required=True, help="level k or range a..b")
    sp.add_argument("--box", help="lo:hi,lo:hi,... (use --box=-1:5 for negatives)")
    sp.add_argument("--dominant", action="store_true", help="only dominant weights (m_G)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_mult_table)

    sp = sub.add_parser("fit-qp", help="fit m on the cone over p")
    model_args(sp)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--period", type=int, default=12)
    sp.add_argument("--gamma", help="explicit gamma as a,b,...")
    sp.add_argument("--horizon", type=int, default=30)
    sp.set_defaults(func=cmd_fit_qp)

    sp = sub.add_parser("qr-check", help="compare both sides of [Q,R]=0")
    model_args(sp)
    sp.add_argument("--xi", help="level as a,b,... (fractions p/q allowed)")
    sp.add_argument("--mode", choices=("point-case", "fit-case", "vanishing"), required=True)
    sp.add_argument("--kmax", type=int, default=20)
    sp.add_argument("--level", help="reduced level data (JSON)")
    sp.add_argument("--gamma")
    sp.add_argument("--format", choices=("json", "table"), default="json")
    sp.set_defaults(func=cmd_qr_check)

    sp = sub.add_parser("oracle", help="index character by truncated series expansion")
    model_args(sp)
    sp.add_argument("--k", required=True)
    sp.add_argument("--box")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._start = time.perf_counter()
    try:
        return args.func(args)
    except QRError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
