"""Command line front end.

Input files are UTF-8 JSON documents::

    {
      "flavor": "H",
      "X": [{"n": 3, "rank": 1, "ker_exp": 1, "coker_exp": 1, "torsion_exp": 3}],
      "Y": [{"n": 3, "rank": 1, "torsion_exp": 5}],
      "f": [{"n": 3, "C": [[1]]}],
      "selfmap_images": [[2]]
    }

Exponent fields default to 1 and ``selfmap_images`` to an empty list;
unknown keys are rejected. Exit codes: 0 success, 1 verification
disagreement, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .genus import (
    ClaimObstruction,
    GenusReport,
    claim_factor,
    genus_group,
    random_admissible_pair,
    realizable_det_subgroup,
)
from .intalg import IntMatrix
from .model import (
    DegreeData,
    MapModel,
    ModelError,
    SpaceModel,
    k_of,
    l_count,
    s_n,
    t_hat,
    t_total,
    top_degree,
)
from .oracle import OracleGuardError, enum_det_pairs

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT = 0, 1, 2

_TOP_KEYS = {"flavor", "X", "Y", "f", "selfmap_images"}
_DEGREE_KEYS = {"n", "rank", "ker_exp", "coker_exp", "torsion_exp"}
_MAP_KEYS = {"n", "C"}


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class InputDocument:
    model: MapModel
    selfmap_images: tuple[tuple[int, ...], ...] = field(default=())


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _keys(obj, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise InputError(f"{where}: unknown key(s) {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise InputError(f"{where}: missing key(s) {', '.join(missing)}")


def _space(records, flavor: str, side: str) -> SpaceModel:
    if not isinstance(records, list):
        raise InputError(f"{side}: expected a list of degree records")
    degs: dict[int, DegreeData] = {}
    for i, rec in enumerate(records):
        where = f"{side}[{i}]"
        _keys(rec, _DEGREE_KEYS, {"n", "rank"}, where)
        vals = {k: _int(v, f"{where}.{k}") for k, v in rec.items()}
        n = vals.pop("n")
        try:
            d = DegreeData(degree=n, **vals)
        except ModelError as exc:
            raise InputError(f"{where}: {exc}") from None
        if n in degs:
            raise InputError(f"{where}: degree {n} listed twice")
        degs[n] = d
    return SpaceModel(flavor, degs)


def parse_document(data) -> InputDocument:
    """Validate a decoded JSON document and build the map model."""
    _keys(data, _TOP_KEYS, {"flavor", "X", "Y", "f"}, "document")
    flavor = data["flavor"]
    if flavor not in ("H", "coH"):
        raise InputError(f"flavor: expected \"H\" or \"coH\", got {json.dumps(flavor)}")
    X = _space(data["X"], flavor, "X")
    Y = _space(data["Y"], flavor, "Y")

    if not isinstance(data["f"], list):
        raise InputError("f: expected a list of matrix records")
    mats: dict[int, IntMatrix] = {}
    for i, rec in enumerate(data["f"]):
        where = f"f[{i}]"
        _keys(rec, _MAP_KEYS, _MAP_KEYS, where)
        n = _int(rec["n"], f"{where}.n")
        rows = rec["C"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InputError(f"{where}.C (degree {n}): expected a list of rows")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise InputError(f"{where}.C (degree {n}): rows have different lengths {sorted(widths)}")
        entries = [[_int(x, f"{where}.C (degree {n})") for x in r] for r in rows]
        if n in mats:
            raise InputError(f"{where}: degree {n} listed twice")
        mats[n] = IntMatrix.from_rows(entries, widths.pop() if widths else X.rank(n))
    try:
        model = MapModel(X, Y, mats)
    except ModelError as exc:
        raise InputError(f"f: {exc}" if exc.where == "C" else str(exc)) from None

    images = data.get("selfmap_images", [])
    if not isinstance(images, list):
        raise InputError("selfmap_images: expected a list of unit tuples")
    k = k_of(model)
    out = []
    for i, tup in enumerate(images):
        if not isinstance(tup, list):
            raise InputError(f"selfmap_images[{i}]: expected a list of integers")
        if len(tup) != k:
            raise InputError(f"selfmap_images[{i}]: has {len(tup)} entries, expected k = {k}")
        out.append(tuple(_int(u, f"selfmap_images[{i}]") for u in tup))
    return InputDocument(model, tuple(out))


def load_document(path: str | Path) -> InputDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_document(data)


# -- commands ---------------------------------------------------------------


def compute_report(doc: InputDocument) -> GenusReport:
    try:
        return genus_group(doc.model, doc.selfmap_images)
    except ValueError as exc:
        raise InputError(f"selfmap_images: {exc}") from None


def cmd_that(doc: InputDocument, out) -> int:
    M = doc.model
    th = t_hat(M)
    print(f"t(X) = {t_total(M.X)}", file=out)
    print(f"t(Y) = {t_total(M.Y)}", file=out)
    top = max(top_degree(M.X), top_degree(M.Y))
    for n in range(1, top + 1):
        sx, sy = s_n(M.X, n), s_n(M.Y, n)
        if sx * sy > 1:
            print(f"s_{n}: X = {sx}, Y = {sy}", file=out)
    print(f"l(X) = {l_count(M.X)}", file=out)
    print(f"l(Y) = {l_count(M.Y)}", file=out)
    print(f"t̂ = {th}, k = {k_of(M)}", file=out)
    return EXIT_OK


def cmd_genus(doc: InputDocument, out, as_json: bool = False) -> int:
    rep = compute_report(doc)
    if as_json:
        print(json.dumps(rep.to_json()), file=out)
        return EXIT_OK
    print(f"t̂ = {rep.t_hat}, k = {rep.k}", file=out)
    coords = ", ".join(f"{side}{n}" for n, side in rep.layout) or "none"
    print(f"coordinates: {coords}", file=out)
    print(f"upper bound (Z*_t̂/±1)^k = {rep.upper_bound}", file=out)
    print(f"self-map images: {len(rep.image_gens)}", file=out)
    print(f"G(f) = {rep.genus_group}", file=out)
    return EXIT_OK


def cmd_verify_claim(doc: InputDocument, out, trials: int = 200, seed: int = 0, identity_only: bool = False) -> int:
    M = doc.model
    th = t_hat(M)
    degrees = [n for n in M.degrees() if M.X.rank(n) + M.Y.rank(n) > 0]
    rng = random.Random(seed)
    tally: dict[int, Counter] = {n: Counter() for n in degrees}
    for i in range(trials if degrees else 0):
        n = degrees[i % len(degrees)]
        C = M.matrix(n)
        if identity_only:
            G1, G2 = IntMatrix.identity(C.cols), IntMatrix.identity(C.rows)
        else:
            G1, G2 = random_admissible_pair(C, th, rng)
        try:
            claim_factor(G1, G2, C, th)
            tally[n]["pass"] += 1
        except ClaimObstruction:
            tally[n]["obstructed"] += 1
        except ArithmeticError:
            tally[n]["fail"] += 1
    print(f"t̂ = {th}, trials = {trials if degrees else 0}, seed = {seed}", file=out)
    for n in degrees:
        c = tally[n]
        print(f"degree {n}: pass {c['pass']}, fail {c['fail']}, obstructed {c['obstructed']}", file=out)
    bad = sum(c["fail"] + c["obstructed"] for c in tally.values())
    print("all pass" if not bad else f"{bad} trial(s) did not pass", file=out)
    return EXIT_OK if not bad else EXIT_DISAGREE


def cmd_oracle_diff(doc: InputDocument, out, bound: int | None = None) -> int:
    M = doc.model
    th = t_hat(M)
    rows = []
    for n in M.degrees():
        rx, ry = M.X.rank(n), M.Y.rank(n)
        C = M.C.get(n)
        rows.append((n, realizable_det_subgroup(C, rx, ry, th), enum_det_pairs(C, rx, ry, th, bound, degree=n)))

    status = EXIT_OK
    print(f"t̂ = {th}, box = {th + 2 if bound is None else bound}", file=out)
    print(f"{'degree':>6}  {'kind':<7}{'characterized':>14}{'oracle':>8}  result", file=out)
    for n, char, rep in rows:
        allowed = char.elements()
        extra = sorted(rep.found_pairs - allowed)
        unwitnessed = [g for g in char.det_generators() if g not in rep.found_pairs]
        ok = not extra and not unwitnessed
        print(
            f"{n:>6}  {char.kind.value:<7}{len(allowed):>14}{len(rep.found_pairs):>8}  "
            f"{'agree' if ok else 'DISAGREE'}",
            file=out,
        )
        for pair in extra:
            w = rep.witnesses[pair]
            print(f"        oracle pair {pair} outside characterization, A1={w.A1.tolist()} A2={w.A2.tolist()}", file=out)
        for g in unwitnessed:
            print(f"        generator {g} has no witness in the box", file=out)
        if not ok:
            status = EXIT_DISAGREE
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genuscalc", description="Genus groups of (co-)H-maps from algebraic models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("that", help="print t(X), t(Y), s_n, t̂, l(X), l(Y) and k")
    p.add_argument("file")

    p = sub.add_parser("genus", help="compute the genus group")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("verify-claim", help="check the factor-pair constructor on random admissible pairs")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--identity-only", action="store_true", help="only feed identity pairs")

    p = sub.add_parser("oracle-diff", help="compare realizable determinants with brute-force enumeration")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=None, help="entry bound of the box (default t̂ + 2)")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        doc = load_document(args.file)
        if args.command == "that":
            return cmd_that(doc, out)
        if args.command == "genus":
            return cmd_genus(doc, out, args.json)
        if args.command == "verify-claim":
            if args.trials < 0:
                raise InputError("--trials must be nonnegative")
            return cmd_verify_claim(doc, out, args.trials, args.seed, args.identity_only)
        return cmd_oracle_diff(doc, out, args.bound)
    except (InputError, OracleGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
