"""Command-line front end: JSON in, JSON out.

Exit status is 0 on success, 1 on a domain error (no solution, failed
reconstruction, ...) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from functools import lru_cache
from importlib import resources
from typing import Any, Callable, Optional

import jsonschema

from . import lattice, mdcrt, multivec, pairvec
from .errors import MdcrtError
from .exactint import Matrix, Vector, det
from .freqsim import SignalSpec, end_to_end

SAFE_INT = 2**53
COMMANDS = (
    "lcrm",
    "fpd",
    "rem",
    "crt",
    "neta",
    "solve-multi",
    "solve-pair",
    "check-condition",
    "onedim-compare",
    "simulate",
    "bound",
)


class InputError(Exception):
    """Malformed input; carries a JSON pointer to the offending value."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message


def _pointer(path) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


@lru_cache(maxsize=None)
def load_schema(command: str) -> dict:
    with resources.files("gmdcrt").joinpath(f"schemas/{command}.json").open() as fh:
        return json.load(fh)


def validate(command: str, doc: Any) -> None:
    schema = load_schema(command)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise InputError(_pointer(err.absolute_path), err.message)


def parse_int(x, pointer: str = "") -> int:
    if isinstance(x, bool):
        raise InputError(pointer, "expected an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            pass
    raise InputError(pointer, f"expected an integer, got {x!r}")


def parse_vector(doc, pointer: str = "") -> Vector:
    if not isinstance(doc, list) or not doc:
        raise InputError(pointer, "expected a non-empty array of integers")
    return tuple(parse_int(x, f"{pointer}/{i}") for i, x in enumerate(doc))


def parse_matrix(doc, pointer: str = "") -> Matrix:
    """Row-major square integer matrix; integers may be JSON numbers or decimal strings."""
    if not isinstance(doc, list) or not doc:
        raise InputError(pointer, "expected a non-empty array of rows")
    rows = tuple(parse_vector(r, f"{pointer}/{i}") for i, r in enumerate(doc))
    for i, r in enumerate(rows):
        if len(r) != len(rows[0]):
            raise InputError(f"{pointer}/{i}", f"row has {len(r)} entries, expected {len(rows[0])}")
    if len(rows) != len(rows[0]):
        raise InputError(pointer, f"matrix is {len(rows)}x{len(rows[0])}, expected square")
    return rows


def _moduli(doc, key: str = "moduli") -> multivec.ModuliSet:
    mats = [parse_matrix(m, f"/{key}/{i}") for i, m in enumerate(doc[key])]
    n = len(mats[0])
    for i, m in enumerate(mats):
        if len(m) != n:
            raise InputError(f"/{key}/{i}", f"expected a {n}x{n} matrix")
    return multivec.ModuliSet(tuple(mats))


def _overrides(entries, pointer: str) -> dict:
    out = {}
    for i, e in enumerate(entries or []):
        out[tuple(sorted(e["subset"]))] = parse_matrix(e["lcrm"], f"{pointer}/{i}/lcrm")
    return out


def jsonable(x):
    """Tuples to lists, and integers beyond 53 bits to decimal strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (float, str)):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= SAFE_INT else x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [jsonable(v) for v in sorted(x)]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def cmd_lcrm(doc, args):
    ms = _moduli(doc)
    r = lattice.lcrm(ms.moduli)
    return {"lcrm": r, "det": det(r)}


def cmd_fpd(doc, args):
    m = parse_matrix(doc["modulus"], "/modulus")
    pts = lattice.fpd(m).points()
    return {"size": len(pts), "points": pts}


def cmd_rem(doc, args):
    m = parse_matrix(doc["modulus"], "/modulus")
    out = []
    for i, v in enumerate(doc["vectors"]):
        f = parse_vector(v, f"/vectors/{i}")
        if len(f) != len(m):
            raise InputError(f"/vectors/{i}", f"expected length {len(m)}")
        res = lattice.vector_remainder(f, m)
        out.append({"vector": f, "quotient": res.quotient, "remainder": res.remainder})
    return {"results": out}


def cmd_crt(doc, args):
    ms = _moduli(doc)
    res = [parse_vector(v, f"/residues/{i}") for i, v in enumerate(doc["residues"])]
    if len(res) != ms.gamma:
        raise InputError("/residues", f"expected {ms.gamma} residues")
    sol = mdcrt.solve_residues(ms.moduli, res)
    return {"value": sol.value, "lcrm": sol.combined_modulus}


def _rho(doc, args, default: Optional[int] = None) -> int:
    rho = args.rho if args.rho is not None else doc.get("rho", default)
    if rho is None:
        raise InputError("/rho", "rho is required (in the document or via --rho)")
    return rho


def _all_overrides(doc, args) -> dict:
    out = _overrides(doc.get("overrides"), "/overrides")
    if args.overrides:
        with open(args.overrides) as fh:
            extra = json.load(fh)
        if isinstance(extra, dict) and "overrides" in extra:
            extra = extra["overrides"]
        validate_fragment(extra)
        out.update(_overrides(extra, ""))
    return out


def validate_fragment(entries) -> None:
    schema = dict(load_schema("neta"))
    sub = {"$defs": schema["$defs"], "$ref": "#/$defs/overrides"}
    errors = list(jsonschema.Draft202012Validator(sub).iter_errors(entries))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise InputError(_pointer(err.absolute_path), f"overrides file: {err.message}")


def cmd_neta(doc, args):
    ms = _moduli(doc)
    rng = multivec.compute_range(ms, _rho(doc, args, 2), _all_overrides(doc, args))
    pts = sorted(rng.points)
    return {
        "eta": rng.eta,
        "alpha": rng.alpha,
        "size": len(pts),
        "points": pts,
        "lcrms": [{"subset": list(k), "lcrm": v} for k, v in sorted(rng.subset_lcrms.items())],
    }


def cmd_solve_multi(doc, args):
    ms = _moduli(doc)
    rho = _rho(doc, args, max(len(s) for s in doc["sets"]))
    sets = [[parse_vector(v, f"/sets/{j}/{i}") for i, v in enumerate(s)] for j, s in enumerate(doc["sets"])]
    system = multivec.make_system(ms, sets, rho)
    rng = multivec.compute_range(ms, rho, _all_overrides(doc, args))
    out = multivec.reconstruct(ms, system, rng)
    return {
        "vectors": out.sorted_vectors(),
        "found_order": out.found_order,
        "crt_invocations": out.crt_invocations,
        "audit": [e.to_dict() for e in out.rounds],
    }


def cmd_solve_pair(doc, args):
    ms = _moduli(doc)
    sets = [tuple(parse_vector(v, f"/sets/{j}/{i}") for i, v in enumerate(s)) for j, s in enumerate(doc["sets"])]
    r = parse_matrix(doc["lcrm"], "/lcrm") if "lcrm" in doc else None
    out = pairvec.reconstruct_pair(pairvec.PairSystem(ms, tuple(sets)), r)
    return {"d_star": out.d_star, "vectors": out.vectors}


def cmd_check_condition(doc, args):
    ms = _moduli(doc)
    d = parse_vector(doc["d"], "/d")
    if len(d) != ms.dim:
        raise InputError("/d", f"expected length {ms.dim}")
    neg = tuple(-x for x in d)
    return {
        "holds": pairvec.check_condition(ms, d),
        "in_difference_range": pairvec.in_difference_range(ms, d),
        "negation_in_difference_range": pairvec.in_difference_range(ms, neg),
        "in_half_lattice": [lattice.in_half_lattice(d, m) for m in ms.moduli],
    }


def cmd_onedim_compare(doc, args):
    p = pairvec.OneDimProblem(tuple(doc["moduli"]))
    cond = pairvec.onedim_condition_set(p)
    prior = pairvec.onedim_prior_sets(p)
    named = {"half_smallest": prior.half_smallest, "all_odd": prior.all_odd, "odd_but_last": prior.odd_but_last}
    return {
        "M": p.M,
        "condition_set": sorted(cond),
        "prior_sets": {k: sorted(v) for k, v in named.items()},
        "strict_subset": {k: bool(v) and v < cond for k, v in named.items()},
    }


def _amplitude(a) -> complex:
    if a is None:
        return 1.0
    if isinstance(a, list):
        return complex(a[0], a[1])
    return complex(a)


def cmd_simulate(doc, args):
    ms = _moduli(doc)
    tones = tuple(
        (_amplitude(t.get("amplitude")), parse_vector(t["frequency"], f"/tones/{i}/frequency"))
        for i, t in enumerate(doc["tones"])
    )
    for i, (_, f) in enumerate(tones):
        if len(f) != ms.dim:
            raise InputError(f"/tones/{i}/frequency", f"expected length {ms.dim}")
    spec = SignalSpec(ms.dim, tones, float(doc.get("noise_sigma", 0.0)))
    rho = args.rho if args.rho is not None else doc.get("rho")
    res = end_to_end(
        spec,
        ms,
        args.seed,
        rho=rho,
        threshold=args.threshold,
        prior=args.prior,
        overrides=_all_overrides(doc, args),
    )
    return {"vectors": res.sorted_vectors(), "residue_sets": res.residue_sets}


def cmd_bound(doc, args):
    if doc["rho"] > doc["gamma"]:
        raise InputError("/rho", "rho must not exceed gamma")
    return {"bound": multivec.crt_invocation_bound(doc["gamma"], doc["rho"])}


HANDLERS: dict[str, Callable] = {
    "lcrm": cmd_lcrm,
    "fpd": cmd_fpd,
    "rem": cmd_rem,
    "crt": cmd_crt,
    "neta": cmd_neta,
    "solve-multi": cmd_solve_multi,
    "solve-pair": cmd_solve_pair,
    "check-condition": cmd_check_condition,
    "onedim-compare": cmd_onedim_compare,
    "simulate": cmd_simulate,
    "bound": cmd_bound,
}


def to_csv(points) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    dim = len(points[0]) if points else 0
    w.writerow([f"x{i + 1}" for i in range(dim)])
    w.writerows(points)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gmdcrt", description="Matrix-modulus CRT toolkit with JSON input and output.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", nargs="?", default="-", help="JSON input file, '-' for stdin")
        sp.add_argument("--out", help="write the result here instead of stdout")
        if name in ("neta", "solve-multi", "simulate"):
            sp.add_argument("--rho", type=int)
            sp.add_argument("--overrides", help="JSON file of lcrm overrides")
        if name in ("fpd", "neta"):
            sp.add_argument("--csv", action="store_true", help="emit the points as CSV")
        if name == "simulate":
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--threshold", type=float, default=0.5)
            sp.add_argument("--prior", action="store_true", help="use the two-vector solver")
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(status: int, kind: str, message: str, pointer: Optional[str] = None) -> int:
    doc = {"error": kind, "message": message}
    if pointer is not None:
        doc["pointer"] = pointer
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")
    return status


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            raw = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                raw = fh.read()
        doc = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(2, type(exc).__name__, str(exc))
    try:
        validate(args.command, doc)
        result = HANDLERS[args.command](doc, args)
    except InputError as exc:
        return _fail(2, "SchemaError", exc.message, exc.pointer)
    except OSError as exc:
        return _fail(2, type(exc).__name__, str(exc))
    except (MdcrtError, ValueError) as exc:
        return _fail(1, type(exc).__name__, str(exc))
    if getattr(args, "csv", False):
        text = to_csv(result["points"])
    else:
        text = json.dumps(jsonable(result), sort_keys=True) + "\n"
    _emit(text, args.out)
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
