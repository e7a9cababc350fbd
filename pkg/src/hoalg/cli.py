"""Command line: ``python3 -m hoalg <command> ...``.

Exit status 0 on success, 1 when a check runs but fails (or on an internal
error), 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import enveloping as env
from . import operad_nsigma as ns
from . import operad_sigma as sy
from . import series as se
from . import trees as tr
from .free_algebras import FreeAlgebra, GradedSpace, induced_differential


class CheckFailed(Exception):
    """A check ran to completion and found a counterexample."""


def _bound(text: str):
    try:
        return tr.parse_bound(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _terms_json(x) -> list:
    fmt = tr.format_tree if isinstance(x, ns.RawElement) else sy.format_labeled
    return [{"tree": fmt(t), "coefficient": str(c)} for t, c in sorted(x.terms.items(), key=lambda kv: fmt(kv[0]))]


def _table(headers: list, rows: list) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# ----------------------------------------------------------------- commands


def cmd_basis(a) -> tuple[dict, str]:
    if a.flavor == "a":
        ts = ns.basis(a.n, a.m)
        shown = [tr.format_bracketing(t) for t in ts]
    else:
        ts = sy.basis_sym(a.n, a.m)
        shown = [sy.format_labeled(t) for t in ts]
    data = {"flavor": a.flavor, "m": str(a.m), "n": a.n, "count": len(shown), "trees": shown}
    return data, "\n".join(shown) + f"\n# {len(shown)} trees"


def cmd_normalize(a) -> tuple[dict, str]:
    if a.flavor == "a":
        raw = ns.parse_element(a.term, a.m)
        out = ns.normalize(raw)
    else:
        raw = sy.parse_sym_element(a.term, a.m)
        out = sy.normalize_sym(raw)
    data = {"flavor": a.flavor, "m": str(a.m), "input": str(raw), "normal_form": str(out), "terms": _terms_json(out)}
    return data, str(out)


def cmd_dims(a) -> tuple[dict, str]:
    table = se.dim_table(a.flavor, a.m, a.max_n)
    data = table.as_dict()
    headers = ["n", "dim"] + (["dim/n!"] if a.flavor == "l" else [])
    return data, _table(headers, table.entries)


def cmd_series_check(a) -> tuple[dict, str]:
    rep = se.verify_functional_equation(a.flavor, a.m, a.max_n)
    data = rep.as_dict()
    text = f"flavor={a.flavor} m={a.m} N={a.max_n}: " + ("ok" if rep.ok else "FAILED")
    if rep.closed_form_ok is not None:
        text += f" (closed form {'ok' if rep.closed_form_ok else 'FAILED'}: {'; '.join(rep.notes)})"
    if not rep.ok:
        raise CheckFailed(json.dumps(data))
    return data, text


def cmd_dcheck(a) -> tuple[dict, str]:
    m = a.m
    top = a.max_n if m is tr.INF else min(a.max_n, m)
    gens = []
    for n in range(2, top + 1):
        d = ns.dg_differential(ns.element(tr.corolla(n), m))
        dd = ns.dg_differential(d)
        gens.append({"n": n, "terms_in_d": len(d), "dd_zero": dd.is_zero()})
    rng = random.Random(a.seed)
    composite_ok = 0
    for _ in range(a.samples):
        n = rng.randint(2, max(2, a.max_n))
        t = tr.random_tree(n, m, rng, unary_prob=0.0)
        if ns.dg_differential(ns.dg_differential(ns.element(t, m))).is_zero():
            composite_ok += 1
    data = {"m": str(m), "generators": gens, "random_trees": a.samples, "random_ok": composite_ok}
    if a.space:
        space = GradedSpace.load(a.space)
        if not space.has_differential:
            raise ValueError("--space file has no differential")
        alg = FreeAlgebra(space, m, "a", "dg")
        checked = bad = 0
        for deg in range(1, (a.max_degree or 3) + 1):
            for k in alg.basis(deg):
                x = alg.element({k: 1})
                checked += 1
                if not induced_differential(induced_differential(x)).is_zero():
                    bad += 1
        data["free_algebra"] = {"checked": checked, "dd_nonzero": bad}
    rows = [(g["n"], g["terms_in_d"], g["dd_zero"]) for g in gens]
    text = _table(["n", "|d xi_n|", "dd=0"], rows) + f"\nrandom composite trees: {composite_ok}/{a.samples} with dd=0"
    if "free_algebra" in data:
        text += f"\nfree algebra basis elements: {data['free_algebra']['checked']} checked, {bad} failures"
    failed = any(not g["dd_zero"] for g in gens) or composite_ok != a.samples or data.get("free_algebra", {}).get("dd_nonzero")
    if failed:
        raise CheckFailed(json.dumps(data))
    return data, text


def cmd_pbw(a) -> tuple[dict, str]:
    L = env.LmStructure.load(a.lm)
    m = a.m if a.m is not None else L.m
    if a.m is not None and L.m is not tr.INF and a.m > L.m:
        raise ValueError(f"--m {a.m} exceeds the structure's m={L.m}")
    rep = env.pbw_compare(L, m, a.max_degree, strict_odd_only=a.strict_odd_only)
    data = rep.as_dict()
    rows = [(q, g, s, "yes" if mt else "no") for q, g, s, mt in rep.rows]
    text = _table(["q", "dim G^q", "|S^q|", "match"], rows)
    text += "\n" + ("asserted" if rep.asserted else "reported only (even generators)") + ": " + ("ok" if rep.ok else "MISMATCH")
    for note in rep.notes:
        text += f"\nnote: {note}"
    if not rep.ok:
        raise CheckFailed(json.dumps(data))
    return data, text


COMMANDS = {
    "basis": cmd_basis,
    "normalize": cmd_normalize,
    "dims": cmd_dims,
    "dcheck": cmd_dcheck,
    "pbw": cmd_pbw,
    "series-check": cmd_series_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hoalg", description="A(m)/L(m) operads, free algebras and PBW checks")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, flavor=True):
        if flavor:
            sp.add_argument("--flavor", choices=["a", "l"], default="a")
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("basis", help="list the admissible basis in arity n")
    common(s)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--m", type=_bound, required=True)

    s = sub.add_parser("normalize", help="normal form of a term")
    common(s)
    s.add_argument("--m", type=_bound, required=True)
    s.add_argument("term")

    s = sub.add_parser("dims", help="dimension table")
    common(s)
    s.add_argument("--m", type=_bound, required=True)
    s.add_argument("--max-n", type=_positive, default=8)

    s = sub.add_parser("series-check", help="verify the generating-function equation")
    common(s)
    s.add_argument("--m", type=_bound, required=True)
    s.add_argument("--max-n", type=_positive, default=se.DEFAULT_N)

    s = sub.add_parser("dcheck", help="check d o d = 0 in the dg operad (and optionally a free algebra)")
    common(s, flavor=False)
    s.add_argument("--m", type=_bound, required=True)
    s.add_argument("--max-n", type=_positive, default=6)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--space", help="GradedSpace JSON with a differential")
    s.add_argument("--max-degree", type=_positive, default=None)

    s = sub.add_parser("pbw", help="filtration dims of U_m(L) against the straightening basis")
    common(s, flavor=False)
    s.add_argument("--lm", required=True, help="LmStructure JSON")
    s.add_argument("--m", type=_bound, default=None)
    s.add_argument("--max-degree", type=_positive, default=3)
    s.add_argument("--strict-odd-only", action="store_true")
    return p


def _emit(data, text, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(data, indent=2, sort_keys=True, default=_json_default) + "\n")
    else:
        stream.write(text.rstrip("\n") + "\n")


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    return str(o)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        data, text = COMMANDS[a.command](a)
    except CheckFailed as e:
        stdout.write(str(e) + "\n")
        stderr.write(f"hoalg {a.command}: check failed\n")
        return 1
    except tr.ParseError as e:
        stderr.write(f"hoalg {a.command}: parse error: {e}\n")
        return 2
    except (ValueError, OSError) as e:
        stderr.write(f"hoalg {a.command}: invalid input: {e}\n")
        return 2
    except Exception as e:  # noqa: BLE001
        stderr.write(f"hoalg {a.command}: internal error: {type(e).__name__}: {e}\n")
        return 1
    _emit(data, text, a.format, stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
