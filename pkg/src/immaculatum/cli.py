"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 invalid fan, 3 computation limit
exceeded, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import (ConsistencyError, Direction, bw_hull_check, decide_infinite,
                          imm_infinity_contains, imm_infinity_description, interior_class,
                          witness_immaculate_family)
from .cohomology import cohomology, euler_characteristic, immaculate_scan, is_immaculate
from .fan import InvalidFanError, ensure_valid, load_fan, parse_builtin, validate
from .homology import LimitExceeded, tempting_sets
from .picard import canonical_class, class_of, divisor_rep, picard_group
from .polyhedra import HALF_OPEN, INTERIOR, forbidden_cone, is_strongly_convex, zonotope, zonotope_classes

EXIT_OK, EXIT_USAGE, EXIT_FAN, EXIT_LIMIT, EXIT_INTERNAL = 0, 1, 2, 3, 4

VALUE_OPTIONS = ("--box", "--divisor", "--class", "--direction")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    fan_file: str | None
    builtin: str | None
    command: str
    fmt: str = "text"
    box: str | None = None
    divisor: str | None = None
    class_coords: str | None = None
    direction: str | None = None
    count: int = 10
    out: str | None = None
    max_cells: int | None = None


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _vec(v):
    return [_num(a) for a in v]


def _fmt_vec(v):
    return "(" + ",".join(str(_num(a)) for a in v) + ")"


def _ser_class(pic, L):
    return {"free": list(L.free), "torsion": list(L.torsion), "divisor_rep": list(divisor_rep(pic, L))}


def _txt_class(pic, L):
    s = _fmt_vec(L.free)
    if L.moduli:
        s += " torsion " + _fmt_vec(L.torsion) + " mod " + _fmt_vec(L.moduli)
    return s + "  divisor " + _fmt_vec(divisor_rep(pic, L))


def _ints(text, what):
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _parse_box(text, r):
    if text is None:
        return [(-6, 6)] * r
    parts = text.split(",")
    out = []
    for part in parts:
        try:
            lo, hi = part.split(":")
            out.append((int(lo), int(hi)))
        except ValueError:
            raise UsageError(f"box entries look like lo:hi, got {part!r}") from None
    if len(out) == 1 and r > 1:
        out = out * r
    if len(out) != r:
        raise UsageError(f"box needs {r} intervals")
    return out


def _read_class(cfg, pic):
    if cfg.divisor is not None and cfg.class_coords is not None:
        raise UsageError("give either --divisor or --class, not both")
    if cfg.divisor is not None:
        c = _ints(cfg.divisor, "--divisor")
        if len(c) != pic.n:
            raise UsageError(f"--divisor needs {pic.n} coefficients")
        return class_of(pic, c)
    if cfg.class_coords is not None:
        free_txt, _, tors_txt = cfg.class_coords.partition(";")
        free = _ints(free_txt, "--class")
        tors = _ints(tors_txt, "--class torsion") if tors_txt else []
        try:
            return pic.make_class(free, tors)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("this command needs --divisor or --class")


def _load(cfg):
    if (cfg.fan_file is None) == (cfg.builtin is None):
        raise UsageError("give exactly one of --fan FILE or --builtin SPEC")
    if cfg.builtin is not None:
        try:
            return parse_builtin(cfg.builtin)
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc)) from None
    try:
        return load_fan(cfg.fan_file)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InvalidFanError([f"cannot parse fan file: {exc}"]) from None


def compute(cfg: RunConfig, fan):
    """Run one subcommand; returns ``(json_result, text_lines)``."""
    cmd = cfg.command
    if cmd == "validate":
        rep = validate(fan)
        return {"ok": rep.ok, "violations": rep.violations}, (
            ["ok"] if rep.ok else ["invalid"] + [f"  {v}" for v in rep.violations])
    ensure_valid(fan)
    pic = picard_group(fan)

    if cmd == "picard":
        K = canonical_class(pic)
        res = {"n": pic.n, "d": fan.dim, "r": pic.r, "torsion_invariants": list(pic.torsion_invariants),
               "E_classes": [_ser_class(pic, E) for E in pic.E_classes],
               "E_real": [_vec(e) for e in pic.E_real], "canonical_class": _ser_class(pic, K)}
        txt = [f"rank r = {pic.r}  (n = {pic.n}, d = {fan.dim})",
               "torsion " + (_fmt_vec(pic.torsion_invariants) if pic.torsion_invariants else "none")]
        txt += [f"E_{i} = {_txt_class(pic, E)}" for i, E in enumerate(pic.E_classes)]
        txt.append(f"K = {_txt_class(pic, K)}")
        return res, txt

    catalog = tempting_sets(fan)
    if cmd == "tempting":
        res = [{"I": list(I), "reduced_homology": {str(k): v for k, v in h.as_dict().items() if v}}
               for I, h in catalog]
        txt = [f"{len(catalog)} tempting sets"]
        txt += ["  {" + ",".join(map(str, I)) + "}  " +
                " ".join(f"H~{k}={v}" for k, v in h.as_dict().items() if v) for I, h in catalog]
        return res, txt

    if cmd == "cones":
        res, txt = [], []
        for I, _ in catalog:
            fc = forbidden_cone(pic, I)
            res.append({"I": list(I), "q": _ser_class(pic, fc.q_class),
                        "generators": [_vec(g) for g in fc.cone.generators],
                        "facets": [list(g) for g in fc.cone.facets],
                        "full_dim": fc.full_dim, "strongly_convex": is_strongly_convex(fc.cone)})
            txt.append("I = {" + ",".join(map(str, I)) + f"}}  q = {_fmt_vec(fc.q_real)}  facets "
                       + " ".join(_fmt_vec(g) for g in fc.cone.facets)
                       + ("" if fc.full_dim else "  (lower-dimensional)"))
        return res, txt

    if cmd in ("cohomology", "immaculate"):
        L = _read_class(cfg, pic)
        h = cohomology(pic, catalog, L)
        if cmd == "cohomology":
            res = {"class": _ser_class(pic, L), "h": list(h), "euler_characteristic": euler_characteristic(h)}
            return res, [f"class {_txt_class(pic, L)}", "h = " + _fmt_vec(h),
                         f"chi = {euler_characteristic(h)}"]
        imm = is_immaculate(pic, catalog, L)
        return {"class": _ser_class(pic, L), "immaculate": imm, "h": list(h)}, [
            f"class {_txt_class(pic, L)}", f"immaculate: {'true' if imm else 'false'}"]

    if cmd == "scan":
        box = _parse_box(cfg.box, pic.r)
        found = immaculate_scan(pic, catalog, box)
        return {"box": [list(b) for b in box], "immaculate": [_ser_class(pic, L) for L in found]}, (
            [f"{len(found)} immaculate classes in box"] + ["  " + _txt_class(pic, L) for L in found])

    if cmd == "infinite":
        rep = decide_infinite(pic, catalog, cfg.max_cells)
        if rep.infinite:
            return {"decision": "INFINITE", "witness": list(rep.witness.coords)}, [
                f"INFINITE, witness direction {rep.witness}"]
        cert = [{"signs": list(s), "sample": _vec(v), "I": list(I), "I_neg": list(J)}
                for s, v, I, J in rep.certificate]
        txt = [f"FINITE, {len(cert)} cells covered"]
        txt += [f"  cell {_fmt_vec(s)} sample {_fmt_vec(v)} in C_{{{','.join(map(str, I))}}}, "
                f"negative in C_{{{','.join(map(str, J))}}}" for s, v, I, J in rep.certificate]
        return {"decision": "FINITE", "hyperplanes": [list(h) for h in rep.hyperplanes],
                "certificate": cert}, txt

    if cmd == "infinity":
        desc = imm_infinity_description(pic, catalog, cfg.max_cells)
        res = {"rank": desc.rank, "empty": desc.empty, "everything": desc.everything,
               "points": [list(p.coords) for p in desc.points],
               "arcs": [[list(a.coords), list(b.coords)] for a, b in desc.arcs],
               "cell_samples": [list(p.coords) for p in desc.samples],
               "cones": [{"I": list(I), "facets": [list(g) for g in f]} for I, f in desc.cones]}
        if desc.empty:
            txt = ["Imm^inf is empty"]
        elif desc.everything:
            txt = ["Imm^inf is all of the hyperplane at infinity"]
        else:
            txt = [f"isolated direction {p}" for p in desc.points]
            txt += [f"closed arc {a} -> {b}" for a, b in desc.arcs]
            txt += [f"cell sample {p}" for p in desc.samples]
        return res, txt

    if cmd == "zonotope":
        z = zonotope(pic)
        inner = zonotope_classes(pic, INTERIOR)
        half = zonotope_classes(pic, HALF_OPEN)
        res = {"vertices": [_vec(v) for v in z.vertices],
               "inequalities": [{"normal": list(g), "lo": _num(lo), "hi": _num(hi)} for g, lo, hi in z.inequalities],
               "interior_classes": [_ser_class(pic, L) for L in inner],
               "half_open_classes": [_ser_class(pic, L) for L in half]}
        txt = ["vertices " + " ".join(_fmt_vec(v) for v in z.vertices)]
        txt += [f"  {_num(lo)} <= {_fmt_vec(g)}.x <= {_num(hi)}" for g, lo, hi in z.inequalities]
        txt.append("interior classes: " + ", ".join(_fmt_vec(L.free) for L in inner))
        txt.append("half-open classes: " + ", ".join(_fmt_vec(L.free) for L in half))
        return res, txt

    if cmd == "witness":
        if cfg.direction is not None:
            w = _ints(cfg.direction, "--direction")
            if len(w) != pic.r or not any(w):
                raise UsageError(f"--direction needs {pic.r} integers, not all zero")
            w = Direction.from_vector(w)
        else:
            rep = decide_infinite(pic, catalog, cfg.max_cells)
            if not rep.infinite:
                raise UsageError("no witness direction: finitely many immaculate classes")
            w = rep.witness
        if not imm_infinity_contains(pic, catalog, w):
            raise UsageError(f"direction {w} meets the interior of a forbidden cone")
        fam = witness_immaculate_family(pic, catalog, w, cfg.count)
        z0 = interior_class(pic)
        return {"direction": list(w.coords), "base": _ser_class(pic, z0),
                "family": [_ser_class(pic, L) for L in fam]}, (
            [f"direction {w}, base {_fmt_vec(z0.free)}"] + ["  " + _txt_class(pic, L) for L in fam])

    if cmd == "bw-check":
        if cfg.divisor is None:
            raise UsageError("bw-check needs --divisor")
        c = _ints(cfg.divisor, "--divisor")
        if len(c) != pic.n:
            raise UsageError(f"--divisor needs {pic.n} coefficients")
        hc = bw_hull_check(pic, c)
        res = {"hull_dim": hc.hull_dim, "degenerate": hc.degenerate, "points": [_vec(p) for p in hc.points],
               "direction": list(hc.direction.coords) if hc.direction else None}
        txt = [f"hull dimension {hc.hull_dim} of {fan.dim}", f"degenerate: {'true' if hc.degenerate else 'false'}"]
        if hc.direction:
            txt.append(f"direction {hc.direction} lies in Imm^inf")
        return res, txt

    if cmd == "plot":
        from .plot import emit_plot

        if pic.r != 2:
            raise UsageError(f"plot needs Picard rank 2, got {pic.r}")
        if not cfg.out:
            raise UsageError("plot needs --out FILE.svg")
        box = _parse_box(cfg.box, pic.r)
        svg = emit_plot(pic, box, catalog)
        with open(cfg.out, "w") as fh:
            fh.write(svg)
        return {"path": cfg.out}, [f"wrote {cfg.out}"]

    raise UsageError(f"unknown command {cmd!r}")


COMMANDS = {
    "validate": "check the fan", "picard": "Picard group presentation",
    "tempting": "tempting subsets", "cones": "forbidden cones",
    "cohomology": "cohomology dimensions of a class", "immaculate": "immaculacy of a class",
    "scan": "immaculate classes in a box", "infinite": "decide whether Imm is infinite",
    "infinity": "describe Imm at infinity", "zonotope": "Thomsen zonotope",
    "witness": "infinite immaculate family", "bw-check": "piecewise-linear hull check",
    "plot": "SVG picture (rank 2)",
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_argument_group("fan source")
    src.add_argument("--fan", dest="fan_file", metavar="FILE", help="JSON fan file")
    src.add_argument("--builtin", metavar="SPEC", help="e.g. P1xP1, hirzebruch(1), "
                     "product(stacky_p1(2,3),projective_space(1))")
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    common.add_argument("--max-cells", type=int, default=None)
    parser = _Parser(prog="immaculatum", description="Immaculate line bundles on toric stacks.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, help_ in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name in ("cohomology", "immaculate", "bw-check"):
            p.add_argument("--divisor", help="c0,...,c(n-1)")
        if name in ("cohomology", "immaculate"):
            p.add_argument("--class", dest="class_coords", help="a1,...,ar[;t1,...]")
        if name in ("scan", "plot"):
            p.add_argument("--box", help="lo:hi[,lo:hi...]")
        if name == "witness":
            p.add_argument("--direction")
            p.add_argument("--count", type=int, default=10)
        if name == "plot":
            p.add_argument("--out")
    return parser


def _join_negative_values(argv):
    # "--box -10:10" would otherwise be read as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(_join_negative_values(argv))
        if not ns.command:
            raise UsageError("missing command")
        cfg = RunConfig(
            fan_file=ns.fan_file, builtin=ns.builtin, command=ns.command, fmt=ns.fmt,
            box=getattr(ns, "box", None), divisor=getattr(ns, "divisor", None),
            class_coords=getattr(ns, "class_coords", None), direction=getattr(ns, "direction", None),
            count=getattr(ns, "count", 10), out=getattr(ns, "out", None), max_cells=ns.max_cells)
        fan = _load(cfg)
        result, text = compute(cfg, fan)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except InvalidFanError as exc:
        print("invalid fan:", file=stderr)
        for v in exc.violations:
            print(f"  {v}", file=stderr)
        return EXIT_FAN
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=stderr)
        return EXIT_LIMIT
    except (ConsistencyError, ArithmeticError) as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return EXIT_INTERNAL
    if cfg.fmt == "json":
        doc = {"fan": fan.to_json(), "command": cfg.command, "result": result}
        print(json.dumps(doc, indent=2, sort_keys=True), file=stdout)
    else:
        print("\n".join(text), file=stdout)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
