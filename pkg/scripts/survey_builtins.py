"""Summarise every builtin fan: Picard data, tempting sets, finiteness, Imm^inf.

    python3 scripts/survey_builtins.py [--box 6]
"""

import argparse
from dataclasses import dataclass

from immaculatum import (builtin_catalog, decide_infinite, imm_infinity_description,
                         immaculate_scan, picard_group, tempting_sets)


@dataclass
class SurveyConfig:
    box: int = 6
    scan_rank_limit: int = 2


def survey(cfg: SurveyConfig):
    rows = []
    for fan in builtin_catalog():
        pic = picard_group(fan)
        cat = tempting_sets(fan)
        rep = decide_infinite(pic, cat)
        desc = imm_infinity_description(pic, cat)
        scanned = None
        if pic.r <= cfg.scan_rank_limit:
            scanned = len(immaculate_scan(pic, cat, [(-cfg.box, cfg.box)] * pic.r))
        if desc.empty:
            shape = "empty"
        elif desc.rank <= 2:
            shape = f"{len(desc.points)} pts, {len(desc.arcs)} arcs"
        else:
            shape = f"{len(desc.samples)} cells"
        rows.append((str(fan), fan.n, fan.dim, pic.r, len(cat),
                     "INFINITE" if rep.infinite else "FINITE", shape,
                     "-" if scanned is None else str(scanned)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--box", type=int, default=SurveyConfig.box)
    cfg = SurveyConfig(box=ap.parse_args().box)
    header = ("fan", "n", "d", "r", "tempting", "decision", "Imm^inf", f"#imm in [-{cfg.box},{cfg.box}]^r")
    rows = [header] + [tuple(map(str, r)) for r in survey(cfg)]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))


if __name__ == "__main__":
    main()
