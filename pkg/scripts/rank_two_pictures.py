"""Write SVG pictures (forbidden cones, zonotope, immaculate classes) for rank-2 builtins.

    python3 scripts/rank_two_pictures.py --outdir pictures --box 6
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from immaculatum import builtin_catalog, picard_group, tempting_sets
from immaculatum.plot import emit_plot


@dataclass
class PictureConfig:
    outdir: Path = Path("pictures")
    box: int = 6


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=PictureConfig.outdir)
    ap.add_argument("--box", type=int, default=PictureConfig.box)
    ns = ap.parse_args()
    cfg = PictureConfig(outdir=ns.outdir, box=ns.box)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    for fan in builtin_catalog():
        pic = picard_group(fan)
        if pic.r != 2:
            continue
        svg = emit_plot(pic, [(-cfg.box, cfg.box)] * 2, tempting_sets(fan))
        name = "".join(ch if ch.isalnum() else "_" for ch in str(fan))
        path = cfg.outdir / f"{name}.svg"
        path.write_text(svg)
        print(f"{fan}: {path}")


if __name__ == "__main__":
    main()
