"""Draw the reference Tangles and a few operation previews as SVG files."""
import argparse
from pathlib import Path

from tangles import fixtures as F, lattice as L
from tangles.ops import apply, applicable_ops, square_reflection
from tangles.polyform import validate
from tangles.render import RenderOptions, render_polyform_svg, render_svg
from tangles.tangle import build_tangle


def preview(pre, post, opts):
    return render_svg(build_tangle(post), post, opts, previous=build_tangle(pre))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--scale", type=float, default=40.0)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    opts = RenderOptions(scale=args.scale, show_polyform=True)

    drawings = {}
    for name in ("single_square", "square_block", "triangle_fan", "hex_reflect_prestate"):
        p = getattr(F, name)()
        drawings[name] = render_svg(build_tangle(p), p, opts)
    block = F.square_block()
    drawings["square_block_dual_graph"] = render_polyform_svg(block, RenderOptions(scale=args.scale, show_dual_graph=True))
    cut = F.white_cut_pair()
    drawings["white_cut_pair_invalid"] = render_polyform_svg(cut, RenderOptions(scale=args.scale), validate(cut))

    c = F.circle(L.SQUARE)
    drawings["preview_sq_insert"] = preview(c, apply(c, applicable_ops(c)[0]), opts)
    h = F.hex_reflect_prestate()
    refl = next(op for op in applicable_ops(h) if op.kind == "HexReflect")
    drawings["preview_hex_reflect"] = preview(h, apply(h, refl), opts)
    s = F.square_reflection_prestate()
    drawings["preview_square_reflection"] = preview(s, square_reflection(s, (0, -2), (1, -2))[1], opts)

    for name, svg in drawings.items():
        (out / f"{name}.svg").write_text(svg)
        print(out / f"{name}.svg")


if __name__ == "__main__":
    main()
