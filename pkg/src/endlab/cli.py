"""The endlab command line.

Subcommands: check-admissible, rigidity, render, pak-search, schlafli,
crossratio.  Exit codes: 0 pass, 1 mathematical violation, 2 input or
usage error.  Reports are line-oriented "key: value" text with section
headers; every report embeds the tool version, format versions, seed, and
tolerances, and identical inputs with identical flags produce
byte-identical output.  Values at rounding level are printed as "<= bound"
sentinels so reruns stay stable.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import FORMAT_VERSIONS, __version__
from . import cellsurf, crossratio, decor, mink, polysurf, rigidity, volume
from .cellsurf import MissingLabelError, SurfaceFormatError
from .polysurf import PolyBuildError, UnsupportedGeometry
from .svgout import render_circles

EXIT_PASS, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _fmt(x):
    if x is None:
        return "none"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return "%.12g" % x
    return str(x)


def _sentinel(x, bound):
    return ("<= %.0e" % bound) if x <= bound else ("%.6g" % x)


class ReportWriter:
    def __init__(self, command, seed=None, tolerances=None):
        self.lines = ["# endlab report",
                      "tool: endlab %s" % __version__,
                      "command: %s" % command,
                      "formats: %s" % ", ".join(
                          FORMAT_VERSIONS[k] for k in sorted(FORMAT_VERSIONS)),
                      "seed: %s" % _fmt(seed)]
        for key, val in (tolerances or {}).items():
            self.lines.append("%s: %s" % (key, _fmt(val)))

    def section(self, name):
        self.lines.append("[%s]" % name)

    def kv(self, key, val):
        self.lines.append("%s: %s" % (key, _fmt(val)))

    def raw(self, line):
        self.lines.append(line)

    def text(self):
        return "\n".join(self.lines) + "\n"


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path):
    with open(path) as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# check-admissible


def cmd_check_admissible(args):
    surface = cellsurf.parse_surf(_read(args.files[0]))
    presentation = None
    if args.fixture_labels:
        from .fixtures import genus2_complex
        g = genus2_complex()
        if cellsurf.serialize_surf(surface.with_theta(None)) != \
                cellsurf.serialize_surf(g.surface):
            raise SurfaceFormatError(
                "--fixture-labels requires the packaged genus-2 fixture")
        presentation = g.presentation
    rep = cellsurf.validate_admissible(
        surface, l_max=args.max_cycle,
        simple_cycles_only=not args.all_cycles,
        presentation=presentation)
    w = ReportWriter("check-admissible", seed=args.seed,
                     tolerances={"tau-ang": cellsurf.TAU_ANG,
                                 "l-max": args.max_cycle,
                                 "simple-cycles-only":
                                     "off" if args.all_cycles else "on"})
    w.section("FACE-SUMS")
    for f, s in enumerate(rep.face_sums):
        w.kv("face %d" % f, s)
    w.section("CYCLES")
    w.kv("contractible-non-facial-checked", rep.checked_cycles)
    if rep.note:
        w.kv("note", rep.note)
    w.section("VIOLATIONS")
    if rep.violations:
        for v in rep.violations:
            w.raw("violation: " + v.describe())
    else:
        w.kv("violations", "none")
    w.section("VERDICT")
    w.kv("result", "pass (up to l-max)" if rep.passed else "FAIL")
    _emit(args, w.text())
    return EXIT_PASS if rep.passed else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# rigidity


def cmd_rigidity(args):
    ps = polysurf.parse_poly(_read(args.files[0]))
    verdict = rigidity.projective_rigidity_verdict(
        ps, tau_rank=args.tol_rank,
        rng=np.random.default_rng(args.seed or 0))
    w = ReportWriter("rigidity", seed=args.seed,
                     tolerances={"tol-rank": args.tol_rank,
                                 "branch": mink.BRANCH_CONVENTION})
    w.kv("kind", verdict.kind)
    w.section("SPECTRUM")
    smax = verdict.spectrum[0] if len(verdict.spectrum) else 0.0
    w.kv("count", len(verdict.spectrum))
    for i, s in enumerate(verdict.spectrum):
        rel = s / smax if smax > 0 else 0.0
        w.kv("sigma-rel %d" % i, _sentinel(rel, 1e-13))
    w.section("KERNEL")
    w.kv("dim", verdict.kernel_dim)
    w.kv("gap", "inf" if math.isinf(verdict.gap) else ">= 1e3"
         if verdict.gap >= 1e3 else "%.3g" % verdict.gap)
    w.kv("trivial-dim", verdict.trivial_dim)
    w.kv("residual-dim", verdict.residual_dim)
    w.kv("trivial-match-residual", _sentinel(verdict.trivial_match_residual, 1e-12))
    w.section("ADJOINTNESS")
    w.kv("max-residual", _sentinel(verdict.adjointness, 1e-12))
    w.section("DECORATIONS")
    for i, d in enumerate(verdict.decorations):
        w.raw("vector %d: tight=%s oriented-edges=%d outside-coverage=%d "
              "identities=%s"
              % (i, "yes" if d["tight"] else "no", d["oriented_edges"],
                 d["components_outside_coverage"],
                 "ok" if d["identities_hold"] else "BROKEN"))
    w.section("VERDICT")
    if verdict.residual_dim == 0:
        w.kv("kernel", "%d = trivial motions" % verdict.kernel_dim)
        w.kv("result", "rigid modulo trivial motions")
    else:
        w.kv("kernel", "%d (trivial %d, residual %d)"
             % (verdict.kernel_dim, verdict.trivial_dim, verdict.residual_dim))
        w.kv("result", "extra kernel reported")
    for note in verdict.notes:
        w.kv("note", note)
    _emit(args, w.text())
    return EXIT_PASS


# ---------------------------------------------------------------------------
# render


def cmd_render(args):
    ps = polysurf.parse_poly(_read(args.files[0]))
    if ps.kind != polysurf.IDEAL:
        raise UnsupportedGeometry("render needs an ideal surface")
    svg = render_circles(ps.gauss_circles())
    _emit(args, svg)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# pak-search


def cmd_pak_search(args):
    surface = cellsurf.parse_surf(_read(args.files[0]))
    if surface.genus() < 2:
        sys.stdout.write("error: lemma hypothesis violated (genus %d < 2)\n"
                         % surface.genus())
        return EXIT_VIOLATION
    if not surface.is_quasi_simplicial():
        raise SurfaceFormatError("pak-search needs a triangulation")
    seed = args.seed if args.seed is not None else 0
    rng = np.random.default_rng(seed)
    w = ReportWriter("pak-search", seed=seed,
                     tolerances={"samples": args.samples,
                                 "structured": "on" if args.structured else "off"})

    def analyze(dec):
        t = decor.is_tight(dec)
        rep = decor.pak_report(dec)
        outside = sum(1 for c in rep.components if not c.chain_closes)
        return t.tight, outside, rep.all_identities_hold()

    w.section("RANDOM")
    tight_random = 0
    identities = True
    for _ in range(args.samples):
        dec = decor.random_decoration(surface, rng)
        tight, outside, ok = analyze(dec)
        identities = identities and ok
        if tight and dec.n_oriented() > 0:
            tight_random += 1
    w.kv("samples", args.samples)
    w.kv("tight-nontrivial", tight_random)
    w.kv("counting-identities", "exact" if identities else "BROKEN")

    if args.structured:
        w.section("STRUCTURED")
        single_edge_tight = 0
        outside_flags = 0
        for e in range(surface.n_edges):
            dec = decor.Decoration.from_pairs(surface, [(e, decor.FORWARD)])
            tight, outside, ok = analyze(dec)
            identities = identities and ok
            if tight:
                single_edge_tight += 1
                if outside > 0:
                    outside_flags += 1
        w.kv("single-edge tight-by-definition", single_edge_tight)
        w.kv("single-edge outside-proof-coverage", outside_flags)
        tri_tight = 0
        for cyc in surface.face_cycles:
            pairs = [(d // 2, decor.FORWARD if d % 2 == 0 else decor.BACKWARD)
                     for d in cyc]
            dec = decor.Decoration.from_pairs(surface, pairs)
            tight, outside, ok = analyze(dec)
            identities = identities and ok
            if tight:
                tri_tight += 1
        w.kv("single-triangle tight", tri_tight)
        span = decor.orient_by_vertex_order(surface)
        tight, outside, ok = analyze(span)
        w.kv("vertex-order-orientation tight", "yes" if tight else "no")

    w.section("VERDICT")
    only_flagged = tight_random == 0
    w.kv("random-dense-tight", "none" if only_flagged
         else "%d FOUND" % tight_random)
    w.kv("result", "only structured tight-by-definition cases"
         if only_flagged else "unexpected tight decorations")
    _emit(args, w.text())
    return EXIT_PASS if only_flagged else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# schlafli and crossratio


def cmd_schlafli(args):
    w = ReportWriter("schlafli", seed=args.seed,
                     tolerances={"order-window": "[1.8, 2.2]"})
    ok = True
    for name, rep in (
            ("tetrahedron", volume.schlafli_residual_tetrahedron()),
            ("split-octahedron", volume.schlafli_residual_split_octahedron())):
        w.section(name.upper())
        for eps, r in zip(rep.eps, rep.residuals):
            w.kv("residual eps=%s" % _fmt(eps), "%.6g" % r)
        w.kv("order", "%.3f" % rep.order)
        w.kv("schlafli-sum", "%.12g" % rep.schlafli_sum)
        w.kv("decoration-shift-change",
             _sentinel(rep.decoration_shift_change, 1e-12))
        ok = ok and rep.order_in(1.8, 2.2) \
            and rep.decoration_shift_change <= 1e-12
    w.section("VERDICT")
    w.kv("result", "pass" if ok else "FAIL")
    _emit(args, w.text())
    return EXIT_PASS if ok else EXIT_VIOLATION


def cmd_crossratio(args):
    ps = polysurf.parse_poly(_read(args.files[0]))
    if ps.kind != polysurf.IDEAL:
        raise UnsupportedGeometry("crossratio needs an ideal surface")
    assignment = crossratio.from_ideal_surface(ps)
    rep = crossratio.vertex_conditions(assignment)
    w = ReportWriter("crossratio", seed=args.seed,
                     tolerances={"tau-cr": crossratio.TAU_CR})
    w.section("VERTEX-CONDITIONS")
    for r in rep.per_vertex:
        if r["status"] != "checked":
            w.kv("vertex %d" % r["vertex"], r["status"])
        else:
            w.kv("vertex %d" % r["vertex"],
                 "product %s sum %s" % (_sentinel(r["product_residual"], 1e-10),
                                        _sentinel(r["sum_residual"], 1e-10)))
    w.section("HOLONOMY")
    worst = 0.0
    for v in range(ps.tri.n_vertices):
        loop = crossratio.vertex_loop_darts(ps.tri, v)
        m = crossratio.holonomy_loop(assignment, loop)
        resid = crossratio.identity_residual(m)
        worst = max(worst, resid)
        w.kv("vertex %d identity-residual" % v, _sentinel(resid, 1e-9))
    w.section("VERDICT")
    ok = rep.passed and worst <= 1e-9
    w.kv("result", "pass" if ok else "FAIL")
    _emit(args, w.text())
    return EXIT_PASS if ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    p = argparse.ArgumentParser(
        prog="endlab",
        description="Polyhedral surfaces in hyperbolic 3-space: validators, "
                    "rigidity reports, circle patterns.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, files=1):
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", type=str, default=None)
        if files:
            sp.add_argument("files", nargs=files, metavar="FILE")

    sp = sub.add_parser("check-admissible",
                        help="face sums and short contractible cycles")
    common(sp)
    sp.add_argument("--max-cycle", type=int, default=cellsurf.DEFAULT_L_MAX)
    sp.add_argument("--all-cycles", action="store_true",
                    help="also search cycles with repeated vertices")
    sp.add_argument("--fixture-labels", action="store_true",
                    help="attach the packaged genus-2 octagon labels")
    sp.set_defaults(func=cmd_check_admissible)

    sp = sub.add_parser("rigidity", help="operator spectra and kernels")
    common(sp)
    sp.add_argument("--tol-rank", type=float, default=rigidity.TAU_RANK)
    sp.set_defaults(func=cmd_rigidity)

    sp = sub.add_parser("render", help="SVG of the Gauss-map circle pattern")
    common(sp)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("pak-search", help="sample decorations for tightness")
    common(sp)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--structured", action="store_true")
    sp.set_defaults(func=cmd_pak_search)

    sp = sub.add_parser("schlafli", help="finite-difference volume checks")
    common(sp, files=0)
    sp.set_defaults(func=cmd_schlafli)

    sp = sub.add_parser("crossratio", help="vertex conditions and holonomy")
    common(sp)
    sp.set_defaults(func=cmd_crossratio)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SurfaceFormatError, MissingLabelError, PolyBuildError,
            UnsupportedGeometry, crossratio.CrossRatioError,
            FileNotFoundError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
