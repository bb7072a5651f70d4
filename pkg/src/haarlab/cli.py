"""Command-line front end: ``haarlab <subcommand> [flags]``.

Every run prints one JSON document (or a CSV stream with ``--format csv``).
Exit status is 0 on success, 2 on usage errors and 3 on engine errors; the
latter two also print ``{"error": <class name>, "message": ...}``.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from collections import Counter
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from . import graphs as G
from . import haar as H
from . import laws as L
from . import partitions as P
from . import rmt as R
from .errors import HaarlabError

LAW_NAMES = ("poisson", "bessel", "gaussian", "complex_gaussian", "rayleigh", "semicircle",
             "marchenko_pastur", "arcsine", "modified_arcsine", "shifted_semicircle")
DENSITY_NAMES = ("semicircle", "marchenko_pastur", "arcsine", "modified_arcsine", "shifted_semicircle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(x) -> dict | int | float:
    """Exact values as {num, den}; floats pass through."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return {"num": x, "den": 1}
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return float(x)


def _parse_t(text: str):
    """Keep rational-looking parameters exact ('1', '1/2', '0.5' -> Fraction)."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read number {text!r}") from None


def _word_or_k(args):
    if args.word is not None:
        return P.ColorWord.parse(args.word)
    if args.k is not None:
        return args.k
    raise UsageError("give --k or --word")


def _group(args) -> H.GroupSpec:
    if args.group is None or args.N is None:
        raise UsageError("--group and --N are required")
    level = args.level if args.group == "HNs" else None
    if args.group == "HNs" and level is None:
        raise UsageError("HNs needs --level")
    return H.GroupSpec(args.group, args.N, level)


# ---------------------------------------------------------------------------
# subcommands

def cmd_partitions(args) -> dict:
    if args.count:
        if args.k is None:
            raise UsageError("--count needs --k")
        return {"count_kind": args.count, "k": args.k, "b": args.b,
                "value": P.count(args.count, args.k, args.b)}
    cat = P.Category.parse(args.category)
    word = _word_or_k(args)
    parts = P.enumerate_partitions(cat, word)
    out = {"category": str(cat), "word": P.as_word(word).letters, "count": len(parts),
           "partitions": [str(p) for p in parts]}
    if args.stats:
        out["block_stats"] = [list(P.block_stats(p)) for p in parts]
    return out


def _sphere_exponents(text: str, complex_: bool):
    factors = H.parse_sphere_word(text)
    plain = Counter(i for i, s in factors if not s)
    star = Counter(i for i, s in factors if s)
    idx = sorted(set(plain) | set(star))
    if complex_:
        return [(plain[i], star[i]) for i in idx]
    return [plain[i] + star[i] for i in idx]


def cmd_integrate(args) -> dict:
    if args.word is None:
        raise UsageError("--word is required")
    if args.sphere:
        if args.N is None:
            raise UsageError("--N is required")
        if args.sphere == "real":
            v = H.sphere_integral_real(args.N, _sphere_exponents(args.word, False))
        elif args.sphere == "complex":
            v = H.sphere_integral_complex(args.N, _sphere_exponents(args.word, True))
        else:
            v = H.free_sphere_integral(args.sphere.split("_")[1], args.N, args.word)
        v = Fraction(v)
        return {"sphere": args.sphere, "N": args.N, "word": args.word,
                "value_num": v.numerator, "value_den": v.denominator, "basis_size": None}
    g = _group(args)
    w = H.MonomialWord.parse(args.word)
    value = H.integrate(g, w, cross_check=args.cross_check)
    basis = None
    if g.family != "SN" or args.cross_check:
        cat = g.category if g.family != "HNs" else (P.ALL_P if g.s == 1 else P.EVEN_BLOCKS)
        word = w.colors if g.is_complex and g.family != "HNs" else P.ColorWord.plain(len(w))
        basis = len(P.enumerate_partitions(cat, word))
    return H.result_record(g, args.word, value, basis)


def cmd_char(args) -> dict:
    g = _group(args)
    word = _word_or_k(args)
    cat = g.category
    out = {"group": str(g), "N": g.N, "word": P.as_word(word).letters}
    if args.t is not None:
        t = _parse_t(args.t)
        out["t"] = _rational(t)
        out["asymptotic"] = _rational(H.asymptotic_char_moment(cat, t, g.word_for(word)))
        s = math.floor(t * g.N)
    else:
        s = args.s if args.s is not None else g.N
    out["s"] = s
    if args.exact or args.t is None:
        v = H.truncated_char_moment(g, s, word)
        out.update(value_num=v.numerator, value_den=v.denominator,
                   basis_size=len(P.enumerate_partitions(cat, g.word_for(word))))
    return out


def _density_rows(name, t, grid_n, offsets):
    law = L.density_law(name, float(t))
    a, b = law.support
    grid = np.linspace(a - 1, b + 1, grid_n)
    dens, spread = L.stieltjes_invert(law.cauchy, grid, offsets)
    return law, grid, dens, spread


def cmd_law(args):
    name = args.name
    if name not in LAW_NAMES:
        raise UsageError(f"unknown law {name!r}")
    t = _parse_t(args.t)
    if args.stieltjes:
        return _stieltjes_output(name, t, args)
    out = {"law": name, "t": _rational(t)}
    if name == "bessel":
        out["level"] = args.level
    if args.atoms:
        if name == "poisson":
            m = L.poisson_atoms(float(t), args.cutoff)
        elif name == "bessel":
            m = L.bessel_atoms(args.level or 1, float(t), args.cutoff)
        else:
            raise UsageError("--atoms is available for poisson and bessel")
        out.update(L.measure_to_json(m))
        out["cutoff"] = m.truncation
        return out
    if args.word is not None:
        out["word"] = args.word
        out["moment"] = _rational(L.named_moments(name, P.ColorWord.parse(args.word), t, args.level))
        return out
    K = args.k if args.k is not None else 8
    m = L.named_moments(name, K, t, args.level)
    out["moments"] = [_rational(x) for x in m.values]
    ok, fail = L.hankel_check(m)
    out["hankel_ok"], out["hankel_first_failure"] = ok, fail
    if args.cumulants:
        out["cumulants"] = [_rational(x) for x in L.moments_to_cumulants(m).values]
        out["free_cumulants"] = [_rational(x) for x in L.r_transform_series(m)]
    return out


def _stieltjes_output(name, t, args):
    if name not in DENSITY_NAMES:
        raise UsageError(f"{name} has no closed-form Cauchy transform")
    offsets = tuple(float(x) for x in args.offsets.split(",")) if args.offsets else (0.1, 0.05, 0.025)
    law, grid, dens, spread = _density_rows(name, t, args.grid, offsets)
    if args.format == "json":
        return {"law": name, "t": _rational(t), "offsets": list(offsets),
                "rows": [{"x": float(x), "density": float(d), "spread": float(s)}
                         for x, d, s in zip(grid, dens, spread)],
                "exact_max_error": float(np.max(np.abs(dens - law.density(grid))))}
    return L.density_csv(grid, dens, spread)


def cmd_stieltjes(args):
    if args.name not in LAW_NAMES:
        raise UsageError(f"unknown law {args.name!r}")
    return _stieltjes_output(args.name, _parse_t(args.t), args)


_DEFAULT_SCALING = {"complex_gaussian": "by_sqrtN", "wigner": "by_sqrtN", "wishart": "by_N",
                    "block_wishart": "by_dm", "haar_orthogonal": "none", "haar_unitary": "none"}


def _rmt_target(spec: R.EnsembleSpec, scaling: str):
    if spec.kind == "wigner" and scaling == "by_sqrtN":
        return L.semicircle(spec.t)
    if spec.kind == "wishart" and scaling == "by_N":
        return L.marchenko_pastur(spec.M / spec.N)
    if spec.kind == "block_wishart" and scaling == "by_dm":
        return L.shifted_semicircle(spec.n / spec.m)
    return None


def cmd_rmt(args):
    kind = args.ensemble
    spec = R.EnsembleSpec(kind, N=args.N, t=float(_parse_t(args.t)), M=args.M, d=args.d,
                          n=args.n, m=args.m, seed=args.seed or 0)
    scaling = args.scaling or _DEFAULT_SCALING[kind]
    out = {"ensemble": kind, "params": spec.params(), "scaling": scaling, "draws": args.draws}
    if args.word is not None or not spec.hermitian:
        word = P.ColorWord.parse(args.word) if args.word is not None else (args.k or 2)
        est, err = R.empirical_moment(spec, word, scaling, args.draws)
        out.update(word=P.as_word(word).letters, estimate=_rational(est), stderr=err)
        return out
    stats = R.eigen_histogram(spec, scaling, args.draws, args.hist, max_moment=args.k or 4)
    if args.format == "csv":
        return R.histogram_csv(stats)
    out["moments"] = R.stats_json(stats)["moments"]
    out["histogram"] = [{"bin_left": float(a), "bin_right": float(b), "count": int(c)}
                        for a, b, c in zip(stats.bin_edges[:-1], stats.bin_edges[1:], stats.counts)]
    target = _rmt_target(spec, scaling)
    if target is not None:
        out["target"] = target.kind
        out["l1"] = R.histogram_l1(stats.eigenvalues, target, args.hist)
    return out


def cmd_graph(args) -> dict:
    if args.graph_file:
        with open(args.graph_file) as fh:
            g = G.RootedGraph.from_json(json.load(fh))
        name = g.name or args.graph_file
    elif args.ade:
        g, name = G.ade(args.ade), args.ade
    else:
        raise UsageError("give --graph-file or --ade")
    K = args.k if args.k is not None else 10
    out = {"graph": name, **g.to_json(),
           "loops": [G.loop_count(g, k) for k in range(K + 1)],
           "spectral": L.measure_to_json(G.spectral_measure(g)),
           "positive_spectral": L.measure_to_json(G.positive_spectral_measure(g)),
           "circular": L.measure_to_json(G.circular_measure(g))}
    if args.ade and args.ade.strip()[0] in "AD":
        out["closed_form_check"] = G.ade_circular_check(args.ade)
    return out


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="haarlab", description="Haar integration, limit laws, random matrices and graph spectra.")
    p.add_argument("--version", action="version", version=f"haarlab {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, seed=False):
        sp.add_argument("--format", choices=("json", "csv"), default=None, help="output format")
        sp.add_argument("--seed", type=int, default=None,
                        help="random seed" + (" (defaults to 0 with a warning)" if seed else " (recorded only)"))

    sp = sub.add_parser("partitions", help="enumerate or count set partitions")
    sp.add_argument("--category", default="AllP", help="AllP, Pairings, NC, ModS(3), ...")
    sp.add_argument("--k", type=int, help="number of points")
    sp.add_argument("--word", help="color word over o and *")
    sp.add_argument("--count", choices=("bell", "catalan", "central_binomial", "middle_binomial", "stirling2"),
                    help="print a counting sequence value instead")
    sp.add_argument("--b", type=int, help="block count for stirling2")
    sp.add_argument("--stats", action="store_true", help="include block statistics")
    common(sp)
    sp.set_defaults(func=cmd_partitions)

    groups = H.FAMILIES
    sp = sub.add_parser("integrate", help="exact Haar integral of a monomial")
    sp.add_argument("--group", choices=groups)
    sp.add_argument("--N", type=int)
    sp.add_argument("--level", type=int, help="s parameter of HNs")
    sp.add_argument("--word", help='monomial such as "u11^2 u12*" (or "x1^4" with --sphere)')
    sp.add_argument("--sphere", choices=("real", "complex", "free_real", "free_complex"),
                    help="integrate over a sphere instead of a group")
    sp.add_argument("--cross-check", action="store_true", help="use the Weingarten route for SN")
    common(sp)
    sp.set_defaults(func=cmd_integrate)

    sp = sub.add_parser("char", help="moments of truncated characters")
    sp.add_argument("--group", choices=groups)
    sp.add_argument("--N", type=int)
    sp.add_argument("--level", type=int, help="s parameter of HNs")
    sp.add_argument("--s", type=int, help="truncation: sum of the first s diagonal entries")
    sp.add_argument("--t", help="use s = floor(t N) and report the large-N limit")
    sp.add_argument("--k", type=int, help="moment order")
    sp.add_argument("--word", help="color word for complex families")
    sp.add_argument("--exact", action="store_true", help="compute the exact finite-N moment")
    common(sp)
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("law", help="moments, atoms or densities of named laws")
    sp.add_argument("--name", required=True, choices=LAW_NAMES)
    sp.add_argument("--t", default="1", help="law parameter")
    sp.add_argument("--level", type=int, help="Bessel level s")
    sp.add_argument("--s", type=int, dest="level", help="alias of --level")
    sp.add_argument("--k", type=int, help="highest moment")
    sp.add_argument("--word", help="color word for a single colored moment")
    sp.add_argument("--cumulants", action="store_true", help="also print classical and free cumulants")
    sp.add_argument("--atoms", action="store_true", help="print truncated atoms (poisson, bessel)")
    sp.add_argument("--cutoff", type=int, help="atom cutoff")
    sp.add_argument("--stieltjes", action="store_true", help="density by Stieltjes inversion")
    sp.add_argument("--grid", type=int, default=512, help="grid points for --stieltjes")
    sp.add_argument("--offsets", help="comma separated imaginary offsets")
    common(sp)
    sp.set_defaults(func=cmd_law)

    sp = sub.add_parser("stieltjes", help="density from a closed-form Cauchy transform")
    sp.add_argument("--name", required=True, choices=DENSITY_NAMES)
    sp.add_argument("--t", default="1")
    sp.add_argument("--grid", type=int, default=512)
    sp.add_argument("--offsets", help="comma separated imaginary offsets")
    common(sp)
    sp.set_defaults(func=cmd_stieltjes)

    sp = sub.add_parser("rmt", help="sample a random-matrix ensemble")
    sp.add_argument("--ensemble", required=True, choices=R.KINDS)
    sp.add_argument("--N", type=int)
    sp.add_argument("--M", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--t", default="1")
    sp.add_argument("--draws", type=int, default=50)
    sp.add_argument("--hist", type=int, default=64, help="histogram bins")
    sp.add_argument("--k", type=int, help="highest moment (or the moment order with non-Hermitian ensembles)")
    sp.add_argument("--word", help="color word for a single moment")
    sp.add_argument("--scaling", choices=R.SCALINGS)
    common(sp, seed=True)
    sp.set_defaults(func=cmd_rmt)

    sp = sub.add_parser("graph", help="loop counts and spectral measures of a rooted graph")
    sp.add_argument("--graph-file", help='JSON {"n":..,"edges":[[i,j],..],"root":..}')
    sp.add_argument("--ade", help="ADE name such as A(5), Dtilde(6), E7")
    sp.add_argument("--k", type=int, help="longest loop length")
    common(sp)
    sp.set_defaults(func=cmd_graph)
    return p


def _dump(doc, out):
    out.write(json.dumps(doc, sort_keys=False) + "\n")


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        result = args.func(args)
    except SystemExit as e:           # --help / --version
        return int(e.code or 0)
    except UsageError as e:
        _dump({"error": "UsageError", "message": str(e), "version": __version__}, out)
        return 2
    except HaarlabError as e:
        _dump({"error": type(e).__name__, "message": str(e), "version": __version__}, out)
        return 3
    except (ValueError, KeyError) as e:
        _dump({"error": type(e).__name__, "message": str(e), "version": __version__}, out)
        return 2
    if isinstance(result, str):
        out.write(result)
        return 0
    if args.format == "csv":
        _dump({"error": "UsageError", "message": "this command has no CSV form", "version": __version__}, out)
        return 2
    result["version"] = __version__
    result["seed"] = args.seed if args.seed is not None else 0
    if args.command == "rmt" and args.seed is None:
        result["warning"] = "no --seed given; using seed 0"
    _dump(result, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
