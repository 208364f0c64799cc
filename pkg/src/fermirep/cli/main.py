"""Command dispatch for the fermirep tool.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .. import fock, liealg, schwinger, verify
from ..errors import CapacityError
from . import expr as expr_mod
from . import matfile

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

GROUPS = ("un-standard", "un-nonstandard", "ucnm", "mixed")


def _rebuild_family(family: dict) -> liealg.GeneratorSet:
    name = family.get("name")
    dim = int(family.get("dim", 0))
    if name == "generalized_gell_mann":
        return liealg.generalized_gell_mann(dim)
    if name == "gell_mann":
        return liealg.gell_mann()
    if name == "spin1":
        return liealg.spin1_matrices()
    raise ValueError(f"unknown generator family {name!r}")


def build_variant(group: str, n: int, m: int | None, xi: tuple[int, int] | None):
    """Construct the requested representation plus its generator set."""
    if group in ("un-standard", "un-nonstandard"):
        gens = liealg.generalized_gell_mann(n)
        family = {"name": "generalized_gell_mann", "dim": n}
        if group == "un-standard":
            rep = schwinger.standard_rep(gens, n)
        else:
            rep = schwinger.nssfr_un(gens, n)
        return rep, gens, family
    if m is None:
        raise ValueError(f"group {group!r} requires --m")
    k = fock.sector_dimension(n, m)
    if not 1 <= m <= n - 1:
        raise ValueError(f"--m must be in [1, {n - 1}] for group {group!r}")
    gens = liealg.generalized_gell_mann(k)
    family = {"name": "generalized_gell_mann", "dim": k}
    if group == "ucnm":
        rep = schwinger.rep_ucnm(gens, n, m)
    else:
        xi = xi or (1, 1)
        gens2 = liealg.conjugate_rep(gens)
        rep = schwinger.mixed_rep(gens, gens2, n, m, xi[0], xi[1])
    return rep, gens, family


def representation_report(
    rep: schwinger.RepresentationResult,
    gens: liealg.GeneratorSet,
    tol: float,
) -> verify.VerificationReport:
    """Closure and number-commutant checks for one representation."""
    sc = liealg.structure_constants(gens)
    report = verify.VerificationReport({"tol": tol, "variant": rep.meta.variant})
    report.extend(verify.check_closure(rep, sc, tol, label="closure"))
    report.extend(verify.check_number_commutant(rep, rep.ops[0].modes, tol, label="numcomm"))
    return report


def cmd_build(args) -> int:
    xi = (args.xi_minus, args.xi_plus) if args.group == "mixed" else None
    rep, gens, family = build_variant(args.group, args.n, args.m, xi)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    generators = []
    for idx, (op, label) in enumerate(zip(rep.ops, rep.meta.labels), start=1):
        fname = f"generator_{idx:03d}.json"
        metadata = {
            "variant": rep.meta.variant,
            "modes": rep.meta.modes,
            "particles": rep.meta.particles,
            "xi": list(rep.meta.xi) if rep.meta.xi else None,
            "index": idx,
            "label": label,
            "family": family,
        }
        matfile.write_operator(out / fname, op, metadata)
        generators.append({"label": label, "file": fname})
    manifest = {
        "variant": rep.meta.variant,
        "modes": rep.meta.modes,
        "particles": rep.meta.particles,
        "xi": list(rep.meta.xi) if rep.meta.xi else None,
        "family": family,
        "generators": generators,
    }
    matfile.write_manifest(out / "manifest.json", manifest)
    print(f"wrote {len(generators)} generator files to {out}")
    return EXIT_OK


def _load_built(dirpath: Path):
    manifest = matfile.read_manifest(dirpath / "manifest.json")
    ops = []
    for item in manifest["generators"]:
        op, _meta = matfile.read_operator(dirpath / item["file"])
        if op.modes != manifest["modes"]:
            raise ValueError(f"{item['file']} has wrong mode count")
        ops.append(op)
    gens = _rebuild_family(manifest["family"])
    meta = schwinger.RepMeta(
        variant=manifest["variant"],
        modes=manifest["modes"],
        particles=manifest.get("particles"),
        labels=tuple(item["label"] for item in manifest["generators"]),
        xi=tuple(manifest["xi"]) if manifest.get("xi") else None,
    )
    return schwinger.RepresentationResult(tuple(ops), meta), gens


def cmd_verify(args) -> int:
    if args.from_dir:
        rep, gens = _load_built(Path(args.from_dir))
        report = representation_report(rep, gens, args.tol)
    else:
        if args.n_max is None:
            raise ValueError("either --n-max or --from is required")
        report = verify.run_suite(args.n_max, args.tol)
    if args.report:
        path = Path(args.report)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        if args.format == "json":
            path.write_text(report.to_json())
        else:
            path.write_text(report.to_text())
    failed = report.failed()
    print(
        f"{len(report.checks)} checks, {len(failed)} failed, "
        f"max residual {report.max_residual():.3e}"
    )
    for c in failed[:20]:
        print(f"FAIL {c.name} residual={c.residual:.3e}")
    return EXIT_OK if report.overall else EXIT_CHECK_FAILED


def cmd_table(args) -> int:
    if args.what == "selective":
        if args.m is None:
            raise ValueError("table selective requires --m")
        poly = schwinger.selective_function(args.n, args.m)
        print(poly)
        return EXIT_OK
    gens = liealg.generalized_gell_mann(args.n)
    sc = liealg.structure_constants(gens)
    # coefficients printed in the convention [G_i, G_j] = 2i f_ijk G_k
    f = sc.c / 2j
    count = 0
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            for l in range(len(gens)):
                v = f[i, j, l]
                if abs(v) > 1e-12:
                    print(f"f[{i + 1},{j + 1},{l + 1}] = {v.real:.12g}")
                    count += 1
    print(f"{count} nonzero entries (i < j)")
    return EXIT_OK


def _format_complex(v: complex) -> str:
    if v.imag == 0:
        return f"{v.real:g}"
    if v.real == 0:
        return f"{v.imag:g}i"
    return f"{v.real:g}{v.imag:+g}i"


def cmd_eval(args) -> int:
    try:
        tree = expr_mod.parse_expression(args.expression)
        op = expr_mod.evaluate(tree, args.n)
    except expr_mod.ExprError as err:
        print(f"parse error: {err.annotate(args.expression)}", file=sys.stderr)
        return EXIT_USAGE
    if args.check:
        reference, _meta = matfile.read_operator(Path(args.check))
        if reference.modes != op.modes:
            raise ValueError(
                f"reference acts on {reference.modes} modes, expression on {op.modes}"
            )
        diff = op.diff_max(reference)
        print(f"max difference vs {args.check}: {diff:.3e}")
        return EXIT_OK if diff <= args.tol else EXIT_CHECK_FAILED
    if args.out:
        metadata = {
            "variant": "expression",
            "modes": args.n,
            "expression": expr_mod.to_source(tree),
        }
        matfile.write_operator(Path(args.out), op, metadata)
        print(f"wrote {args.out}")
        return EXIT_OK
    dense = op.to_dense()
    if op.dim <= 32:
        for row in dense:
            print("  ".join(_format_complex(complex(v)) for v in row))
    else:
        for (r, c), v in sorted(op.entries().items()):
            print(f"({r}, {c}) {_format_complex(v)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermirep",
        description=(
            "Build exact fermionic-mode representations of unitary algebras, "
            "verify their algebraic identities, and evaluate operator expressions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a representation and export it")
    p_build.add_argument("group", choices=GROUPS)
    p_build.add_argument("--n", type=int, required=True, help="mode count")
    p_build.add_argument("--m", type=int, default=None, help="particle-number sector")
    p_build.add_argument("--xi-minus", type=int, default=1, choices=(0, 1))
    p_build.add_argument("--xi-plus", type=int, default=1, choices=(0, 1))
    p_build.add_argument("--out", required=True, help="output directory")
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run the identity suite or check built files")
    p_verify.add_argument("--n-max", type=int, default=None)
    p_verify.add_argument("--tol", type=float, default=1e-10)
    p_verify.add_argument("--report", default=None, help="write the report here")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument(
        "--from", dest="from_dir", default=None,
        help="verify a directory produced by build instead of running the suite",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table", help="print selective polynomials or structure constants")
    p_table.add_argument("what", choices=("selective", "structure"))
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--m", type=int, default=None)
    p_table.set_defaults(func=cmd_table)

    p_eval = sub.add_parser("eval", help="evaluate a typed operator expression")
    p_eval.add_argument("expression")
    p_eval.add_argument("--n", type=int, required=True, help="mode count")
    p_eval.add_argument("--out", default=None, help="write the matrix as JSON")
    p_eval.add_argument("--check", default=None, help="compare against an operator file")
    p_eval.add_argument("--tol", type=float, default=0.0)
    p_eval.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (CapacityError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
