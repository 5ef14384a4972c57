"""Command-line front end.

Exit status: 0 on success, 2 for usage or input errors, 3 when the
mathematics has no answer (the error name is then the first output line).
"""
from __future__ import annotations

import argparse
import random
import sys
from contextlib import contextmanager

import numpy as np

from . import dequantization as dq
from . import io as fio
from . import linalg, spectral, transforms
from . import representations as reps
from .errors import InputError, MathError
from .semiring import get_semiring


def _csv(rows) -> str:
    return "".join(",".join(str(c) for c in row) + "\n" for row in rows)


def _fmt_vector(v) -> list[str]:
    return [fio.format_scalar(x, v.semiring) for x in v.entries()]


def cmd_paths(args):
    s = get_semiring(args.semiring)
    g = fio.read_graph(args.graph, s)
    if not 0 <= args.source < g.node_count:
        raise InputError(f"source {args.source} outside 0..{g.node_count - 1}")
    A = linalg.graph_to_matrix(g, s)
    if args.method in ("iterate", "gauss_jordan"):
        dist = linalg.closure_star(A, args.method).row(args.source)
    else:
        e = [[s.one if i == args.source else s.zero] for i in range(g.node_count)]
        dist = linalg.solve_bellman(A.T, linalg.Matrix(s, e), args.method).solution.column(0)
    return _csv([("node", "dist")] + [(i, x) for i, x in enumerate(_fmt_vector(dist))])


def cmd_star(args):
    s = get_semiring(args.semiring)
    A = fio.read_matrix(args.matrix, s)
    return fio.format_matrix(linalg.closure_star(A, args.method))


def cmd_solve(args):
    s = get_semiring(args.semiring)
    H = fio.read_matrix(args.matrix, s)
    F = fio.read_matrix(args.rhs, s)
    rep = linalg.solve_bellman(H, F, args.method)
    return fio.format_matrix(rep.solution, [f"method={rep.method} iterations={rep.iterations}"])


def cmd_eigen(args):
    A = fio.read_matrix(args.matrix, get_semiring(args.semiring))
    if linalg.is_monomial(A):
        pairs = spectral.eigen_monomial(spectral.MonomialMatrix.from_matrix(A))
    else:
        pairs = [spectral.eigenvector_irreducible(A)]
    header = ["lambda"] + [f"v{i}" for i in range(A.rows)]
    return _csv([header] + [[fio.format_number(p.eigenvalue)] + _fmt_vector(p.eigenvector)
                            for p in pairs])


def cmd_joint_eigen(args):
    s = get_semiring(args.semiring)
    ms = [fio.read_matrix(p, s) for p in args.matrix]
    rep = spectral.joint_eigenvector_commuting(ms)
    rows = [("field", "index", "value")]
    rows += [("lambda", i, fio.format_number(x)) for i, x in enumerate(rep.eigenvalues)]
    rows += [("v", i, x) for i, x in enumerate(_fmt_vector(rep.eigenvector))]
    return _csv(rows)


def cmd_rep_check(args):
    pi = fio.read_representation(args.rep, args.group)
    defect = reps.representation_defect(pi)
    return _csv([("valid", "detail"), ("false" if defect else "true", defect or "")])


def cmd_orbit_sum(args):
    pi = fio.read_representation(args.rep, args.group)
    s = pi.semiring
    if args.vector:
        toks = args.vector.replace(",", " ").split()
        x = linalg.Vector(s, [fio.parse_scalar(t, s) for t in toks])
    else:
        x = linalg.Vector(s, [s.one] * pi.dim)
    a = reps.orbit_sum(pi, x)
    return _csv([("index", "value")] + list(enumerate(_fmt_vector(a))))


def cmd_nilpotent_eigen(args):
    pi = fio.read_representation(args.rep, args.group)
    v, chi = reps.joint_eigenvector_nilpotent(pi)
    rows = [("field", "index", "value")]
    rows += [("lambda", g, fio.format_number(x)) for g, x in enumerate(chi.values)]
    rows += [("v", i, x) for i, x in enumerate(_fmt_vector(v))]
    return _csv(rows)


def cmd_integral(args):
    s = get_semiring(args.semiring)
    f = fio.read_function(args.function, s)
    if args.weight:
        val = transforms.integral_wrt_measure(f, fio.read_function(args.weight, s))
    else:
        val = transforms.idempotent_integral(f)
    return _csv([("value",), (fio.format_scalar(val, s),)])


def cmd_convolve(args):
    if len(args.function) != 2:
        raise InputError("convolve needs exactly two --function arguments")
    s = get_semiring(args.semiring)
    f, g = (fio.read_function(p, s) for p in args.function)
    return fio.format_function(transforms.convolve_grid(f, g))


def cmd_legendre(args):
    f = fio.read_function(args.function, get_semiring(args.semiring))
    if args.envelope:
        return fio.format_function(transforms.legendre_involution(f))
    if args.xi_steps < 1:
        raise InputError("--xi-steps must be positive")
    if args.xi_steps > 1 and not args.xi_max > args.xi_min:
        raise InputError("--xi-max must exceed --xi-min")
    grid = transforms.XiGrid.span(args.xi_min, args.xi_max, args.xi_steps)
    return fio.format_function(transforms.legendre(f, grid), header=("xi", "value"))


def _ladder(text: str) -> list[float]:
    try:
        hs = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"--h must be a comma-separated list of numbers, got {text!r}") from None
    if not hs or any(h <= 0 for h in hs):
        raise InputError("--h values must be positive")
    return hs


def cmd_dequantize(args):
    hs = _ladder(args.h)
    grid = dq.default_grid(args.dx)
    if args.function:
        f = fio.read_function(args.function, get_semiring("maxplus"))
        if f.count < 3:
            raise InputError("S0 needs at least three samples")
        grid = dq.Grid(float(f.origin), float(f.step), f.count)
        S0 = dq.ActionField(grid, np.array([float(v) for v in f.values]))
        if not np.all(np.isfinite(S0.S)):
            raise InputError("S0 must be finite")
    else:
        S0 = dq.ActionField(grid, grid.x ** 2)
    spec = dq.HamiltonianSpec(args.mass)
    table = dq.dequantization_experiment(S0, spec, hs, args.t)
    if args.points:
        h = hs[-1]
        S_h = dq._evolve_action(S0, spec, h, args.t).S
        ref = dq.hopf_lax(S0, args.t, args.mass).S
        rows = [("x", "S_h", "S_hopf_lax")] + [
            (fio.format_number(x), fio.format_number(a), fio.format_number(b))
            for x, a, b in zip(grid.x, S_h, ref)]
        with open(args.points, "w") as fh:
            fh.write(_csv(rows))
    return _csv([("h", "sup_error")] + [(fio.format_number(h), fio.format_number(e)) for h, e in table])


def cmd_superpose(args):
    (h,) = _ladder(args.h)[:1]
    rng = random.Random(args.seed)
    grid = dq.default_grid(args.dx)
    S1, S2 = dq.random_quadratic(grid, rng), dq.random_quadratic(grid, rng)
    err = dq.superposition_experiment(S1, S2, args.lambda1, args.lambda2,
                                      dq.HamiltonianSpec(args.mass), h, args.t)
    return _csv([("h", "discrepancy"), (fio.format_number(h), fio.format_number(err))])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idempotent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--output", help="write to this file instead of standard output")
        return sp

    def semiring_flag(sp, default):
        sp.add_argument("--semiring", default=default,
                        choices=["maxplus", "minplus", "maxmin", "boolean", "intmaxplus"])

    sp = add("paths", cmd_paths, "single-source path values of a weighted graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--source", type=int, default=0)
    sp.add_argument("--method", default="jacobi",
                    choices=["jacobi", "gauss_seidel", "iterate", "gauss_jordan"])
    semiring_flag(sp, "minplus")

    sp = add("star", cmd_star, "Kleene star of a square matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--method", default="iterate", choices=["iterate", "gauss_jordan"])
    semiring_flag(sp, "maxplus")

    sp = add("solve", cmd_solve, "least solution of X = H X + F")
    sp.add_argument("--matrix", required=True, help="H")
    sp.add_argument("--rhs", required=True, help="F")
    sp.add_argument("--method", default="jacobi", choices=["jacobi", "gauss_seidel"])
    semiring_flag(sp, "maxplus")

    sp = add("eigen", cmd_eigen, "max-plus eigenvalue and eigenvector")
    sp.add_argument("--matrix", required=True)
    semiring_flag(sp, "maxplus")

    sp = add("joint-eigen", cmd_joint_eigen, "joint eigenvector of commuting invertible matrices")
    sp.add_argument("--matrix", required=True, action="append")
    semiring_flag(sp, "maxplus")

    sp = add("rep-check", cmd_rep_check, "verify a monomial representation")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--group", help="group table (default: the one named in the rep file)")

    sp = add("orbit-sum", cmd_orbit_sum, "fixed vector as an orbit sum")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--group", help="group table (default: the one named in the rep file)")
    sp.add_argument("--vector", help="seed vector tokens (default: all units)")

    sp = add("nilpotent-eigen", cmd_nilpotent_eigen, "joint eigenvector for a nilpotent group")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--group", help="group table (default: the one named in the rep file)")

    sp = add("integral", cmd_integral, "idempotent integral of a sampled function")
    sp.add_argument("--function", required=True)
    sp.add_argument("--weight", help="density of the idempotent measure")
    semiring_flag(sp, "maxplus")

    sp = add("convolve", cmd_convolve, "sup/inf-convolution of two sampled functions")
    sp.add_argument("--function", required=True, action="append")
    semiring_flag(sp, "maxplus")

    sp = add("legendre", cmd_legendre, "discrete Legendre transform")
    sp.add_argument("--function", required=True)
    sp.add_argument("--xi-min", type=float, default=-1.0)
    sp.add_argument("--xi-max", type=float, default=1.0)
    sp.add_argument("--xi-steps", type=int, default=21)
    sp.add_argument("--envelope", action="store_true",
                    help="emit the double transform (upper concave envelope) instead")
    semiring_flag(sp, "maxplus")

    for name, func, help_ in (
        ("dequantize", cmd_dequantize, "heat-equation vs Hopf-Lax error table over an h ladder"),
        ("superpose", cmd_superpose, "superposition principle check on a random quadratic pair"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--h", default="0.8,0.4,0.2,0.1" if name == "dequantize" else "0.2")
        sp.add_argument("--t", type=float, default=1.0)
        sp.add_argument("--mass", type=float, default=1.0)
        sp.add_argument("--dx", type=float, default=0.01)
        if name == "dequantize":
            sp.add_argument("--function", help="S0 samples (default x^2 on [-4, 4])")
            sp.add_argument("--points", help="also write x,S_h,S_hopf_lax for the last h")
        else:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--lambda1", type=float, default=0.0)
            sp.add_argument("--lambda2", type=float, default=0.0)
    return p


@contextmanager
def _sink(path):
    if path:
        with open(path, "w") as fh:
            yield fh
    else:
        yield sys.stdout


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except MathError as exc:
        with _sink(args.output) as out:
            out.write(type(exc).__name__ + "\n")
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    with _sink(args.output) as out:
        out.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
