"""Command-line surface: infer, sweep, coupling, map-classical, demo."""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .causal import CausalVerdict, qeci_infer
from .channels import ChannelSpec, qsc_computational
from .classicalmap import diag_embed, rotate_to_classical
from .coupling import MarginalError, greedy_min_entropy_coupling
from .density import NotPSD, TraceNotOne, ZeroProbabilityCondition, star_product
from .fileio import (
    FileFormatError,
    dump_density,
    load_density_file,
    load_marginal_rows,
    load_table_file,
    table_to_csv,
)
from .linalg import (
    DimensionMismatch,
    EigenConvergenceError,
    NotHermitian,
    hermitian_eig,
    partial_trace,
    swap_subsystems,
)

DEFAULT_TOL = 1e-9


def _resolve_tol(args) -> float:
    if args.tol is not None:
        return args.tol
    raw = os.environ.get("QECI_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError as exc:
        raise FileFormatError(f"QECI_TOL is not a number: {raw!r}") from exc


def _write_text(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _verdict_json(verdict: CausalVerdict) -> str:
    return json.dumps(
        {
            "direction": verdict.direction.value,
            "s_forward": verdict.s_forward,
            "s_backward": verdict.s_backward,
            "s_cause_fwd": verdict.s_cause_fwd,
            "s_exo_fwd": verdict.s_exo_fwd,
            "s_cause_bwd": verdict.s_cause_bwd,
            "s_exo_bwd": verdict.s_exo_bwd,
        }
    )


def cmd_infer(args) -> int:
    tol = _resolve_tol(args)
    rho = load_density_file(args.input, tol)
    if len(rho.dims) != 2:
        raise FileFormatError(
            f"{args.input}: inference needs exactly two subsystem dims, got {rho.dims}"
        )
    verdict = qeci_infer(rho)
    if args.json:
        print(_verdict_json(verdict))
    else:
        print(
            f"{verdict.direction.arrow}  "
            f"S(A->B)={verdict.s_forward:.4f}  S(A<-B)={verdict.s_backward:.4f}"
        )
    return 0


def _p_grid(start: float, end: float, steps: int) -> list[float]:
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if steps == 1:
        return [start]
    return [start + k * (end - start) / (steps - 1) for k in range(steps)]


def cmd_sweep(args) -> int:
    try:
        spec = ChannelSpec(
            kind=args.channel,
            q=args.q,
            gamma1=args.gamma1,
            lambda1=args.lambda1,
            gamma2=args.gamma2,
            lambda2=args.lambda2,
        )
        grid = _p_grid(args.p_start, args.p_end, args.steps)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = ["p,s_forward,s_backward,delta,direction"]
    for p in sorted(grid):
        try:
            verdict = qeci_infer(spec.joint(p))
        except (ValueError, EigenConvergenceError) as exc:
            print(f"warning: p={p:.10g} failed: {exc}", file=sys.stderr)
            lines.append(f"{p:.10g},nan,nan,nan,error")
            continue
        direction = verdict.direction.arrow
        if p in (0.0, 1.0):
            # direction is formally undecidable at the symmetric endpoints
            direction += "*"
        delta = verdict.s_backward - verdict.s_forward
        lines.append(
            f"{p:.10g},{verdict.s_forward:.12g},{verdict.s_backward:.12g},"
            f"{delta:.12g},{direction}"
        )
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


def cmd_coupling(args) -> int:
    marginals = load_marginal_rows(args.marginals)
    result = greedy_min_entropy_coupling(marginals)
    for placement in result.placements:
        coords = ", ".join(str(i) for i in placement.coords)
        print(f"mass {placement.mass:.12g} at ({coords})")
    print(f"coupling entropy (bits): {result.entropy_bits:.4f}")
    return 0


def cmd_map_classical(args) -> int:
    if args.mode == "embed":
        joint = load_table_file(args.input)
        _write_text(dump_density(diag_embed(joint)) + "\n", args.out)
    else:
        tol = _resolve_tol(args)
        rho = load_density_file(args.input, tol)
        if len(rho.dims) != 2:
            raise FileFormatError(
                f"{args.input}: rotation needs exactly two subsystem dims, got {rho.dims}"
            )
        _write_text(table_to_csv(rotate_to_classical(rho)), args.out)
    return 0


def _fmt_val(z: complex) -> str:
    if abs(z.imag) < 5e-5:
        return f"{z.real:.4f}"
    return f"{z.real:.4f}{z.imag:+.4f}i"


def _fmt_mat(mat: np.ndarray) -> str:
    rows = ["[" + ", ".join(_fmt_val(z) for z in row) + "]" for row in np.atleast_2d(mat)]
    return "[" + "; ".join(rows) + "]"


def _fmt_vec(values) -> str:
    return "[" + ", ".join(f"{float(v):.4f}" for v in values) + "]"


def cmd_demo(args) -> int:
    rho = qsc_computational(0.4, 0.05)
    dim_a, dim_b = rho.dims
    verdict = qeci_infer(rho)

    rho_a = partial_trace(rho.mat, dim_a, dim_b, "B")
    rho_b = partial_trace(rho.mat, dim_a, dim_b, "A")
    rho_ba = swap_subsystems(rho.mat, dim_a, dim_b)
    out = []

    def step(n: int, text: str) -> None:
        out.append(f"step {n:2d}: {text}")

    step(1, f"reduced density of A = {_fmt_mat(rho_a)}")
    step(2, f"reduced density of B = {_fmt_mat(rho_b)}")
    step(3, f"joint reordered to B-first = {_fmt_mat(rho_ba)}")

    def _branches(reduced: np.ndarray):
        eig = hermitian_eig(reduced)
        # ascending eigenvalue order for the printed walkthrough
        pairs = list(zip(eig.eigenvalues, eig.eigenvectors.T))[::-1]
        return [(float(v), np.asarray(k)) for v, k in pairs]

    for offset, (label, base_mat, cond_dim, keep_dim) in enumerate(
        (("A", rho.mat, dim_a, dim_b), ("B", rho_ba, dim_b, dim_a))
    ):
        base_step = 4 + offset * 10
        reduced = rho_a if label == "A" else rho_b
        branches = _branches(reduced)
        vecs = np.column_stack([k for _, k in branches])
        vals = [v for v, _ in branches]
        step(
            base_step,
            f"eigendecomposition of reduced {label}: V = {_fmt_mat(vecs)}, "
            f"D = diag({_fmt_vec(vals)})",
        )
        step(base_step + 1, "loop over eigenbranches " + _fmt_vec(vals))
        projectors = [np.outer(k, k.conj()) for _, k in branches]
        step(
            base_step + 2,
            "branch projectors: "
            + "; ".join(f"P{i} = {_fmt_mat(pr)}" for i, pr in enumerate(projectors)),
        )
        numerators = [
            partial_trace(star_product(base_mat, pr), cond_dim, keep_dim, "A")
            for pr in projectors
        ]
        step(
            base_step + 3,
            "unnormalized conditionals: "
            + "; ".join(f"N{i} = {_fmt_mat(nm)}" for i, nm in enumerate(numerators)),
        )
        conditionals = [nm / np.trace(nm).real for nm in numerators]
        step(
            base_step + 4,
            "conditional densities: "
            + "; ".join(f"rho{i} = {_fmt_mat(c)}" for i, c in enumerate(conditionals)),
        )
        spectra = [np.sort(hermitian_eig(c).eigenvalues) for c in conditionals]
        step(
            base_step + 5,
            "conditional spectra: "
            + "; ".join(f"B{i} = {_fmt_vec(s)}" for i, s in enumerate(spectra)),
        )
        step(
            base_step + 6,
            "marginal matrix M = [" + "; ".join(_fmt_vec(s) for s in spectra) + "]",
        )
        step(base_step + 7, "end of eigenbranch loop")

    step(12, f"coupling entropy forward = {verdict.s_exo_fwd:.4f}")
    step(
        13,
        f"S(A->B) = {verdict.s_cause_fwd:.4f} + {verdict.s_exo_fwd:.4f} "
        f"= {verdict.s_forward:.4f}",
    )
    step(22, f"coupling entropy backward = {verdict.s_exo_bwd:.4f}")
    step(
        23,
        f"S(A<-B) = {verdict.s_cause_bwd:.4f} + {verdict.s_exo_bwd:.4f} "
        f"= {verdict.s_backward:.4f}",
    )
    cmp_sign = "<" if verdict.s_forward < verdict.s_backward else ">="
    step(
        24,
        f"compare: S(A->B) = {verdict.s_forward:.4f} {cmp_sign} "
        f"S(A<-B) = {verdict.s_backward:.4f}",
    )
    step(25, f"causal direction: {verdict.direction.arrow}")

    out.sort(key=lambda line: int(line.split(":")[0].split()[1]))
    print("\n".join(out))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeci",
        description="Causal direction inference for bipartite quantum states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_infer = sub.add_parser("infer", help="infer causal direction from a density file")
    p_infer.add_argument("--input", required=True, help="density file (JSON)")
    p_infer.add_argument("--tol", type=float, default=None, help="validation tolerance")
    p_infer.add_argument("--json", action="store_true", help="machine-readable output")
    p_infer.set_defaults(func=cmd_infer)

    p_sweep = sub.add_parser("sweep", help="sweep a channel's error probability")
    p_sweep.add_argument("--channel", required=True, choices=ChannelSpec.KINDS)
    p_sweep.add_argument("--q", type=float, default=0.5)
    p_sweep.add_argument("--p-start", type=float, required=True)
    p_sweep.add_argument("--p-end", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True, help="number of grid points")
    p_sweep.add_argument("--gamma1", type=float, default=None)
    p_sweep.add_argument("--lambda1", type=float, default=None)
    p_sweep.add_argument("--gamma2", type=float, default=None)
    p_sweep.add_argument("--lambda2", type=float, default=None)
    p_sweep.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_coupling = sub.add_parser("coupling", help="solve a standalone coupling")
    p_coupling.add_argument("--marginals", required=True, help="JSON file of probability rows")
    p_coupling.set_defaults(func=cmd_coupling)

    p_map = sub.add_parser("map-classical", help="convert between tables and densities")
    p_map.add_argument("--input", required=True)
    p_map.add_argument("--mode", required=True, choices=("rotate", "embed"))
    p_map.add_argument("--tol", type=float, default=None)
    p_map.add_argument("--out", default=None)
    p_map.set_defaults(func=cmd_map_classical)

    p_demo = sub.add_parser("demo", help="replay the worked bit-flip channel example")
    p_demo.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotHermitian, TraceNotOne, NotPSD) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (ZeroProbabilityCondition, MarginalError, DimensionMismatch, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except EigenConvergenceError as exc:
        print(f"error: numeric failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
