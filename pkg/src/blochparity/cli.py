"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 rejected by a reconstruction
precondition. Failures print one JSON record on stderr.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import io
from .bloch import bloch_decompose, operator_bloch, split_bloch, weight_filter
from .dynamics import PauliHamiltonian, alpha_trajectory
from .entanglement import bisep_scan, odd_correlation_data
from .errors import InvariantError, SpectrumError, ValidationError
from .inversion import (FlipSpec, apply_general_flip, invert_qubit,
                        invert_via_reductions, overlap_alpha)
from .oracles import NamedState, make_named
from .reconstruction import (SPECTRUM_TOL, even_family_from_odd_evenN, even_from_odd,
                             ground_hamiltonian_from_state, odd_family_from_even,
                             odd_from_even_evenN, spectra_check, uda_certify)
from .states import QuantumState


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(f"usage: {message}")


@dataclass
class RunConfig:
    command: str
    fmt: str
    output: str | None
    tol: float
    seed: int | None


class Emitter:
    """Writes records either as aligned text or as JSON lines."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, **fields):
        if self.fmt == "structured":
            self.stream.write(io.dumps(fields) + "\n")
        else:
            self.stream.write("  ".join(f"{k}={_text(v)}" for k, v in fields.items()) + "\n")


def _text(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_text(x) for x in v) + "]"
    return str(v)


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValidationError(f"cannot parse numbers from {text!r}") from None
    if count is not None and len(vals) != count:
        raise ValidationError(f"expected {count} comma-separated numbers, got {len(vals)}")
    if not all(np.isfinite(vals)):
        raise ValidationError("non-finite number on the command line")
    return vals


def _emit_bloch(emit: Emitter, b, path, part: str | None = None):
    if path:
        io.write_bloch(path, b)
        emit.record(wrote=path, n=b.n, terms=len(b))
        return
    for p, c in b:
        fields = {"pauli": p.label(), "coeff": c}
        if part:
            fields = {"part": part, **fields}
        emit.record(**fields)


def _emit_state(emit: Emitter, state: QuantumState, path):
    if path:
        io.write_state(path, state)
        emit.record(wrote=path, kind=state.kind, n=state.n)
    else:
        emit.stream.write(io.dumps(io.state_to_dict(state)) + "\n")


def cmd_decompose(args, cfg, emit):
    b = bloch_decompose(io.read_state(args.state))
    if args.weights:
        keep = [int(w) for w in args.weights.split(",")]
        parts = [weight_filter(b, j) for j in keep]
        b = parts[0]
        for extra in parts[1:]:
            b = b + extra
    _emit_bloch(emit, b, cfg.output)


def cmd_split(args, cfg, emit):
    split = split_bloch(bloch_decompose(io.read_state(args.state)))
    if args.even_out or args.odd_out:
        if args.even_out:
            io.write_bloch(args.even_out, split.even)
        if args.odd_out:
            io.write_bloch(args.odd_out, split.odd)
        emit.record(n=split.n, even_terms=len(split.even), odd_terms=len(split.odd))
        return
    _emit_bloch(emit, split.even, None, part="even")
    _emit_bloch(emit, split.odd, None, part="odd")


def cmd_invert(args, cfg, emit):
    state = io.read_state(args.state)
    if args.method == "operator":
        out = invert_qubit(state)
    elif args.method == "reductions":
        mat = invert_via_reductions(state)
        mat = mat / np.trace(mat).real
        out = QuantumState.mixed(0.5 * (mat + mat.conj().T), state.d, tol=1e-9)
    else:
        if args.flip_vec is None:
            raise ValidationError("--method flip needs --flip-vec a0,a1,a2,a3")
        out = apply_general_flip(state, FlipSpec(tuple(_floats(args.flip_vec, 4))))
    _emit_state(emit, out, cfg.output)


def cmd_alpha(args, cfg, emit):
    ov = overlap_alpha(io.read_state(args.state))
    emit.record(alpha=ov.alpha, trace_form=ov.trace_form, alpha_class=ov.label)


def cmd_spectra(args, cfg, emit):
    rep = spectra_check(split_bloch(bloch_decompose(io.read_state(args.state))))
    emit.record(n=rep.n, case=rep.case_label, alpha=rep.alpha,
                commutator_norm=rep.commutator_norm, max_deviation=rep.max_deviation(),
                eig_Pe=[float(v) for v in rep.eig_Pe], eig_Po=[float(v) for v in rep.eig_Po])


def cmd_reconstruct(args, cfg, emit):
    given = io.read_bloch(args.input)
    n = given.n
    if args.direction == "even-from-odd":
        if n % 2 == 1:
            p_e = even_from_odd(given, n, tol=cfg.tol)
            info = {"kind": "unique"}
        else:
            fam = even_family_from_odd_evenN(given, n, tol=cfg.tol)
            phi = args.phi if args.phi is not None else 0.0
            p_e = fam.member(phi)
            info = {"kind": "one-param-even", "alpha": fam.alpha, "phi": phi}
        result = split_bloch(operator_bloch(p_e)).even
    else:
        if n % 2 == 1:
            fam = odd_family_from_even(given, n, tol=cfg.tol)
            theta = args.theta if args.theta is not None else 0.0
            phi = args.phi if args.phi is not None else 0.0
            p_o = fam.member(theta, phi)
            info = {"kind": "two-param-odd", "theta": theta, "phi": phi}
        else:
            pair = odd_from_even_evenN(given, n, tol=cfg.tol)
            which = 0 if args.which_sign in ("+", "0") else 1
            p_o = pair.member(which)
            info = {"kind": "sign-pair", "alpha": pair.alpha, "which": which}
        result = split_bloch(operator_bloch(p_o)).odd
    emit.record(direction=args.direction, n=n, **info)
    _emit_bloch(emit, result, cfg.output)


def cmd_certify(args, cfg, emit):
    p_o = io.read_bloch(args.input)
    state = uda_certify(p_o, p_o.n, tol=cfg.tol)
    _emit_state(emit, state, cfg.output)


def cmd_ground(args, cfg, emit):
    rep = ground_hamiltonian_from_state(io.read_state(args.state))
    if cfg.output:
        io.write_bloch(cfg.output, rep.hamiltonian)
    emit.record(ground_energy=rep.ground_energy, gap=rep.gap, unique=rep.unique,
                fidelity=rep.fidelity, terms=len(rep.hamiltonian))


def cmd_evolve(args, cfg, emit):
    state = io.read_state(args.state)
    ham = PauliHamiltonian.from_bloch(io.read_bloch(args.ham))
    if args.steps < 1 or args.t_max < 0:
        raise ValidationError("--steps must be positive and --t-max non-negative")
    if args.steps == 1:
        times = np.array([0.0])
    else:
        times = np.linspace(0.0, args.t_max, args.steps)
    traj = alpha_trajectory(state, ham, times, track_ghz=args.track_ghz, check=False)
    for row in traj.rows():
        if not args.track_alpha:
            row.pop("alpha")
        emit.record(**row)


def cmd_bisep(args, cfg, emit):
    b = io.read_bloch(args.input)
    if args.truncate:
        b = odd_correlation_data(b)
    rep = bisep_scan(b, tol=cfg.tol)
    for row in rep.rows():
        emit.record(**row)


def cmd_named(args, cfg, emit):
    cut = tuple(int(q) for q in args.cut.split(",")) if args.cut else ()
    state = make_named(NamedState(args.state, args.n, seed=cfg.seed, cut=cut))
    _emit_state(emit, state, cfg.output)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--tol", type=float, default=SPECTRUM_TOL,
                        help="spectrum-matching tolerance for reconstructions")
    common.add_argument("--seed", type=int, default=None)

    parser = _Parser(prog="blochparity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[common], help="state -> Bloch file")
    p.add_argument("state")
    p.add_argument("--weights", help="comma-separated weights to keep")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("split", parents=[common], help="state -> even/odd Bloch files")
    p.add_argument("state")
    p.add_argument("--even-out")
    p.add_argument("--odd-out")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("invert", parents=[common], help="state inversion")
    p.add_argument("state")
    p.add_argument("--method", choices=("operator", "reductions", "flip"), default="operator")
    p.add_argument("--flip-vec")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("alpha", parents=[common], help="overlap with the inverted state")
    p.add_argument("state")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("spectra", parents=[common], help="spectra of P_e and P_o")
    p.add_argument("state")
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("reconstruct", parents=[common], help="one parity class from the other")
    p.add_argument("direction", choices=("even-from-odd", "odd-from-even"))
    p.add_argument("input", help="Bloch file with the given correlations")
    p.add_argument("--theta", type=float)
    p.add_argument("--phi", type=float)
    p.add_argument("--which-sign", choices=("+", "-", "0", "1"), default="+")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("certify-uda", parents=[common], help="odd Bloch file -> unique state")
    p.add_argument("input")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("ground-ham", parents=[common], help="state -> H = -P_o and gap report")
    p.add_argument("state")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("evolve", parents=[common], help="trajectory rows (t, alpha, ghz, energy)")
    p.add_argument("state")
    p.add_argument("--ham", required=True)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--track-alpha", action="store_true")
    p.add_argument("--track-ghz", action="store_true")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("bisep", parents=[common], help="biseparability scan from odd correlations")
    p.add_argument("input")
    p.add_argument("--truncate", action="store_true",
                   help="drop terms the scan may not read instead of rejecting them")
    p.set_defaults(func=cmd_bisep)

    p = sub.add_parser("named", parents=[common], help="write a named state")
    p.add_argument("--state", required=True,
                   choices=("ghz", "w", "bell", "product", "biseparable-random"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--cut", help="first factor parties for biseparable-random")
    p.set_defaults(func=cmd_named)
    return parser


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(io.dumps({"status": "error", "code": code, "kind": kind,
                               "reason": str(message).replace("\n", " ")}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.tol <= 0:
            raise ValidationError("--tol must be positive")
        cfg = RunConfig(args.command, args.format, args.output, args.tol, args.seed)
        args.func(args, cfg, Emitter(cfg.fmt))
    except SpectrumError as exc:
        return _fail(2, "precondition", exc)
    except (ValidationError, InvariantError, OSError) as exc:
        return _fail(1, "validation", exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
