"""Command-line front end. Every successful command prints one JSON document."""

import argparse
import json
import math
import sys

import numpy as np

from . import circuits, estimate, identities, matfun, statesim, targetstates
from .bits import full_mask, parse_index_list, popcount
from .exceptions import SpinhafError
from .spinham import build_full, build_h1

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _print(obj):
    sys.stdout.write(json.dumps(obj) + "\n")


def _even_matrix(path):
    a = matfun.load_matrix(path)
    if a.shape[0] == 0 or a.shape[0] % 2:
        raise SpinhafError(f"{path}: need a non-empty 2N x 2N matrix, got n = {a.shape[0]}")
    return a


def cmd_matfun(args):
    a = matfun.load_matrix(args.matrix, symmetric=args.func != "perm")
    fast, oracle = {
        "perm": (matfun.permanent, matfun.permanent_enum),
        "haf": (matfun.hafnian, matfun.hafnian_enum),
        "lhaf": (matfun.loop_hafnian, matfun.loop_hafnian_enum),
    }[args.func]
    out = {"value": fast(a)}
    if args.oracle:
        ref = oracle(a)
        out["oracle"] = ref
        out["rel_diff"] = abs(out["value"] - ref) / max(abs(ref), 1e-300) if ref else abs(out["value"])
    _print(out)
    return EXIT_OK


def cmd_amp(args):
    a = _even_matrix(args.matrix)
    two_n = a.shape[0]
    s = parse_index_list(args.bra, two_n)
    model = args.model
    if model is None:
        model = "4n" if np.any(np.diag(a)) else "2n"
    if args.power < 0:
        raise SpinhafError(f"--power must be non-negative, got {args.power}")
    if model == "2n":
        value = statesim.transition_amplitude(build_h1(a), args.power, s, 0)
    else:
        bra = statesim.split_mask(s, full_mask(two_n) ^ s, two_n)
        value = statesim.transition_amplitude(build_full(a), args.power, bra, 0)
    _print({"value": value, "model": model, "power": args.power, "bra": args.bra})
    return EXIT_OK


def cmd_identity_check(args):
    a = _even_matrix(args.matrix)
    results = identities.run_all(a, tol=args.tol)
    ok = all(p for _, _, p in results)
    _print(
        {
            "checks": [{"name": n, "residual": r, "pass": p} for n, r, p in results],
            "tolerance": args.tol,
            "all_pass": ok,
        }
    )
    return EXIT_OK if ok else EXIT_FAILED_CHECK


def cmd_phi1(args):
    N = args.n
    if args.circuit is not None:
        if args.p is not None:
            raise SpinhafError("--p applies to --state only; the circuit prepares the full state")
        c = circuits.phi1_circuit(N)
        if args.circuit == "json":
            _print(circuits.circuit_to_json(c))
        else:
            _print({"format": "qasm2", "text": circuits.to_qasm2(c)})
        return EXIT_OK
    if args.p is None:
        psi = targetstates.phi1_state(N)
        norm = targetstates.norm_L(N)
    else:
        psi = targetstates.phi1_state_truncated(N, args.p)
        norm = targetstates.norm_L_truncated(N, targetstates.truncation_level(args.p))
    support = np.nonzero(psi)[0]
    _print(
        {
            "N": N,
            "p": args.p,
            "num_spins": 4 * N,
            "norm_factor": norm.value,
            "amplitudes": {str(int(m)): float(psi[m].real) for m in support},
        }
    )
    return EXIT_OK


def cmd_estimate(args):
    a = _even_matrix(args.matrix)
    report = estimate.lhaf_from_overlap(a, args.t)
    out = report.to_json()
    if args.shots is not None:
        h = estimate.hadamard_test_sample(a, report.t, args.shots, args.seed)
        N = a.shape[0] // 2
        scale = targetstates.norm_L(N).value / (report.t**N)
        # (-i)^N rotates the overlap onto the real axis
        rotated = complex(h.re, h.im) / (-1j) ** N
        out["hadamard"] = {
            "shots": args.shots,
            "seed": args.seed,
            "re": h.re,
            "im": h.im,
            "stderr": h.stderr,
            "estimate": rotated.real * scale,
            "estimate_stderr": h.stderr * scale,
        }
    _print(out)
    return EXIT_OK


def cmd_sample(args):
    a = _even_matrix(args.matrix)
    if args.weight % 2 or args.weight < 2:
        raise SpinhafError(f"--weight must be a positive even number, got {args.weight}")
    k = args.weight // 2
    t = args.t if args.t is not None else estimate.default_time(build_h1(a))
    probs = estimate.submatrix_distribution(a, t, k)
    _print(estimate.distribution_to_json(probs, k, t))
    return EXIT_OK


def cmd_evolve_circuit(args):
    a = _even_matrix(args.matrix)
    if not math.isfinite(args.t):
        raise SpinhafError("--t must be finite")
    h = build_full(a) if np.any(np.diag(a)) else build_h1(a)
    c = circuits.evolution_circuit(h, args.t)
    if args.emit == "json":
        _print(circuits.circuit_to_json(c))
    else:
        _print({"format": "qasm2", "text": circuits.to_qasm2(c)})
    return EXIT_OK


def build_parser():
    p = _Parser(prog="spinhaf", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("matfun", help="permanent, hafnian or loop-hafnian of a matrix")
    s.add_argument("func", choices=["perm", "haf", "lhaf"])
    s.add_argument("--matrix", required=True)
    s.add_argument("--oracle", action="store_true", help="also run the brute-force path")
    s.set_defaults(func_cmd=cmd_matfun)

    s = sub.add_parser("amp", help="transition amplitude <S|H^K|0>")
    s.add_argument("--matrix", required=True)
    s.add_argument("--power", type=int, required=True)
    s.add_argument("--bra", required=True, help='1-based spin list, e.g. "1,2"')
    s.add_argument("--model", choices=["2n", "4n"], default=None)
    s.set_defaults(func_cmd=cmd_amp)

    s = sub.add_parser("identity-check", help="verify the amplitude identities on a matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--tol", type=float, default=identities.DEFAULT_TOL)
    s.set_defaults(func_cmd=cmd_identity_check)

    s = sub.add_parser("phi1", help="loop-hafnian target state or its preparation circuit")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, default=None)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--state", action="store_true")
    g.add_argument("--circuit", choices=["json", "qasm2"])
    s.set_defaults(func_cmd=cmd_phi1)

    s = sub.add_parser("estimate", help="loop-hafnian from the short-time overlap")
    s.add_argument("--matrix", required=True)
    s.add_argument("--t", type=float, default=None)
    s.add_argument("--shots", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func_cmd=cmd_estimate)

    s = sub.add_parser("sample", help="postselected fixed-weight submatrix distribution")
    s.add_argument("--matrix", required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--t", type=float, default=None)
    s.set_defaults(func_cmd=cmd_sample)

    s = sub.add_parser("evolve-circuit", help="exact RXX circuit for exp(-iHt)")
    s.add_argument("--matrix", required=True)
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--emit", choices=["json", "qasm2"], required=True)
    s.set_defaults(func_cmd=cmd_evolve_circuit)
    return p


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func_cmd(args)
    except (SpinhafError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"spinhaf {args.verb}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
