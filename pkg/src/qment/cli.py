"""Command-line front end.

    qment code analyze --builtin hexacode
    qment state qm --ghz --D 2 --n 4 --m 2
    qment epower --exact --unitary cnot --m 1
    qment rotor sweep --n 6 --k 0,6 --m 1,2,3 --t 20
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import secrets
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import enumerators as en
from . import epower as ep
from . import gf4
from . import kicked_rotor as kr
from . import stabilizer as st
from . import states as sv


ZERO_TOL = 1e-13


class UsageError(Exception):
    pass


def _round(x):
    """Round floats to 15 significant digits, recursively."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (float, np.floating)):
        # roundoff residue of quantities that vanish exactly
        return 0.0 if abs(x) < ZERO_TOL else float(f"{float(x):.15g}")
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, Fraction):
        return float(f"{float(x):.15g}")
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_round(v) for v in x]
    return x


def _fraction_str(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(x)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, list):
        return ";".join(_csv_cell(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(result, fmt: str) -> str:
    """JSON or CSV text for a dict, a list of dicts, or a raw text artifact."""
    if isinstance(result, str):
        return result
    result = _round(result)
    if fmt != "csv":
        return json.dumps(result, indent=None) + "\n"
    rows = result if isinstance(result, list) else [result]
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    keys = list(rows[0])
    w.writerow(keys)
    for r in rows:
        w.writerow([_csv_cell(r.get(k)) for k in keys])
    return buf.getvalue()


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _rng(args) -> np.random.Generator:
    if args.seed is None:
        args.seed = secrets.randbits(32)
        print(f"seed: {args.seed}", file=sys.stderr)
    return np.random.default_rng(args.seed)


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _float_list(s: str) -> list[float]:
    try:
        return [float(x) for x in s.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")


def _signs(s: str) -> list[int]:
    out = []
    for tok in s.split(","):
        tok = tok.strip()
        if tok in ("+", "+1", "1"):
            out.append(1)
        elif tok in ("-", "-1"):
            out.append(-1)
        else:
            raise argparse.ArgumentTypeError(f"bad sign {tok!r}")
    return out


# ---- code ----------------------------------------------------------------


def _load_code(args) -> gf4.AdditiveCode:
    if getattr(args, "builtin", None):
        return gf4.builtin(args.builtin)
    text = Path(args.inp).read_text()
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        return gf4.from_generators(obj["generators"], n=obj["n"], name=Path(args.inp).stem)
    return gf4.parse_code(text, name=Path(args.inp).stem)


def code_report(code: gf4.AdditiveCode) -> dict:
    A = code.weight_distribution()
    rep = {"name": code.name, "n": code.n, "generators": [str(g) for g in code.generators],
           "size": code.size, "A": list(A), "minimumWeight": code.minimum_weight(),
           "selfOrthogonal": code.is_self_orthogonal(), "selfDual": code.is_self_dual(),
           "dualA": list(code.dual().weight_distribution())}
    if rep["selfOrthogonal"]:
        rep["d"] = code.distance()
        rep["pure"] = code.is_pure()
    if rep["selfDual"]:
        ctype = code.code_type()
        rep["type"] = ctype.value
        if code.n > 1:
            rep["extremalBound"] = gf4.extremal_bound(code.n, ctype)
        Q = [en.qm_from_weights(list(A), 2, code.n, m) for m in range(1, code.n // 2 + 1)]
        rep["Q"] = Q
        rep["Q_exact"] = [str(q) for q in Q]
    return rep


def _code_artifact(code: gf4.AdditiveCode, fmt: str | None):
    rows = [str(g) for g in code.generators]
    if fmt == "json":
        return {"n": code.n, "generators": rows}
    if fmt == "csv":
        return [{"n": code.n, "row": i, "generator": g} for i, g in enumerate(rows)]
    return gf4.format_code(code)


def _state_artifact(psi: sv.StateVector, fmt: str | None) -> str:
    """State file text at full precision, so that it reads back exactly."""
    if fmt == "csv":
        lines = ["D,n,index,re,im"]
        lines += [f"{psi.D},{psi.n},{i},{float(a.real)!r},{float(a.imag)!r}"
                  for i, a in enumerate(psi.amplitudes)]
        return "\n".join(lines) + "\n"
    return json.dumps(psi.to_json()) + "\n"


def read_state_file(path: str | Path) -> sv.StateVector:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return sv.StateVector.from_json(json.loads(text))
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ValueError(f"{path}: empty state file")
    amps = np.zeros(len(rows), dtype=complex)
    for r in rows:
        amps[int(r["index"])] = complex(float(r["re"]), float(r["im"]))
    return sv.StateVector(int(rows[0]["D"]), int(rows[0]["n"]), amps)


def cmd_code(args):
    if args.action == "analyze":
        return code_report(_load_code(args))
    if args.action == "dual":
        return _code_artifact(_load_code(args).dual(), args.format)
    if args.action == "shorten":
        return _code_artifact(_load_code(args).shorten(args.row, args.col), args.format)
    if args.action == "builtin":
        return _code_artifact(gf4.builtin(args.name), args.format)
    raise UsageError(args.action)


# ---- state ---------------------------------------------------------------


def _load_state(args) -> sv.StateVector:
    if args.ghz:
        return sv.ghz(args.D, args.n)
    if args.w:
        return sv.w_state(args.n)
    if args.code:
        signs = args.signs
        return st.stabilized_state(st.stabilizer_from_code(gf4.builtin(args.code), signs))
    if args.random:
        return sv.random_state(args.D, args.n, _rng(args))
    if args.inp:
        return read_state_file(args.inp)
    raise UsageError("choose a state: --ghz, --w, --code NAME, --random or --in FILE")


def cmd_state(args):
    if args.action == "qm":
        psi = _load_state(args)
        ms = [args.m] if args.m is not None else list(range(1, psi.n // 2 + 1))
        out = {"D": psi.D, "n": psi.n, "m": ms, "Q": [sv.q_m(psi, m) for m in ms]}
        if args.m is not None:
            out["m"], out["Q"] = out["m"][0], out["Q"][0]
        return out
    if args.action == "mw":
        psi = _load_state(args)
        return {"D": psi.D, "n": psi.n, "Q": sv.meyer_wallach_q(psi)}
    if args.action == "ghz":
        psi = sv.ghz(args.D, args.n)
    elif args.action == "w":
        psi = sv.w_state(args.n)
    elif args.action == "random":
        psi = sv.random_state(args.D, args.n, _rng(args))
    else:
        raise UsageError(args.action)
    return _state_artifact(psi, args.format)


# ---- enumerators -----------------------------------------------------------


def cmd_enum(args):
    if args.action == "weights":
        code = _load_code(args)
        group = st.stabilizer_from_code(code, args.signs)
        P = st.code_projector(group)
        return en.enumerate_projector(P, 2, code.n).report()
    if args.action == "mds":
        res = en.mds_weight_distribution(args.n, args.D)
        parity = "even" if args.n % 2 == 0 else "odd"
        return {"n": res.n, "D": res.D, "d": res.d, "A": [float(a) for a in res.A],
                "A_exact": [str(a) for a in res.A], "feasible": res.feasible,
                "bound": en.mds_existence_bound(args.D, parity)}
    if args.action == "bounds":
        out = {"n": args.n, "D": args.D,
               "dI": gf4.extremal_bound(args.n, gf4.CodeType.TYPE_I),
               "dII": gf4.extremal_bound(args.n, gf4.CodeType.TYPE_II) if args.n % 2 == 0 else None,
               "mdsBoundEven": en.mds_existence_bound(args.D, "even"),
               "mdsBoundOdd": en.mds_existence_bound(args.D, "odd")}
        return out
    raise UsageError(args.action)


# ---- stabilizer ------------------------------------------------------------


def cmd_stab(args):
    code = _load_code(args)
    group = st.stabilizer_from_code(code, args.signs)
    if args.action == "project":
        P = st.code_projector(group)
        K = 2 ** (code.n - code.k_classical)
        return {"n": code.n, "K": K, "signs": list(group.signs),
                "trace": float(np.trace(P).real),
                "Q_average": [en.subspace_average_qm(P, 2, code.n, m)
                              for m in range(1, code.n // 2 + 1)]}
    if args.action == "state":
        return _state_artifact(st.stabilized_state(group), args.format)
    raise UsageError(args.action)


# ---- entangling power ----------------------------------------------------


def _load_unitary(args) -> ep.UnitaryOperator:
    name = args.unitary
    named = {"cnot": ep.CNOT, "cz": ep.CZ, "swap": ep.SWAP}
    if name in named:
        return ep.UnitaryOperator(2, 2, named[name])
    if name == "identity":
        return ep.UnitaryOperator(args.D, args.n, np.eye(args.D**args.n))
    if name == "haar":
        return ep.UnitaryOperator(args.D, args.n, ep.haar_unitary(args.D**args.n, _rng(args)))
    if name == "rotor":
        return kr.rotor_operator(args.n, args.k)
    path = Path(name)
    if path.suffix == ".npy" and path.exists():
        M = np.load(path)
        n = round(np.log(M.shape[0]) / np.log(args.D))
        return ep.UnitaryOperator(args.D, n, M)
    raise UsageError(f"unknown unitary {name!r}: use cnot, cz, swap, identity, haar, rotor "
                     "or a .npy file")


def cmd_epower(args):
    U = _load_unitary(args)
    out = {"D": U.D, "n": U.n, "m": args.m}
    if args.mc:
        rng = _rng(args)
        val, se = ep.entangling_power_mc(U, args.m, args.samples, rng, args.threads)
        out.update(method="mc", e_p=val, std_error=se, seed=args.seed, samples=args.samples)
    else:
        out.update(method="exact", e_p=ep.entangling_power_exact(U, args.m))
    if args.seed is not None and "seed" not in out:
        out["seed"] = args.seed
    return out


# ---- rotor ---------------------------------------------------------------


def cmd_rotor(args):
    if args.action == "sweep":
        rng = _rng(args) if args.method == "mc" else None
        return kr.epower_sweep(args.n, args.k, args.m, args.t, method=args.method, rng=rng,
                               samples=args.samples, t_min=args.t_min, workers=args.threads)
    if args.action == "portrait":
        pts = kr.phase_portrait(args.k, args.trajectories, args.steps, _rng(args))
        return [{"trajectory_id": int(a), "step": int(b), "q": float(q), "p": float(p)}
                for a, b, q, p in pts]
    raise UsageError(args.action)


# ---- parser ----------------------------------------------------------------


def _common(fmt_default: str | None = "json") -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=None, help="root seed for random draws")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--format", choices=("json", "csv"), default=fmt_default)
    p.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    return p


def _code_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--in", dest="inp", help="GF(4) code file")
    g.add_argument("--builtin", choices=gf4.BUILTIN_NAMES)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qment", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True)
    common, common_csv, common_file = _common(), _common("csv"), _common(None)

    code = sub.add_parser("code", help="additive GF(4) codes").add_subparsers(
        dest="action", required=True)
    _code_source(code.add_parser("analyze", parents=[common]))
    _code_source(code.add_parser("dual", parents=[common_file]))
    p = code.add_parser("shorten", parents=[common_file])
    _code_source(p)
    p.add_argument("--row", type=int, default=0)
    p.add_argument("--col", type=int, default=0)
    p = code.add_parser("builtin", parents=[common_file])
    p.add_argument("name", choices=gf4.BUILTIN_NAMES)

    state = sub.add_parser("state", help="states and Q_m").add_subparsers(
        dest="action", required=True)
    for action in ("qm", "mw"):
        p = state.add_parser(action, parents=[common])
        g = p.add_mutually_exclusive_group()
        g.add_argument("--ghz", action="store_true")
        g.add_argument("--w", action="store_true")
        g.add_argument("--random", action="store_true")
        g.add_argument("--code", choices=gf4.BUILTIN_NAMES, help="stabilized state of a code")
        g.add_argument("--in", dest="inp", help="state JSON file")
        p.add_argument("--signs", type=_signs, default=None)
        p.add_argument("--D", type=int, default=2)
        p.add_argument("--n", type=int, default=2)
        if action == "qm":
            p.add_argument("--m", type=int, default=None)
    for action in ("ghz", "w", "random"):
        p = state.add_parser(action, parents=[common_file])
        p.add_argument("--D", type=int, default=2)
        p.add_argument("--n", type=int, required=True)

    enum = sub.add_parser("enum", help="weight enumerators").add_subparsers(
        dest="action", required=True)
    p = enum.add_parser("weights", parents=[common])
    _code_source(p)
    p.add_argument("--signs", type=_signs, default=None)
    p = enum.add_parser("mds", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--D", type=int, default=2)
    p = enum.add_parser("bounds", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--D", type=int, default=2)

    stab = sub.add_parser("stab", help="stabilizer codes").add_subparsers(
        dest="action", required=True)
    for action in ("project", "state"):
        p = stab.add_parser(action, parents=[common if action == "project" else common_file])
        _code_source(p)
        p.add_argument("--signs", type=_signs, default=None)

    p = sub.add_parser("epower", parents=[common], help="multipartite entangling power")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", default=True)
    g.add_argument("--mc", action="store_true")
    p.add_argument("--unitary", required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--D", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=float, default=0.0, help="kick strength for --unitary rotor")
    p.add_argument("--samples", type=int, default=10000)

    rotor = sub.add_parser("rotor", help="kicked rotor").add_subparsers(
        dest="action", required=True)
    p = rotor.add_parser("sweep", parents=[common_csv])
    p.add_argument("--n", type=int, default=6, help="number of qubits")
    p.add_argument("--k", type=_float_list, default=[0.0, 0.2, 1.0, 6.0])
    p.add_argument("--m", type=_int_list, default=[1, 2, 3])
    p.add_argument("--t", type=int, default=20)
    p.add_argument("--t-min", dest="t_min", type=int, default=1)
    p.add_argument("--method", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=500)
    p = rotor.add_parser("portrait", parents=[common_csv])
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--trajectories", type=int, default=50)
    p.add_argument("--steps", type=int, default=200)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", None) is not None and args.samples < 2:
        parser.error("--samples must be >= 2")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    return args


_DISPATCH = {"code": cmd_code, "state": cmd_state, "enum": cmd_enum, "stab": cmd_stab,
             "epower": cmd_epower, "rotor": cmd_rotor}


def run(args: argparse.Namespace) -> int:
    try:
        text = render(_DISPATCH[args.verb](args), args.format)
    except Exception as exc:  # reported, not raised, at the process boundary
        msg = f"{type(exc).__name__}: {exc}"
        if args.format != "csv":
            print(json.dumps({"error": msg}), file=sys.stderr)
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 2 if isinstance(exc, UsageError) else 1
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
