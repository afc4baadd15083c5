"""
Interface en ligne de commande
Point d'entrée unique : python -m app <sous-commande> ...

Codes de sortie : 0 succès / faisable, 1 violation / infaisable / erreur
du domaine, 2 erreur d'usage, 3 plafond de ressources
"""

import argparse
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
import scipy
import sympy

from app import __version__
from app.config import configure, get_settings, reset_configuration, setup_logging
from app.schemas.common import to_jsonable
from app.schemas.horn import HornTuple, PartialSpectrum, RunConfig, TwoSidedSpectrum
from app.services.errors import HornError, ResourceCapError, WitnessConvergenceError
from app.services.horn_sets_service import HornSetKind, HornSetsService
from app.services.interpolate_service import InterpolateService
from app.services.partial_service import PartialService
from app.services.scenarios_service import ScenariosService, reducing_witness
from app.services.schur_hive_service import SchurHiveService
from app.services.spectra_service import SpectraService
from app.services.witness_service import WitnessService, WitnessSet

logger = logging.getLogger(__name__)

SCHEMA = "horn-report/1"
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class Outcome:
    """Résultat d'une sous-commande : charge utile, violations et table CSV"""

    def __init__(self, result: Any, violations: Optional[list] = None,
                 table: Optional[pd.DataFrame] = None, failed: bool = False):
        self.result = result
        self.violations = violations or []
        self.table = table
        self.failed = failed or bool(self.violations)


# ============================================================================
# LECTURE DES ARGUMENTS
# ============================================================================

def parse_floats(text: str) -> List[float]:
    """'1,0.5,-inf' → [1.0, 0.5, -inf] ; chaîne vide → []"""
    return [float(x) for x in text.split(",") if x.strip()]


def parse_ints(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def load_instance(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def two_sided(value: Any) -> TwoSidedSpectrum:
    """{"pos": [...], "neg": [...]} ou liste (partie positive seule)"""
    if isinstance(value, dict):
        return TwoSidedSpectrum(**value)
    return TwoSidedSpectrum(pos=tuple(value))


def partial(value: Any, two_sided_mode: bool = False) -> PartialSpectrum:
    """{"spec": {"1": 4.0}} ou liste (spectre complet)"""
    if isinstance(value, dict):
        spec = value.get("spec", value)
        return PartialSpectrum(spec={int(k): float(v) for k, v in spec.items()},
                               two_sided=value.get("two_sided", two_sided_mode))
    return PartialSpectrum.full(value)


def _spectra_from(args, data: Optional[Dict[str, Any]]):
    if data is not None:
        return data["alpha"], data["betas"]
    if args.alpha is None or not args.beta:
        raise argparse.ArgumentTypeError("--alpha et au moins un --beta sont requis (ou --input)")
    return parse_floats(args.alpha), [parse_floats(b) for b in args.beta]


# ============================================================================
# SOUS-COMMANDES
# ============================================================================

def cmd_triples(args) -> Outcome:
    if args.count_only:
        frame = HornSetsService.counts(args.kind, args.m, args.N)
        return Outcome(frame.to_dict(orient="records"), table=frame)
    tuples = HornSetsService.enumerate(args.kind, args.N, args.r, args.m)
    frame = pd.DataFrame([{"N": t.N, "r": t.r, "tuple": t.label()} for t in tuples], columns=["N", "r", "tuple"])
    return Outcome({"count": len(tuples), "tuples": [t.label() for t in tuples]}, table=frame)


def cmd_check(args) -> Outcome:
    data = load_instance(args.input) if args.input else None
    mode = args.mode if data is None else data.get("mode", args.mode)
    if mode in ("extended", "one-sided"):
        if data is None:
            raise argparse.ArgumentTypeError("Le mode étendu requiert --input")
        alpha = two_sided(data["alpha"])
        betas = [two_sided(b) for b in data["betas"]]
        records = SpectraService.scan_extended(alpha, betas, args.n_max, window=args.window,
                                               one_sided=mode == "one-sided")
        return Outcome({"mode": mode, "n_max": args.n_max, "n_violations": len(records)}, records)

    alpha, betas = _spectra_from(args, data)
    if mode == "positive":
        records = SpectraService.scan_positive(alpha, betas, args.n_max, window=args.window)
        return Outcome({"mode": mode, "n_max": args.n_max, "n_violations": len(records)}, records)

    N = args.N or (data or {}).get("N") or len(alpha)
    if mode == "reverse":
        records = SpectraService.scan_reverse(alpha, betas, N)
        return Outcome({"mode": mode, "N": N, "n_violations": len(records)}, records)
    records = SpectraService.scan_finite(alpha, betas, N, form="horn_sym" if mode == "sym" else "horn")
    gap = SpectraService.trace_gap(np.asarray(alpha, dtype=float)[:N],
                                   [np.asarray(b, dtype=float)[:N] for b in betas])
    return Outcome({"mode": mode, "N": N, "trace_gap": gap, "n_violations": len(records)}, records)


def cmd_interpolate(args) -> Outcome:
    data = load_instance(args.input)
    if "n" in data:
        res = InterpolateService.realize_two_sided(
            two_sided(data["alpha"]), [two_sided(b) for b in data["betas"]], int(data["n"]),
            alpha_pp=two_sided(data["alphaPP"]) if "alphaPP" in data else None,
            betas_pp=[two_sided(b) for b in data["betasPP"]] if "betasPP" in data else None,
            integer_mode=args.integer,
        )
    else:
        N = int(data.get("N", len(data["alphaP"])))
        res = InterpolateService.interpolate(data["alphaP"], data["alphaPP"], data["betasP"], data["betasPP"],
                                             N, integer_mode=args.integer)
    if args.audit:
        Path(args.audit).write_text("\n".join(res.steps) + "\n", encoding="utf-8")
    frame = pd.DataFrame({"alpha": res.alpha, **{f"beta{k + 1}": b for k, b in enumerate(res.betas)}})
    return Outcome(res.to_dict(), table=frame)


def cmd_partial(args) -> Outcome:
    if args.partial_command == "johnson":
        betas = [parse_floats(b) for b in args.beta]
        lower, upper = PartialService.johnson_bounds(betas, args.p, args.N)
        return Outcome({"p": args.p, "N": args.N, "lower": lower, "upper": upper})
    if args.partial_command == "lowrank":
        betas = [parse_floats(b) for b in args.beta]
        check = PartialService.lowrank_check(betas, args.rho, args.N)
        return Outcome({"rho": args.rho, "N": args.N, "feasible": check.feasible}, check.violations)

    data = load_instance(args.input)
    two_sided_mode = bool(data.get("two_sided", False))
    alpha = partial(data["alpha"], two_sided_mode)
    betas = [partial(b, two_sided_mode) for b in data["betas"]]
    if args.partial_command == "check":
        check = PartialService.check_partial(alpha, betas, int(data["N"]))
        return Outcome({"feasible": check.feasible, "envelopes": [e.to_dict() for e in check.envelopes]},
                       check.violations)
    if two_sided_mode:
        ext = PartialService.extend_two_sided(alpha, betas, N_max=args.n_max)
        res = InterpolateService.realize_two_sided(ext.alphaP, ext.betasP, int(data.get("n", 1)),
                                                   alpha_pp=ext.alphaPP, betas_pp=ext.betasPP)
        return Outcome({"extension": ext.to_dict(), "interpolation": res.to_dict(),
                        "note": "support fini : au-delà des indices spécifiés la suite vaut 0"})
    real = PartialService.realize_partial(alpha, betas, int(data["N"]), integer_mode=args.integer,
                                          with_witness=args.witness, seed=get_settings().seed)
    result = {"alpha": real.alpha.tolist(), "betas": [b.tolist() for b in real.betas], "C": real.C}
    if real.witness is not None:
        result["witness"] = real.witness.to_dict()
    return Outcome(result)


def _witness_from_json(data: Dict[str, Any]) -> WitnessSet:
    def matrix(d):
        return np.asarray(d["real"]) + 1j * np.asarray(d["imag"])
    return WitnessSet.from_matrices(matrix(data["A"]), [matrix(b) for b in data["B"]])


def cmd_witness(args) -> Outcome:
    seed = get_settings().seed
    if args.witness_command == "synth":
        alpha, betas = parse_floats(args.alpha), [parse_floats(b) for b in args.beta]
        try:
            W = WitnessService.synthesize(alpha, betas, tol=args.tol, max_iter=args.max_iter,
                                          restarts=args.restarts, seed=seed, check=not args.no_check)
        except WitnessConvergenceError as e:
            best = e.best.to_dict() if e.best is not None else None
            return Outcome({"error": str(e), "best": best}, failed=True)
        return Outcome(W.to_dict(include_matrices=True))

    if args.example:
        W = reducing_witness(args.K, seed)
    elif args.input:
        W = _witness_from_json(load_instance(args.input))
    else:
        raise argparse.ArgumentTypeError("--input ou --example est requis")
    I = tuple(parse_ints(args.I))
    t = HornTuple(m=len(args.J), N=args.N, r=len(I), I=I, J=tuple(tuple(parse_ints(j)) for j in args.J))
    report = WitnessService.detect_reducing(W, t, parse_ints(args.q), tol=args.tol,
                                            orientation=args.orientation, seed=seed)
    report.pop("projector")
    return Outcome(report, failed=not report["success"])


def cmd_hive(args) -> Outcome:
    h = SchurHiveService.example_hive(args.W, args.H)
    i = np.arange(1, args.W + 1, dtype=float)
    j = np.arange(1, args.H + 1, dtype=float)
    report = SchurHiveService.verify_continuous_lr(
        1.0 / (i + 2), 1.0 / (2 * (j + 1)), 1.0 / (2 * (i + 1)), h,
        tail_bound=1.0 / (2 * (args.H + 2)),
    )
    table = SchurHiveService.hive_to_frame(h) if args.dump_csv else None
    return Outcome(report, table=table, failed=not report["passed"])


def cmd_lr(args) -> Outcome:
    lam = parse_ints(args.lam)
    if args.factor:
        factors = [parse_ints(f) for f in args.factor]
        return Outcome({"target": lam, "factors": factors,
                        "coefficient": SchurHiveService.multi_lr_coeff(lam, factors)})
    mu, nu = parse_ints(args.mu), parse_ints(args.nu)
    return Outcome({"lambda": lam, "mu": mu, "nu": nu, "coefficient": SchurHiveService.lr_coeff(lam, mu, nu)})


def cmd_examples(args) -> Outcome:
    if args.examples_command == "list":
        items = ScenariosService.list()
        return Outcome(items, table=pd.DataFrame(items))
    out = ScenariosService.run(args.name, seed=get_settings().seed)
    return Outcome({k: v for k, v in out.items() if k != "violations"}, out["violations"],
                   failed=out["violated"])


# ============================================================================
# PARSEUR
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="horn", description="Faisabilité spectrale de Horn : tuples, inégalités, "
                                                              "interpolation, témoins et hives")
    parser.add_argument("--threads", type=int, default=None, help="Parallélisme des énumérations")
    parser.add_argument("--seed", type=int, default=None, help="Graine unique de l'exécution")
    parser.add_argument("--format", dest="output_format", choices=["json", "csv", "text"], default="json")
    parser.add_argument("--output", default=None, help="Fichier de sortie (défaut : stdout)")
    parser.add_argument("--max-n", type=int, default=None, help="Plafond explicite de N")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triples", help="Énumère T, T̄ ou Ṫ")
    p.add_argument("--kind", choices=[k.value for k in HornSetKind], default="T")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--count-only", action="store_true", help="Cardinalités de toutes les cellules N' ≤ N")
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("check", help="Balaye une famille d'inégalités")
    p.add_argument("--input", default=None)
    p.add_argument("--alpha", default=None)
    p.add_argument("--beta", action="append", default=[])
    p.add_argument("--mode", choices=["finite", "sym", "reverse", "extended", "one-sided", "positive"],
                   default="finite")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--window", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("interpolate", help="Interpole entre données primées et doublement primées")
    p.add_argument("--input", required=True)
    p.add_argument("--integer", action="store_true")
    p.add_argument("--audit", default=None, help="Fichier texte du journal d'audit")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("partial", help="Spectres partiellement spécifiés")
    psub = p.add_subparsers(dest="partial_command", required=True)
    for name in ("check", "realize"):
        q = psub.add_parser(name)
        q.add_argument("--input", required=True)
        q.add_argument("--integer", action="store_true")
        q.add_argument("--witness", action="store_true")
        q.add_argument("--n-max", type=int, default=3)
    q = psub.add_parser("johnson")
    q.add_argument("--beta", action="append", required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--N", type=int, required=True)
    q = psub.add_parser("lowrank")
    q.add_argument("--beta", action="append", required=True)
    q.add_argument("--rho", type=int, required=True)
    q.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_partial)

    p = sub.add_parser("witness", help="Témoins matriciels")
    wsub = p.add_subparsers(dest="witness_command", required=True)
    q = wsub.add_parser("synth")
    q.add_argument("--alpha", required=True)
    q.add_argument("--beta", action="append", required=True)
    q.add_argument("--tol", type=float, default=1e-8)
    q.add_argument("--max-iter", type=int, default=10000)
    q.add_argument("--restarts", type=int, default=5)
    q.add_argument("--no-check", action="store_true", help="Ne pas vérifier Horn avant la synthèse")
    q = wsub.add_parser("reduce")
    q.add_argument("--input", default=None, help="Témoin JSON produit par witness synth")
    q.add_argument("--example", action="store_true", help="Témoin de référence à sous-espace réduisant")
    q.add_argument("--K", type=int, default=16)
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--I", required=True)
    q.add_argument("--J", action="append", required=True)
    q.add_argument("--q", required=True)
    q.add_argument("--orientation", choices=["direct", "bar"], default="direct")
    q.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("hive", help="Hive explicite et règle LR continue")
    hsub = p.add_subparsers(dest="hive_command", required=True)
    q = hsub.add_parser("verify")
    q.add_argument("--W", type=int, default=60)
    q.add_argument("--H", type=int, default=60)
    q.add_argument("--dump-csv", action="store_true")
    p.set_defaults(func=cmd_hive)

    p = sub.add_parser("lr", help="Coefficient de Littlewood-Richardson")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", default="")
    p.add_argument("--nu", default="")
    p.add_argument("--factor", action="append", default=None, help="Facteurs du produit itéré")
    p.set_defaults(func=cmd_lr)

    p = sub.add_parser("paper-examples", help="Scénarios de référence")
    esub = p.add_subparsers(dest="examples_command", required=True)
    esub.add_parser("list")
    q = esub.add_parser("run")
    q.add_argument("name")
    p.set_defaults(func=cmd_examples)
    return parser


# ============================================================================
# SORTIE
# ============================================================================

def render(outcome: Outcome, config: RunConfig) -> str:
    rows = [rec.to_row() for rec in outcome.violations]
    if config.output_format == "csv":
        frame = SpectraService.violations_frame(outcome.violations) if rows or outcome.table is None else outcome.table
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False)
        return buffer.getvalue()
    if config.output_format == "text":
        lines = [f"{config.subcommand} : {'VIOLATION' if outcome.failed else 'OK'}"]
        if isinstance(outcome.result, dict):
            lines += [f"  {k} = {v}" for k, v in outcome.result.items() if not isinstance(v, (dict, list))]
        lines += [f"  {r['family']} {r['tuple']} q={r['q']} lhs={r['lhs']:.6g} rhs={r['rhs']:.6g}" for r in rows]
        return "\n".join(lines) + "\n"
    report = {
        "schema": SCHEMA,
        "config": config.model_dump(),
        "versions": {
            "horn": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "sympy": sympy.__version__, "pandas": pd.__version__,
        },
        "status": "violation" if outcome.failed else "ok",
        "result": outcome.result,
        "violations": rows,
    }
    return json.dumps(to_jsonable(report), indent=2, ensure_ascii=False) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    level = "DEBUG" if args.verbose > 1 else "INFO" if args.verbose == 1 else None
    reset_configuration()
    settings = configure(threads=args.threads, seed=args.seed, max_n=args.max_n)
    setup_logging(level)
    config = RunConfig(
        subcommand=args.command,
        instance_path=getattr(args, "input", None),
        n_max=getattr(args, "n_max", None),
        seed=settings.seed,
        output_format=args.output_format,
        max_n=args.max_n,
        threads=settings.threads,
    )

    try:
        outcome = args.func(args)
    except ResourceCapError as e:
        print(f"horn: {e}", file=sys.stderr)
        return EXIT_CAP
    except argparse.ArgumentTypeError as e:
        print(f"horn: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HornError as e:
        print(f"horn: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, KeyError, FileNotFoundError) as e:
        print(f"horn: entrée invalide : {e}", file=sys.stderr)
        return EXIT_USAGE

    text = render(outcome, config)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_VIOLATION if outcome.failed else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
