"""Command-line front end: load a workspace, run one operation, emit a report.

Reports are machine-readable JSON on stdout (or a flat text rendering with
``--output text``); diagnostics go to stderr.  Exit status is 0 on success,
1 when an operation fails for a domain reason (e.g. a difference that is not
dominated), and 2 on usage or workspace errors.  Given the same workspace,
command, and seed, the emitted report is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import correspondence as corr
from . import gns, kernels
from .algebra import validate_algebra
from .errors import StarRepError, UnknownVerb, ValidationError, WorkspaceError
from .kernels import Kernel
from .numerics import TolerancePolicy
from .workspace import WorkspaceFile, encode_matrix, parse_workspace

__all__ = ["main", "run_command", "build_parser"]

_CHAIN_RULES = ("constant", "geometric-decreasing", "geometric-increasing", "doubling")


def _add_common_options(parser: argparse.ArgumentParser, top_level: bool) -> None:
    # The same flags are accepted before and after the verb; the subparser
    # copies suppress their defaults so they never clobber a value given
    # up front.
    kw = {} if top_level else {"default": argparse.SUPPRESS}
    parser.add_argument(
        "--workspace", "-w", help="workspace JSON file",
        **({"default": None} if top_level else kw),
    )
    parser.add_argument("--tol-rank", type=float, dest="tol_rank",
                        **({"default": 1e-9} if top_level else kw))
    parser.add_argument("--tol-psd", type=float, dest="tol_psd",
                        **({"default": 1e-9} if top_level else kw))
    parser.add_argument("--tol-match", type=float, dest="tol_match",
                        **({"default": 1e-8} if top_level else kw))
    parser.add_argument("--seed", type=int, **({"default": 0} if top_level else kw))
    parser.add_argument("--output", choices=("json", "text"),
                        **({"default": "json"} if top_level else kw))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starrep",
        description="Operations on finite-dimensional *-algebras, functionals, "
        "kernels, and their representations.",
    )
    _add_common_options(parser, top_level=True)

    sub = parser.add_subparsers(dest="verb", required=True)

    def add_verb(name: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name)
        _add_common_options(p, top_level=False)
        return p

    add_verb("validate").add_argument("algebra")

    for verb in ("gns", "kernel", "decompose", "roundtrip"):
        p = add_verb(verb)
        p.add_argument("algebra")
        p.add_argument("functional")

    p = add_verb("functional")
    p.add_argument("algebra")
    p.add_argument("kernel")

    for verb in ("cone-sum", "cone-leq", "exclude", "min-scale"):
        p = add_verb(verb)
        p.add_argument("k1")
        p.add_argument("k2")

    p = add_verb("cone-scale")
    p.add_argument("factor", type=float)
    p.add_argument("kernel")

    p = add_verb("cone-diff")
    p.add_argument("kernel")
    p.add_argument("k1")

    p = add_verb("subrep")
    p.add_argument("k1")
    p.add_argument("kernel")

    p = add_verb("chain")
    p.add_argument("kernel")
    p.add_argument("--rule", choices=_CHAIN_RULES, required=True)
    p.add_argument("--ratio", type=float, default=0.5)
    p.add_argument("--max-steps", type=int, default=50, dest="max_steps")

    p = add_verb("weighted-sum")
    p.add_argument("terms", nargs="+", help="alternating WEIGHT KERNEL pairs")

    p = add_verb("equiv")
    p.add_argument("algebra")
    p.add_argument("f1")
    p.add_argument("f2")

    p = add_verb("pullback")
    p.add_argument("homomorphism")
    p.add_argument("kernel")

    p = add_verb("audit")
    p.add_argument("algebra")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("factor", type=float)

    return parser


def _functional_for(ws: WorkspaceFile, algebra_name: str, functional_name: str):
    entry = ws.functional(functional_name)
    if entry.algebra != algebra_name:
        raise ValidationError(
            f"functional {functional_name!r} lives on {entry.algebra!r}, "
            f"not {algebra_name!r}"
        )
    return ws.algebra(algebra_name), entry.values


def _kernel_for(ws: WorkspaceFile, name: str) -> tuple[str, Kernel]:
    entry = ws.kernel(name)
    return entry.algebra, entry.kernel


def _chain_generator(rule: str, ratio: float, base: Kernel, pol: TolerancePolicy):
    h = base.matrix

    def gen(step: int) -> Kernel:
        if rule == "constant":
            return base
        if rule == "geometric-decreasing":
            return kernels.make_kernel((ratio**step) * h, pol)
        if rule == "geometric-increasing":
            return kernels.make_kernel((1.0 - ratio**step) * h, pol)
        return kernels.make_kernel((2.0**step) * h, pol)

    return gen


def run_command(ws: WorkspaceFile, args: argparse.Namespace, pol: TolerancePolicy) -> dict:
    """Dispatch one parsed command against a workspace and build its report."""
    verb = args.verb
    out: dict = {}
    inputs: dict = {}

    if verb == "validate":
        algebra = ws.algebra(args.algebra)
        inputs["algebra"] = args.algebra
        out = validate_algebra(algebra, pol).as_dict()

    elif verb == "gns":
        algebra, values = _functional_for(ws, args.algebra, args.functional)
        inputs = {"algebra": args.algebra, "functional": encode_matrix(values)}
        rep = gns.gns_construct(algebra, values, pol)
        report = gns.verify_star_rep(rep, pol)
        out = {
            "rep_dim": rep.rep_dim,
            "cyclic_vector": encode_matrix(rep.cyclic_vector),
            "matrices": [encode_matrix(m) for m in rep.matrices],
            "verification": report.as_dict(),
        }

    elif verb == "kernel":
        algebra, values = _functional_for(ws, args.algebra, args.functional)
        inputs = {"algebra": args.algebra, "functional": encode_matrix(values)}
        k = corr.functional_to_kernel(algebra, values, pol)
        out = {"matrix": encode_matrix(k.matrix), "rank": k.rank}

    elif verb == "functional":
        algebra = ws.algebra(args.algebra)
        kname, k = _kernel_for(ws, args.kernel)
        if kname != args.algebra:
            raise ValidationError(
                f"kernel {args.kernel!r} lives on {kname!r}, not {args.algebra!r}"
            )
        inputs = {"algebra": args.algebra, "kernel": args.kernel}
        values = corr.kernel_to_functional(algebra, k, pol)
        out = {"values": encode_matrix(values)}

    elif verb == "cone-sum":
        _, k1 = _kernel_for(ws, args.k1)
        _, k2 = _kernel_for(ws, args.k2)
        inputs = {"k1": args.k1, "k2": args.k2}
        k = kernels.kernel_sum(k1, k2, pol)
        out = {"matrix": encode_matrix(k.matrix), "rank": k.rank}

    elif verb == "cone-scale":
        _, k = _kernel_for(ws, args.kernel)
        inputs = {"factor": args.factor, "kernel": args.kernel}
        scaled = kernels.kernel_scale(args.factor, k, pol)
        out = {"matrix": encode_matrix(scaled.matrix), "rank": scaled.rank}

    elif verb == "cone-leq":
        _, k1 = _kernel_for(ws, args.k1)
        _, k2 = _kernel_for(ws, args.k2)
        inputs = {"k1": args.k1, "k2": args.k2}
        out = {"leq": kernels.kernel_leq(k1, k2, pol)}

    elif verb == "cone-diff":
        _, k = _kernel_for(ws, args.kernel)
        _, k1 = _kernel_for(ws, args.k1)
        inputs = {"kernel": args.kernel, "k1": args.k1}
        diff = kernels.kernel_difference(k, k1, pol)
        out = {"matrix": encode_matrix(diff.matrix), "rank": diff.rank}

    elif verb == "exclude":
        _, k1 = _kernel_for(ws, args.k1)
        _, k2 = _kernel_for(ws, args.k2)
        inputs = {"k1": args.k1, "k2": args.k2}
        out = {"mutually_excluding": kernels.mutually_excluding(k1, k2, pol)}

    elif verb == "min-scale":
        _, k1 = _kernel_for(ws, args.k1)
        _, k2 = _kernel_for(ws, args.k2)
        inputs = {"k1": args.k1, "k2": args.k2}
        lam = kernels.min_dominating_scale(k1, k2, pol)
        out = {"dominating_scale": lam}

    elif verb == "subrep":
        _, k1 = _kernel_for(ws, args.k1)
        _, k = _kernel_for(ws, args.kernel)
        inputs = {"k1": args.k1, "kernel": args.kernel}
        out = {"ordinary_subrepresentation": kernels.ordinary_subrep_check(k1, k, pol)}

    elif verb == "chain":
        _, base = _kernel_for(ws, args.kernel)
        inputs = {
            "kernel": args.kernel,
            "rule": args.rule,
            "ratio": args.ratio,
            "max_steps": args.max_steps,
        }
        direction = (
            "decreasing" if args.rule in ("constant", "geometric-decreasing") else "increasing"
        )
        gen = _chain_generator(args.rule, args.ratio, base, pol)
        limit = kernels.chain_limit(gen, direction, pol, max_steps=args.max_steps)
        out = {"matrix": encode_matrix(limit.matrix), "rank": limit.rank}

    elif verb == "weighted-sum":
        if len(args.terms) % 2 != 0:
            raise UnknownVerb("weighted-sum expects alternating WEIGHT KERNEL pairs")
        terms = []
        echoed = []
        for i in range(0, len(args.terms), 2):
            try:
                weight = float(args.terms[i])
            except ValueError as exc:
                raise UnknownVerb(f"bad weight {args.terms[i]!r}") from exc
            _, k = _kernel_for(ws, args.terms[i + 1])
            terms.append((weight, k))
            echoed.append({"weight": weight, "kernel": args.terms[i + 1]})
        inputs = {"terms": echoed}
        combined, direct = kernels.weighted_kernel_sum(terms, pol)
        out = {
            "matrix": encode_matrix(combined.matrix),
            "rank": combined.rank,
            "is_direct": direct,
        }

    elif verb == "decompose":
        algebra, values = _functional_for(ws, args.algebra, args.functional)
        inputs = {"algebra": args.algebra, "functional": encode_matrix(values)}
        result = gns.decompose(algebra, values, pol, seed=args.seed)
        out = {
            "components": [
                {
                    "weight": float(c.weight),
                    "functional": encode_matrix(c.functional),
                    "rep_dim": c.representation.rep_dim,
                }
                for c in result.components
            ],
            "multiplicity_classes": [list(c) for c in result.multiplicity_classes],
        }

    elif verb == "equiv":
        algebra, v1 = _functional_for(ws, args.algebra, args.f1)
        _, v2 = _functional_for(ws, args.algebra, args.f2)
        inputs = {"algebra": args.algebra, "f1": args.f1, "f2": args.f2}
        rep1 = gns.gns_construct(algebra, v1, pol)
        rep2 = gns.gns_construct(algebra, v2, pol)
        u = gns.intertwiner(rep1, rep2, pol)
        out = {"equivalent": True, "unitary": encode_matrix(u)}

    elif verb == "pullback":
        entry = ws.homomorphism(args.homomorphism)
        kname, k = _kernel_for(ws, args.kernel)
        if kname != entry.target:
            raise ValidationError(
                f"kernel {args.kernel!r} lives on {kname!r}, but the homomorphism "
                f"targets {entry.target!r}"
            )
        inputs = {"homomorphism": args.homomorphism, "kernel": args.kernel}
        pulled = corr.pullback(entry.hom, k, pol)
        out = {"matrix": encode_matrix(pulled.matrix), "rank": pulled.rank}

    elif verb == "audit":
        algebra, v1 = _functional_for(ws, args.algebra, args.f1)
        _, v2 = _functional_for(ws, args.algebra, args.f2)
        inputs = {
            "algebra": args.algebra,
            "f1": args.f1,
            "f2": args.f2,
            "factor": args.factor,
        }
        out = corr.cone_morphism_audit(algebra, v1, v2, args.factor, pol).as_dict()

    elif verb == "roundtrip":
        algebra, values = _functional_for(ws, args.algebra, args.functional)
        inputs = {"algebra": args.algebra, "functional": encode_matrix(values)}
        rep = gns.gns_construct(algebra, values, pol)
        k = corr.rep_to_kernel(rep, pol)
        recovered = corr.kernel_to_functional(algebra, k, pol)
        out = {
            "recovered": encode_matrix(recovered),
            "max_error": float(np.max(np.abs(recovered - values))),
        }

    else:  # pragma: no cover - argparse restricts the verb set
        raise UnknownVerb(f"unknown verb {verb!r}")

    return {
        "verb": verb,
        "inputs": inputs,
        "outputs": out,
        "seed": args.seed,
        "status": "ok",
        "tolerances": {
            "rel_rank_tol": pol.rel_rank_tol,
            "psd_tol": pol.psd_tol,
            "match_tol": pol.match_tol,
        },
    }


def _render_text(report: dict, stream) -> None:
    def walk(prefix: str, value) -> None:
        if isinstance(value, dict):
            for key in sorted(value):
                walk(f"{prefix}.{key}" if prefix else key, value[key])
        else:
            stream.write(f"{prefix} = {json.dumps(value, sort_keys=True)}\n")

    walk("", report)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workspace is None:
        parser.error("--workspace is required")
    pol = TolerancePolicy(
        rel_rank_tol=args.tol_rank, psd_tol=args.tol_psd, match_tol=args.tol_match
    )
    try:
        ws = parse_workspace(args.workspace, pol)
        report = run_command(ws, args, pol)
    except StarRepError as exc:
        failure = {
            "verb": args.verb,
            "status": "error",
            "error": type(exc).__name__,
            "detail": str(exc),
            "seed": args.seed,
        }
        print(json.dumps(failure, indent=2, sort_keys=True))
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, WorkspaceError) else 1

    if args.output == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _render_text(report, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
