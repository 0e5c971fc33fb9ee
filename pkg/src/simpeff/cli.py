"""Batch front-end: load structures, run checker suites, emit reports.

Subcommands: check, build, states, quantum-demo.  Exit codes: 0 all
requested checks pass, 1 some check failed, 2 input or usage error.
Reports are byte-identical across runs for fixed inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import cyclic as cyc
from . import nerve as nv
from . import palg, quantum, sset, states
from .report import EXIT_FAILED, EXIT_OK, EXIT_USAGE, CheckReport
from .util import Check, InputError, StructureError


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_json(path):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid json at line {exc.lineno}") from exc


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# check


def _check_magma(path, args):
    m = palg.PartialUnitalMagma.from_json_dict(_load_json(path))
    rep = CheckReport(subject=f"magma {path}", bound=args.levels)
    cls, wit = palg.classify_with_witness(m)
    rep.add(Check("classification", True, cls if wit is None else f"{cls} (witness {wit})"))
    rep.add(Check("inverseless", palg.is_inverseless(m)))
    wapg, wit = palg.is_weakly_associative_partial_group(m, min(args.levels, 3)) \
        if cls != palg.MAGMA else (False, ("not-weakly-associative",))
    rep.add(Check(f"weakly-associative-partial-group(arity<={min(args.levels, 3)})", wapg,
                  None if wapg else wit))
    return rep


def _sset_battery(x, rep):
    bad = sset.validate(x)
    rep.add(Check("simplicial-identities", not bad, bad[0] if bad else None))
    if bad:
        return
    ok, wit = sset.is_spiny(x)
    rep.add(Check("spiny", ok, None if ok else wit))
    reduced = sset.is_reduced(x)
    rep.add(Check("reduced", reduced, None if reduced else f"{x.counts[0]} vertices"))
    if x.K >= 3:
        ok, wit = sset.is_coskeletal_2(x)
        rep.add(Check("2-coskeletal", ok, None if ok else wit))
        ok, wit = sset.is_two_segal(x)
        rep.add(Check("2-segal", ok, None if ok else _witness_with_labels(x, wit)))
        ok, wit = sset.is_weakly_two_segal(x)
        rep.add(Check("weakly-2-segal", ok, None if ok else _witness_with_labels(x, wit)))
    else:
        for name in ("2-coskeletal", "2-segal", "weakly-2-segal"):
            rep.add(Check(name, True, "truncation below 3", skipped=True))
    ok, wit = sset.is_inverseless_sset(x)
    rep.add(Check("inverseless", ok, None if ok else wit))


def _witness_with_labels(x, wit):
    if wit and wit[0] == "unfilled":
        spine_ids = wit[-1]
        try:
            labeled = tuple(x.label(1, e) for e in spine_ids)
            return f"unfilled spine {labeled} at level {wit[1]}"
        except (KeyError, IndexError, TypeError):
            return wit
    return wit


def _check_sset(path, args):
    x = sset.TruncatedSSet.from_json_dict(_load_json(path))
    if args.levels < x.K:
        x = sset.truncate(x, args.levels)
    rep = CheckReport(subject=f"sset {path}", bound=x.K)
    _sset_battery(x, rep)
    return rep


def _truncate_cyclic(c, K):
    base = sset.truncate(c.base, K)
    return cyc.CyclicSSet(base, {n: t for n, t in c.tau.items() if n <= K})


def _check_cyclic(path, args):
    c = cyc.CyclicSSet.from_json_dict(_load_json(path))
    if args.levels < c.base.K:
        c = _truncate_cyclic(c, args.levels)
    rep = CheckReport(subject=f"cyclic {path}", bound=c.base.K)
    narrowed = args.simplicial_effect or args.effect_algebroid
    rel = cyc.validate_cyclic(c)
    badrel = [r for r in rel if not r.ok]
    rep.add(Check("cyclic-relations", not badrel,
                  f"{badrel[0].name} witness {badrel[0].witness}" if badrel else None))
    if args.simplicial_effect or not narrowed:
        ok, checks = cyc.is_simplicial_effect(c)
        for ch in checks:
            if ch.name != "cyclic-relations":
                rep.add(Check(f"simplicial-effect/{ch.name}", ch.ok, ch.witness,
                              skipped=ch.skipped))
        failed = [ch.name for ch in checks if not ch.ok and not ch.skipped]
        rep.add(Check("simplicial-effect", ok, None if ok else f"failed: {failed}"))
    if args.effect_algebroid or not narrowed:
        conds = cyc.effect_algebroid_conditions(c)
        for key in ("two_segal", "U", "Z"):
            rep.add(Check(f"effect-algebroid/{key}", conds[key],
                          None if conds[key] else conds[f"{key}_witness"]))
        failed = [k for k in ("two_segal", "U", "Z", "cyclic_valid") if not conds[k]]
        rep.add(Check("effect-algebroid", conds["member"],
                      None if conds["member"] else f"failed: {failed}"))
    if not narrowed:
        rep.extend(cyc.orthocomplement_laws(c))
    if args.states:
        found = states.find_state(c)
        dim = states.state_polytope_dim(c) if found.feasible else None
        rep.add(Check("states", True,
                      "EMPTY" if not found.feasible else f"polytope dim {dim}"))
    if args.hc1:
        dim, _ = states.hc1(c)
        rep.add(Check("hc1", True, f"dimension {dim}"))
    return rep


def _check_effect_algebra(path, args):
    e = palg.FiniteEffectAlgebra.from_json_dict(_load_json(path))
    rep = CheckReport(subject=f"effect-algebra {path}")
    rep.extend(palg.validate_effect_algebra(e))
    return rep


def cmd_check(args):
    runner = {
        "magma": _check_magma,
        "sset": _check_sset,
        "cyclic": _check_cyclic,
        "effect-algebra": _check_effect_algebra,
    }[args.kind]
    rep = runner(args.infile, args)
    _emit(rep.to_json() if args.json else rep.to_text(), args.out)
    return rep.exit_code()


# ---------------------------------------------------------------------------
# build


_FAMILIES = {
    "l2": lambda: palg.interval_effect_algebra(2),
    "l3": lambda: palg.interval_effect_algebra(3),
    "l4": lambda: palg.interval_effect_algebra(4),
    "bool2": lambda: palg.boolean_effect_algebra(2),
}


def _need(cond, msg):
    if not cond:
        raise InputError(msg)


def cmd_build(args):
    recipe = args.recipe
    K = args.levels
    if recipe == "comm-nerve":
        _need(args.group, "comm-nerve needs --group")
        g = nv.FiniteGroup.from_json_dict(_load_json(args.group))
        x = nv.comm_nerve(g, args.torsion, K)
        body = x.to_json_dict()
    elif recipe == "action-pg":
        _need(args.group, "action-pg needs --group")
        _need(args.y is not None, "action-pg needs --y")
        g = nv.FiniteGroup.from_json_dict(_load_json(args.group))
        if args.action:
            raw = _load_json(args.action)
            try:
                z_size = int(raw["z_size"])
                action = [[int(v) for v in row] for row in raw["table"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"bad action json: {exc}") from exc
        else:
            z_size, action = g.order, nv.translation_action(g)
        y = [int(v) for v in args.y.split(",") if v != ""]
        x = nv.action_partial_group(g, z_size, action, y, K)
        body = x.to_json_dict()
    elif recipe == "effect-nerve":
        if args.family:
            _need(args.family in _FAMILIES, f"unknown family {args.family}")
            e = _FAMILIES[args.family]()
        else:
            _need(args.effect_algebra, "effect-nerve needs --family or --effect-algebra")
            e = palg.FiniteEffectAlgebra.from_json_dict(_load_json(args.effect_algebra))
        bad = [c for c in palg.validate_effect_algebra(e) if not c.ok]
        if bad:
            raise InputError(f"input is not an effect algebra: {bad[0].name}")
        x = nv.nerve(e.magma, palg.max_associativity_datum(e.magma, K), K)
        body = cyc.effect_nerve_cyclic(e, x).to_json_dict()
    elif recipe == "s1":
        body = nv.simplicial_circle(K).to_json_dict()
    elif recipe == "key-example-witness":
        body = _witness_bundle_json()
    else:
        raise InputError(f"unknown recipe {recipe}")
    _emit(json.dumps(body, sort_keys=True, indent=2), args.out)
    return EXIT_OK


def _mat_json(m):
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m)]


def _witness_bundle_json():
    w = quantum.build_witness()
    return {
        "dim": quantum.DIM,
        "Pi": {".".join(map(str, t)): _mat_json(p) for t, p in sorted(w["Pi"].ops.items())},
        "Psi": {".".join(map(str, t)): _mat_json(p) for t, p in sorted(w["Psi"].ops.items())},
        "A": _mat_json(w["A"]),
        "B": _mat_json(w["B"]),
        "C": _mat_json(w["C"]),
        "checks": {k: (v if isinstance(v, (bool, int)) else float(v))
                   for k, v in sorted(w["checks"].items())},
    }


# ---------------------------------------------------------------------------
# states


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def cmd_states(args):
    c = cyc.CyclicSSet.from_json_dict(_load_json(args.cyclic))
    found = states.find_state(c)
    lines = []
    body = {}
    if not found.feasible:
        lines.append("states: EMPTY (exact rational infeasibility certificate verified)")
        body["states"] = "EMPTY"
    else:
        dim = states.state_polytope_dim(c)
        lines.append(f"state polytope dimension: {dim}")
        lines.append("sample state: " + " ".join(_frac(v) for v in found.state))
        body["states"] = {"dim": dim, "sample": [_frac(v) for v in found.state]}
    if args.hc1:
        dim, basis = states.hc1(c)
        lines.append(f"hc1 dimension: {dim}")
        for vec in basis:
            lines.append("hc1 basis: " + " ".join(_frac(v) for v in vec))
        body["hc1"] = {"dim": dim, "basis": [[_frac(v) for v in vec] for vec in basis]}
    _emit(json.dumps(body, sort_keys=True, indent=2) if args.json else "\n".join(lines),
          args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# quantum demo


def cmd_quantum_demo(args):
    w = quantum.build_witness()
    checks = w["checks"]
    inv = quantum.inverseless_sample_check(args.trials, args.seed)
    rng = np.random.default_rng(args.seed)
    rho = np.eye(quantum.DIM, dtype=complex) / quantum.DIM
    st = quantum.key_example_state_check(rho, args.trials, args.seed)
    rho2 = quantum.random_density(rng)
    st2 = quantum.key_example_state_check(rho2, args.trials, args.seed + 1)
    def residuals(rep):
        keys = ("partial_additive", "swap_orth", "half", "third_zero", "face_additivity")
        return {f"max_{k}": max(r[k] for r in rep["results"]) for k in keys}

    body = {
        "scope": "pointwise and seeded-sample checks; the ambient simplicial "
                 "set of projective measurements is infinite and never materialized",
        "witness_checks": {k: (v if isinstance(v, (bool, int)) else float(v))
                           for k, v in sorted(checks.items())},
        "inverseless_samples": {
            "trials": inv["trials"], "passed": inv["passed"],
            "max_relation_residual": max(r["relation_residual"] for r in inv["results"]),
            "max_collapse_residual": max(r["collapse_residual"] for r in inv["results"]),
        },
        "state_checks_maximally_mixed": {
            "trials": st["trials"], "passed": st["passed"],
            "phi_omega_sq_one_residual": st["phi_omega_sq_one_residual"],
            **residuals(st),
        },
        "state_checks_random_density": {
            "trials": st2["trials"], "passed": st2["passed"],
            "phi_omega_sq_one_residual": st2["phi_omega_sq_one_residual"],
            **residuals(st2),
        },
    }
    ok = (checks["pi_in_key_example"] and checks["psi_in_key_example"]
          and checks["d2psi_eq_d1pi_residual"] < quantum.TOL_EQ
          and checks["AB_commutator"] < quantum.TOL_EQ
          and checks["BC_commutator"] > quantum.NONCOMM_MARGIN
          and inv["passed"] == inv["trials"]
          and st["passed"] == st["trials"] and st2["passed"] == st2["trials"])
    if args.json:
        _emit(json.dumps(body, sort_keys=True, indent=2), args.out)
    else:
        lines = [
            "scope: pointwise and seeded-sample checks (the ambient simplicial "
            "set is infinite and never materialized)",
            f"witness: d2(Psi)=d1(Pi) residual {checks['d2psi_eq_d1pi_residual']:.3e}",
            f"witness: |[A,B]| = {checks['AB_commutator']:.3e}",
            f"witness: |[B,C]| = {checks['BC_commutator']:.6f} (> {quantum.NONCOMM_MARGIN})",
            f"witness: |[A,C]| = {checks['AC_commutator']:.6f}",
            f"witness: Pi^01 rank = {checks['pi01_rank']}",
            f"inverseless samples: {inv['passed']}/{inv['trials']} collapsed",
            f"state identities (maximally mixed): {st['passed']}/{st['trials']}",
            f"state identities (random density): {st2['passed']}/{st2['trials']}",
            f"phi(omega^2 1) residual: {st['phi_omega_sq_one_residual']:.3e}",
            f"result: {'pass' if ok else 'fail'}",
        ]
        _emit("\n".join(lines), args.out)
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------


def _parser():
    p = argparse.ArgumentParser(prog="simpeff",
                                description="checkers and builders for finite "
                                            "simplicial effects")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--levels", type=int, default=4,
                        help="truncation bound for quantified checks (default 4)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--out", default=None)

    c = sub.add_parser("check", help="run a checker battery on a structure file")
    c.add_argument("kind", choices=["magma", "sset", "cyclic", "effect-algebra"])
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--simplicial-effect", action="store_true",
                   help="restrict the cyclic battery to the simplicial-effect suite")
    c.add_argument("--effect-algebroid", action="store_true",
                   help="restrict the cyclic battery to the effect-algebroid suite")
    c.add_argument("--states", action="store_true")
    c.add_argument("--hc1", action="store_true")
    common(c)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", help="construct a structure and write its json")
    b.add_argument("recipe", choices=["comm-nerve", "action-pg", "effect-nerve",
                                      "s1", "key-example-witness"])
    b.add_argument("--group", default=None)
    b.add_argument("--torsion", type=int, default=None)
    b.add_argument("--action", default=None)
    b.add_argument("--y", default=None)
    b.add_argument("--effect-algebra", default=None)
    b.add_argument("--family", default=None)
    common(b)
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("states", help="exact states and HC^1 of a cyclic set")
    s.add_argument("--cyclic", required=True)
    s.add_argument("--hc1", action="store_true")
    common(s)
    s.set_defaults(func=cmd_states)

    q = sub.add_parser("quantum-demo", help="key-example witness and sampled checks")
    q.add_argument("--trials", type=int, default=20)
    common(q)
    q.set_defaults(func=cmd_quantum_demo)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, StructureError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
