"""Command-line entry point.

Exit codes: 0 all checks passed, 1 a check failed (report on stdout),
2 usage, I/O or parse error (message on stderr naming the file or flag).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import builtins
from .algebra import validate_algebra
from .category import category_law_audit, default_depth, embed_category, extremal_objects, hom_set
from .dot import export_dot
from .dynamics import FIXED_POINT, phi_infinity, run_trajectory, theorem1_audit
from .errors import FormulaSyntaxError, PreconditionError, SpecError, UnknownIdentifierError, WorkbenchError
from .generate import RandomAlgebraParams, random_algebra
from .homology import ALL, DROP, GENERATORS, KEEP, EdgePolicy, build_complex, conjecture4_probe, homology_report
from .logic import CLAIMS, check_claim, model_check
from .serialize import load_category_spec, load_spec, load_two_cells, save_category_spec, save_spec

OK, FAILED, USAGE = 0, 1, 2
BUILTIN_PREFIX = "builtin:"


class UsageError(Exception):
    pass


def _read(path, flag):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"{flag} {path}: {exc.strerror}")


def _write(path, text, flag):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"{flag} {path}: {exc.strerror}")


def _algebra(ref):
    """Load an algebra from a JSON file, or from ``builtin:NAME``."""
    if ref.startswith(BUILTIN_PREFIX):
        name = ref[len(BUILTIN_PREFIX):]
        if name.upper() not in builtins.ALGEBRAS:
            raise UsageError(f"spec {ref}: no built-in algebra {name!r}; choose from "
                             f"{', '.join(builtins.ALGEBRAS)}")
        return builtins.builtin(name)
    return load_spec(_read(ref, "spec"), source=ref)


def _category(ref):
    if ref.startswith(BUILTIN_PREFIX):
        name = ref[len(BUILTIN_PREFIX):]
        if name.upper() not in builtins.CATEGORIES:
            raise UsageError(f"catspec {ref}: no built-in category {name!r}; choose from "
                             f"{', '.join(builtins.CATEGORIES)}")
        return builtins.builtin(name)
    return load_category_spec(_read(ref, "catspec"), source=ref)


def _state(alg, x, flag):
    if x not in alg.states_set:
        raise UsageError(f"{flag} {x}: not a state of this algebra")
    return x


def _policy(args):
    return EdgePolicy(args.edges, args.self_loops)


def cmd_validate(args):
    report = validate_algebra(_algebra(args.spec))
    print(report.render())
    return OK if report.passed else FAILED


def cmd_run(args):
    alg = _algebra(args.spec)
    t = run_trajectory(alg, _state(alg, args.start, "--from"), args.budget)
    print(f"{'step':>4}  {'state':<12} {'adjustment':<12} {'next':<12} psi")
    for i, s in enumerate(t.steps):
        print(f"{i:>4}  {s.state_before:<12} {s.adjustment:<12} {s.state_after:<12} {s.psi_after}")
    print(f"outcome: {t.outcome}" + (f" at {t.fixed_state}" if t.fixed_state else ""))
    if t.cycle():
        print("cycle: " + " -> ".join(t.cycle()))
    return OK if t.outcome == FIXED_POINT else FAILED


def cmd_fixpoint(args):
    alg = _algebra(args.spec)
    o = phi_infinity(alg, _state(alg, args.start, "--from"), args.budget)
    print(f"result: {o.result}")
    if o.state is not None:
        print(f"state: {o.state}")
    print(f"steps: {o.steps_taken}")
    if o.cycle:
        print("cycle: " + " -> ".join(o.cycle))
    return OK if o.converged else FAILED


def cmd_audit_termination(args):
    report = theorem1_audit(_algebra(args.spec))
    print(report.render())
    return OK if report.passed else FAILED


def cmd_category(args):
    alg = _algebra(args.spec)
    if args.what != "homs" and args.objects:
        raise UsageError(f"category {args.what}: unexpected arguments {' '.join(args.objects)}")
    if args.what == "laws":
        report = category_law_audit(alg, args.depth or 4)
        print(report.render())
        return OK if report.passed else FAILED
    if args.what == "homs":
        if len(args.objects) != 2:
            raise UsageError("category homs: expected two states <x> <y>")
        x, y = (_state(alg, s, "category homs") for s in args.objects)
        depth = args.depth or default_depth(alg)
        nets = sorted(m.net for m in hom_set(alg, x, y, depth))
        print(f"hom({x}, {y}) at depth {depth}: {len(nets)} morphism(s)")
        for n in nets:
            print(f"  {n}")
        return OK
    depth = args.depth or default_depth(alg)
    if depth < len(alg.states):
        raise UsageError(f"--depth {depth}: extremal objects need depth >= {len(alg.states)}")
    print(extremal_objects(alg, depth).render())
    return OK


def cmd_embed(args):
    cat = _category(args.catspec)
    alg, cert = embed_category(cat)
    _write(args.output, save_spec(alg), "-o")
    print(cert.render())
    return OK if cert.passed else FAILED


def cmd_homology(args):
    alg = _algebra(args.spec)
    cells = []
    if args.two_cells:
        cells = load_two_cells(_read(args.two_cells, "--two-cells"), source=args.two_cells)
    try:
        complex_ = build_complex(alg, _policy(args), cells)
    except WorkbenchError as exc:
        raise UsageError(f"--two-cells {args.two_cells}: {exc}")
    print(homology_report(complex_).render())
    return OK


def cmd_check(args):
    alg = _algebra(args.spec)
    try:
        sat = model_check(alg, args.formula)
    except FormulaSyntaxError as exc:
        raise UsageError(f"--formula: {exc}")
    print("satisfied at: " + (", ".join(sat.states) if len(sat) else "no state"))
    if args.at is not None:
        x = _state(alg, args.at, "--at")
        print(f"{x}: {'holds' if x in sat else 'fails'}")
        return OK if x in sat else FAILED
    failing = [x for x in alg.states if x not in sat]
    if failing:
        print("fails at: " + ", ".join(failing))
    return OK if not failing else FAILED


def cmd_claim(args):
    alg = _algebra(args.spec)
    if args.kind == "exists-state-satisfying" and args.formula is None:
        raise UsageError("--formula is required for --kind exists-state-satisfying")
    try:
        result = check_claim(alg, args.kind, args.formula)
    except FormulaSyntaxError as exc:
        raise UsageError(f"--formula: {exc}")
    print(result.render())
    return OK if result.verdict else FAILED


def cmd_probe_c4(args):
    finding = conjecture4_probe(_algebra(args.spec))
    print(finding.render())
    return FAILED if finding.impossible_seen else OK


def _sweep_one(job):
    size, family_size, copies, seed = job
    alg = random_algebra(RandomAlgebraParams(size, family_size, seed, copies))
    audit = theorem1_audit(alg)
    claim = check_claim(alg, "unique-global-attractor")
    probe = conjecture4_probe(alg)
    default = probe.for_policy(EdgePolicy())
    return (seed, len(alg.states), audit.all_converged, audit.bound_respected, audit.max_steps_observed,
            len(claim.attractors), default.classification, probe.impossible_seen)


def cmd_sweep(args):
    jobs = [(args.size, args.family_size, args.copies, args.seed + i) for i in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    if args.verbose:
        print(f"{'seed':>8} {'states':>6} {'conv':>5} {'steps':>5} {'attr':>4}  c4 ({EdgePolicy()})")
        for seed, n, conv, _, steps, attr, cls, _ in rows:
            print(f"{seed:>8} {n:>6} {str(conv):>5} {steps:>5} {attr:>4}  {cls}")
    converged = sum(r[2] for r in rows)
    bounded = sum(r[3] for r in rows)
    unique = sum(r[5] == 1 for r in rows)
    impossible = sum(r[7] for r in rows)
    classes = {}
    for r in rows:
        classes[r[6]] = classes.get(r[6], 0) + 1
    n = len(rows)
    print(f"algebras:               {n}  (size {args.size}, family {args.family_size}, copies {args.copies}, "
          f"seeds {args.seed}..{args.seed + n - 1})")
    print(f"converged:              {converged}/{n}")
    print(f"within step bound:      {bounded}/{n}")
    print(f"unique attractor:       {unique}/{n}")
    print(f"max steps observed:     {max((r[4] for r in rows), default=0)}")
    for cls in sorted(classes):
        print(f"c4 {cls + ':':<32} {classes[cls]}/{n}")
    print(f"c4 counterexample-to-if under any policy: {impossible}/{n}")
    return OK if converged == bounded == n and impossible == 0 else FAILED


def cmd_export_dot(args):
    alg = _algebra(args.spec)
    _write(args.output, export_dot(alg, _policy(args)), "-o")
    return OK


def cmd_builtin(args):
    key = args.name.upper()
    if key in builtins.ALGEBRAS:
        text = save_spec(builtins.builtin(key))
    elif key in builtins.CATEGORIES:
        text = save_category_spec(builtins.builtin(key))
    else:
        raise UsageError(f"builtin {args.name}: unknown; choose from {', '.join(builtins.NAMES)}")
    _write(args.output, text, "-o")
    return OK


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="alpay-workbench",
                                description="Check and explore finite adjustment algebras.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    spec_help = "algebra JSON file, or builtin:NAME"

    def with_spec(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("spec", help=spec_help)
        sp.set_defaults(func=func)
        return sp

    def with_policy(sp):
        sp.add_argument("--edges", choices=(GENERATORS, ALL), default=GENERATORS)
        sp.add_argument("--self-loops", choices=(KEEP, DROP), default=KEEP)

    with_spec("validate", cmd_validate, "check the axioms exhaustively")
    for name, func, help_ in (("run", cmd_run, "print the trajectory from a state"),
                              ("fixpoint", cmd_fixpoint, "report the eventual fixed point of a state")):
        sp = with_spec(name, func, help_)
        sp.add_argument("--from", dest="start", required=True, metavar="STATE")
        sp.add_argument("--budget", type=_positive, default=100)
    with_spec("audit-termination", cmd_audit_termination, "run every state to its fixed point")

    sp = with_spec("category", cmd_category, "reachability category: laws, homs X Y, extremal")
    sp.add_argument("what", choices=("laws", "homs", "extremal"))
    sp.add_argument("objects", nargs="*", metavar="STATE")
    sp.add_argument("--depth", type=_positive, default=None)

    sp = sub.add_parser("embed", help="realize a small category as an algebra")
    sp.add_argument("catspec", help="category JSON file, or builtin:NAME")
    sp.add_argument("-o", "--output", required=True, help="output algebra JSON ('-' for stdout)")
    sp.set_defaults(func=cmd_embed)

    sp = with_spec("homology", cmd_homology, "Betti numbers and torsion of the transition complex")
    with_policy(sp)
    sp.add_argument("--two-cells", default=None, metavar="FILE")

    sp = with_spec("check", cmd_check, "model-check a formula")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--at", default=None, metavar="STATE")

    sp = with_spec("claim", cmd_claim, "check a global claim")
    sp.add_argument("--kind", required=True, choices=CLAIMS)
    sp.add_argument("--formula", default=None)

    with_spec("probe-c4", cmd_probe_c4, "compare vanishing H1 with directed acyclicity per edge policy")

    sp = sub.add_parser("sweep", help="audit a batch of random algebras")
    sp.add_argument("--count", type=_positive, required=True)
    sp.add_argument("--seed", type=_nonneg, required=True)
    sp.add_argument("--size", type=_positive, required=True, help="ground set size")
    sp.add_argument("--family-size", type=_nonneg, default=4)
    sp.add_argument("--copies", type=int, choices=(1, 2), default=1)
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--verbose", action="store_true", help="one line per seed")
    sp.set_defaults(func=cmd_sweep)

    sp = with_spec("export-dot", cmd_export_dot, "write the transition graph in DOT")
    with_policy(sp)
    sp.add_argument("-o", "--output", default="-")

    sp = sub.add_parser("builtin", help="write a catalogue entry as JSON")
    sp.add_argument("name", metavar="NAME", help=", ".join(builtins.NAMES))
    sp.add_argument("-o", "--output", required=True, help="output file ('-' for stdout)")
    sp.set_defaults(func=cmd_builtin)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    if args.command == "sweep":
        problems = RandomAlgebraParams(args.size, args.family_size, args.seed, args.copies).problems()
        if problems:
            flags = {"ground_set_size": "--size", "family_size": "--family-size", "seed": "--seed",
                     "copies": "--copies"}
            for field_, flag in flags.items():
                problems = [p.replace(field_, flag) for p in problems]
            print(f"alpay-workbench sweep: {'; '.join(problems)}", file=sys.stderr)
            return USAGE
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}")
        if exc.report is not None:
            print(exc.report.render())
        return FAILED
    except (UsageError, SpecError, UnknownIdentifierError, ValueError) as exc:
        print(f"alpay-workbench {args.command}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
