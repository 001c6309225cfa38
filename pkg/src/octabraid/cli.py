"""Command-line interface: every verification and export as a subcommand.

Exit codes: 0 on success or PASS, 1 on a failed check or module error,
2 on usage errors.  Outputs are deterministic for fixed arguments and seeds;
JSON output is stable-key-ordered.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import hyperocta, models, rewrite, sopath
from .cosets import EnumLimits, LimitExceeded, group_order
from .quotient import GroupCtx, cayley_dot, expand
from .words import (
    PlaneLetter,
    emit_presentation,
    gen,
    parse_word,
    presentation_for,
    standard_to_plane,
    word_str,
)


def _parse_planes(text: str) -> tuple[PlaneLetter, ...]:
    letters = []
    for token in text.split():
        i, _, j = token.partition(",")
        letters.append(PlaneLetter(int(i), int(j)))
    return tuple(letters)


def _path_input(args) -> tuple[tuple[PlaneLetter, ...], int]:
    if getattr(args, "planes", None):
        pw = _parse_planes(args.planes)
        n = rewrite.plane_word_rank(pw, args.n)
        return pw, n
    if getattr(args, "word", None):
        n = args.n or 3
        return standard_to_plane(parse_word(args.word, n)), n
    raise ValueError("provide --planes or --word")


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _build_ctx(args) -> GroupCtx:
    return GroupCtx.build(args.n, getattr(args, "variant", "standard"))


def cmd_order(args) -> int:
    limits = EnumLimits(strategy=args.strategy)
    order = group_order(presentation_for(args.n, args.variant), limits)
    _emit(args, {"n": args.n, "variant": args.variant, "order": order}, str(order))
    return 0


def cmd_elements(args) -> int:
    ctx = _build_ctx(args)
    rows = ctx.element_table()
    if args.format == "json":
        text = json.dumps(rows, sort_keys=True, indent=2)
    else:
        text = "\n".join(
            f"{r['id']}\t{r['canonical']}\t{r['order']}\t{r['theta']}" for r in rows
        )
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {len(rows)} elements to {args.out}")
    else:
        print(text)
    return 0


def cmd_normal_form(args) -> int:
    ctx = _build_ctx(args)
    e = ctx.element_from_word(parse_word(args.word, args.n))
    canonical = word_str(expand(ctx.canonical_form(e)))
    _emit(args, {"word": args.word, "id": e, "canonical": canonical}, canonical)
    return 0


def cmd_mul(args) -> int:
    ctx = _build_ctx(args)
    a = ctx.element_from_word(parse_word(args.a, args.n))
    b = ctx.element_from_word(parse_word(args.b, args.n))
    product = ctx.multiply(a, b)
    canonical = word_str(ctx.canonical_word(product))
    _emit(args, {"a": args.a, "b": args.b, "id": product, "canonical": canonical},
          canonical)
    return 0


def cmd_kernel(args) -> int:
    ctx = _build_ctx(args)
    ker = hyperocta.kernel(ctx)
    forms = [word_str(ctx.canonical_word(e)) for e in ker]
    _emit(args, {"n": args.n, "kernel_ids": ker, "kernel": forms}, "\n".join(forms))
    return 0


def cmd_center(args) -> int:
    ctx = _build_ctx(args)
    central = ctx.center()
    forms = [word_str(ctx.canonical_word(e)) for e in central]
    _emit(args, {"n": args.n, "center_ids": central, "center": forms},
          "\n".join(forms))
    return 0


def cmd_quotient(args) -> int:
    ctx = _build_ctx(args)
    z = ctx.element_from_word(parse_word(args.central, args.n))
    profile = ctx.quotient_order_profile(z)
    total = sum(profile.values())
    text = f"order: {total}\n" + "\n".join(
        f"order {k}: {profile[k]}" for k in sorted(profile)
    )
    _emit(args, {"n": args.n, "central": args.central, "order": total,
                 "profile": {str(k): profile[k] for k in sorted(profile)}}, text)
    return 0


def cmd_cayley(args) -> int:
    ctx = _build_ctx(args)
    if args.quotient:
        z = ctx.element_from_word(gen(1, args.n, 4))
        table = ctx.quotient_table(z)
        dot = cayley_dot(table)
    else:
        table = ctx.table
        dot = ctx.cayley_dot()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dot)
        print(f"wrote DOT graph ({table.n_cosets} nodes) to {args.out}")
    else:
        print(dot, end="")
    if args.render:
        from . import plots

        plots.save_cayley_png(table, args.render)
        print(f"rendered {args.render}")
    return 0


def cmd_presentations_emit(args) -> int:
    print(emit_presentation(presentation_for(args.n, args.variant)), end="")
    return 0


def cmd_models_verify(args) -> int:
    if args.which == "2o":
        report = models.verify_2O()
    else:
        report = models.verify_matrix_model(args.which)
    _emit(args, json.loads(report.to_json()), report.to_text())
    return 0 if report.passed else 1


def cmd_models_stem(args) -> int:
    report = models.stem_report()
    _emit(args, json.loads(report.to_json()), report.to_text())
    return 0 if report.passed else 1


def cmd_models_extensions(args) -> int:
    report = models.extension_report()
    _emit(args, json.loads(report.to_json()), report.to_text())
    return 0 if report.passed else 1


def cmd_path_compile(args) -> int:
    pw, n = _path_input(args)
    path = sopath.compile_path(pw, n, args.samples)
    closed = sopath.distance(path.endpoint(), np.eye(n)) < sopath.CLOSED_TOL
    local = sopath.is_local(path)
    theta = rewrite.theta_of_plane_word(pw, n)
    text = (f"samples: {len(path.samples)}\nclosed: {closed}\nlocal: {local}\n"
            f"endpoint theta: {theta}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(path.to_csv())
        text += f"\nwrote {args.csv}"
    if args.plot:
        from . import plots

        plots.save_path_profile(path, args.plot)
        text += f"\nrendered {args.plot}"
    _emit(args, {"n": n, "samples": len(path.samples), "closed": closed,
                 "local": local, "theta": list(theta.images)}, text)
    return 0


def _flow_params(args) -> sopath.FlowParams:
    return sopath.FlowParams(step=args.step, max_iters=args.max_iters,
                             tol=args.tol, stall_window=args.stall_window)


def cmd_path_contract(args) -> int:
    fp = _flow_params(args)
    runs: list[tuple[str, sopath.FlowResult]] = []
    if args.triangles:
        for idx, pw in enumerate(rewrite.axis_triangle_words()):
            path = sopath.compile_path(pw, 3, args.samples)
            runs.append((f"triangle-{idx:02d}",
                         sopath.contract(path, fp, args.jitter_retries, args.seed)))
    else:
        pw, n = _path_input(args)
        path = sopath.compile_path(pw, n, args.samples)
        runs.append(("path", sopath.contract(path, fp, args.jitter_retries, args.seed)))
    lines = [
        f"{name}: {r.verdict} after {r.iterations} iterations "
        f"(max-D {r.final_max_d:.3e}, jitters {r.jitters_used})"
        for name, r in runs
    ]
    if args.trace_csv:
        with open(args.trace_csv, "w") as fh:
            fh.write(runs[-1][1].trace_csv())
        lines.append(f"wrote {args.trace_csv}")
    if args.plot:
        from . import plots

        plots.save_flow_trace({name: r.trace for name, r in runs}, args.plot, fp.tol)
        lines.append(f"rendered {args.plot}")
    payload = {name: {"verdict": r.verdict, "iterations": r.iterations,
                      "final_max_d": r.final_max_d, "jitters": r.jitters_used}
               for name, r in runs}
    _emit(args, payload, "\n".join(lines))
    return 0 if all(r.verdict == "contracted" for _, r in runs) else 1


def cmd_path_stall(args) -> int:
    fp = _flow_params(args)
    full_turn = (PlaneLetter(1, 2),) * 4
    witness = sopath.stall_witness(sopath.compile_path(full_turn, 3, args.samples), fp)
    control_word = rewrite.axis_triangle_words()[0]
    control = sopath.contract(sopath.compile_path(control_word, 3, args.samples), fp)
    lines = [
        f"full-turn (2pi): {witness.verdict} after {witness.iterations} iterations "
        f"(max-D {witness.final_max_d:.6f})",
        f"triangle control: {control.verdict} after {control.iterations} iterations "
        f"(max-D {control.final_max_d:.3e})",
    ]
    if args.trace_csv:
        with open(args.trace_csv, "w") as fh:
            fh.write(witness.trace_csv())
        lines.append(f"wrote {args.trace_csv}")
    if args.plot:
        from . import plots

        plots.save_flow_trace(
            {"full-turn (2pi)": witness.trace, "triangle control": control.trace},
            args.plot, fp.tol)
        lines.append(f"rendered {args.plot}")
    payload = {
        "full_turn": {"verdict": witness.verdict, "final_max_d": witness.final_max_d},
        "control": {"verdict": control.verdict, "final_max_d": control.final_max_d},
    }
    _emit(args, payload, "\n".join(lines))
    ok = witness.verdict == "stalled" and control.verdict == "contracted"
    return 0 if ok else 1


def cmd_path_snap(args) -> int:
    pw, n = _path_input(args)
    recovered = sopath.compile_and_snap(pw, n, args.samples)
    text = " ".join(f"{l.i},{l.j}" for l in recovered) or "(empty)"
    _emit(args, {"n": n, "letters": [[l.i, l.j] for l in recovered]}, text)
    return 0


def cmd_path_reduce(args) -> int:
    if args.triangles:
        words = rewrite.axis_triangle_words()
    elif args.random:
        import random as random_mod

        rng = random_mod.Random(args.seed)
        words = [rewrite.random_local_closed_word(rng, n=args.n or 3)
                 for _ in range(args.random)]
    elif args.axis_word:
        words = [rewrite.parse_axis_word(args.axis_word)]
    else:
        pw, _ = _path_input(args)
        words = [pw]
    lines = []
    payload = {}
    all_ok = True
    for idx, pw in enumerate(words):
        trace = rewrite.reduce_local_word(pw, args.n)
        replay_ok = rewrite.replay_trace(trace) == ()
        all_ok = all_ok and replay_ok
        label = f"word-{idx:02d}"
        lines.append(f"{label}: reduced in {len(trace)} steps, replay "
                     f"{'ok' if replay_ok else 'FAILED'}")
        payload[label] = {"steps": len(trace), "replay_ok": replay_ok,
                          "kinds": [s.kind for s in trace.steps]}
    _emit(args, payload, "\n".join(lines))
    return 0 if all_ok else 1


def _add_group_args(sp, variant: bool = True) -> None:
    sp.add_argument("--n", type=int, required=True, help="ambient rank n >= 3")
    if variant:
        sp.add_argument("--variant", choices=["standard", "twisted"],
                        default="standard")
    sp.add_argument("--format", choices=["text", "json"], default="text")


def _add_path_args(sp, word_inputs: bool = True) -> None:
    if word_inputs:
        sp.add_argument("--planes", help="plane letters, e.g. '1,2 3,2'")
        sp.add_argument("--word", help="standard-generator word, e.g. 'R1 R2^-1'")
    sp.add_argument("--n", type=int, default=None, help="ambient rank")
    sp.add_argument("--samples", type=int, default=16,
                    help="samples per generating letter")
    sp.add_argument("--format", choices=["text", "json"], default="text")


def _add_flow_args(sp) -> None:
    sp.add_argument("--step", type=float, default=0.05)
    sp.add_argument("--max-iters", type=int, default=20000)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--stall-window", type=int, default=500)
    sp.add_argument("--trace-csv", help="write the max-D trace as CSV")
    sp.add_argument("--plot", help="render the trace figure (PNG)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="octabraid",
        description="Double covers of rotational hyperoctahedral groups: "
                    "orders, canonical forms, kernels, exact models, and "
                    "path flows in SO(n).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("order", help="group order by coset enumeration")
    _add_group_args(sp)
    sp.add_argument("--strategy", choices=["hlt", "felsch"], default="hlt")
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("elements", help="element table export")
    _add_group_args(sp)
    sp.add_argument("--out", help="output file (default stdout)")
    sp.set_defaults(func=cmd_elements, format="json")

    sp = sub.add_parser("normal-form", help="canonical form of a word")
    _add_group_args(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_normal_form)

    sp = sub.add_parser("mul", help="product of two words, in canonical form")
    _add_group_args(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=cmd_mul)

    sp = sub.add_parser("kernel", help="kernel of theta (the fundamental group)")
    _add_group_args(sp)
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("center", help="center of the group")
    _add_group_args(sp)
    sp.set_defaults(func=cmd_center)

    sp = sub.add_parser("quotient", help="order profile of the quotient by a "
                                         "central order-2 element")
    _add_group_args(sp, variant=True)
    sp.add_argument("--central", default="R1 R1 R1 R1",
                    help="central order-2 element as a word (default R1^4)")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("cayley", help="Cayley graph as DOT (optionally rendered)")
    _add_group_args(sp)
    sp.add_argument("--quotient", action="store_true",
                    help="graph of the quotient by R1^4 instead")
    sp.add_argument("--out", help="write DOT here instead of stdout")
    sp.add_argument("--render", help="also render a PNG layout")
    sp.set_defaults(func=cmd_cayley)

    pres = sub.add_parser("presentations", help="presentation utilities")
    pres_sub = pres.add_subparsers(dest="presentations_command", required=True)
    sp = pres_sub.add_parser("emit", help="emit the presentation text format")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--variant", choices=["standard", "twisted"], default="standard")
    sp.set_defaults(func=cmd_presentations_emit)

    mod = sub.add_parser("models", help="exact order-48 model verifications")
    mod_sub = mod.add_subparsers(dest="models_command", required=True)
    sp = mod_sub.add_parser("verify", help="verify one model")
    sp.add_argument("--which", choices=["2o", "gl23", "sl24"], required=True)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_models_verify)
    sp = mod_sub.add_parser("stem", help="stem-extension tests")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_models_stem)
    sp = mod_sub.add_parser("extensions", help="full extension comparison report")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_models_extensions)

    path = sub.add_parser("path", help="numeric paths in SO(n)")
    path_sub = path.add_subparsers(dest="path_command", required=True)

    sp = path_sub.add_parser("compile", help="compile a word into a sampled path")
    _add_path_args(sp)
    sp.add_argument("--csv", help="write the path dump CSV")
    sp.add_argument("--plot", help="render the path profile (PNG)")
    sp.set_defaults(func=cmd_path_compile)

    sp = path_sub.add_parser("contract", help="gradient-flow contraction")
    _add_path_args(sp)
    sp.add_argument("--triangles", action="store_true",
                    help="run all 24 triangular identity words")
    _add_flow_args(sp)
    sp.add_argument("--jitter-retries", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_path_contract)

    sp = path_sub.add_parser("stall", help="full-turn stall witness plus control")
    _add_path_args(sp, word_inputs=False)
    _add_flow_args(sp)
    sp.set_defaults(func=cmd_path_stall)

    sp = path_sub.add_parser("snap", help="recover a word from a compiled path")
    _add_path_args(sp)
    sp.set_defaults(func=cmd_path_snap)

    sp = path_sub.add_parser("reduce", help="reduce a local closed word")
    _add_path_args(sp)
    sp.add_argument("--axis-word", help="axis-alphabet word, e.g. \"3' 1' 2' 1\"")
    sp.add_argument("--triangles", action="store_true",
                    help="reduce all 24 triangular identity words")
    sp.add_argument("--random", type=int, default=0, metavar="COUNT",
                    help="reduce COUNT random local closed words")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_path_reduce)

    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, LimitExceeded, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
