"""Tour of the harmonic (s,m)-convexity checker.

Walks the built-in function corpus through grid certification, shows a
genuine counterexample with its witness, and demonstrates the closure
combinators (scale, sum, max, pointwise limits) preserving class claims.

Run:  python3 demos/01_convexity_tour.py
"""

import numpy as np

from harmonia import (
    GridSpec,
    PROPERTY_CORPUS,
    check_harmonic_sm,
    classify,
    combine,
    format_function_spec,
    harmonic_sm_defect,
    linear,
    parse_function_spec,
    power,
    reflection_witness,
    s_power,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    banner("corpus certification at each family's own class region")
    grid = GridSpec()  # 41x41x21 default
    for entry in PROPERTY_CORPUS:
        s, m = (0.5, 0.5) if entry.universal else (entry.m1_max_s, 1.0)
        g = GridSpec(lo=entry.lo, hi=entry.hi)
        report = check_harmonic_sm(entry.spec, s, m, g)
        tag = "universal" if entry.universal else f"m=1, s<={entry.m1_max_s:g}"
        print(f"  {entry.name:<14} ({tag:<14}) s={s:g} m={m:g}  "
              f"holds={report.holds}  worst defect {report.worst_defect:.2e}")

    banner("a genuine counterexample: f(x) = -x is not harmonically convex")
    neg = power(-1.0, 1.0)
    report = check_harmonic_sm(neg, 1.0, 1.0, GridSpec(lo=1.0, hi=2.0))
    x, y, t = report.witness
    print(f"  holds={report.holds}  witness x={x:g} y={y:g} t={t:g}")
    print(f"  defect at witness {harmonic_sm_defect(neg, x, y, t, 1.0, 1.0):.4f}")

    banner("monotonicity bridges plain and harmonic convexity")
    # nondecreasing + plain convex implies harmonically convex; the
    # nonincreasing direction runs the other way
    for name, spec, lo, hi in (
        ("x^2 (nondecreasing)", power(1.0, 2.0), 0.5, 3.0),
        ("1/x (nonincreasing)", power(1.0, -1.0), 0.5, 3.0),
        ("-x  (affine, falling)", neg, 0.5, 3.0),
    ):
        cls = classify(spec, 1.0, 1.0, GridSpec(lo=lo, hi=hi))
        print(f"  {name:<22} monotone={cls.monotone:<13} "
              f"plain={cls.sm_convex}  harmonic={cls.harmonic_sm_convex}")

    banner("reflection inequality along the harmonic chord")
    square = power(1.0, 2.0)
    for x in np.linspace(1.0, 2.0, 5):
        w = reflection_witness(square, 1.0, 2.0, 1.0, 1.0, float(x))
        print(f"  x={x:.2f}  t={w.t:.2f}  lhs {w.lhs:.4f} <= rhs {w.rhs:.4f}  {w.holds}")

    banner("closure combinators carry the class claim")
    sqrt_spec = s_power(1.0, 0.5, 0.0)
    combos = [
        combine("scale", [square], lam=2.5),
        combine("sum", [sqrt_spec, linear()]),     # claims min s = 0.5
        combine("max", [linear(), square]),
        combine("seq_limit", [power(1 + 1 / n, 1.0) for n in (1, 2, 4, 8)],
                limit=linear()),
    ]
    for spec in combos:
        report = check_harmonic_sm(spec, spec.claimed_s, spec.claimed_m,
                                   GridSpec(lo=0.5, hi=3.0))
        print(f"  {format_function_spec(spec) if spec.kind != 'seq_limit' else 'seq_limit(...)':<40}"
              f" claim ({spec.claimed_s:g},{spec.claimed_m:g})  holds={report.holds}")

    banner("the spec grammar round-trips")
    for text in ("power:c=1,p=2", "sum:spower:b=1,s=0.5,c=0+linear",
                 "scale:2.5:power:c=1,p=2", "warp:9"):
        try:
            spec = parse_function_spec(text)
        except Exception as exc:
            print(f"  {text:<45} -> {type(exc).__name__}: {exc}")
            continue
        print(f"  {text:<45} -> {format_function_spec(spec)}")


if __name__ == "__main__":
    main()
