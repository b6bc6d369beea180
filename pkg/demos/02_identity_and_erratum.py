"""The kernel integral identity, and the misprint it exposes.

The quadrature-rule deviation

    I_f = (lambda - mu) f(2ab/(a+b)) + (1 - lambda) f(a) + mu f(b)
          - (ab/(b-a)) * integral of f(u)/u^2 over [a, b]

equals a weighted kernel integral for every admissible weight pair.  The
widely circulated display instead uses the arithmetic-mean node f((a+b)/2)
and the prefactor 2ab/(b-a); this script shows that variant failing the
identity while the corrected form passes to quadrature accuracy.

Run:  python3 demos/02_identity_and_erratum.py
"""

import math

from harmonia import (
    Instance,
    check_identity,
    kernel_representation,
    linear,
    power,
    rule_deviation,
    rule_deviation_as_printed,
    s_power,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    inst = Instance(a=1.0, b=2.0, s=1.0, m=1.0, q=1.0,
                    lambda_=0.5, mu_=0.5, f=linear())

    banner("canonical instance: f(x)=x on [1,2], trapezoid weights")
    corrected = rule_deviation(inst)
    printed = rule_deviation_as_printed(inst)
    kernel = kernel_representation(inst)
    print(f"  corrected deviation    {corrected:+.10f}")
    print(f"  kernel representation  {kernel:+.10f}")
    print(f"  as-printed variant     {printed:+.10f}")
    print(f"  exact corrected value  {1.5 - 2.0 * math.log(2.0):+.10f}  (3/2 - 2 ln 2)")
    print(f"  exact printed value    {1.5 - 4.0 * math.log(2.0):+.10f}  (3/2 - 4 ln 2)")
    print(f"  corrected matches kernel to {abs(corrected - kernel):.2e}")
    print(f"  printed misses by           {abs(printed - kernel):.2f}")

    banner("the identity holds across weight pairs, even outside [0,1]")
    for lam, mu in ((0.5, 0.5), (1.0, 0.0), (5 / 6, 1 / 6), (1.7, -0.4), (3.0, 3.0)):
        trial = Instance(a=1.0, b=2.0, s=1.0, m=1.0, q=1.0,
                         lambda_=lam, mu_=mu, f=power(1.0, 2.0))
        chk = check_identity(trial)
        print(f"  lambda={lam:+.2f} mu={mu:+.2f}  lhs {chk.lhs:+.8f}  "
              f"|diff| {chk.abs_diff:.2e}  passed={chk.passed}")

    banner("preset weight pairs reproduce the textbook rule deviations")
    f = power(1.0, 2.0)
    a, b = 1.0, 3.0
    harm = f.value(2 * a * b / (a + b))
    avg_term = rule_deviation(Instance(a=a, b=b, s=1, m=1, q=1,
                                       lambda_=1.0, mu_=1.0, f=f))
    # lambda=mu=1 cancels the harmonic node and leaves f(b) - T
    integral_term = f.value(b) - avg_term
    for name, lam, mu, expected in (
        ("trapezoid", 0.5, 0.5, 0.5 * (f.value(a) + f.value(b)) - integral_term),
        ("midpoint", 1.0, 0.0, harm - integral_term),
        ("simpson", 5 / 6, 1 / 6,
         (0.5 * (f.value(a) + f.value(b)) + 2.0 * harm) / 3.0 - integral_term),
    ):
        inst = Instance(a=a, b=b, s=1, m=1, q=1, lambda_=lam, mu_=mu, f=f)
        got = rule_deviation(inst)
        print(f"  {name:<10} deviation {got:+.8f}  vs substitution {expected:+.8f}  "
              f"diff {abs(got - expected):.1e}")

    banner("families with curvature: the deviation is real, the identity exact")
    for name, f in (("sqrt", s_power(1.0, 0.5, 0.0)),
                    ("reciprocal", power(1.0, -1.0)),
                    ("cubic", power(1.0, 3.0))):
        # lambda - mu != 1/2 here: pairs with difference exactly 1/2 make
        # the reciprocal's deviation vanish identically
        inst = Instance(a=1.0, b=2.5, s=1.0, m=1.0, q=1.0,
                        lambda_=0.9, mu_=0.2, f=f)
        chk = check_identity(inst)
        print(f"  {name:<10} deviation {chk.lhs:+.6f}  kernel {chk.rhs:+.6f}  "
              f"|diff| {chk.abs_diff:.2e}")


if __name__ == "__main__":
    main()
