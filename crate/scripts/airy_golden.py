"""Reference values of Ai(x) at 50 significant digits, used as frozen test oracles.

Run: python3 scripts/airy_golden.py > crates/core/tests/data/airy_golden.rs
"""
import mpmath as mp

mp.mp.dps = 50


def grid():
    xs = [-20 + 0.5 * k for k in range(80)]
    xs += [-25.0, -24.0, -22.3, -12.7, -8.0, -7.999, -1.0, -0.25, 0.25, 2.5, 7.999, 8.0, 8.001, 10.0, 15.0, 20.0, 24.5, 25.0]
    return xs


def split(v):
    hi = float(v)
    lo = float(v - mp.mpf(hi))
    return hi, lo


def main():
    out = ["// Generated by scripts/airy_golden.py (mpmath, 50 digits). Do not edit.",
           "pub const AIRY_GOLDEN: &[(f64, f64)] = &["]
    for x in grid():
        out.append(f"    ({x!r}, {mp.nstr(mp.airyai(mp.mpf(x)), 20)}),")
    out.append("];")
    print("\n".join(out))
    print("// Ai(0)   hi/lo:", split(mp.airyai(0)))
    print("// -Ai'(0) hi/lo:", split(-mp.airyai(0, derivative=1)))


if __name__ == "__main__":
    main()
