"""End-to-end smoke test for the python module."""

import math
import sys

import vexle


def approx(a, b, rel=1e-6):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def main():
    assert vexle.eval_expr("2 + 3*4", 0.0) == 14
    assert approx(vexle.eval_expr("x^2 + t", 3.0, 1.0), 10.0)
    assert "min" in vexle.print_expr("min(x, 1)")

    nrm = vexle.quasi_norm((0.0, 1.0), 512, "0.5", "1", "2")
    assert approx(nrm, 2.0), nrm

    val = vexle.modular((0.0, 1.0), 512, "0.5", "1", "2", lam=2.0)
    assert approx(val, 1.0), val

    mu = vexle.conjugate_norm((0.0, 1.0), 512, "0.5", "1", "1")
    assert approx(mu, 1.0, rel=1e-5), mu

    assert vexle.example42_admissible(-4.5, -3.0, 0.2)
    assert not vexle.example42_admissible(-3.9, -3.0, 0.2)

    text = """
[scenario s1]
kind = quasi_norm
domain = "0,1"
points = 256
p = "0.25 + 0.5*x"
omega = "1"
f = "2"

[scenario s2]
kind = example42
alpha = -4.5
beta = -3
p = 0.2
"""
    report1, code1 = vexle.run(text, parallel=1)
    report8, code8 = vexle.run(text, parallel=8)
    assert code1 == 0 and code8 == 0
    assert report1 == report8
    assert report1.startswith("scenario,kind,quantity")

    kinds = vexle.kinds()
    assert "modular" in kinds and "quasi_norm" in kinds
    assert "quasi-norm" in vexle.explain("quasi_norm")

    try:
        vexle.run("[scenario x]\nkind = nope\n")
    except vexle.ScenarioFileError:
        pass
    else:
        raise AssertionError("expected ScenarioFileError")

    print("smoke ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
