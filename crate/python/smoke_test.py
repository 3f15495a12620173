"""Smoke test for the rmt_py extension module.

Builds the library with cargo (unless RMT_PY_LIB points at a built one),
loads it, and checks a handful of closed forms against known values and
the module's own oracle.

    python3 python/smoke_test.py
"""
import importlib.machinery
import importlib.util
import math
import os
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    lib = os.environ.get("RMT_PY_LIB")
    if lib is None:
        subprocess.run(["cargo", "build", "--release", "-p", "rmt-py"], cwd=ROOT, check=True)
        suffix = {"darwin": "dylib", "win32": "dll"}.get(sys.platform, "so")
        prefix = "" if sys.platform == "win32" else "lib"
        lib = ROOT / "target" / "release" / f"{prefix}rmt_py.{suffix}"
    loader = importlib.machinery.ExtensionFileLoader("rmt_py", str(lib))
    spec = importlib.util.spec_from_loader("rmt_py", loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    rmt = load_module()
    checks = []

    one = rmt.SeriesSpec.family("const_one", "exp")
    checks.append(("Γ(3) from φ ≡ 1", close(rmt.rmt_general(one, 3.0).value, 2.0, 1e-14)))

    ratio = rmt.SeriesSpec.family("gamma_ratio", "exp", {"alpha": 1.0, "beta": 1.0})
    r = rmt.rmt_log(ratio, 0.5, 2)
    checks.append(("π³ log integral", r.is_ok() and close(r.value, math.pi ** 3, 1e-9)))

    zeta_res = rmt.rmt_zeta(one, 1.0)
    checks.append(("ζ pole reported, not raised", not zeta_res.is_ok()))

    # user-supplied φ from a Python callable: f(x) = e^{-2x}
    spec = rmt.SeriesSpec(lambda n: 2.0 ** n, "exp", direct=lambda x: math.exp(-2 * x))
    closed = rmt.rmt_general(spec, 1.5).value
    oracle = rmt.integrate_mellin(lambda x: math.exp(-2 * x), 1.5)
    checks.append(("callable φ vs oracle", oracle.is_converged() and close(closed, oracle.value, 1e-10)))

    sol = rmt.hankel0_series_solution(rmt.SeriesSpec.family("power", "exp", {"lambda": 1.0}), 0.5, "convergent")
    checks.append(("Hankel series", close(sol.value, 1.25 ** -1.5, 1e-10)))

    rep = rmt.run_entry("triangular_wave_sum")
    checks.append(("catalog triangular wave", rep.status == "pass" and close(rep.closed_value, math.pi / 8, 1e-12)))
    checks.append(("catalog size", len(rmt.list_entries()) >= 15))

    try:
        rmt.run_entry("no_such_entry")
        checks.append(("unknown entry raises KeyError", False))
    except KeyError:
        checks.append(("unknown entry raises KeyError", True))

    checks.append(("special functions", close(rmt.gamma(0.5), math.sqrt(math.pi), 1e-15)
                   and close(rmt.zeta(2.0), math.pi ** 2 / 6, 1e-15)))

    failed = 0
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
