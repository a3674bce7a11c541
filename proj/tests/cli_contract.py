#!/usr/bin/env python3
"""Black-box contract checks for the command-line interface.

Usage: cli_contract.py <path-to-binary>
"""
import json
import os
import re
import subprocess
import sys

BIN = sys.argv[1]
failures = []


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("PRIMPAIR_GUARD", None)
    if env:
        full_env.update(env)
    proc = subprocess.run(
        [BIN, *args], capture_output=True, text=True, env=full_env, timeout=240
    )
    return proc.returncode, proc.stdout, proc.stderr


def check(name, cond, detail=""):
    if not cond:
        failures.append(f"{name}: {detail}")
        print(f"FAIL {name} {detail}")
    else:
        print(f"ok   {name}")


def strip_elapsed(s):
    return re.sub(r'"elapsed_ms":[0-9.eE+-]+', '"elapsed_ms":0', s)


# ---- help and argument errors ------------------------------------------------
rc, out, _ = run("--help")
check("help exit code", rc == 0, f"rc={rc}")
for sub in ["factor", "bound", "sieve", "tables", "classify", "search", "charsum"]:
    check(f"help mentions {sub}", sub in out)

rc, _, _ = run()
check("missing subcommand rejected", rc == 3, f"rc={rc}")

rc, _, _ = run("tables", "3")
check("tables range-checked", rc == 3, f"rc={rc}")

rc, _, _ = run("bound", "2", "13", "--format", "yaml")
check("unknown format rejected", rc == 3, f"rc={rc}")

# ---- factor -------------------------------------------------------------------
rc, out, _ = run("factor", "1")
check("factor 1", rc == 0 and out == "1 = 1\n", repr(out))

rc, out, _ = run("factor", "1419856")
check("factor text", rc == 0 and out == "1419856 = 2^4 * 88741\n", repr(out))

rc, out, _ = run("factor", "1419856", "--format", "csv")
check(
    "factor csv",
    rc == 0 and out == "value,prime,exponent\n1419856,2,4\n1419856,88741,1\n",
    repr(out),
)

rc, out, _ = run("factor", "1419856", "--format", "json")
j = json.loads(out)
check("factor json value", j["value"] == 1419856, out)
check(
    "factor json factors",
    j["factors"] == [{"prime": 2, "exponent": 4}, {"prime": 88741, "exponent": 1}],
    out,
)

rc, _, err = run("factor", "notanumber")
check("factor invalid input", rc == 3, f"rc={rc} err={err}")

# ---- bound --------------------------------------------------------------------
rc, out, _ = run("bound", "2", "13", "--format", "json")
j = json.loads(out)
check("bound (2,13) passes", rc == 0 and j["passes"] is True and j["omega"] == 1, out)

rc, out, _ = run("bound", "2", "6", "--format", "json")
j = json.loads(out)
check("bound (2,6) fails", rc == 0 and j["passes"] is False, out)

rc, out, _ = run("bound", "2", "6", "--format", "csv")
check(
    "bound csv header",
    rc == 0 and out.splitlines()[0] == "q,m,lhs,rhs,omega,passes",
    repr(out),
)

rc, _, err = run("bound", "6", "3")
check("bound rejects non-prime-power", rc == 3, f"rc={rc} err={err}")

# ---- sieve --------------------------------------------------------------------
rc, out, _ = run("sieve", "17", "5", "--core", "1")
check(
    "sieve (17,5) core 1 text",
    rc == 0
    and "0.999977" in out
    and "3.00002" in out
    and "result: PASS" in out
    and "core primes  : 2" in out
    and "88741" in out,
    out,
)

rc, out, _ = run("sieve", "17", "5", "--core", "1", "--format", "csv")
lines = out.splitlines()
check(
    "sieve csv shape",
    rc == 0 and len(lines) == 2 and lines[0] == "q,m,primes,omega_r,delta,lambda,lhs,rhs,passes",
    repr(out),
)

rc, out, _ = run("sieve", "61", "5")
check("sieve best-plan default", rc == 0 and "result: PASS" in out, out)

rc, _, err = run("sieve", "2", "6", "--core", "3")
check("sieve oversized core rejected", rc == 3, f"rc={rc} err={err}")

# ---- tables -------------------------------------------------------------------
rc, out, _ = run("tables", "1", "--format", "csv")
check("table one csv rows", rc == 0 and len(out.splitlines()) == 31, f"lines={len(out.splitlines())}")

rc, out, _ = run("tables", "2", "--format", "csv")
check("table two csv rows", rc == 0 and len(out.splitlines()) == 17, f"lines={len(out.splitlines())}")

rc, out, _ = run("tables", "--format", "json")
j = json.loads(out)
check("tables json", rc == 0 and len(j["rows"]) == 46 and j["all_pass"] is True, f"rows={len(j.get('rows', []))}")

rc, out, _ = run("tables", "1")
check("table one text summary", rc == 0 and "30 rows" in out and "all plans pass" in out, out[-200:])

# ---- classify -----------------------------------------------------------------
rc, out, _ = run("classify", "17", "5", "--format", "json")
j = json.loads(out)
check(
    "classify (17,5)",
    rc == 0 and j["stage"] == "base" and j["verdict"] == "member",
    out,
)

rc, out, _ = run("classify", "2", "2")
check("classify small out of scope", rc == 0 and "out_of_scope" in out, out)

rc, out, _ = run("classify", "2", "6", "--format", "json")
j = json.loads(out)
check(
    "classify (2,6) searches",
    rc == 0
    and j["stage"] == "search"
    and j["verdict"] == "exceptional"
    and j["search"]["admissible_counterexamples"] == 588,
    out[:400],
)

# ---- search -------------------------------------------------------------------
rc, out, _ = run("search", "2", "5", "--format", "json")
j = json.loads(out)
check(
    "search (2,5) member",
    rc == 0 and j["status"] == "member" and j["full_scope"] is True and j["counterexamples"] == [],
    out[:400],
)

rc, _, _ = run("search", "2", "5", "--expect", "exceptional")
check("expect mismatch exits 2", rc == 2, f"rc={rc}")

rc, _, _ = run("search", "2", "6", "--expect", "exceptional")
check("expect match exits 0", rc == 0, f"rc={rc}")

rc, out, _ = run("search", "2", "6", "--beta", "0", "--format", "json")
j = json.loads(out)
check(
    "search (2,6) beta slice",
    rc == 0 and j["admissible_counterexamples"] == 540 and j["full_scope"] is False,
    out[:400],
)

out1 = run("search", "3", "3", "--format", "json", "--workers", "1")
out3 = run("search", "3", "3", "--format", "json", "--workers", "3")
check(
    "search json deterministic across workers",
    out1[0] == 0 and out3[0] == 0 and strip_elapsed(out1[1]) == strip_elapsed(out3[1]),
    "outputs differ beyond elapsed_ms",
)

rc, out, _ = run(
    "search", "3", "3", "--modulus", "1,2,0,1",
    "--coeffs", "0,1,0:1,1,0:2,0,2", "--format", "json",
)
j = json.loads(out)
betas = sorted(ce["beta"] for ce in j["counterexamples"])
check(
    "search single-triple vectors",
    rc == 0
    and j["status"] == "exceptional"
    and j["triples_checked"] == 1
    and betas == ["1,0,0", "2,0,0"],
    out[:400],
)

rc, out, _ = run("search", "3", "3", "--coeffs", "1,1,2", "--format", "json")
j = json.loads(out)
check(
    "search single-triple residues",
    rc == 0 and j["triples_checked"] == 1 and j["full_scope"] is False,
    out[:400],
)

rc, _, err = run("search", "3", "3", "--coeffs", "0,1,0:1,1,0")
check("search malformed coeffs", rc == 3, f"rc={rc} err={err}")

rc, _, err = run("search", "2", "6", "--modulus", "1,1")
check("search malformed modulus", rc == 3, f"rc={rc} err={err}")

# ---- resource guards ----------------------------------------------------------
rc, _, err = run("search", "2", "30")
check("search guard default", rc == 4 and "resource guard" in err, f"rc={rc} err={err}")

rc, _, err = run("search", "2", "11", env={"PRIMPAIR_GUARD": "1024"})
check("search guard from environment", rc == 4, f"rc={rc} err={err}")

rc, _, _ = run("search", "2", "8", env={"PRIMPAIR_GUARD": "256"})
check("search within lowered guard", rc == 0, f"rc={rc}")

rc, _, err = run("search", "2", "11", env={"PRIMPAIR_GUARD": "notanumber"})
check("malformed guard rejected", rc == 3, f"rc={rc} err={err}")

rc, _, err = run("search", "2", "23")
check("search without log tables", rc == 3 and "discrete-log" in err, f"rc={rc} err={err}")

rc, _, err = run("bound", "2", "200")
check("bound beyond integer range", rc == 4, f"rc={rc} err={err}")

# ---- charsum ------------------------------------------------------------------
rc, out, _ = run("charsum", "9", "2", "--format", "json")
j = json.loads(out)
check(
    "charsum quick suite",
    rc == 0 and j["all_pass"] is True and len(j["checks"]) == 6,
    out[:400],
)

rc, out, _ = run(
    "charsum", "2", "6", "--suite", "--modulus", "1,1,0,1,1,0,1", "--format", "json"
)
j = json.loads(out)
check(
    "charsum full suite",
    rc == 0
    and j["all_pass"] is True
    and len(j["checks"]) == 7
    and j["modulus"] == "1,1,0,1,1,0,1",
    out[:400],
)

rc, out, _ = run("charsum", "5", "2")
check("charsum text overall", rc == 0 and "overall: PASS" in out, out)

# ---- verdict ------------------------------------------------------------------
print()
if failures:
    print(f"{len(failures)} contract check(s) failed")
    sys.exit(1)
print("all contract checks passed")
