#!/usr/bin/env python3
"""Exercises the ebrkit CLI exit-code contract and report shapes."""

import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

FAILURES = []


def run(binary, *args):
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    report = None
    if proc.stdout.strip().startswith("{"):
        try:
            report = json.loads(proc.stdout)
        except json.JSONDecodeError:
            pass
    return proc.returncode, report, proc.stderr


def check(name, cond, extra=""):
    status = "ok" if cond else "FAIL"
    print(f"[{status}] {name} {extra}")
    if not cond:
        FAILURES.append(name)


def qubit_fiducial():
    n1 = math.sqrt(3.0 + math.sqrt(3.0)) / math.sqrt(6.0)
    n2 = math.sqrt(3.0 - math.sqrt(3.0)) / math.sqrt(6.0)
    phase = math.pi / 4.0
    return {
        "d": 2,
        "w": {
            "dim": 2,
            "entries": [[n1, 0.0], [n2 * math.cos(phase), n2 * math.sin(phase)]],
        },
    }


def main():
    binary = sys.argv[1]
    tmp = Path(tempfile.mkdtemp(prefix="ebrkit_cli_"))

    good = tmp / "fiducial.json"
    good.write_text(json.dumps(qubit_fiducial()))
    code, report, _ = run(binary, "verify-sic", "--d", "2", "--in", str(good))
    check("verify-sic accepts the qubit fiducial", code == 0, f"(exit {code})")
    check("verify-sic reports the angle", report is not None
          and abs(report["results"]["angle_max"]["value"] - 1.0 / 3.0) < 1e-8)
    check("report carries tolerances", report is not None
          and "tol" in report["results"]["angle_max"])

    perturbed = qubit_fiducial()
    perturbed["w"]["entries"][0][0] += 1e-3
    bad = tmp / "perturbed.json"
    bad.write_text(json.dumps(perturbed))
    code, report, _ = run(binary, "verify-sic", "--d", "2", "--in", str(bad))
    check("perturbed fiducial fails verification", code == 1, f"(exit {code})")
    check("perturbed report still carries the deviation", report is not None
          and report["results"]["max_angle_dev"]["value"] > 1e-6)

    wrong_count = {"d": 2, "vectors": [qubit_fiducial()["w"]] * 3}
    wc = tmp / "wrong_count.json"
    wc.write_text(json.dumps(wrong_count))
    code, _, _ = run(binary, "verify-sic", "--d", "2", "--in", str(wc))
    check("wrong vector count is a usage error", code == 2, f"(exit {code})")

    code, _, _ = run(binary, "verify-sic", "--d", "2", "--in", str(tmp / "missing.json"))
    check("missing file is a usage error", code == 2, f"(exit {code})")

    code, _, _ = run(binary, "verify-sic")
    check("missing required flags is a usage error", code == 2, f"(exit {code})")

    out_file = tmp / "scan.json"
    code, report, _ = run(binary, "scan", "--d", "2", "--steps", "8", "--out", str(out_file))
    check("d=2 closed-form scan passes", code == 0, f"(exit {code})")
    check("scan rows carry the contract fields", report is not None
          and len(report["results"]["rows"]) == 8
          and all(set(r) >= {"t", "choi_distance", "tp_residual", "angle_min", "angle_max"}
                  for r in report["results"]["rows"]))
    check("--out writes the same report", out_file.exists()
          and json.loads(out_file.read_text())["command"] == "scan")

    code, _, _ = run(binary, "scan", "--d", "2", "--t-min", "0.2", "--t-max", "0.1")
    check("inverted scan range is a usage error", code == 2, f"(exit {code})")

    code, report, _ = run(binary, "mub", "--d", "3")
    check("mub d=3 passes", code == 0, f"(exit {code})")
    check("mub witness has d(d+1) factors", report is not None
          and report["results"]["witness_cardinality"] == 12)

    code, _, _ = run(binary, "mub", "--d", "4")
    check("mub d=4 is an input error", code == 2, f"(exit {code})")

    code, report, _ = run(binary, "channel-info", "--channel", "TZ:3")
    check("channel-info TZ:3 runs", code == 0, f"(exit {code})")
    check("TZ:3 has Choi rank 6 and PPT", report is not None
          and report["results"]["choi_rank"] == 6 and report["results"]["ppt"] is True)

    code, report, _ = run(binary, "channel-info", "--channel", "depolarizing:2:0.5")
    check("channel-info depolarizing:2:0.5 runs", code == 0, f"(exit {code})")
    check("t=0.5 is not entanglement breaking", report is not None
          and report["results"]["depolarizing"]["is_eb"] is False)

    code, report, _ = run(binary, "channel-info", "--channel", "depolarizing:2:1/3")
    check("rational boundary t=1/3 is EB", report is not None
          and report["results"]["depolarizing"]["is_eb"] is True)

    code, _, _ = run(binary, "channel-info", "--channel", "depolarizing:2:oops")
    check("bad t parameter is a usage error", code == 2, f"(exit {code})")

    trace_file = tmp / "trace.jsonl"
    code, report, _ = run(binary, "decompose", "--target", "Z:2", "--k", "4",
                          "--seed", "11", "--trace", str(trace_file))
    check("decompose Z:2 K=4 converges", code == 0, f"(exit {code})")
    check("decompose reports the witness family", report is not None
          and len(report["results"]["family"]["pairs"]) == 4)
    lines = [json.loads(l) for l in trace_file.read_text().splitlines() if l.strip()]
    check("trace stream has {iter, objective, step} rows", len(lines) > 0
          and set(lines[0]) == {"iter", "objective", "step"})

    code, _, _ = run(binary, "decompose", "--target", "Z:2", "--k", "3",
                     "--seed", "11", "--restarts", "4")
    check("decompose Z:2 K=3 fails to converge", code == 1, f"(exit {code})")

    # reproducibility: identical seeds give identical reports modulo timing
    _, rep_a, _ = run(binary, "decompose", "--target", "Z:2", "--k", "4", "--seed", "42",
                      "--restarts", "4")
    _, rep_b, _ = run(binary, "decompose", "--target", "Z:2", "--k", "4", "--seed", "42",
                      "--restarts", "4")
    for rep in (rep_a, rep_b):
        rep.pop("wall_time_ms", None)
    check("identical seeds reproduce the report", rep_a == rep_b)

    code, report, _ = run(binary, "fiducial", "--d", "2", "--seed", "3")
    check("fiducial search d=2 verifies", code == 0, f"(exit {code})")
    check("fiducial search reports the vector", report is not None
          and report["results"]["fiducial"]["w"]["dim"] == 2)

    if FAILURES:
        print(f"{len(FAILURES)} CLI check(s) failed")
        return 1
    print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
