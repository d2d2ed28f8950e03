"""Command line entry points: run scenarios, check laws, benchmark kernels,
export models. `python3 -m rkanren.cli <verb> --help` for flags."""

import argparse
import json
import sys as _sys

from . import kernel
from .bench import run_bench
from .laws import check_laws
from .reactive import ReactiveSystem
from .registry import DEFAULT_MODELS, TEMPLATES, prepare_model
from .scenarios import load_scenario, run_scenario
from .substitution import export_model


def _scenario_from_arg(arg):
    if arg in TEMPLATES:
        return {"template": arg, "events": [], "expect": [], "_dir": "."}
    return load_scenario(arg)


def cmd_run(args):
    scenario = _scenario_from_arg(args.scenario)
    op_sink = _sys.stdout if args.emit_ops else None
    report = run_scenario(scenario,
                          check_oracle=args.check_oracle,
                          snapshot_every_step=args.snapshot_every_step,
                          op_sink=op_sink,
                          dump_tree=args.dump_tree)
    # with --emit-ops the op stream owns stdout, so the report moves aside
    out = _sys.stderr if args.emit_ops else _sys.stdout
    if args.json:
        print(json.dumps(report, sort_keys=True), file=out)
    else:
        for step in report["steps"]:
            print("%-40s %3d ops" % (step["label"], step["ops"]), file=out)
            if "snapshot" in step:
                print("  %s" % json.dumps(step["snapshot"], sort_keys=True),
                      file=out)
        if args.dump_tree:
            for entry in report["trees"]:
                print("tree %s:" % entry["slot"], file=out)
                print("  %s" % json.dumps(entry["tree"], sort_keys=True),
                      file=out)
        if not args.emit_ops and not args.snapshot_every_step:
            print("final: %s" % json.dumps(report["final_snapshot"],
                                           sort_keys=True), file=out)
        for failure in report["failures"]:
            print("FAIL %s" % failure, file=out)
        print("%s: %d events, %s" % (report["template"],
                                     len(report["steps"]) - 1,
                                     "ok" if report["ok"] else "FAILED"),
              file=out)
    return 0 if report["ok"] else 1


def cmd_laws(args):
    report = check_laws(seed=args.seed, cases=args.cases)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for law, n in sorted(report["checked"].items()):
            print("%-28s %5d cases" % (law, n))
        for v in report["violations"]:
            print("VIOLATION %s case %d: %s"
                  % (v["law"], v["case"], v["detail"]))
        print("seed %d: %d violations" % (report["seed"],
                                          len(report["violations"])))
    return 0 if report["ok"] else 1


def cmd_bench(args):
    report = run_bench(items=args.items, steps=args.steps,
                       repeats=args.repeats)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for name, r in sorted(report["kernels"].items()):
            print("%-10s %8.4fs  (%d ops, %d items x %d steps)"
                  % (name, r["seconds"], r["ops"], report["items"],
                     report["steps"]))
        if "speedup" in report:
            print("speedup: %.2fx" % report["speedup"])
        else:
            print("compiled kernel not built; only %s measured"
                  % ", ".join(report["kernels"]))
    return 0


def cmd_serve(args):
    from .server import serve
    return serve(host=args.host, port=args.port, static_root=args.static)


def cmd_export(args):
    scenario = _scenario_from_arg(args.scenario)
    name = scenario["template"]
    model = scenario.get("model", DEFAULT_MODELS[name])
    system = ReactiveSystem(prepare_model(name, model))
    if scenario.get("events"):
        report = run_scenario(scenario)
        if not report["ok"]:
            for failure in report["failures"]:
                print("FAIL %s" % failure, file=_sys.stderr)
            return 1
        print(json.dumps(report["final_model"], sort_keys=True))
        return 0
    print(json.dumps(export_model(system.substitution, system.model_root),
                     sort_keys=True))
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="rkanren",
        description="reactive relational UI engine (kernel: %s)"
        % kernel.KERNEL_NAME)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("run", help="replay a scenario file or template name")
    p.add_argument("scenario")
    p.add_argument("--emit-ops", action="store_true",
                   help="stream render ops as ndjson on stdout")
    p.add_argument("--check-oracle", action="store_true",
                   help="compare each step against a fresh mount")
    p.add_argument("--dump-tree", action="store_true",
                   help="include every slot's search tree in the report")
    p.add_argument("--snapshot-every-step", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("laws", help="randomized law checking")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_laws)

    p = sub.add_parser("bench", help="compare kernels on an update workload")
    p.add_argument("--items", type=int, default=64)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("export", help="print a scenario's model as JSON")
    p.add_argument("scenario")
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("serve",
                       help="HTTP bridge plus static page for the browser "
                            "demo")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", default="frontend",
                   help="directory holding public/ and dist/")
    p.set_defaults(fn=cmd_serve)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
