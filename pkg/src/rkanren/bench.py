"""Benchmark the engine under each available kernel.

The workload is the update-heavy path a UI exercises: a membero-backed
list of `items` elements re-rendered through the template layer while a
head insert runs `steps` times, which hammers unify, walk and reify
through the whole pipeline. Both kernels (when the compiled one is
built) run the identical workload in one process via kernel.use.
"""

import time

from . import kernel
from .reactive import ReactiveSystem
from .registry import TEMPLATES, prepare_model
from .template import EventPayload, mount


def _workload(items, steps):
    model = {"items": ["w%04d" % i for i in range(items)]}
    sys = ReactiveSystem(prepare_model("membero-list", model))
    instance, _ = mount(sys, TEMPLATES["membero-list"](sys.model_root))
    button = next(n.id for n in instance.nodes.values()
                  if n.kind == "element" and n.tag == "button")
    total_ops = 0
    for _ in range(steps):
        ops = instance.dispatch_event(button, "click",
                                      EventPayload("click"))
        total_ops += len(ops)
    return total_ops


def run_bench(items=64, steps=10, repeats=3):
    """Time the workload under every importable kernel."""
    results = {}
    active = kernel.KERNEL_NAME
    try:
        for name in kernel.available():
            kernel.use(name)
            best = None
            ops = 0
            for _ in range(repeats):
                start = time.perf_counter()
                ops = _workload(items, steps)
                elapsed = time.perf_counter() - start
                best = elapsed if best is None else min(best, elapsed)
            results[name] = {"seconds": best, "ops": ops}
    finally:
        kernel.use(active)
    report = {"items": items, "steps": steps, "repeats": repeats,
              "kernels": results}
    if "pure" in results and "compiled" in results:
        report["speedup"] = (results["pure"]["seconds"]
                             / results["compiled"]["seconds"])
    return report
