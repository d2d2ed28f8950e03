"""Kernel selection: compiled extension when built, pure Python otherwise.

Set RKANREN_KERNEL=py to force the pure implementation (useful for
benchmarking and for debugging suspected codegen issues).
"""

import os

from . import _kernel_py

_forced = os.environ.get("RKANREN_KERNEL", "").strip().lower()

_impl = _kernel_py
if _forced != "py":
    try:
        from . import _kernel_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        if _forced in ("c", "cy", "compiled"):
            raise ImportError(
                "RKANREN_KERNEL=%s but the compiled kernel is not built; "
                "install with Cython available or unset the variable" % _forced
            )

KERNEL_NAME = "compiled" if _impl is not _kernel_py else "pure"

walk = _impl.walk
walk_binding = _impl.walk_binding
descendant = _impl.descendant
unify = _impl.unify
reify = _impl.reify


def available():
    """Names of the kernels importable right now."""
    names = ["pure"]
    try:
        from . import _kernel_cy  # noqa: F401
        names.append("compiled")
    except ImportError:
        pass
    return names


def use(name):
    """Swap the active kernel in place; returns the previous name.

    Exists for the benchmark harness, which times the same workload under
    both implementations within one process.
    """
    global walk, walk_binding, descendant, unify, reify, KERNEL_NAME
    previous = KERNEL_NAME
    if name == "pure":
        impl = _kernel_py
    elif name == "compiled":
        from . import _kernel_cy as impl
    else:
        raise ValueError("unknown kernel %r" % name)
    walk = impl.walk
    walk_binding = impl.walk_binding
    descendant = impl.descendant
    unify = impl.unify
    reify = impl.reify
    KERNEL_NAME = name
    return previous
