import pytest

from rkanren import nil


def as_host_list(value):
    """Convert a reified cons-list value to a plain Python list."""
    out = []
    while isinstance(value, dict) and "car" in value and "cdr" in value:
        out.append(value["car"])
        value = value["cdr"]
    assert value is nil, "improper list tail: %r" % (value,)
    return out


@pytest.fixture
def host_list():
    return as_host_list
