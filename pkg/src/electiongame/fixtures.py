"""Built-in instances, addressable as ``fixtures:<name>``.

``table1`` and ``table2`` are the two three-party examples (beta = 100);
``table3`` is the parametric tight-PoA family and accepts
``fixtures:table3:m=5,beta=100,epsilon=1e-6``.
"""

from __future__ import annotations

from .model import GameInstance, from_matrices

TABLE1 = [
    [[50, 0, 0], [49, 29, 22]],
    [[15, 31, 0], [16, 30, 0]],
    [[10, 10, 24], [10, 10, 23]],
]

TABLE2 = [
    [[29, 4, 21], [27, 43, 3]],
    [[23, 59, 7], [3, 57, 38]],
    [[8, 32, 54], [20, 13, 53]],
]

# r_i(s) under softmax, printed to two decimals; keys are profiles.
TABLE2_PAYOFFS = {
    (1, 1, 1): (18.81, 34.64, 28.51),
    (1, 1, 2): (23.49, 27.82, 27.38),
    (1, 2, 1): (11.27, 34.67, 39.70),
    (1, 2, 2): (15.57, 28.09, 38.93),
    (2, 1, 1): (18.74, 44.53, 22.84),
    (2, 1, 2): (23.18, 38.35, 21.61),
    (2, 2, 1): (11.58, 44.25, 33.66),
    (2, 2, 2): (15.67, 38.27, 32.77),
}


def table1() -> GameInstance:
    return from_matrices(100, TABLE1)


def table2() -> GameInstance:
    return from_matrices(100, TABLE2)


def table3(m: int = 3, beta: float = 100.0, epsilon: float = 0.001) -> GameInstance:
    from .efficiency import table3_family

    return table3_family(m, beta, epsilon)


FIXTURES = {
    "table1": table1,
    "table2": table2,
    "table3": table3,
}

_PARAM_TYPES = {"m": int, "beta": float, "epsilon": float}


def names() -> list[str]:
    return sorted(FIXTURES)


def get(spec: str) -> GameInstance:
    """Resolve ``name`` or ``name:key=value,...`` (the ``fixtures:`` prefix is optional)."""
    if spec.startswith("fixtures:"):
        spec = spec[len("fixtures:"):]
    name, _, params = spec.partition(":")
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(names())}")
    kwargs = {}
    for item in filter(None, params.split(",")):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in _PARAM_TYPES:
            raise KeyError(f"unknown fixture parameter {key!r}")
        kwargs[key] = _PARAM_TYPES[key](value)
    return FIXTURES[name](**kwargs)
