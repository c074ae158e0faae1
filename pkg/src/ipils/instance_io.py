"""Text format for knapsack instances.

Line 1: `n K`; line 2: `C`; then n lines `c_j p_j^1 ... p_j^K`.
Blank lines and `#` comments are ignored anywhere.
"""

from __future__ import annotations

from .core import KnapsackInstance


class InstanceParseError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_instance(source: str, name: str = "instance") -> KnapsackInstance:
    rows = [
        (lineno, line.split("#", 1)[0].split())
        for lineno, line in enumerate(source.splitlines(), start=1)
        if line.split("#", 1)[0].strip()
    ]
    it = iter(rows)

    def next_row(what: str) -> tuple[int, list[str]]:
        try:
            return next(it)
        except StopIteration:
            last = rows[-1][0] + 1 if rows else 1
            raise InstanceParseError(last, f"missing {what}") from None

    lineno, head = next_row("header line `n K`")
    if len(head) != 2:
        raise InstanceParseError(lineno, "expected `n K`")
    n, K = _ints(lineno, head)
    if n < 0 or K < 1:
        raise InstanceParseError(lineno, "need n >= 0 and K >= 1")
    lineno, cap_row = next_row("capacity line")
    if len(cap_row) != 1:
        raise InstanceParseError(lineno, "expected a single capacity value")
    (capacity,) = _ints(lineno, cap_row)
    if capacity < 0:
        raise InstanceParseError(lineno, "capacity must be nonnegative")
    costs: list[int] = []
    profits: list[list[int]] = [[] for _ in range(K)]
    for _ in range(n):
        lineno, row = next_row(f"item line (expected {n} items)")
        if len(row) != K + 1:
            raise InstanceParseError(
                lineno, f"expected cost + {K} profits, got {len(row)} values"
            )
        values = _ints(lineno, row)
        if any(v < 0 for v in values):
            raise InstanceParseError(lineno, "negative coefficient")
        costs.append(values[0])
        for k in range(K):
            profits[k].append(values[k + 1])
    extra = next(it, None)
    if extra is not None:
        raise InstanceParseError(extra[0], "unexpected trailing data")
    return KnapsackInstance(
        name=name,
        n=n,
        K=K,
        capacity=capacity,
        costs=tuple(costs),
        profits=tuple(tuple(row) for row in profits),
    )


def _ints(lineno: int, tokens: list[str]) -> list[int]:
    out = []
    for tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise InstanceParseError(lineno, f"not an integer: {tok!r}") from None
    return out


def serialize_instance(instance: KnapsackInstance) -> str:
    lines = [f"{instance.n} {instance.K}", str(instance.capacity)]
    for j in range(instance.n):
        lines.append(
            " ".join(
                [str(instance.costs[j])]
                + [str(instance.profits[k][j]) for k in range(instance.K)]
            )
        )
    return "\n".join(lines) + "\n"


def load_instance(path: str) -> KnapsackInstance:
    with open(path) as fh:
        return parse_instance(fh.read(), name=path.rsplit("/", 1)[-1])
