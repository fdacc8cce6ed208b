"""Penalty-method QUBO construction and exact solving for desk-scale CVRP.

The model works over edge variables ``x[v, i, j]`` (vehicle ``v`` drives the
arc ``i -> j``; self-loops do not exist) plus one unary slack register per
vehicle that turns the capacity bound into an equality.  Constraints become
squared penalties scaled by a single factor ``A``:

* every customer is left exactly once (across all vehicles),
* every vehicle leaves the depot exactly once and returns exactly once,
* per vehicle, each customer has as many incoming as outgoing arcs,
* per vehicle, carried demand plus slack equals the capacity,
* no pair of customers forms an isolated two-node loop.

The last rule costs no extra variables and never charges a valid solution;
it closes the cheapest family of depot-avoiding loops that the degree rules
alone admit.  Longer depot-avoiding loops can still slip through with four
or more customers; ``decode_routes`` reports them as violations.

Everything here is meant for instances small enough to enumerate, where the
exact optimum doubles as ground truth for the closed-form estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .errors import LengthMismatch, TooLarge
from .instances import CvrpInstance, edge_weight, max_edge_weight, weight_matrix

AUTO = "auto"

DEFAULT_MAX_VARS = 30
_CHUNK_BITS = 18

VISIT_COUNT = "visit-count"
DEPOT_DEPARTURE = "depot-departure"
DEPOT_RETURN = "depot-return"
FLOW_BALANCE = "flow-balance"
CAPACITY = "capacity"
SUBTOUR = "subtour"


@dataclass(frozen=True)
class VarIndex:
    """Structured name of one route variable: vehicle ``v`` drives ``i -> j``."""

    i: int
    j: int
    v: int


@dataclass(frozen=True)
class SlackRegister:
    """One vehicle's unary capacity register: ``length`` bits of weight 1."""

    vehicle: int
    start: int
    length: int


class VariableMap:
    """Bijection between structured variables and flat bit positions.

    Route variables come first, ordered by vehicle, then tail node, then
    head node, skipping self-loops; the slack registers follow, one block
    per vehicle.
    """

    def __init__(self, nodes: int, vehicles: int, capacity: int) -> None:
        self.nodes = nodes
        self.vehicles = vehicles
        self.capacity = capacity
        self.num_route_vars = vehicles * nodes * (nodes - 1)
        self.num_vars = self.num_route_vars + vehicles * capacity
        self.slack_registers = tuple(
            SlackRegister(v, self.num_route_vars + v * capacity, capacity)
            for v in range(vehicles)
        )

    def route_index(self, var: VarIndex) -> int:
        n = self.nodes
        if not (0 <= var.v < self.vehicles and 0 <= var.i < n and 0 <= var.j < n):
            raise IndexError(f"{var} outside the model")
        if var.i == var.j:
            raise IndexError("self-loops have no variable")
        j_rank = var.j if var.j < var.i else var.j - 1
        return (var.v * n + var.i) * (n - 1) + j_rank

    def route_var(self, flat: int) -> VarIndex:
        if not (0 <= flat < self.num_route_vars):
            raise IndexError(f"flat index {flat} is not a route variable")
        v, rest = divmod(flat, self.nodes * (self.nodes - 1))
        i, j_rank = divmod(rest, self.nodes - 1)
        j = j_rank if j_rank < i else j_rank + 1
        return VarIndex(i=i, j=j, v=v)

    def slack_index(self, vehicle: int, bit: int) -> int:
        reg = self.slack_registers[vehicle]
        if not (0 <= bit < reg.length):
            raise IndexError(f"slack bit {bit} outside register of length {reg.length}")
        return reg.start + bit

    def describe(self, flat: int) -> str:
        if flat < self.num_route_vars:
            var = self.route_var(flat)
            return f"x[v{var.v}, {var.i}->{var.j}]"
        rest = flat - self.num_route_vars
        v, bit = divmod(rest, self.capacity)
        return f"slack[v{v}, {bit}]"


Number = Union[int, float]


@dataclass
class QuboModel:
    """An explicit quadratic pseudo-Boolean model.

    ``linear`` maps flat indices to coefficients and ``quadratic`` maps
    index pairs ``(a, b)`` with ``a < b``; ``offset`` is the constant term
    and ``penalty`` the scale applied to every constraint.  Models built
    from an instance carry a ``var_map``; models read back from text do not.
    """

    num_vars: int
    linear: dict[int, Number]
    quadratic: dict[tuple[int, int], Number]
    offset: Number
    penalty: Number
    var_map: VariableMap | None = None


def _auto_penalty(inst: CvrpInstance) -> int:
    # Twice the node count times the longest edge strictly dominates the
    # cost of any violation-free assignment at desk scale.  The floor of 1
    # keeps constraints alive when every edge has zero weight.
    return 2 * inst.dimension * max(1, max_edge_weight(inst))


def build_qubo(
    inst: CvrpInstance,
    penalty: Number | str = AUTO,
    *,
    forbid_two_cycles: bool = True,
) -> QuboModel:
    """Assemble the penalty model for an instance.

    Variable count is ``vehicles * dimension * (dimension - 1)`` route bits
    plus ``vehicles * capacity`` slack bits.  ``penalty`` is a positive
    number or ``"auto"``, which picks twice the node count times the longest
    edge.  ``forbid_two_cycles`` keeps the isolated-pair penalty on; it only
    exists so tests can study the plain degree-constraint model.
    """
    if penalty == AUTO:
        scale: Number = _auto_penalty(inst)
    else:
        if not isinstance(penalty, (int, float)) or isinstance(penalty, bool):
            raise ValueError(f"penalty must be a number or 'auto', got {penalty!r}")
        if not penalty > 0:
            raise ValueError("penalty must be positive")
        scale = penalty

    nodes = inst.dimension
    k = inst.vehicles
    cap = inst.capacity
    vmap = VariableMap(nodes, k, cap)
    weights = weight_matrix(inst)

    linear: dict[int, Number] = {}
    quadratic: dict[tuple[int, int], Number] = {}
    offset: Number = 0

    def add_linear(a: int, coeff: Number) -> None:
        linear[a] = linear.get(a, 0) + coeff

    def add_quadratic(a: int, b: int, coeff: Number) -> None:
        key = (a, b) if a < b else (b, a)
        quadratic[key] = quadratic.get(key, 0) + coeff

    def add_square(terms: list[tuple[int, Number]], constant: Number) -> None:
        # scale * (sum coeff_a * x_a + constant)**2, using x**2 == x.
        nonlocal offset
        offset += scale * constant * constant
        for pos, (a, ca) in enumerate(terms):
            add_linear(a, scale * (ca * ca + 2 * constant * ca))
            for b, cb in terms[pos + 1 :]:
                add_quadratic(a, b, 2 * scale * ca * cb)

    def arc(v: int, i: int, j: int) -> int:
        return vmap.route_index(VarIndex(i=i, j=j, v=v))

    for v in range(k):
        for i in range(nodes):
            for j in range(nodes):
                if i != j and weights[i, j]:
                    add_linear(arc(v, i, j), int(weights[i, j]))

    for i in range(1, nodes):
        outgoing = [
            (arc(v, i, j), 1) for v in range(k) for j in range(nodes) if j != i
        ]
        add_square(outgoing, -1)

    for v in range(k):
        add_square([(arc(v, 0, j), 1) for j in range(1, nodes)], -1)
        add_square([(arc(v, i, 0), 1) for i in range(1, nodes)], -1)
        for i in range(1, nodes):
            balance = [(arc(v, i, j), 1) for j in range(nodes) if j != i]
            balance += [(arc(v, j, i), -1) for j in range(nodes) if j != i]
            add_square(balance, 0)
        load = [
            (arc(v, i, j), inst.demands[i])
            for i in range(1, nodes)
            for j in range(nodes)
            if j != i and inst.demands[i]
        ]
        load += [(vmap.slack_index(v, t), 1) for t in range(cap)]
        add_square(load, -cap)

    if forbid_two_cycles:
        for v in range(k):
            for i in range(1, nodes):
                for j in range(i + 1, nodes):
                    add_quadratic(arc(v, i, j), arc(v, j, i), scale)

    linear = {a: c for a, c in linear.items() if c != 0}
    quadratic = {ab: c for ab, c in quadratic.items() if c != 0}
    return QuboModel(
        num_vars=vmap.num_vars,
        linear=linear,
        quadratic=quadratic,
        offset=offset,
        penalty=scale,
        var_map=vmap,
    )


def _check_assignment(model: QuboModel, assignment: str) -> list[int]:
    if len(assignment) != model.num_vars:
        raise LengthMismatch(
            f"assignment has {len(assignment)} bits, model has {model.num_vars} variables"
        )
    if set(assignment) - {"0", "1"}:
        raise ValueError("assignment must be a string over '0' and '1'")
    return [1 if c == "1" else 0 for c in assignment]


def energy(model: QuboModel, assignment: str) -> Number:
    """Evaluate the model on a bitstring (index 0 is the leftmost bit)."""
    bits = _check_assignment(model, assignment)
    total = model.offset
    for a, coeff in model.linear.items():
        if bits[a]:
            total += coeff
    for (a, b), coeff in model.quadratic.items():
        if bits[a] and bits[b]:
            total += coeff
    return total


def count_terms(model: QuboModel) -> tuple[int, int]:
    """Number of nonzero linear and quadratic coefficients."""
    n_lin = sum(1 for c in model.linear.values() if c != 0)
    n_quad = sum(1 for c in model.quadratic.values() if c != 0)
    return (n_lin, n_quad)


def _dense_arrays(
    model: QuboModel, keep: int
) -> tuple[np.ndarray, np.ndarray]:
    """Linear vector and upper-triangular quadratic matrix over bits 0..keep-1."""
    lin = np.zeros(keep, dtype=np.float64)
    for a, coeff in model.linear.items():
        if a < keep:
            lin[a] = coeff
    quad = np.zeros((keep, keep), dtype=np.float64)
    for (a, b), coeff in model.quadratic.items():
        if a < keep and b < keep:
            quad[a, b] += coeff
    return lin, quad


@dataclass(frozen=True)
class _ReducedRegister:
    start: int
    length: int
    lin: float
    pair: float
    cross: np.ndarray  # per-route-variable coupling, identical for every bit


def _uniform_registers(model: QuboModel) -> list[_ReducedRegister] | None:
    """Check that each slack register couples uniformly, bit for bit.

    The unary registers the builder emits satisfy this by construction; a
    hand-edited model might not, in which case the solver falls back to
    plain enumeration over every bit.
    """
    vmap = model.var_map
    if vmap is None or not vmap.slack_registers:
        return None
    n_route = vmap.num_route_vars
    regs = vmap.slack_registers
    owner = {}
    for r, reg in enumerate(regs):
        for b in range(reg.start, reg.start + reg.length):
            owner[b] = r

    lin_vals: list[list[float]] = [[] for _ in regs]
    for r, reg in enumerate(regs):
        lin_vals[r] = [float(model.linear.get(b, 0)) for b in range(reg.start, reg.start + reg.length)]
    pair_vals: list[dict[tuple[int, int], float]] = [dict() for _ in regs]
    cross_vals: list[dict[int, dict[int, float]]] = [dict() for _ in regs]

    for (a, b), coeff in model.quadratic.items():
        ra, rb = owner.get(a), owner.get(b)
        if ra is None and rb is None:
            continue
        if ra is not None and rb is not None:
            if ra != rb:
                return None  # couples two registers: no reduction
            pair_vals[ra][(a, b)] = float(coeff)
            continue
        reg_id, slack_bit, route = (rb, b, a) if rb is not None else (ra, a, b)
        if route >= n_route:
            return None
        cross_vals[reg_id].setdefault(route, {})[slack_bit] = float(coeff)

    reduced: list[_ReducedRegister] = []
    for r, reg in enumerate(regs):
        vals = lin_vals[r]
        if len(set(vals)) > 1:
            return None
        lin = vals[0] if vals else 0.0
        n_pairs = reg.length * (reg.length - 1) // 2
        pairs = pair_vals[r]
        if pairs and (len(pairs) != n_pairs or len(set(pairs.values())) > 1):
            return None
        pair = next(iter(pairs.values())) if pairs else 0.0
        cross = np.zeros(n_route, dtype=np.float64)
        for route, per_bit in cross_vals[r].items():
            if len(per_bit) != reg.length or len(set(per_bit.values())) > 1:
                return None
            cross[route] = next(iter(per_bit.values()))
        reduced.append(
            _ReducedRegister(reg.start, reg.length, lin, pair, cross)
        )
    return reduced


def _chunks(total: int, chunk_bits: int) -> Iterator[np.ndarray]:
    step = 1 << chunk_bits
    for lo in range(0, total, step):
        yield np.arange(lo, min(lo + step, total), dtype=np.int64)


def _bits_of(indices: np.ndarray, width: int) -> np.ndarray:
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((indices[:, None] >> shifts[None, :]) & 1).astype(np.float64)


def brute_force_solve(
    model: QuboModel,
    max_vars: int = DEFAULT_MAX_VARS,
    chunk_bits: int = _CHUNK_BITS,
) -> tuple[str, Number]:
    """Exact global minimum of the model.

    Enumerates every assignment; ties go to the lexicographically smallest
    bitstring, independent of chunking.  Models whose slack registers couple
    uniformly (everything ``build_qubo`` emits) are minimized analytically
    over the slack bits, so only the route bits are enumerated.  Raises
    ``TooLarge`` beyond ``max_vars`` variables.
    """
    m = model.num_vars
    if m < 1:
        raise ValueError("the model has no variables")
    if m > max_vars:
        raise TooLarge(f"{m} variables exceed the cap of {max_vars}")

    reduced = _uniform_registers(model)
    n_enum = model.var_map.num_route_vars if reduced is not None else m
    lin, quad = _dense_arrays(model, n_enum)

    best_energy = math.inf
    best_index = -1
    for idx in _chunks(1 << n_enum, chunk_bits):
        bits = _bits_of(idx, n_enum)
        energies = float(model.offset) + bits @ lin + ((bits @ quad) * bits).sum(axis=1)
        if reduced is not None:
            for reg in reduced:
                t = np.arange(reg.length + 1, dtype=np.float64)
                base = reg.lin * t + reg.pair * t * (t - 1) / 2.0
                coupling = bits @ reg.cross
                energies += (base[None, :] + coupling[:, None] * t[None, :]).min(axis=1)
        pos = int(np.argmin(energies))
        if energies[pos] < best_energy:
            best_energy = float(energies[pos])
            best_index = int(idx[pos])

    prefix = format(best_index, f"0{n_enum}b") if n_enum else ""
    if reduced is None:
        solution = prefix
    else:
        route_bits = np.array([1.0 if c == "1" else 0.0 for c in prefix])
        tail = []
        for reg in reduced:
            t = np.arange(reg.length + 1, dtype=np.float64)
            base = reg.lin * t + reg.pair * t * (t - 1) / 2.0
            coupling = float(route_bits @ reg.cross) if n_enum else 0.0
            t_best = int(np.argmin(base + coupling * t))
            tail.append("0" * (reg.length - t_best) + "1" * t_best)
        solution = prefix + "".join(tail)

    value = energy(model, solution)
    return solution, value


@dataclass(frozen=True)
class Violation:
    """One way an assignment fails to be a valid set of routes."""

    kind: str
    vehicle: int | None = None
    node: int | None = None
    detail: str = ""


@dataclass
class RouteDecoding:
    """Routes reconstructed from an assignment, plus everything wrong with it."""

    routes: list[list[int]]
    violations: list[Violation]
    total_cost: int

    @property
    def is_valid(self) -> bool:
        return not self.violations


def decode_routes(model: QuboModel, assignment: str, inst: CvrpInstance) -> RouteDecoding:
    """Turn an assignment into one route per vehicle.

    Each route is the walk that starts at the depot and follows set arcs.
    Violations name the broken rule and where it broke: customers left a
    number of times other than once, missing depot departures or returns,
    per-vehicle in/out imbalances, capacity excess, and set arcs forming
    loops that avoid the depot.  The cost sums every set arc, whether or
    not it made it into a walk.
    """
    bits = _check_assignment(model, assignment)
    vmap = model.var_map
    if vmap is None:
        raise ValueError("this model carries no variable map; decode needs one")
    nodes, k = vmap.nodes, vmap.vehicles

    arcs: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for flat in range(vmap.num_route_vars):
        if bits[flat]:
            var = vmap.route_var(flat)
            arcs[var.v].append((var.i, var.j))

    total_cost = 0
    violations: list[Violation] = []
    routes: list[list[int]] = []

    out_deg = [[0] * nodes for _ in range(k)]
    in_deg = [[0] * nodes for _ in range(k)]
    for v in range(k):
        for i, j in arcs[v]:
            out_deg[v][i] += 1
            in_deg[v][j] += 1
            total_cost += edge_weight(inst, i, j)

    for i in range(1, nodes):
        departures = sum(out_deg[v][i] for v in range(k))
        if departures != 1:
            violations.append(
                Violation(VISIT_COUNT, node=i, detail=f"left {departures} times, expected 1")
            )

    for v in range(k):
        if out_deg[v][0] != 1:
            violations.append(
                Violation(DEPOT_DEPARTURE, vehicle=v, detail=f"{out_deg[v][0]} departures")
            )
        if in_deg[v][0] != 1:
            violations.append(
                Violation(DEPOT_RETURN, vehicle=v, detail=f"{in_deg[v][0]} returns")
            )
        for i in range(1, nodes):
            if out_deg[v][i] != in_deg[v][i]:
                violations.append(
                    Violation(
                        FLOW_BALANCE,
                        vehicle=v,
                        node=i,
                        detail=f"in {in_deg[v][i]}, out {out_deg[v][i]}",
                    )
                )
        load = sum(inst.demands[i] * out_deg[v][i] for i in range(1, nodes))
        if load > inst.capacity:
            violations.append(
                Violation(CAPACITY, vehicle=v, detail=f"load {load} over capacity {inst.capacity}")
            )

        successors: dict[int, list[int]] = {}
        for i, j in arcs[v]:
            successors.setdefault(i, []).append(j)
        route = [0]
        used: set[tuple[int, int]] = set()
        here = 0
        while True:
            nexts = successors.get(here, [])
            if len(nexts) != 1:
                break
            step = (here, nexts[0])
            if step in used:
                break
            used.add(step)
            here = nexts[0]
            route.append(here)
            if here == 0:
                break
        routes.append(route)
        # Arcs the walk never reached form a subtour only if they close a
        # cycle that avoids the depot; dangling arcs are artifacts of degree
        # violations reported above.  Peel arcs that cannot lie on a cycle.
        loop_arcs = {(i, j) for i, j in set(arcs[v]) - used if i != 0 and j != 0}
        while loop_arcs:
            tails = {i for i, _ in loop_arcs}
            heads = {j for _, j in loop_arcs}
            peeled = {(i, j) for i, j in loop_arcs if j in tails and i in heads}
            if peeled == loop_arcs:
                break
            loop_arcs = peeled
        if loop_arcs:
            loop_nodes = sorted({i for i, _ in loop_arcs} | {j for _, j in loop_arcs})
            violations.append(
                Violation(
                    SUBTOUR,
                    vehicle=v,
                    detail=f"closed arcs avoiding the depot over nodes {loop_nodes}",
                )
            )

    return RouteDecoding(routes=routes, violations=violations, total_cost=total_cost)


def _format_number(value: Number) -> str:
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return repr(value)


def export_model(model: QuboModel) -> str:
    """Serialize a model to text.

    Header ``QUBO <num_vars> <offset> <penalty>``, then one ``L <index>
    <coeff>`` line per linear term and one ``Q <i> <j> <coeff>`` line per
    quadratic term, in index order.
    """
    lines = [f"QUBO {model.num_vars} {_format_number(model.offset)} {_format_number(model.penalty)}"]
    for a in sorted(model.linear):
        if model.linear[a] != 0:
            lines.append(f"L {a} {_format_number(model.linear[a])}")
    for a, b in sorted(model.quadratic):
        if model.quadratic[(a, b)] != 0:
            lines.append(f"Q {a} {b} {_format_number(model.quadratic[(a, b)])}")
    return "\n".join(lines) + "\n"


def _parse_number(token: str, lineno: int) -> Number:
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        raise ValueError(f"model line {lineno}: {token!r} is not a number") from None


def parse_model(text: str) -> QuboModel:
    """Read a model back from the text format of :func:`export_model`.

    The result has no variable map, so it can be evaluated and solved but
    not decoded into routes.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("QUBO"):
        raise ValueError("model text must start with a 'QUBO' header line")
    head = lines[0].split()
    if len(head) != 4:
        raise ValueError("the header is 'QUBO <num_vars> <offset> <penalty>'")
    num_vars = int(head[1])
    if num_vars < 1:
        raise ValueError("num_vars must be positive")
    offset = _parse_number(head[2], 1)
    penalty = _parse_number(head[3], 1)
    linear: dict[int, Number] = {}
    quadratic: dict[tuple[int, int], Number] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if parts[0] == "L" and len(parts) == 3:
            a = int(parts[1])
            if not 0 <= a < num_vars:
                raise ValueError(f"model line {lineno}: index {a} out of range")
            linear[a] = linear.get(a, 0) + _parse_number(parts[2], lineno)
        elif parts[0] == "Q" and len(parts) == 4:
            a, b = int(parts[1]), int(parts[2])
            if a == b or not (0 <= a < num_vars and 0 <= b < num_vars):
                raise ValueError(f"model line {lineno}: bad index pair ({a}, {b})")
            key = (a, b) if a < b else (b, a)
            quadratic[key] = quadratic.get(key, 0) + _parse_number(parts[3], lineno)
        else:
            raise ValueError(f"model line {lineno}: expected 'L i c' or 'Q i j c'")
    return QuboModel(
        num_vars=num_vars,
        linear=linear,
        quadratic=quadratic,
        offset=offset,
        penalty=penalty,
        var_map=None,
    )
