"""Tower verification: exact oracle checks of every product expression plus
numeric re-evaluation.

The oracle check expands each node's two sides in the pair basis and multiplies
them brute-force; the result must equal the product expression exactly as
integers (expressions are doubled first so half-integer coefficients clear).
"""

from .invariant_sets import InvariantSetTable
from .oracle import PeriodVector, pv_from_pairs, pv_mul, pv_zero
from .splitting import LinearCombo, PartRef, part_pairs
from .tower import Tower, evaluate_tower


class OracleMismatch(RuntimeError):
    """A product expression is not exactly equal to the brute-force product."""

    def __init__(self, node_id, message):
        super().__init__(f"node {node_id}: {message}")
        self.node_id = node_id


def pv_of_part(part: PartRef, table: InvariantSetTable) -> PeriodVector:
    return pv_from_pairs(part_pairs(part, table), table.params)


def combo_as_pv_doubled(combo: LinearCombo, table: InvariantSetTable) -> PeriodVector:
    """2 * combo expanded over the pair basis (all coefficients integral)."""
    acc = pv_zero(table.params)
    const = 2 * combo.constant
    if const.denominator != 1:
        raise ValueError("coefficient denominators exceed 2")
    acc = PeriodVector(acc.n, int(const), acc.coeffs)
    for c, p in combo.linear:
        c2 = 2 * c
        if c2.denominator != 1:
            raise ValueError("coefficient denominators exceed 2")
        acc = acc + pv_of_part(p, table).scaled(int(c2))
    for c, p in combo.squares:
        c2 = 2 * c
        if c2.denominator != 1:
            raise ValueError("coefficient denominators exceed 2")
        pvp = pv_of_part(p, table)
        acc = acc + pv_mul(pvp, pvp).scaled(int(c2))
    return acc


def _normalize_mod_s(v: PeriodVector) -> PeriodVector:
    """Canonical representative modulo the relation S = -1 (i.e. modulo integer
    multiples of the all-ones vector with constant 1)."""
    t = int(v.coeffs[-1])
    if t == 0:
        return v
    coeffs = v.coeffs.copy()
    coeffs[1:] -= t
    return PeriodVector(v.n, v.constant - t, coeffs)


def oracle_check_node(node, table: InvariantSetTable) -> None:
    lhs = pv_mul(pv_of_part(node.left, table), pv_of_part(node.right, table)).scaled(2)
    rhs = combo_as_pv_doubled(node.product_expr, table)
    # Expressions may carry the uniform part of the product folded into the
    # constant via S = -1, so compare representatives modulo that relation.
    if _normalize_mod_s(lhs) != _normalize_mod_s(rhs):
        delta = lhs - rhs
        bad = delta.nonzero_pairs()
        raise OracleMismatch(
            node.id,
            f"product of {node.left.label(table)} and {node.right.label(table)} differs "
            f"from its expression at {len(bad)} pairs (constant delta {delta.constant})",
        )


def oracle_check_tower(tower: Tower, sample=None) -> int:
    """Exact check of all (or a sample of) nodes; returns how many were checked."""
    nodes = tower.nodes if sample is None else [tower.nodes[i] for i in sample]
    for node in nodes:
        oracle_check_node(node, tower.table)
    if tower.report is not None:
        tower.report.oracle_checked = len(nodes)
    return len(nodes)


def verify_tower(tower: Tower, precision: int | None = None, oracle: bool = True) -> list[str]:
    """Full verification pass; returns failure messages (empty means pass).

    Runs the exact oracle on every product expression, then re-resolves signs
    and re-evaluates numerically, cross-checking every node value against its
    direct cosine sum.
    """
    failures: list[str] = []
    if oracle:
        for node in tower.nodes:
            try:
                oracle_check_node(node, tower.table)
            except OracleMismatch as exc:
                failures.append(str(exc))
                break
    if failures:
        return failures
    try:
        evaluate_tower(tower, precision or tower.precision or 128)
        if tower.report is not None and oracle:
            tower.report.oracle_checked = len(tower.nodes)
    except Exception as exc:  # noqa: BLE001 - verification surfaces any failure
        failures.append(str(exc))
    return failures
