"""Tower persistence: one JSON object per line, bit-exact value round trips.

See docs/tower-format.md for the format description.
"""

import json
from fractions import Fraction

import mpmath as mp

from .invariant_sets import build_invariant_sets
from .residues import FermatParams
from .splitting import LinearCombo, PartRef
from .tower import QuadraticNode, Tower, VerificationReport, _per_step

FORMAT_NAME = "ngontower-tower"
FORMAT_VERSION = 1


def _part_to_json(p: PartRef):
    d = {"kind": p.kind, "offset": p.offset, "stride": p.stride}
    if p.kind == "G":
        d["set"] = p.set_index
    return d


def _part_from_json(d) -> PartRef:
    return PartRef(
        kind=d["kind"], offset=d["offset"], stride=d["stride"], set_index=d.get("set", 0)
    )


def _frac_to_json(c: Fraction):
    return [c.numerator, c.denominator]


def _combo_to_json(combo: LinearCombo):
    return {
        "constant": _frac_to_json(combo.constant),
        "linear": [[*_frac_to_json(c), _part_to_json(p)] for c, p in combo.linear],
        "squares": [[*_frac_to_json(c), _part_to_json(p)] for c, p in combo.squares],
    }


def _combo_from_json(d) -> LinearCombo:
    return LinearCombo(
        constant=Fraction(*d["constant"]),
        linear=tuple((Fraction(num, den), _part_from_json(p)) for num, den, p in d["linear"]),
        squares=tuple((Fraction(num, den), _part_from_json(p)) for num, den, p in d["squares"]),
    )


def _value_to_json(x):
    if x is None:
        return None
    sign, man, exp, bc = x._mpf_
    return {"dec": mp.nstr(x, 30), "mpf": [sign, hex(man), exp, bc]}


def _value_from_json(d):
    if d is None:
        return None
    sign, man_hex, exp, bc = d["mpf"]
    return mp.mp.make_mpf((sign, int(man_hex, 16), exp, bc))


def dump_tower(tower: Tower, path: str) -> None:
    header = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "n": tower.params.n,
        "schedule": tower.kind,
        "precision": tower.precision,
        "factor": tower.table.factor,
    }
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        for node in tower.nodes:
            fh.write(
                json.dumps(
                    {
                        "id": node.id,
                        "step": node.step,
                        "splits": _part_to_json(node.splits),
                        "left": _part_to_json(node.left),
                        "right": _part_to_json(node.right),
                        "sum_source": node.sum_source,
                        "product": _combo_to_json(node.product_expr),
                        "left_is_larger": node.left_is_larger,
                        "sign_margin": _value_to_json(node.sign_margin),
                        "value_left": _value_to_json(node.value_left),
                        "value_right": _value_to_json(node.value_right),
                    }
                )
                + "\n"
            )


def load_tower(path: str) -> Tower:
    with open(path) as fh:
        header = json.loads(fh.readline())
        if header.get("format") != FORMAT_NAME:
            raise ValueError(f"{path} is not a tower document")
        if header.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported tower format version {header.get('version')}")
        params = FermatParams.from_n(header["n"], assume_prime=True)
        table = build_invariant_sets(params, factor=header["factor"])
        nodes = []
        for line in fh:
            d = json.loads(line)
            nodes.append(
                QuadraticNode(
                    id=d["id"],
                    step=d["step"],
                    splits=_part_from_json(d["splits"]),
                    left=_part_from_json(d["left"]),
                    right=_part_from_json(d["right"]),
                    sum_source=d["sum_source"],
                    product_expr=_combo_from_json(d["product"]),
                    left_is_larger=d["left_is_larger"],
                    sign_margin=_value_from_json(d["sign_margin"]),
                    value_left=_value_from_json(d["value_left"]),
                    value_right=_value_from_json(d["value_right"]),
                )
            )
    tower = Tower(
        params=params,
        table=table,
        kind=header["schedule"],
        nodes=nodes,
        precision=header["precision"],
    )
    tower.finalize_indexes()
    if nodes and nodes[-1].value_left is not None:
        tower.report = VerificationReport(
            node_count=len(nodes), per_step=_per_step(nodes)
        )
    return tower
