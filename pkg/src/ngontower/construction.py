"""Compile an evaluated tower to an arithmetic program and lower that to a
straightedge/compass instruction stream.

Signed lengths are represented as directed segments on the x axis through the
circle center: the value v lives at the point (v, 0).  Square roots use the
semicircle rule (perpendicular height over a diameter split into D and 1);
products and quotients of two general lengths use the intercept construction;
integer scalings up to 64 are lowered as repeated additions (binary doubling
chains of compass transfers).

Every intersection branch is recorded at lowering time from the shadow
numeric evaluation, so geometric execution never re-decides a choice.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .splitting import LinearCombo
from .tower import Tower

_INTERCEPT_THRESHOLD = 64


class NegativeRadicand(RuntimeError):
    """A SQRT operand came out negative during compile-time shadow evaluation."""


class DegenerateIntersection(RuntimeError):
    """Tangency or coincidence beyond tolerance during geometric execution."""


# ---------------------------------------------------------------------------
# Arithmetic IR


@dataclass(frozen=True)
class ArithInstr:
    op: str  # CONST NEG ADD SUB MUL DIV SQRT HALF
    args: tuple[int, ...] = ()
    value: Fraction | None = None  # CONST only


@dataclass
class ArithProgram:
    instrs: list[ArithInstr] = field(default_factory=list)
    outputs: dict[str, int] = field(default_factory=dict)

    def emit(self, op: str, *args: int, value: Fraction | None = None) -> int:
        self.instrs.append(ArithInstr(op=op, args=args, value=value))
        return len(self.instrs) - 1

    def sqrt_count(self) -> int:
        return sum(1 for i in self.instrs if i.op == "SQRT")


def evaluate_arith(prog: ArithProgram, precision: int = 128) -> dict[str, object]:
    """Reference interpreter for the arithmetic IR."""
    with mp.workprec(precision):
        vals: list[object] = []
        for instr in prog.instrs:
            a = [vals[i] for i in instr.args]
            if instr.op == "CONST":
                v = mp.mpf(instr.value.numerator) / instr.value.denominator
            elif instr.op == "NEG":
                v = -a[0]
            elif instr.op == "ADD":
                v = a[0] + a[1]
            elif instr.op == "SUB":
                v = a[0] - a[1]
            elif instr.op == "MUL":
                v = a[0] * a[1]
            elif instr.op == "DIV":
                v = a[0] / a[1]
            elif instr.op == "HALF":
                v = a[0] / 2
            elif instr.op == "SQRT":
                if a[0] < 0:
                    raise NegativeRadicand(f"sqrt of {mp.nstr(a[0])}")
                v = mp.sqrt(a[0])
            else:
                raise ValueError(f"unknown op {instr.op}")
            vals.append(v)
        return {name: vals[idx] for name, idx in prog.outputs.items()}


class _ArithBuilder:
    """Emits instructions while shadow-evaluating them, so radicand checks and
    the later branch recording use actual high-precision values."""

    def __init__(self, precision: int):
        self.prog = ArithProgram()
        self.precision = precision
        self.shadow: list[object] = []
        self._const_cache: dict[Fraction, int] = {}

    def _push(self, op, *args, value=None):
        idx = self.prog.emit(op, *args, value=value)
        a = [self.shadow[i] for i in args]
        with mp.workprec(self.precision):
            if op == "CONST":
                v = mp.mpf(value.numerator) / value.denominator
            elif op == "NEG":
                v = -a[0]
            elif op == "ADD":
                v = a[0] + a[1]
            elif op == "SUB":
                v = a[0] - a[1]
            elif op == "MUL":
                v = a[0] * a[1]
            elif op == "DIV":
                v = a[0] / a[1]
            elif op == "HALF":
                v = a[0] / 2
            else:  # SQRT
                if a[0] < 0:
                    raise NegativeRadicand(f"sqrt of {mp.nstr(a[0])}")
                v = mp.sqrt(a[0])
        self.shadow.append(v)
        return idx

    def const(self, value) -> int:
        value = Fraction(value)
        if value not in self._const_cache:
            self._const_cache[value] = self._push("CONST", value=value)
        return self._const_cache[value]

    def combo(self, expr: LinearCombo, refs: dict) -> int:
        acc = self.const(expr.constant)
        for coeff, part in list(expr.linear) + [(c, ("sq", p)) for c, p in expr.squares]:
            if isinstance(part, tuple):
                base = refs[part[1]]
                term = self._push("MUL", base, base)
            else:
                term = refs[part]
            acc = self._add_scaled(acc, coeff, term)
        return acc

    def _add_scaled(self, acc: int, coeff: Fraction, term: int) -> int:
        neg = coeff < 0
        c = -coeff if neg else coeff
        if c.denominator == 2:
            term = self._push("HALF", term)
            c = Fraction(c.numerator)
        if c != 1:
            term = self._push("MUL", self.const(c), term)
        return self._push("SUB" if neg else "ADD", acc, term)


def compile_to_arith(tower: Tower, precision: int | None = None) -> ArithProgram:
    """One SQRT per tower node plus one for sin(theta); constants come from the
    product expressions.  The tower must be evaluated (signs resolved)."""
    precision = precision or tower.precision or 128
    b = _ArithBuilder(precision)
    refs: dict = {}
    if tower.nodes:
        from .tower import _root_part

        root = _root_part(tower.params)
        refs[root] = b.const(-1)
        for node in tower.nodes:
            if node.left_is_larger is None:
                raise ValueError("tower signs must be resolved before compiling")
            sum_idx = refs[node.splits]
            prod_idx = b.combo(node.product_expr, refs)
            half = b._push("HALF", sum_idx)
            disc = b._push("SUB", b._push("MUL", half, half), prod_idx)
            root_idx = b._push("SQRT", disc)
            bigger = b._push("ADD", half, root_idx)
            smaller = b._push("SUB", sum_idx, bigger)
            if node.left_is_larger:
                refs[node.left], refs[node.right] = bigger, smaller
            else:
                refs[node.left], refs[node.right] = smaller, bigger
        p1 = refs[tower.p1_part()]
    else:
        p1 = b.const(-1)  # n = 3: the single pair is S itself
    cos_idx = b._push("HALF", p1)
    sin_sq = b._push("SUB", b.const(1), b._push("MUL", cos_idx, cos_idx))
    sin_idx = b._push("SQRT", sin_sq)
    b.prog.outputs = {"p1": p1, "cos": cos_idx, "sin": sin_idx}
    b.prog.shadow = b.shadow  # kept for the lowering's branch recording
    return b.prog


# ---------------------------------------------------------------------------
# Geometric programs


@dataclass(frozen=True)
class GeomInstr:
    op: str
    args: tuple = ()
    branch: int | None = None
    count: int | None = None
    name: str | None = None


@dataclass
class GeomProgram:
    """Instruction stream over points/lines/circles.  Each instruction yields
    one object id, except GIVEN_UNIT which yields four: the circle center, the
    unit point (1,0), the axis through them, and the unit circle."""

    instrs: list[GeomInstr] = field(default_factory=list)
    outputs: dict[str, int] = field(default_factory=dict)
    next_obj: int = 0

    def emit(self, op, *args, branch=None, count=None, name=None) -> int:
        self.instrs.append(GeomInstr(op=op, args=tuple(args), branch=branch, count=count, name=name))
        first = self.next_obj
        self.next_obj += 4 if op == "GIVEN_UNIT" else 1
        return first


def _line_point_dir(p1, p2):
    return p1, (p2[0] - p1[0], p2[1] - p1[1])


def _intersect_ll(l1, l2):
    (x1, y1), (dx1, dy1) = _line_point_dir(*l1)
    (x2, y2), (dx2, dy2) = _line_point_dir(*l2)
    det = dx1 * dy2 - dy1 * dx2
    if det == 0:
        raise DegenerateIntersection("parallel lines")
    t = ((x2 - x1) * dy2 - (y2 - y1) * dx2) / det
    return (x1 + t * dx1, y1 + t * dy1)


def _intersect_lc(line, circle, branch, tol):
    (px, py), (dx, dy) = _line_point_dir(*line)
    (cx, cy), r2 = circle
    fx, fy = px - cx, py - cy
    a = dx * dx + dy * dy
    b = 2 * (fx * dx + fy * dy)
    c = fx * fx + fy * fy - r2
    disc = b * b - 4 * a * c
    if disc <= tol * a:
        raise DegenerateIntersection("line misses or is tangent to circle")
    s = mp.sqrt(disc)
    ts = sorted([(-b - s) / (2 * a), (-b + s) / (2 * a)])
    t = ts[branch]
    return (px + t * dx, py + t * dy)


def _intersect_cc(c1, c2, branch, tol):
    (x1, y1), r1sq = c1
    (x2, y2), r2sq = c2
    dx, dy = x2 - x1, y2 - y1
    d2 = dx * dx + dy * dy
    if d2 <= tol:
        raise DegenerateIntersection("concentric circles")
    # Radical line: points at distance a along (dx,dy), offset h perpendicular.
    a = (d2 + r1sq - r2sq) / 2
    h2 = r1sq - a * a / d2
    if h2 <= tol:
        raise DegenerateIntersection("circles miss or are tangent")
    h = mp.sqrt(h2 / d2)
    mx, my = x1 + a * dx / d2, y1 + a * dy / d2
    pts = [(mx - h * dy, my + h * dx), (mx + h * dy, my - h * dx)]
    return pts[branch]


def execute_geom(prog: GeomProgram, precision: int = 128) -> dict:
    """Analytic interpreter; returns named outputs (axis points give their
    x coordinate) plus the vertex list from any chord stepping."""
    with mp.workprec(precision):
        tol = mp.mpf(2) ** (-precision + 8)
        objs: list = []
        vertices: list = []
        outputs: dict = {}
        for instr in prog.instrs:
            a = [objs[i] for i in instr.args]
            op = instr.op
            if op == "GIVEN_UNIT":
                objs.append((mp.mpf(0), mp.mpf(0)))  # center
                objs.append((mp.mpf(1), mp.mpf(0)))  # unit point
                objs.append(((mp.mpf(0), mp.mpf(0)), (mp.mpf(1), mp.mpf(0))))  # axis
                objs.append((((mp.mpf(0), mp.mpf(0))), mp.mpf(1)))  # unit circle
                continue
            if op == "LINE":
                v = (a[0], a[1])
            elif op == "CIRCLE":
                cx, cy = a[0]
                px, py = a[1]
                v = (a[0], (px - cx) ** 2 + (py - cy) ** 2)
            elif op == "MIDPOINT":
                v = ((a[0][0] + a[1][0]) / 2, (a[0][1] + a[1][1]) / 2)
            elif op == "PERPENDICULAR_AT":
                (_, d) = _line_point_dir(*a[0])
                p = a[1]
                v = (p, (p[0] - d[1], p[1] + d[0]))
            elif op == "TRANSFER_LENGTH":
                base, frm, to = a
                v = (base[0] + to[0] - frm[0], base[1] + to[1] - frm[1])
            elif op == "INTERSECT_LL":
                v = _intersect_ll(a[0], a[1])
            elif op == "INTERSECT_LC":
                v = _intersect_lc(a[0], a[1], instr.branch, tol)
            elif op == "INTERSECT_CC":
                v = _intersect_cc(a[0], a[1], instr.branch, tol)
            elif op == "POINT_ON_AXIS":
                v = a[0]
                outputs[instr.name] = v[0]
            elif op == "STEP_CHORD":
                start, chord_a, chord_b, circle = a
                chord_sq = (chord_a[0] - chord_b[0]) ** 2 + (chord_a[1] - chord_b[1]) ** 2
                prev, cur = None, start
                vertices = [start]
                for _ in range(instr.count - 1):
                    cand = [
                        _intersect_cc(circle, (cur, chord_sq), br, tol) for br in (0, 1)
                    ]
                    if prev is None:
                        # First step: walk counterclockwise (positive cross product).
                        nxt = max(cand, key=lambda p: cur[0] * p[1] - cur[1] * p[0])
                    else:
                        nxt = max(
                            cand,
                            key=lambda p: (p[0] - prev[0]) ** 2 + (p[1] - prev[1]) ** 2,
                        )
                    vertices.append(nxt)
                    prev, cur = cur, nxt
                v = tuple(vertices)
            else:
                raise ValueError(f"unknown geometric op {op}")
            objs.append(v)
        outputs["vertices"] = vertices
        return outputs


# ---------------------------------------------------------------------------
# Lowering


class _GeomBuilder:
    O = 0  # noqa: E741 - circle center
    X = 1  # unit point (1, 0)
    AXIS = 2
    CIRCLE = 3

    def __init__(self, shadow_values, precision):
        self.prog = GeomProgram()
        self.prog.emit("GIVEN_UNIT")
        self.shadow = shadow_values
        self.precision = precision
        self._int_cache: dict[int, int] = {1: self.X}
        self._yaxis = None

    def yaxis(self) -> int:
        if self._yaxis is None:
            self._yaxis = self.prog.emit("PERPENDICULAR_AT", self.AXIS, self.O)
        return self._yaxis

    def neg(self, p: int) -> int:
        return self.prog.emit("TRANSFER_LENGTH", self.O, p, self.O)

    def add(self, p: int, q: int) -> int:
        return self.prog.emit("TRANSFER_LENGTH", p, self.O, q)

    def sub(self, p: int, q: int) -> int:
        return self.prog.emit("TRANSFER_LENGTH", p, q, self.O)

    def half(self, p: int) -> int:
        return self.prog.emit("MIDPOINT", self.O, p)

    def int_const(self, k: int) -> int:
        if k in self._int_cache:
            return self._int_cache[k]
        if k == 0:
            idx = self.O
        elif k < 0:
            idx = self.neg(self.int_const(-k))
        else:
            idx = self.int_const(k // 2)
            idx = self.add(idx, idx)
            if k % 2:
                idx = self.add(idx, self.X)
        self._int_cache[k] = idx
        return idx

    def scale_int(self, p: int, k: int, pv) -> int:
        """k*p by repeated addition for small k, intercept otherwise."""
        if k == 0:
            return self.O
        if k < 0:
            return self.neg(self.scale_int(p, -k, pv))
        if k == 1:
            return p
        if k > _INTERCEPT_THRESHOLD:
            return self.mul(self.int_const(k), p, mp.mpf(k), pv)
        acc = self.scale_int(p, k // 2, pv)
        acc = self.add(acc, acc)
        return self.add(acc, p) if k % 2 else acc

    def _lift_to_yaxis(self, p: int, value) -> int:
        circ = self.prog.emit("CIRCLE", self.O, p)
        branch = 1 if value > 0 else 0
        return self.prog.emit("INTERSECT_LC", self.yaxis(), circ, branch=branch)

    def _drop_to_axis(self, p: int, value) -> int:
        circ = self.prog.emit("CIRCLE", self.O, p)
        branch = 1 if value > 0 else 0
        return self.prog.emit("INTERSECT_LC", self.AXIS, circ, branch=branch)

    def _parallel_through(self, line: int, p: int) -> int:
        perp = self.prog.emit("PERPENDICULAR_AT", line, p)
        return self.prog.emit("PERPENDICULAR_AT", perp, p)

    def mul(self, p: int, q: int, pv, qv) -> int:
        """Intercept: line (1,0)-(0,qv); its parallel through (pv,0) meets the
        y axis at (0, pv*qv)."""
        if pv == 0 or qv == 0:
            return self.O
        yq = self._lift_to_yaxis(q, qv)
        base = self.prog.emit("LINE", self.X, yq)
        par = self._parallel_through(base, p)
        prod_y = self.prog.emit("INTERSECT_LL", par, self.yaxis())
        return self._drop_to_axis(prod_y, pv * qv)

    def div(self, p: int, q: int, pv, qv) -> int:
        """Intercept: line (0,qv)-(pv,0); its parallel through (0,1) meets the
        axis at (pv/qv, 0)."""
        if pv == 0:
            return self.O
        yq = self._lift_to_yaxis(q, qv)
        y1 = self._lift_to_yaxis(self.X, mp.mpf(1))
        base = self.prog.emit("LINE", yq, p)
        par = self._parallel_through(base, y1)
        return self.prog.emit("INTERSECT_LL", par, self.AXIS)

    def sqrt(self, p: int, value) -> int:
        """Semicircle over the diameter from (-1,0) to (value,0); the
        perpendicular height at the origin is sqrt(value)."""
        minus_one = self.int_const(-1)
        mid = self.prog.emit("MIDPOINT", minus_one, p)
        circ = self.prog.emit("CIRCLE", mid, p)
        height = self.prog.emit("INTERSECT_LC", self.yaxis(), circ, branch=1)
        return self._drop_to_axis(height, mp.sqrt(value))


def attach_shadow(prog: ArithProgram, precision: int = 128) -> ArithProgram:
    """Compute and attach per-instruction values (for programs not built by
    compile_to_arith, e.g. in tests)."""
    with mp.workprec(precision):
        vals: list = []
        for instr in prog.instrs:
            a = [vals[i] for i in instr.args]
            if instr.op == "CONST":
                vals.append(mp.mpf(instr.value.numerator) / instr.value.denominator)
            elif instr.op == "NEG":
                vals.append(-a[0])
            elif instr.op == "ADD":
                vals.append(a[0] + a[1])
            elif instr.op == "SUB":
                vals.append(a[0] - a[1])
            elif instr.op == "MUL":
                vals.append(a[0] * a[1])
            elif instr.op == "DIV":
                vals.append(a[0] / a[1])
            elif instr.op == "HALF":
                vals.append(a[0] / 2)
            elif instr.op == "SQRT":
                if a[0] < 0:
                    raise NegativeRadicand(f"sqrt of {mp.nstr(a[0])}")
                vals.append(mp.sqrt(a[0]))
    prog.shadow = vals
    return prog


def lower_to_geom(prog: ArithProgram, precision: int | None = None) -> GeomProgram:
    """Semantically equivalent straightedge/compass program; axis points carry
    the arithmetic values."""
    shadow = getattr(prog, "shadow", None)
    if shadow is None:
        raise ValueError("lowering needs shadow values; call attach_shadow first")
    precision = precision or 128
    b = _GeomBuilder(shadow, precision)
    loc: list[int] = []
    with mp.workprec(precision):
        for idx, instr in enumerate(prog.instrs):
            val = shadow[idx]
            args = instr.args
            if instr.op == "CONST":
                num, den = instr.value.numerator, instr.value.denominator
                p = b.int_const(num)
                pv = mp.mpf(num)
                while den % 2 == 0 and den > 1:
                    p = b.half(p)
                    pv /= 2
                    den //= 2
                if den > 1:
                    p = b.div(p, b.int_const(den), pv, mp.mpf(den))
                loc.append(p)
            elif instr.op == "NEG":
                loc.append(b.neg(loc[args[0]]))
            elif instr.op == "ADD":
                loc.append(b.add(loc[args[0]], loc[args[1]]))
            elif instr.op == "SUB":
                loc.append(b.sub(loc[args[0]], loc[args[1]]))
            elif instr.op == "HALF":
                loc.append(b.half(loc[args[0]]))
            elif instr.op == "MUL":
                ka = prog.instrs[args[0]]
                if ka.op == "CONST" and ka.value.denominator == 1 and abs(ka.value) <= _INTERCEPT_THRESHOLD:
                    loc.append(b.scale_int(loc[args[1]], int(ka.value), shadow[args[1]]))
                else:
                    loc.append(b.mul(loc[args[0]], loc[args[1]], shadow[args[0]], shadow[args[1]]))
            elif instr.op == "DIV":
                loc.append(b.div(loc[args[0]], loc[args[1]], shadow[args[0]], shadow[args[1]]))
            elif instr.op == "SQRT":
                loc.append(b.sqrt(loc[args[0]], shadow[args[0]]))
            else:
                raise ValueError(f"unknown op {instr.op}")
        for name, idx in prog.outputs.items():
            b.prog.emit("POINT_ON_AXIS", loc[idx], name=name)
        b.prog.outputs = dict(prog.outputs)
    return b.prog


def append_polygon_steps(geom: GeomProgram, arith: ArithProgram, count: int) -> None:
    """Construct the first vertex from the cos output and step the chord
    `count` times around the unit circle."""
    cos_point = None
    for i, instr in enumerate(geom.instrs):
        if instr.op == "POINT_ON_AXIS" and instr.name == "cos":
            cos_point = instr.args[0]
    if cos_point is None:
        raise ValueError("program has no cos output")
    perp = geom.emit("PERPENDICULAR_AT", _GeomBuilder.AXIS, cos_point)
    v1 = geom.emit("INTERSECT_LC", perp, _GeomBuilder.CIRCLE, branch=1)
    geom.emit(
        "STEP_CHORD", _GeomBuilder.X, _GeomBuilder.X, v1, _GeomBuilder.CIRCLE, count=count
    )


# ---------------------------------------------------------------------------
# Program persistence (same JSON-lines container as tower documents)


def dump_arith(prog: ArithProgram, path: str) -> None:
    import json

    with open(path, "w") as fh:
        fh.write(json.dumps({"format": "ngontower-arith", "version": 1, "outputs": prog.outputs}) + "\n")
        for instr in prog.instrs:
            d = {"op": instr.op, "args": list(instr.args)}
            if instr.value is not None:
                d["value"] = [instr.value.numerator, instr.value.denominator]
            fh.write(json.dumps(d) + "\n")


def load_arith(path: str) -> ArithProgram:
    import json

    prog = ArithProgram()
    with open(path) as fh:
        header = json.loads(fh.readline())
        if header.get("format") != "ngontower-arith":
            raise ValueError(f"{path} is not an arithmetic program")
        prog.outputs = {k: int(v) for k, v in header["outputs"].items()}
        for line in fh:
            d = json.loads(line)
            value = Fraction(*d["value"]) if "value" in d else None
            prog.emit(d["op"], *d["args"], value=value)
    return prog


def dump_geom(prog: GeomProgram, path: str) -> None:
    import json

    with open(path, "w") as fh:
        fh.write(json.dumps({"format": "ngontower-geom", "version": 1, "outputs": prog.outputs}) + "\n")
        for instr in prog.instrs:
            d = {"op": instr.op, "args": list(instr.args)}
            if instr.branch is not None:
                d["branch"] = instr.branch
            if instr.count is not None:
                d["count"] = instr.count
            if instr.name is not None:
                d["name"] = instr.name
            fh.write(json.dumps(d) + "\n")


def load_geom(path: str) -> GeomProgram:
    import json

    prog = GeomProgram()
    with open(path) as fh:
        header = json.loads(fh.readline())
        if header.get("format") != "ngontower-geom":
            raise ValueError(f"{path} is not a geometric program")
        for line in fh:
            d = json.loads(line)
            prog.emit(
                d["op"],
                *d["args"],
                branch=d.get("branch"),
                count=d.get("count"),
                name=d.get("name"),
            )
        prog.outputs = {k: int(v) for k, v in header["outputs"].items()}
    return prog


# ---------------------------------------------------------------------------
# SVG output


def polygon_vertices(tower: Tower, count: int) -> list[tuple[float, float]]:
    """First `count` vertices of the n-gon from the evaluated tower value."""
    with mp.workprec(tower.precision or 128):
        cos_t = tower.report.p1 / 2
        sin_t = mp.sqrt(1 - cos_t * cos_t)
        rot = mp.mpc(cos_t, sin_t)
        z = mp.mpc(1, 0)
        out = []
        for _ in range(count):
            out.append((float(z.real), float(z.imag)))
            z *= rot
    return out


def emit_svg(tower: Tower, max_vertices: int = 0, viewport: int = 800, zoom: float | None = None) -> str:
    """Deterministic SVG 1.1 document: the full polygon for small n, a zoomed
    arc sector showing the first max_vertices vertices for huge n."""
    n = tower.params.n
    count = n if not max_vertices else min(n, max_vertices)
    full = count == n
    verts = polygon_vertices(tower, count)
    half = viewport / 2

    def fmt(x: float) -> str:
        return f"{x:.6f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{viewport}" '
        f'height="{viewport}" viewBox="0 0 {viewport} {viewport}">',
        f'<!-- regular {n}-gon; {count} vertices drawn -->',
    ]
    if full:
        scale = half * 0.9
        cx = cy = half

        def txy(p):
            return f"{fmt(cx + scale * p[0])},{fmt(cy - scale * p[1])}"

        lines.append(
            f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(scale)}" fill="none" '
            'stroke="#bbbbbb" stroke-width="1"/>'
        )
        pts = " ".join(txy(p) for p in verts)
        lines.append(
            f'<polygon points="{pts}" fill="none" stroke="#003366" stroke-width="1"/>'
        )
        lines.append(
            f'<circle cx="{fmt(cx + scale)}" cy="{fmt(cy)}" r="3" fill="#cc0000"/>'
        )
    else:
        # Zoom onto the arc covered by the drawn vertices, around (1, 0).
        span = max(2 * mp.pi * count / n, mp.mpf(1e-6))
        zoom_f = zoom if zoom else float(0.6 / span)
        scale = half * 0.9 * zoom_f
        cx, cy = half - scale + half * 0.45, half

        def txy(p):
            return f"{fmt(cx + scale * p[0])},{fmt(cy - scale * p[1])}"

        lines.append(
            f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(scale)}" fill="none" '
            'stroke="#bbbbbb" stroke-width="1"/>'
        )
        pts = " ".join(txy(p) for p in verts)
        lines.append(
            f'<polyline points="{pts}" fill="none" stroke="#003366" stroke-width="1"/>'
        )
        for p in verts:
            lines.append(f'<circle cx="{txy(p).split(",")[0]}" cy="{txy(p).split(",")[1]}" r="2" fill="#cc0000"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
