"""Round-trip corpus: enumerate drawings, extract their graphs, recognize them again."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .drawing import GridDrawing, Model, canonicalize, extract_graph, validate
from .general import recognize
from .oracle import box_drawings
from .outcome import Constraints, satisfies


@dataclass
class BoxReport:
    model: str
    width: int
    height: int
    drawings: int = 0
    auto_ok: int = 0
    fpt_ok: int = 0
    dims_ok: int = 0
    constraints_ok: int = 0
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        full = self.drawings
        fpt = full if self.model == Model.USF.value else self.fpt_ok
        return self.auto_ok == full and fpt == full and self.dims_ok == full and self.constraints_ok == full


def constraint_sets(d: GridDrawing) -> list[tuple[str, Constraints]]:
    """The extracted rotation, cycle and corners, one at a time and all together."""
    ext = extract_graph(d)
    return [
        ("rotation", Constraints(rotation=ext.rotation)),
        ("cycle", Constraints(external_cycle=ext.external_cycle)),
        ("corners", Constraints(corners=ext.corners)),
        ("all", Constraints(ext.external_cycle, ext.rotation, ext.corners)),
    ]


def check_drawing(d: GridDrawing, with_fpt: bool = True) -> dict[str, bool | str]:
    """Round-trip checks on one enumerated drawing."""
    g = extract_graph(d).graph
    out: dict[str, bool | str] = {}
    res = recognize(g, d.model, "auto")
    out["auto"] = res.accepted and validate(res.drawing).valid and res.drawing.model is d.model
    out["dims"] = res.accepted and canonicalize(res.drawing).dimensions == canonicalize(d).dimensions
    if with_fpt and d.model is Model.RF:
        f = recognize(g, Model.RF, "fpt")
        out["fpt"] = f.accepted and validate(f.drawing).valid
    kept = True
    for name, cons in constraint_sets(d):
        r = recognize(g, d.model, "auto", cons)
        if not (r.accepted and validate(r.drawing).valid and satisfies(r.drawing, cons)):
            kept = False
            out["constraint_failure"] = name
            break
    out["constraints"] = kept
    return out


def run_box(model: str, w: int, h: int) -> BoxReport:
    m = Model.parse(model)
    rep = BoxReport(m.value, w, h)
    t0 = time.perf_counter()
    for i, d in enumerate(box_drawings(w, h, m)):
        rep.drawings += 1
        res = check_drawing(d)
        rep.auto_ok += bool(res["auto"])
        rep.fpt_ok += bool(res.get("fpt", False))
        rep.dims_ok += bool(res["dims"])
        rep.constraints_ok += bool(res["constraints"])
        if not all(v for k, v in res.items() if k != "constraint_failure"):
            rep.failures.append(f"{m.value} {w}x{h} #{i}: {res}")
    rep.seconds = time.perf_counter() - t0
    return rep


def run_corpus(max_width: int = 3, max_height: int = 3, models=(Model.USF, Model.RF), jobs: int = 1) -> list[BoxReport]:
    """One report per model and box ``w >= h`` inside the budget."""
    tasks = [
        (Model.parse(m).value, w, h)
        for m in models
        for w in range(1, max(max_width, max_height) + 1)
        for h in range(1, w + 1)
        if w <= max(max_width, max_height) and h <= min(max_width, max_height)
    ]
    if jobs <= 1:
        return [run_box(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_box, *zip(*tasks)))


def format_table(reports: list[BoxReport]) -> str:
    head = f"{'model':<5} {'box':>5} {'drawings':>8} {'auto':>6} {'fpt':>6} {'dims':>6} {'constr':>6} {'secs':>7}"
    rows = [head, "-" * len(head)]
    for r in reports:
        fpt = "-" if r.model == Model.USF.value else str(r.fpt_ok)
        rows.append(
            f"{r.model:<5} {f'{r.width}x{r.height}':>5} {r.drawings:>8} {r.auto_ok:>6} {fpt:>6} {r.dims_ok:>6} {r.constraints_ok:>6} {r.seconds:>7.2f}"
        )
    return "\n".join(rows)
