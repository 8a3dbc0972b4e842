"""
Text and CSV rendering of report documents

Text tables are built from ``model_dump(mode="json")`` so they show exactly the
values of the structured report.
"""

import csv
import io
from typing import Any, Iterable, List, Sequence

from pydantic import BaseModel, TypeAdapter

from src.models.report import (
    EquilibriumReport,
    IdentityCheckReport,
    MatrixReport,
    OracleVerdict,
    SweepRow,
)


def _num(value: Any, digits: int = 6) -> str:
    if value is None:
        return "none"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(value)


def _profile(profile: Sequence[float]) -> str:
    return "(" + ", ".join(_num(x) for x in profile) + ")"


def _table(header: List[str], rows: Iterable[List[str]]) -> str:
    rows = [header] + [list(row) for row in rows]
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines)


def render_equilibrium(report: EquilibriumReport) -> str:
    data = report.model_dump(mode="json")
    if data["threshold"] is None and data["bracket"] is not None:
        threshold = "none: e_high > v/2"
    else:
        threshold = _num(data["threshold"])
    bracket = data["bracket"]
    if bracket is not None:
        bracket_text = f"[{_num(bracket['e_low'])}, {_num(bracket['e_high'])}]"
    else:
        bracket_text = f"one-sided ({data['one_sided']['side']}), nearest {_num(data['one_sided']['nearest'])}"
    dominant = data["dominant_strategy_2x2"]
    if dominant is None:
        dominant_text = "n/a"
    else:
        dominant_text = _num(dominant["effort"]) + (" (weak)" if dominant["weak"] else "")

    rows = [
        ["valuation", _num(data["valuation"])],
        ["e_c*", _num(data["e_star"], 12)],
        ["bracket", bracket_text],
        ["threshold", threshold],
        ["case", data["case"]],
        ["equilibria", ", ".join(_profile(p) for p in data["equilibria"])],
        ["rent dissipation", _num(data["rent_dissipation"])],
        ["dominant 2x2 strategy", dominant_text],
        ["margin", _num(data["margin"])],
    ]
    text = _table(["field", "value"], rows)
    if data["diagnostics"]:
        text += "\n\n" + "\n".join(f"note: {line}" for line in data["diagnostics"])
    return text


def _payoff_table(efforts_1: List[float], efforts_2: List[float], payoff_1: List[List[float]],
                  payoff_2: List[List[float]]) -> str:
    header = ["p1 \\ p2"] + [_num(e) for e in efforts_2]
    rows = [
        [_num(e)] + [f"{_num(payoff_1[i][j], 4)}, {_num(payoff_2[i][j], 4)}" for j in range(len(efforts_2))]
        for i, e in enumerate(efforts_1)
    ]
    return _table(header, rows)


def render_matrix(report: MatrixReport) -> str:
    data = report.model_dump(mode="json")
    bimatrix, nash = data["bimatrix"], data["nash"]
    parts = [
        "payoffs (player 1, player 2); rows are player 1's effort",
        _payoff_table(bimatrix["efforts_1"], bimatrix["efforts_2"], bimatrix["payoff_1"], bimatrix["payoff_2"]),
        "",
    ]
    if nash["exists_pure"]:
        cells = ", ".join(_profile((c["effort_1"], c["effort_2"])) for c in nash["pure_equilibria"])
        parts.append(f"pure equilibria: {cells}")
    else:
        parts.append("no pure-strategy Nash equilibrium")
        if nash["br_cycle"]:
            cycle = " -> ".join(_profile((c["effort_1"], c["effort_2"])) for c in nash["br_cycle"])
            parts.append(f"best-response cycle: {cycle}")
    for relation in nash["dominance"]:
        kind = "strictly" if relation["strict"] else "weakly"
        parts.append(
            f"player {relation['player']}: {_num(relation['dominating'])} {kind} dominates {_num(relation['dominated'])}"
        )
    if not nash["mixed_searched"]:
        parts.append("mixed search skipped: effort lists too long")
    for mixed in nash["mixed_2support"]:
        if len(mixed["support_1"]) == 1 and len(mixed["support_2"]) == 1:
            continue
        p1 = ", ".join(f"{_num(e)}@{_num(q, 4)}" for e, q in zip(mixed["support_1"], mixed["probabilities_1"]))
        p2 = ", ".join(f"{_num(e)}@{_num(q, 4)}" for e, q in zip(mixed["support_2"], mixed["probabilities_2"]))
        parts.append(f"mixed: player 1 [{p1}] player 2 [{p2}]" + (" (continuum)" if mixed["degenerate"] else ""))
    unconstrained = data["unconstrained"]
    parts.append(
        f"unconstrained equilibrium: ({_num(unconstrained['e_1'], 10)}, {_num(unconstrained['e_2'], 10)})"
        f" by {unconstrained['method']}"
    )
    for pair in data["bracket_witnesses"]:
        for witness in pair:
            where = "inside" if witness["within_bracket"] else "outside"
            parts.append(
                f"player {witness['player']}: equilibrium effort {_num(witness['equilibrium_effort'])} is {where} "
                f"the bracket [{_num(witness['e_low'])}, {_num(witness['e_high'])}] "
                f"around {_num(witness['unconstrained_effort'])}"
            )
    return "\n".join(parts)


def render_sweep_csv(rows: List[SweepRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["e_high", "e_hat", "case"])
    for row in rows:
        e_hat = "no threshold" if row.e_hat is None else repr(row.e_hat)
        writer.writerow([repr(row.e_high), e_hat, row.case.value])
    return buffer.getvalue().rstrip("\n")


def render_identity(report: IdentityCheckReport) -> str:
    data = report.model_dump(mode="json")
    rows = [[key, _num(value, 10)] for key, value in data.items()]
    return _table(["field", "value"], rows)


def render_verdict(verdict: OracleVerdict) -> str:
    data = verdict.model_dump(mode="json")
    parameters = data["parameters"]
    lines = [
        "confirmed" if data["confirmed"] else "refuted",
        f"h={_num(parameters['h'])} eps={_num(parameters['eps'])} delta={_num(parameters['delta'])}",
    ]
    lines.extend(f"predicted but not found: {_profile(p)}" for p in data["predicted_missing"])
    lines.extend(f"found but not predicted: {_profile(p)}" for p in data["extra_found"])
    return "\n".join(lines)


def render_json(document: Any) -> str:
    """Structured output: a report model or a list of them"""
    if isinstance(document, BaseModel):
        return document.model_dump_json(indent=2)
    if isinstance(document, list) and document:
        return TypeAdapter(List[type(document[0])]).dump_json(document, indent=2).decode()
    raise TypeError(f"cannot render {type(document).__name__} as JSON")
