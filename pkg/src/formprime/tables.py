"""TSV rendering of class reports and order lists, plus the checked-in golden tables."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .search import TYPE_TABLES, Hit, emit_tables

CLASS_HEADER = "class\tQ\t|D|\t|d|\tf\tP\tCl\tE"
ORDER_HEADER = "|d|\tf\t|D|"


def format_primes(ps) -> str:
    return "{" + ", ".join(str(p) for p in ps) + "}"


def class_table_tsv(classes, table: int) -> str:
    """Rows Q, |D|, |d|, f, P, Cl, E for the classes of one table, numbered from 1."""
    chosen = sorted((C for C in classes if C.table == table), key=lambda C: C.sort_key())
    lines = [CLASS_HEADER]
    for i, C in enumerate(chosen, 1):
        P = str(C.genus)
        for m in C.members:
            lines.append(
                f"{i}\t{m.form}\t{abs(m.D)}\t{abs(m.d)}\t{m.f}\t{P}\t{m.group_type}\t{format_primes(m.exceptional)}"
            )
    return "\n".join(lines) + "\n"


def order_table_tsv(rows) -> str:
    lines = [ORDER_HEADER]
    lines += [f"{abs(H.d)}\t{H.f}\t{abs(H.D)}" for H in sorted(rows, key=Hit.sort_key)]
    return "\n".join(lines) + "\n"


def hits_tsv(hits) -> str:
    """The search output: d, f, D, type (signed discriminants)."""
    return "".join(H.tsv() + "\n" for H in sorted(hits, key=Hit.sort_key))


def render_all(hits, classes) -> dict[str, str]:
    """File name -> TSV text for class tables 1-6 and order tables 7-16."""
    out = {f"classes_t{t}.tsv": class_table_tsv(classes, t) for t in range(1, 7)}
    grouped = emit_tables(hits)
    by_number = {TYPE_TABLES[g.invariant_factors]: rows for g, rows in grouped.items() if g.invariant_factors in TYPE_TABLES}
    for t in range(7, 17):
        out[f"orders_t{t}.tsv"] = order_table_tsv(by_number.get(t, []))
    return out


def write_tables(files: dict[str, str], out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in files.items():
        p = out_dir / name
        with p.open("w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        paths.append(p)
    return paths


def golden(name: str) -> str:
    return resources.files("formprime").joinpath("data", name).read_text(encoding="utf-8")


def golden_names() -> list[str]:
    return [f"classes_t{t}.tsv" for t in range(1, 7)] + [f"orders_t{t}.tsv" for t in range(7, 17)]


def pretty(tsv: str) -> str:
    """Align TSV columns with spaces."""
    rows = [line.split("\t") for line in tsv.rstrip("\n").split("\n")]
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"
