"""Static SVG rendering of scan and scatter CSVs."""

from __future__ import annotations

import sys

from .reporting import RunMetadata, read_csv

_CLASS_COLORS = {
    "GHZClass": "tab:green",
    "WClass": "tab:orange",
    "ProductABC": "tab:red",
    "Indeterminate": "tab:gray",
}


def _column(columns, rows, name):
    idx = columns.index(name)
    return [row[idx] for row in rows]


def render(in_path: str, out_path: str, kind: str, metadata: RunMetadata) -> None:
    """Render a scatter (abe vs delta_s, class-colored) or a parameter curve."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with open(in_path, newline="") as fh:
        _, columns, rows = read_csv(fh)

    fig, ax = plt.subplots(figsize=(6.4, 5.2))
    if not rows:
        print("warning: no data rows in input, rendering an empty plot", file=sys.stderr)
        ax.set_title("empty input")
    elif kind == "scatter":
        for name in ("delta_s", "abe"):
            if name not in columns:
                raise ValueError(f"scatter input is missing column {name!r}")
        xs = [float(v) for v in _column(columns, rows, "delta_s")]
        ys = [float(v) for v in _column(columns, rows, "abe")]
        labels = _column(columns, rows, "class") if "class" in columns else ["?"] * len(xs)
        seen = {}
        for x, y, lbl in zip(xs, ys, labels):
            base = lbl.split("(")[0]
            seen.setdefault(base, ([], []))
            seen[base][0].append(x)
            seen[base][1].append(y)
        for lbl, (lx, ly) in sorted(seen.items()):
            ax.scatter(lx, ly, s=6, alpha=0.5, label=lbl, color=_CLASS_COLORS.get(lbl, "tab:blue"))
        top = max(max(xs), 1.0)
        ax.plot([0, top], [0, top], ls="--", lw=1, color="gray", label="saturation")
        ax.set_xlabel("activation headroom (bits)")
        ax.set_ylabel("activated entanglement (bits)")
        ax.legend(loc="upper left", fontsize=8)
    elif kind == "curve":
        x_name = columns[1] if columns[0] == "index" else columns[0]
        xs = [float(v) for v in _column(columns, rows, x_name)]
        for name in columns:
            if name in (x_name, "index", "seed", "class") or name.startswith("r_"):
                continue
            try:
                ys = [float(v) for v in _column(columns, rows, name)]
            except ValueError:
                continue
            ax.plot(xs, ys, lw=1, label=name)
        ax.set_xlabel(x_name)
        ax.set_ylabel("bits")
        ax.legend(fontsize=8)
    else:
        raise ValueError(f"unknown plot kind {kind!r}")
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)
    _embed_metadata(out_path, metadata)


def _embed_metadata(path: str, metadata: RunMetadata) -> None:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    comment = "<!-- " + metadata.to_json().replace("--", "- -") + " -->\n"
    head, sep, tail = text.partition("\n")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(head + sep + comment + tail)
