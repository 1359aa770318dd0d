"""Figures for verification reports, rendered headless to PNG."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# fixed metadata keeps the bytes a function of the data alone
_PNG_META = {"Software": None}


def verify_figure(rows: list[dict], title: str, path) -> None:
    """Clique-side vs morphism-side optimum, and clique vs morphism counts.

    ``rows`` are the per-trial records written to the TSV.
    """
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 4), dpi=100)
    ok = [r for r in rows if r["passed"]]
    bad = [r for r in rows if not r["passed"]]
    for group, colour, label in ((ok, "tab:blue", "passed"), (bad, "tab:red", "failed")):
        pts = [(float(r["clique_optimum"]), float(r["morphism_optimum"]))
               for r in group if r["clique_optimum"] is not None and r["morphism_optimum"] is not None]
        if pts:
            xs, ys = zip(*pts)
            left.scatter(xs, ys, s=14, c=colour, label=f"{label} ({len(group)})")
    vals = [float(r[k]) for r in rows for k in ("clique_optimum", "morphism_optimum") if r[k] is not None]
    if vals:
        lo, hi = min(vals), max(vals)
        pad = (hi - lo) * 0.05 or 1.0
        left.plot([lo - pad, hi + pad], [lo - pad, hi + pad], color="grey", lw=0.8, zorder=0)
    left.set_xlabel("max clique weight")
    left.set_ylabel("max objective over morphisms")
    left.set_title("optima")
    if rows:
        left.legend(loc="upper left", fontsize=8)

    cl = [r["cliques"] for r in rows]
    mo = [r["morphisms"] for r in rows]
    if rows:
        right.scatter(cl, mo, s=14, c=["tab:blue" if r["passed"] else "tab:red" for r in rows])
        top = max(cl + mo)
        right.plot([1, top], [1, top], color="grey", lw=0.8, zorder=0)
        right.set_xscale("log")
        right.set_yscale("log")
    right.set_xlabel("cliques enumerated")
    right.set_ylabel("p-morphisms enumerated")
    right.set_title("bijection")
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, format="png", metadata=_PNG_META)
    plt.close(fig)


def nonclosure_figure(sizes: dict, title: str, path) -> None:
    """Cliques per size, split into encoding cliques and the rest.

    ``sizes`` maps clique size to ``(encoding, other)`` counts.
    """
    fig, ax = plt.subplots(figsize=(5, 4), dpi=100)
    ks = sorted(sizes)
    enc = [sizes[k][0] for k in ks]
    other = [sizes[k][1] for k in ks]
    ax.bar(ks, enc, color="tab:blue", label="encodes a member")
    ax.bar(ks, other, bottom=enc, color="tab:orange", label="encodes no member")
    ax.set_xticks(ks)
    ax.set_xlabel("clique size")
    ax.set_ylabel("cliques")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="png", metadata=_PNG_META)
    plt.close(fig)
