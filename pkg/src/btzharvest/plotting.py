"""Gnuplot script emission for the preset sweep layouts.

The scripts reference the CSV files by relative path and are written to
run next to them.  Slice panels select the grid value nearest each
requested slice location, so the filters embedded in the script match
rows exactly instead of relying on float equality against round targets.
"""

from __future__ import annotations

import math

from .sweep import COLUMNS

_OMEGA_SLICES = (1.0, 0.5, 0.1)
_DA_SLICES = (10.0, 1.0, 0.1)


def _col(name: str) -> int:
    return COLUMNS.index(name) + 1    # gnuplot columns are 1-based


def _ok_rows(rows) -> list[dict]:
    return [r for r in rows if r.get("status") == "ok"]


def _nearest(values, target: float) -> float | None:
    vals = sorted(set(values))
    if not vals:
        return None
    return min(vals, key=lambda v: abs(math.log(v / target)) if v > 0 else float("inf"))


def _slice_filter(col: int, value: float) -> str:
    return f"(abs(column({col})/{value!r} - 1) < 1e-9)"


def _header(preset: str, csv_names) -> list[str]:
    lines = [
        f"# {preset} figure layout; data: {', '.join(csv_names)}",
        "set datafile separator ','",
        "set datafile missing ''",
        "set key noenhanced",
    ]
    return lines


def _fig1_script(rows, csv: str) -> str:
    ok = _ok_rows(rows)
    out = _header("fig1", [csv])
    if not ok:
        out.append("# no data rows; nothing to plot")
        return "\n".join(out) + "\n"
    c_om, c_da, c_i = _col("omega"), _col("d_a"), _col("I_AB")
    out += [
        "set terminal pngcairo size 900,720",
        "set logscale xy",
        "",
        "set output 'fig1_surface.png'",
        "set xlabel 'Omega sigma'; set ylabel 'd_A / sigma'",
        "set cblabel 'I_AB'",
        "set view map",
        "set dgrid3d 60,60",
        "set pm3d interpolate 2,2",
        f"splot '{csv}' skip 1 using {c_om}:{c_da}:{c_i} with pm3d notitle",
        "unset dgrid3d",
        "",
        "set output 'fig1_slices_da.png'",
        "set xlabel 'Omega sigma'; set ylabel 'I_AB'",
    ]
    da_vals = [r["d_a"] for r in ok]
    om_vals = [r["omega"] for r in ok]
    pieces = []
    for target in _DA_SLICES:
        near = _nearest(da_vals, target)
        cond = _slice_filter(c_da, near)
        pieces.append(f"'{csv}' skip 1 using "
                      f"({cond} ? column({c_om}) : NaN):{c_i} "
                      f"with linespoints title 'd_A = {target:g}'")
    out.append("plot " + ", \\\n     ".join(pieces))
    out += ["", "set output 'fig1_slices_omega.png'",
            "set xlabel 'd_A / sigma'; set ylabel 'I_AB'"]
    pieces = []
    for target in _OMEGA_SLICES:
        near = _nearest(om_vals, target)
        cond = _slice_filter(c_om, near)
        pieces.append(f"'{csv}' skip 1 using "
                      f"({cond} ? column({c_da}) : NaN):{c_i} "
                      f"with linespoints title 'Omega = {target:g}'")
    out.append("plot " + ", \\\n     ".join(pieces))
    return "\n".join(out) + "\n"


def _fig2_script(tables: dict, csv_names: dict) -> str:
    rows_a = _ok_rows(tables.get("fig2a", []))
    rows_b = _ok_rows(tables.get("fig2b", []))
    out = _header("fig2", list(csv_names.values()))
    if not rows_a and not rows_b:
        out.append("# no data rows; nothing to plot")
        return "\n".join(out) + "\n"
    c_g, c_t = _col("gamma_a"), _col("t_a")
    c_aa, c_n0, c_btz = _col("L_AA"), _col("L_AA_n0"), _col("L_AA_btz")
    c_i, c_edr = _col("I_AB"), _col("t_edr")
    out += [
        "set terminal pngcairo size 1100,800",
        "set output 'fig2.png'",
        "set multiplot layout 2,2 columnsfirst",
        "set logscale x",
    ]
    if rows_a:
        a = csv_names["fig2a"]
        out += [
            "set xlabel 'gamma_A'; set ylabel 'L_AA'",
            f"plot '{a}' skip 1 using {c_g}:{c_aa} with lines title 'total', \\",
            f"     '{a}' skip 1 using {c_g}:{c_n0} with lines title 'n = 0', \\",
            f"     '{a}' skip 1 using {c_g}:{c_btz} with lines title 'n != 0'",
            "set xlabel 'gamma_A'; set ylabel 'I_AB'",
            f"plot '{a}' skip 1 using {c_g}:{c_i} with lines notitle",
        ]
    else:
        out += ["set multiplot next", "set multiplot next"]
    if rows_b:
        b = csv_names["fig2b"]
        out += [
            "set xlabel 'T_A sigma'; set ylabel 'L_AA'",
            f"plot '{b}' skip 1 using {c_t}:{c_aa} with lines title 'total', \\",
            f"     '{b}' skip 1 using {c_t}:{c_n0} with lines title 'n = 0', \\",
            f"     '{b}' skip 1 using {c_t}:{c_btz} with lines title 'n != 0'",
            "set xlabel 'T_A sigma'; set ylabel 'T_EDR sigma'",
            "set logscale y",
            f"plot '{b}' skip 1 using {c_t}:{c_edr} with lines title 'T_EDR', \\",
            "     x with lines dashtype 2 title 'T_A'",
        ]
    out.append("unset multiplot")
    return "\n".join(out) + "\n"


def _fig3_script(rows, csv: str) -> str:
    ok = _ok_rows(rows)
    out = _header("fig3", [csv])
    if not ok:
        out.append("# no data rows; nothing to plot")
        return "\n".join(out) + "\n"
    c_t, c_g, c_i = _col("t_a"), _col("gamma_a"), _col("I_AB")
    out += [
        "set terminal pngcairo size 900,720",
        "set output 'fig3_surface.png'",
        "set logscale xy",
        "set xlabel 'T_A sigma'; set ylabel 'gamma_A'",
        "set cblabel 'I_AB'",
        "set view map",
        "set dgrid3d 60,60",
        "set pm3d interpolate 2,2",
        f"splot '{csv}' skip 1 using {c_t}:{c_g}:{c_i} with pm3d notitle",
    ]
    return "\n".join(out) + "\n"


def emit_plot_script(tables, preset: str, csv_names=None) -> str:
    """Render the preset's figure layout as gnuplot text.

    tables is the rows list for single-sweep presets, or a dict keyed by
    output stem for fig2.  Unknown presets raise ValueError; an empty
    table yields a comment-only script that exits successfully.
    """
    if preset == "fig1":
        rows = tables["fig1"] if isinstance(tables, dict) else tables
        return _fig1_script(rows, (csv_names or {}).get("fig1", "fig1.csv"))
    if preset == "fig2":
        if not isinstance(tables, dict):
            raise TypeError("fig2 needs {'fig2a': rows, 'fig2b': rows}")
        names = csv_names or {"fig2a": "fig2a.csv", "fig2b": "fig2b.csv"}
        return _fig2_script(tables, names)
    if preset == "fig3":
        rows = tables["fig3"] if isinstance(tables, dict) else tables
        return _fig3_script(rows, (csv_names or {}).get("fig3", "fig3.csv"))
    raise ValueError(f"unknown preset {preset!r}")
