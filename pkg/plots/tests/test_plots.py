import math
import shutil
import subprocess
import sys

import pytest

from biasplots.render import (
    PlotError,
    PlotSpec,
    euler_trajectories,
    load_series,
    main,
    render,
)


@pytest.fixture(scope="module")
def csv_dir(tmp_path_factory):
    """Series CSVs produced through the compute tool's public interface."""
    out = tmp_path_factory.mktemp("series")
    bias = shutil.which("bias")
    assert bias is not None, "the compute CLI must be installed"
    for ell, x_max in ((3, 3000), (5, 1000)):
        subprocess.run(
            [
                bias,
                "compute",
                "--ell",
                str(ell),
                "--x-max",
                str(x_max),
                "--no-header-timestamp",
                "--out",
                str(out),
            ],
            check=True,
            capture_output=True,
        )
    return out


def test_bias_figure_renders(csv_dir, tmp_path):
    spec = PlotSpec(
        csv_paths=[str(csv_dir / "bias_l3_fermat.csv")],
        out=str(tmp_path / "bias_fig"),
        kind="bias",
    )
    written = render(spec)
    assert sorted(p.rsplit(".", 1)[1] for p in written) == ["png", "svg"]
    import os

    for p in written:
        assert os.path.getsize(p) > 0


def test_bias_multi_panel(csv_dir, tmp_path):
    paths = [str(csv_dir / f"bias_l5_{label}.csv") for label in
             ("fermat", "quotient1", "quotient2", "quotient3")]
    spec = PlotSpec(paths, str(tmp_path / "panels.png"), "bias")
    written = render(spec)
    assert len(written) == 2


def test_euler_overlay_coincides(csv_dir, tmp_path):
    # the Fermat trajectory and the product of the quotient trajectories
    # realize the same Euler product, so the two drawn curves agree to
    # far below line width
    paths = [str(csv_dir / f"bias_l5_{label}.csv") for label in
             ("fermat", "quotient1", "quotient2", "quotient3")]
    series = [load_series(p, ("x", "log_euler_product_s_half")) for p in paths]
    curves = euler_trajectories(series)
    assert len(curves) == 2
    (_, xs, fermat), (_, xs2, product) = curves
    assert xs == xs2
    for a, b in zip(fermat, product):
        assert abs(a - b) <= 1e-9 * max(abs(a), 1.0)
    written = render(PlotSpec(paths, str(tmp_path / "euler"), "euler"))
    assert len(written) == 2


def test_moment_figure_renders(csv_dir, tmp_path):
    spec = PlotSpec(
        csv_paths=[str(csv_dir / "bias_l3_fermat.csv")],
        out=str(tmp_path / "moment"),
        kind="moment",
    )
    assert len(render(spec)) == 2


def test_missing_column_named(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,foo\n10,1\n")
    with pytest.raises(PlotError, match="bias_sum"):
        load_series(str(bad), ("x", "bias_sum"))


def test_empty_csv_writes_nothing(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("x,bias_sum,predicted_slope,fit_A,fit_c\n")
    out = tmp_path / "fig"
    with pytest.raises(PlotError, match="no data rows"):
        render(PlotSpec([str(empty)], str(out), "bias"))
    assert not (tmp_path / "fig.png").exists()
    assert not (tmp_path / "fig.svg").exists()


def test_cli_exit_codes(csv_dir, tmp_path, capsys):
    code = main(
        [
            "--csv",
            str(csv_dir / "bias_l3_fermat.csv"),
            "--kind",
            "euler",
            "--out",
            str(tmp_path / "fig.png"),
        ]
    )
    assert code == 0
    assert (tmp_path / "fig.png").exists() and (tmp_path / "fig.svg").exists()
    assert main(["--csv", str(tmp_path / "nope.csv"), "--kind", "bias", "--out", str(tmp_path / "f")]) == 1
    assert main(["--kind", "bias", "--out", str(tmp_path / "f")]) == 1  # no --csv


def test_mismatched_grids_rejected(tmp_path):
    a = tmp_path / "bias_l3_fermat.csv"
    b = tmp_path / "bias_l3_quotient1.csv"
    a.write_text("x,log_euler_product_s_half\n10,0.1\n100,0.2\n")
    b.write_text("x,log_euler_product_s_half\n10,0.1\n")
    series = [
        load_series(str(a), ("x", "log_euler_product_s_half")),
        load_series(str(b), ("x", "log_euler_product_s_half")),
        load_series(str(b), ("x", "log_euler_product_s_half")),
    ]
    with pytest.raises(PlotError, match="identical x grids"):
        euler_trajectories(series)


def test_headless_backend():
    import matplotlib

    assert matplotlib.get_backend().lower() == "agg"


def test_acceptance_line(csv_dir, tmp_path):
    # the secondary release criterion: all three kinds render from the
    # degree-3 CSV headless, and the factorization overlay coincides
    import pathlib

    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[2] / "tests"))
    try:
        from acceptance_registry import record
    except ImportError:  # standalone checkout of the plots package
        def record(name, passed, detail="", soft=False):
            print(("[PASS] " if passed else "[FAIL] ") + name + " :: " + detail)
            return passed

    ok = True
    for kind in ("bias", "euler", "moment"):
        written = render(
            PlotSpec(
                [str(csv_dir / "bias_l3_fermat.csv")],
                str(tmp_path / f"acc_{kind}"),
                kind,
            )
        )
        ok = ok and len(written) == 2
    # the overlay identity on the degree-3 files: Fermat trajectory vs the
    # (single) quotient trajectory, coinciding far below line width
    l3 = [str(csv_dir / "bias_l3_fermat.csv"), str(csv_dir / "bias_l3_quotient1.csv")]
    series = [load_series(p, ("x", "log_euler_product_s_half")) for p in l3]
    (_, _, a), (_, _, b) = euler_trajectories(series)
    ok = ok and all(abs(u - v) <= 1e-9 * max(abs(u), 1.0) for u, v in zip(a, b))
    ok = ok and len(render(PlotSpec(l3, str(tmp_path / "acc_overlay"), "euler"))) == 2
    assert record(
        "plot tool renders bias, euler, and moment figures headless from "
        "the degree-3 CSV; factorization overlay coincides within line width",
        ok,
        "3 kinds x (png + svg)",
    )
