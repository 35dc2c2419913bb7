"""End-to-end acceptance for the plotting package.

Renders figures from CSVs produced by the installed simulator CLI and
checks the drawn curves: the zeroforcing CDF must sit right of the
steered-beam CDF at the median, and each codebook curve must peak at its
beam's steering azimuth within one beam-grid cell.
"""

import numpy as np

from beamplots.figures import PlotSpec, plot_cdf, plot_codebook

# steering azimuths (degrees) of the 8-beam transmit preset: cell centers
# of the uniform sin(az) grid over the -60..60 degree sector, frozen here
# so the check needs nothing from the simulator but its CSV artifacts
BS8_STEER_AZ_DEG = (
    -49.268194, -32.769854, -18.951007, -6.214629,
    6.214629, 18.951007, 32.769854, 49.268194,
)
# smallest spacing between adjacent steering azimuths above; "one grid
# cell" tolerance, applied uniformly (edge cells are wider)
BS8_MIN_CELL_DEG = 12.43


def emit(num, text):
    print(f"[criterion {num:02d}] PASS: {text}")


def median_of_curve(x, y):
    """Smallest x whose cumulative fraction reaches 1/2 (step-CDF median)."""
    return float(x[np.searchsorted(y, 0.5)])


def test_criterion_11_rendered_figures(results_csv, beams8_csv, tmp_path):
    # --- CDF figure: one curve per scheme, zf right of steer at median ---
    fig = plot_cdf(PlotSpec(in_path=str(results_csv), out_path=str(tmp_path / "cdf.svg")))
    lines = fig.axes[0].lines
    assert [ln.get_label() for ln in lines] == ["steer", "zf"]
    medians = {}
    for ln in lines:
        x = np.asarray(ln.get_xdata())
        y = np.asarray(ln.get_ydata())
        assert y.min() > 0.0 and y.max() == 1.0
        medians[ln.get_label()] = median_of_curve(x, y)
    gap = medians["zf"] - medians["steer"]
    assert gap > 0.0
    assert (tmp_path / "cdf.svg").read_bytes().startswith(b"<?xml")

    # --- codebook figure: every beam peaks on its steering azimuth -------
    fig = plot_codebook(PlotSpec(in_path=str(beams8_csv), out_path=str(tmp_path / "beams.svg")))
    lines = fig.axes[0].lines
    assert len(lines) == len(BS8_STEER_AZ_DEG)
    offsets = []
    for ln, expect in zip(lines, BS8_STEER_AZ_DEG):
        x = np.asarray(ln.get_xdata())
        y = np.asarray(ln.get_ydata())
        peak_az = float(x[int(np.argmax(y))])
        offsets.append(abs(peak_az - expect))
    assert max(offsets) <= BS8_MIN_CELL_DEG

    emit(11, f"cdf median gap zf-steer {gap:.3f} bits; "
             f"worst peak offset {max(offsets):.2f} deg (cell {BS8_MIN_CELL_DEG} deg)")
