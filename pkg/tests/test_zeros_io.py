import io
import math

import numpy as np
import pytest

from zeta_idd import zeros_io
from zeta_idd.errors import DomainError, FormatError, ValidationError

# 6 (log(T/2pi) + 1) / (2 pi T) at T = 236.524229665816206, evaluated at 40 digits
TAIL_100 = 0.018685528453785570
# 4 * sum of 1/gamma^2 over zeros 101..1000 of the fixture (40-digit sum)
PARTIAL_TAIL_101_1000 = 0.0095651295151522199


def test_load_example():
    table = zeros_io.load_zero_table("# hdr\n14.134725141\n21.022039638\n")
    assert len(table) == 2
    assert table.height == pytest.approx(21.02, abs=0.01)
    assert table.multiplicities.tolist() == [1, 1]


@pytest.mark.parametrize("text", ["", "# only a comment\n\n"])
def test_empty_rejected(text):
    with pytest.raises(ValidationError, match="empty"):
        zeros_io.load_zero_table(text)


def test_descending_rejected():
    with pytest.raises(ValidationError):
        zeros_io.load_zero_table("21.0\n14.1\n")


def test_parse_error_has_line_number():
    with pytest.raises(FormatError) as exc:
        zeros_io.load_zero_table("# c\n14.2\nnot-a-number\n")
    assert exc.value.line == 3


@pytest.mark.parametrize("text", ["-14.5\n", "0\n", "13.9\n", "14.2\n14.2\n", "nan\n"])
def test_invalid_values(text):
    with pytest.raises((ValidationError, FormatError)):
        zeros_io.load_zero_table(text)


def test_roundtrip_bit_exact(zeros1000):
    buf = io.StringIO()
    zeros_io.dump_zero_table(zeros1000, buf)
    again = zeros_io.load_zero_table(buf.getvalue())
    assert np.array_equal(again.ordinates, zeros1000.ordinates)


def test_fixtures(zeros100, zeros1000):
    assert len(zeros100) == 100 and len(zeros1000) == 1000
    assert np.array_equal(zeros100.ordinates, zeros1000.ordinates[:100])
    # standard published values of the first and 1000th ordinate
    assert zeros1000.ordinates[0] == pytest.approx(14.134725141734693790, abs=1e-12)
    assert zeros1000.height == pytest.approx(1419.4224809459956865, abs=1e-12)
    # every fixture zero is counted by the smooth Riemann-von Mangoldt formula to within 1.5
    k = np.arange(1, 1001)
    assert np.max(np.abs(zeros_io.smooth_zero_count(zeros1000.ordinates) - (k - 0.5))) < 1.5


def test_tail_bound_value(zeros100):
    tb = zeros_io.tail_bound(zeros100)
    assert tb.height == zeros100.height
    assert tb.bound == pytest.approx(TAIL_100, rel=1e-13)
    assert tb.bound == pytest.approx(0.019, abs=0.001)


def test_tail_bound_decreases():
    bounds = [zeros_io.tail_bound(zeros_io.ZeroTable(np.array([15.0, T]), np.ones(2))).bound
              for T in (1e2, 1e3, 1e4)]
    assert bounds[0] > bounds[1] > bounds[2] > 0


def test_tail_bound_dominates_nested_partial_tail(zeros100, zeros1000):
    g = zeros1000.ordinates[100:]
    partial = 4 * math.fsum((1 / g**2).tolist())
    assert partial == pytest.approx(PARTIAL_TAIL_101_1000, rel=1e-12)
    assert zeros_io.tail_bound(zeros100).bound >= partial
    assert zeros_io.tail_bound(zeros100).bound > zeros_io.tail_bound(zeros1000).bound


def test_inverse_square_partial_sums(zeros1000):
    partial = np.cumsum(1 / zeros1000.ordinates**2)
    assert np.all(np.diff(partial) > 0)
    assert partial[-1] <= 0.024
    # known full sum over all zeros is about 0.023105; the tail estimate brackets it
    tb = zeros_io.tail_bound(zeros1000).bound / 4
    assert partial[-1] < 0.023105 < partial[-1] + tb


def test_tail_bound_empty():
    with pytest.raises(DomainError):
        zeros_io.tail_bound(None)


def test_file_and_env(tmp_path, monkeypatch):
    p = tmp_path / "z.txt"
    p.write_text("14.134725141734694\n21.022039638771555\n")
    table = zeros_io.load_zero_file(p)
    assert table.source == str(p)
    monkeypatch.setenv("ZETA_IDD_ZEROS", str(p))
    assert zeros_io.default_zero_path() == str(p)


def test_continuum_start(zeros1000):
    T = zeros_io.continuum_start(zeros1000)
    assert zeros_io.smooth_zero_count(T) == pytest.approx(1000, abs=1e-9)
    assert abs(T - zeros1000.height) < 2.0
