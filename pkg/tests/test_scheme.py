"""Fat schemes, named configurations, conditions counts, condition rows."""

import pytest

from fermatarr.arrange import Flat
from fermatarr.interp import system_dimension
from fermatarr.linalg import Eliminator, rank_of_field_rows
from fermatarr.mpoly import MultiPoly, graded_monomials, parse_point
from fermatarr.scheme import (
    FatScheme,
    NamedConfig,
    component_rows,
    conditions_count,
    conditions_count_line,
    conditions_count_line_p3,
    conditions_rows,
    format_scheme,
    general_point_count,
    named_configuration,
    parse_scheme,
    plane_point_count,
    verify_published_generators,
)


# -- named configurations --------------------------------------------------

def test_configuration_point_counts():
    assert len(named_configuration("B3_DUAL").scheme) == 9
    for m in (1, 2, 3, 4, 5):
        for k in (0, 1, 2, 3):
            cfg = named_configuration(f"FERMAT_DUAL({m},{k})")
            assert len(cfg.scheme) == 3 * m + k
    assert len(named_configuration("BMSS_P3").scheme) == 31
    assert len(named_configuration("P5_MULTI").scheme) == 249
    assert len(named_configuration("LINES42").scheme) == 42
    for n in (3, 4):
        assert len(named_configuration(f"MULT4_POINTS({n})").scheme) == n * n + 3


def test_configuration_id_round_trip_and_errors():
    assert named_configuration(" b3_dual ").id == "B3_DUAL"
    assert named_configuration("FERMAT_DUAL(3,2)").id == "FERMAT_DUAL(3,2)"
    for bad in ("NOPE", "FERMAT_DUAL(3)", "FERMAT_DUAL(3,2,1)", "MULT4_POINTS(2)",
                "FERMAT_DUAL(0,2)", "FERMAT_DUAL(3,4)", "B3_DUAL(1)", "MULT4_POINTS(x)"):
        with pytest.raises(ValueError):
            named_configuration(bad)


def test_lines42_components_are_lines():
    cfg = named_configuration("LINES42")
    assert all(fl.dim == 1 and mult == 1 for fl, mult in cfg.scheme.components)
    assert len(cfg.published_generators) == 6
    assert all(g.degree() == 8 for g in cfg.published_generators)


def test_bmss_contains_all_four_coordinate_points():
    cfg = named_configuration("BMSS_P3")
    pts = set(cfg.scheme.points())
    for s in ("(1:0:0:0)", "(0:1:0:0)", "(0:0:1:0)", "(0:0:0:1)"):
        assert parse_point(s) in pts


def test_published_generators_vanish():
    for cid in ("FERMAT_DUAL(3,2)", "FERMAT_DUAL(4,1)", "BMSS_P3", "LINES42"):
        assert verify_published_generators(named_configuration(cid))


def test_generators_required():
    with pytest.raises(ValueError):
        verify_published_generators(named_configuration("B3_DUAL"))


def test_generator_vanishing_breaks_with_extra_component():
    cfg = named_configuration("FERMAT_DUAL(3,2)")
    extra = (Flat.from_point(parse_point("(1:2:3)")), 1)
    bigger = NamedConfig("tmp", cfg.scheme.with_components([extra]),
                         cfg.published_generators)
    assert not verify_published_generators(bigger)


# -- degree-wise cut-out of Z by the printed generators ---------------------

def _generator_span_dim(cfg, d):
    nvars = cfg.scheme.ambient + 1
    cols = graded_monomials(nvars, d)
    elim = Eliminator(len(cols), cfg.scheme.root_order)
    for g in cfg.published_generators:
        if g.degree() > d:
            continue
        for mono in graded_monomials(nvars, d - g.degree()):
            mult = g * MultiPoly(nvars, g.order, {mono: 1})
            elim.add_field_row(mult.coeff_vector(cols))
    return elim.rank


def _ideal_dim(cfg, d):
    return system_dimension(cfg.scheme, d)


def test_m4_generators_cut_out_z_degreewise():
    cfg = named_configuration("FERMAT_DUAL(4,1)")
    dims = [(_generator_span_dim(cfg, d), _ideal_dim(cfg, d)) for d in range(3, 8)]
    assert dims == [(1, 1), (3, 3), (8, 8), (15, 15), (23, 23)]


def test_m3_generator_list_is_truncated():
    # The printed triple vanishes on Z but spans one dimension less than
    # the ideal in degree 5: the span misses x0*x1*(x0^3+x1^3).
    cfg = named_configuration("FERMAT_DUAL(3,2)")
    assert [( _generator_span_dim(cfg, d), _ideal_dim(cfg, d)) for d in (3, 4, 5)] \
        == [(1, 1), (4, 4), (9, 10)]
    names = ("x0", "x1", "x2")
    from fermatarr.mpoly import parse_poly
    missing = parse_poly("x0*x1*(x0^3+x1^3)", names)
    cols = graded_monomials(3, 5)
    elim = Eliminator(len(cols), cfg.scheme.root_order)
    for g in cfg.published_generators:
        for mono in graded_monomials(3, 5 - g.degree()):
            elim.add_field_row((g * MultiPoly(3, g.order, {mono: 1})).coeff_vector(cols))
    assert elim.add_field_row(missing.coeff_vector(cols))  # novel direction
    # yet it lies in the ideal: appending it to the condition rows' kernel test
    mat_rank = rank_of_field_rows(conditions_rows(cfg.scheme, 5), len(cols),
                                  cfg.scheme.root_order)
    assert len(cols) - mat_rank == 10
    from fermatarr.linalg import row_dot
    for row in conditions_rows(cfg.scheme, 5):
        assert row_dot(row, missing.coeff_vector(cols), cfg.scheme.root_order).is_zero()


# -- conditions counts -------------------------------------------------------

def test_point_specializations_of_conditions_count():
    for N in (2, 3, 4, 5):
        for m in range(1, 5):
            for d in range(m - 1, 11):
                assert conditions_count(N, 0, m, d) == general_point_count(N, m)
    for m in range(1, 6):
        assert general_point_count(2, m) == plane_point_count(m)


def test_line_closed_form_agrees_above_threshold():
    for N in (2, 3, 4):
        for m in range(1, 5):
            for d in range(m - 1, 11):
                assert conditions_count_line(N, m, d) == conditions_count(N, 1, m, d)
    for m in range(1, 5):
        for d in range(m - 1, 11):
            assert conditions_count_line_p3(m, d) == conditions_count(3, 1, m, d)


def test_line_closed_form_divergences_below_threshold():
    divergent = []
    for N in (2, 3, 4):
        for m in range(1, 5):
            for d in range(0, 11):
                if d >= m - 1:
                    continue
                exact = conditions_count(N, 1, m, d)
                try:
                    cf = conditions_count_line(N, m, d)
                except ArithmeticError:
                    cf = None
                if cf != exact:
                    divergent.append((N, m, d, exact, cf))
    assert divergent == [
        (2, 3, 0, 1, 0), (2, 4, 0, 1, -2), (2, 4, 1, 3, 2),
        (3, 3, 0, 1, -2), (3, 4, 0, 1, -10), (3, 4, 1, 4, 0),
        (4, 3, 0, 1, -5), (4, 4, 0, 1, -25), (4, 4, 1, 5, -5),
    ]
    assert conditions_count_line_p3(4, 1) == 0 != conditions_count(3, 1, 4, 1) == 4


def test_conditions_count_validates_inputs():
    with pytest.raises(ValueError):
        conditions_count(3, 3, 2, 5)  # r must stay below N
    with pytest.raises(ValueError):
        conditions_count(3, 1, 0, 5)
    with pytest.raises(ValueError):
        conditions_count(3, 1, 2, -1)


# -- condition rows ----------------------------------------------------------

def _kernel_rank_pair(rows, ncols, order):
    rank = rank_of_field_rows(rows, ncols, order)
    return rank, ncols - rank


def test_top_order_rows_match_all_order_rows():
    # Euler: on homogeneous forms the top-order partials vanishing on the
    # flat force all lower orders, so both encodings have equal rank.
    line = Flat.from_span([(1, 0, 0, 1), (0, 1, 1, 0)])
    ncols = len(graded_monomials(4, 4))
    top = component_rows(line, 3, 4, orders="top")
    allr = component_rows(line, 3, 4, orders="all")
    assert len(allr) > len(top)
    assert _kernel_rank_pair(top, ncols, 1) == _kernel_rank_pair(allr, ncols, 1)

    pt = Flat.from_point(parse_point("(1:2:-1)"))
    ncols2 = len(graded_monomials(3, 5))
    top2 = component_rows(pt, 4, 5, orders="top")
    all2 = component_rows(pt, 4, 5, orders="all")
    assert _kernel_rank_pair(top2, ncols2, 1) == _kernel_rank_pair(all2, ncols2, 1)


def test_low_degree_components_kill_everything():
    pt = Flat.from_point(parse_point("(1:1:1)"))
    Z = FatScheme(2, [(pt, 4)])
    assert system_dimension(Z, 2) == 0  # d < m-1
    rows = component_rows(pt, 4, 2)
    assert len(rows) == len(graded_monomials(3, 2))


def test_single_simple_point_imposes_one_condition():
    pt = Flat.from_point(parse_point("(1:2:3)"))
    rows = component_rows(pt, 1, 3)
    assert len(rows) == 1
    assert rank_of_field_rows(rows, len(graded_monomials(3, 3)), 1) == 1


def test_fat_point_conditions_match_count():
    pt = Flat.from_point(parse_point("(1:-2:5)"))
    for m in (2, 3):
        for d in (m, m + 2):
            Z = FatScheme(2, [(pt, m)])
            ncols = len(graded_monomials(3, d))
            assert system_dimension(Z, d) == ncols - conditions_count(2, 0, m, d)


def test_fat_line_conditions_match_count():
    line = Flat.from_span([(1, 0, 0, 0), (0, 1, 0, 0)])
    for m in (1, 2, 3):
        for d in (m + 1, m + 2):
            Z = FatScheme(3, [(line, m)])
            ncols = len(graded_monomials(4, d))
            assert system_dimension(Z, d) == ncols - conditions_count(3, 1, m, d)


def test_component_rows_rejects_bad_orders_flag():
    pt = Flat.from_point(parse_point("(1:0:0)"))
    with pytest.raises(ValueError):
        component_rows(pt, 2, 3, orders="some")


# -- scheme construction and the file format ---------------------------------

def test_scheme_validation():
    pt = Flat.from_point(parse_point("(1:2:3)"))
    with pytest.raises(ValueError):
        FatScheme(2, [(pt, 0)])
    with pytest.raises(ValueError):
        FatScheme(2, [(pt, 1), (pt, 2)])
    with pytest.raises(ValueError):
        FatScheme(3, [(pt, 1)])
    with pytest.raises(TypeError):
        FatScheme(2, [("(1:2:3)", 1)])


def test_scheme_text_round_trip():
    line = Flat.from_span([(1, 0, 0, 1), (0, 1, 0, 0)])
    pt = Flat.from_point(parse_point("(1:0:-1:2)"))
    Z = FatScheme(3, [(pt, 3), (line, 2)])
    text = format_scheme(Z)
    again = parse_scheme(text)
    assert again.ambient == 3
    assert again.components == Z.components
    assert format_scheme(again) == text


def test_scheme_parse_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="scheme line 2"):
        parse_scheme("ambient 2\npoint (0:0:0) mult 1\n")
    with pytest.raises(ValueError, match="scheme line 1"):
        parse_scheme("flat { eq: x0 } mult 1\n")
    with pytest.raises(ValueError):
        parse_scheme("")
    with pytest.raises(ValueError, match="scheme line 2"):
        parse_scheme("ambient 2\nblob (1:2:3) mult 1\n")


def test_scheme_parse_ignores_comments_and_blanks():
    Z = parse_scheme("# header\n\nambient 2\npoint (1:2:3) mult 2\n")
    assert len(Z) == 1 and Z.components[0][1] == 2


def test_points_accessor_skips_positive_dimensional_flats():
    line = Flat.from_span([(1, 0, 0, 1), (0, 1, 0, 0)])
    pt = Flat.from_point(parse_point("(1:1:1:1)"))
    Z = FatScheme(3, [(line, 1), (pt, 1)])
    assert Z.points() == [parse_point("(1:1:1:1)")]
