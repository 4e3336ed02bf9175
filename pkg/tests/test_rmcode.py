import json

import pytest
from conftest import FIXTURES, fixture_code, random_codes

from rankzeta.gflinalg import Subspace, elementary, enumerate_subspaces, flatten, gf, rank
from rankzeta.rmcode import (
    DependentGeneratorsError,
    check_weight_tuple,
    code_from_json,
    code_supports,
    dim_col_subcode,
    distance,
    dual,
    dual_distance,
    full_space,
    generalized_weights,
    generalized_weights_oracle,
    load_code,
    make_code,
    matrix_rank,
    maxrank,
    min_distance,
    optimal_anticodes,
    supported_subcode_col,
    supported_subcode_row,
    supports_of_matrices,
    zero_code,
)

# (weights of C, weights of C-perp) for the bundled fixtures
FIXTURE_WEIGHTS = {
    "c1": ((0, 1, 2, 2, 3, 3, 3), (0, 1, 2, 2, 3, 3, 3)),
    "c2": ((0, 1, 2, 3, 3, 3, 3), (0, 2, 2, 2, 3, 3, 3)),
    "c3": ((0, 2, 2, 3, 3, 3, 3), (0, 2, 2, 3, 3, 3, 3)),
    "c4": ((0, 2, 2, 2, 3, 3, 3), (0, 1, 2, 3, 3, 3, 3)),
    "c5": ((0, 1, 1, 3, 3, 3, 3), (0, 2, 2, 2, 2, 3, 3)),
    "c6": ((0, 2, 2, 3, 3, 3), (0, 1, 2, 2, 3, 3, 3, 3)),
    "c7": ((0, 2, 2, 2, 3, 3), (0, 1, 1, 2, 3, 3, 3, 3)),
}



def test_make_code_examples(c1):
    assert c1.k == 6
    assert make_code(2, 3, 4, []).k == 0
    assert full_space(2, 3, 4).k == 12


def test_dependent_generators():
    E = elementary(2, 2, 0, 0)
    with pytest.raises(DependentGeneratorsError):
        make_code(2, 2, 2, [E, E])
    assert make_code(2, 2, 2, [E, E], reduce=True).k == 1


def test_bad_generators():
    with pytest.raises(ValueError):
        make_code(2, 2, 3, [((1, 0), (0, 1))])
    with pytest.raises(ValueError):
        make_code(2, 1, 2, [((2, 0),)])


def test_transposed_when_n_exceeds_m():
    C = make_code(2, 3, 2, [((1, 0), (0, 1), (0, 0))])
    assert C.transposed and (C.n, C.m) == (2, 3)
    assert C.generators[0] == ((1, 0, 0), (0, 1, 0))


def test_dual_examples(c1):
    assert dual(zero_code(2, 3, 4)) == full_space(2, 3, 4)
    assert c1.dual.k == 6
    assert dual_distance(c1) == 1
    assert min_distance(c1.dual) == 1


def test_distances(c1):
    assert min_distance(c1) == 1 == distance(c1)
    assert min_distance(zero_code(2, 3, 4)) == 4
    assert maxrank(full_space(2, 3, 4)) == 3
    assert matrix_rank(elementary(3, 4, 1, 2), gf(2)) == 1


def test_dual_involution():
    for C in random_codes(30, 1):
        assert C.dual.dual == C
        assert C.dual.k == C.n * C.m - C.k


def test_supported_subcodes_trivial(c1):
    assert supported_subcode_col(c1, Subspace.full(3)) == c1
    assert supported_subcode_col(c1, Subspace.zero(3)).k == 0
    with pytest.raises(ValueError):
        supported_subcode_col(c1, Subspace.full(4))


def test_supported_subcode_matches_filter():
    for C in random_codes(25, 2):
        if C.q ** C.k > 2**10:
            continue
        F = C.field
        words = list(C.codewords())
        for U in enumerate_subspaces(C.n, max(C.n - 1, 0), C.q):
            sub = supported_subcode_col(C, U)
            kept = [M for M in words if all(U.contains(col, F) for col in zip(*M))]
            assert len(kept) == C.q ** sub.k
            assert all(sub.contains(M) for M in kept)
        for W in enumerate_subspaces(C.m, max(C.m - 1, 0), C.q):
            sub = supported_subcode_row(C, W)
            kept = [M for M in words if all(W.contains(row, F) for row in M)]
            assert len(kept) == C.q ** sub.k


def test_supports():
    z = zero_code(2, 3, 4)
    assert code_supports(z) == (Subspace.zero(3), Subspace.zero(4))
    E = make_code(2, 3, 4, [elementary(3, 4, 0, 0)])
    col, row = code_supports(E)
    assert col == Subspace(3, ((1, 0, 0),)) and row == Subspace(4, ((1, 0, 0, 0),))


def test_support_over_generators_equals_over_codewords(c1):
    col, row = code_supports(c1)
    col2, row2 = supports_of_matrices(list(c1.codewords()), c1.field, 3, 4)
    assert (col, row) == (col2, row2)


def test_optimal_anticode_counts():
    assert sum(1 for _ in optimal_anticodes(3, 4, 2, 1)) == 7
    assert sum(1 for _ in optimal_anticodes(3, 3, 2, 0)) == 1
    ants = list(optimal_anticodes(3, 3, 2, 1))
    assert len(ants) == 14 and len(set(ants)) == 14


@pytest.mark.parametrize("name", sorted(FIXTURE_WEIGHTS))
def test_fixture_weights(name):
    C = fixture_code(name)
    w, wd = FIXTURE_WEIGHTS[name]
    assert generalized_weights(C) == w
    assert generalized_weights(C.dual) == wd
    assert check_weight_tuple(w, 3, 4) == []


def test_weights_against_subcode_oracle():
    checked = 0
    for C in random_codes(40, 3):
        try:
            oracle = generalized_weights_oracle(C, cap=20000)
        except Exception:
            continue
        assert generalized_weights(C) == oracle
        checked += 1
    assert checked >= 25


def test_weight_tuple_properties_random():
    for C in random_codes(40, 4):
        assert check_weight_tuple(generalized_weights(C), C.n, C.m) == []


def test_check_weight_tuple_flags_violations():
    assert "d_0 != 0" in check_weight_tuple((1, 1), 3, 4)
    assert any("d_1 >= d_5" in v for v in check_weight_tuple((0, 1, 1, 1, 1, 1), 3, 4))


def test_anticode_dual_relation():
    # |C cap A| = |C-perp cap A-perp| q^{k - m(n-u)}, with F(U)-perp = F(U-perp)
    for C in random_codes(20, 5):
        if C.q ** C.k > 2**12:
            continue
        D = C.dual
        for u in range(C.n + 1):
            for U in enumerate_subspaces(C.n, u, C.q):
                lhs = dim_col_subcode(C, U)
                rhs = dim_col_subcode(D, U.perp(C.field)) + C.k - C.m * (C.n - u)
                assert lhs == rhs


def test_intersection_extremes():
    for name in FIXTURE_WEIGHTS:
        C = fixture_code(name)
        d, dd = distance(C), dual_distance(C)
        for u in range(C.n + 1):
            for U in enumerate_subspaces(C.n, u, 2):
                if u < d:
                    assert dim_col_subcode(C, U) == 0
                if u > C.n - dd:
                    assert dim_col_subcode(C, U) == C.k - C.m * (C.n - u)


def test_json_round_trip(c1, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c1.to_json()))
    assert load_code(path) == c1


def test_json_errors(tmp_path):
    with pytest.raises(ValueError, match="missing field 'm'"):
        code_from_json({"q": 2, "n": 3, "generators": []})
    bad = tmp_path / "bad.json"
    bad.write_text('{"q": 2,\n "n": }')
    with pytest.raises(ValueError, match="line 2"):
        load_code(bad)


def test_fixture_files_present():
    names = {p.stem for p in FIXTURES.glob("*.json")}
    assert {"c1", "c2", "c3", "c4", "c5", "c6", "c7", "zero_3x4", "dqmrd_3x4"} <= names


def test_contains(c1):
    for M in c1.basis_matrices:
        assert c1.contains(M)
    assert rank([flatten(M) for M in c1.basis_matrices], c1.field, 12) == 6
