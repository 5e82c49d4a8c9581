import json
import math
import random

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from conftest import trees
from hypotree import spectral
from hypotree.constructions import figure1, max_nullity_tree, path, star, t6, tstar
from hypotree.enumeration import free_trees
from hypotree.spectral import (
    DENSE,
    EXACT,
    CharPoly,
    InternalInconsistency,
    NonConvergence,
    char_poly,
    eigenvalues,
    energy,
    energy_upper_bound,
    matching_number,
    nullity,
)
from hypotree.tree import coalesce, new_tree, relabel
from oracles import char_poly_by_interpolation, max_matching_brute, path_energy

# from bisection on y^2 - 5y + 3 (tests/oracles.bisect_root)
T6_POSITIVE_EIGS = (0.8349996181244667, 2.074313293051943)
# sum of |2 cos(k pi / 5)|, k = 1..4
P4_ENERGY = 4.47213595499958

ENERGY_SCHEMA = {
    "type": "object",
    "required": ["n", "energy", "error_bound", "nullity", "eigenvalues", "method", "char_poly_coeffs"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "energy": {"type": "number", "minimum": 0},
        "error_bound": {"type": "number", "minimum": 0},
        "nullity": {"type": "integer", "minimum": 0},
        "eigenvalues": {"type": "array", "items": {"type": "number"}},
        "method": {"enum": [EXACT, DENSE]},
        "char_poly_coeffs": {"type": "array", "items": {"type": "string", "pattern": "^-?[0-9]+$"}},
    },
}


def random_tree(rng, n):
    t = new_tree(n, [(v, rng.randrange(v)) for v in range(1, n)])
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(t, perm)


# -- characteristic polynomial ----------------------------------------------


def test_char_poly_examples():
    assert char_poly(path(2)).coeffs == (-1, 0, 1)
    assert char_poly(star(4)).coeffs == (0, 0, -3, 0, 1)
    assert char_poly(figure1("W")).coeffs == (0, 0, 0, 8, 0, -6, 0, 1)
    assert char_poly(new_tree(1, [])).coeffs == (0, 1)


@given(trees(max_n=9))
def test_char_poly_matches_determinant_oracle(t):
    assert list(char_poly(t).coeffs) == char_poly_by_interpolation(t.n, t.edges)


@given(trees(max_n=30))
def test_char_poly_is_matching_polynomial(t):
    cp = char_poly(t)
    n = t.n
    assert cp.degree == n and cp.coeffs[-1] == 1
    m = cp.matching_counts()
    assert m[0] == 1
    if n >= 2:
        assert m[1] == n - 1
    assert all(c == 0 for i, c in enumerate(cp.coeffs) if (n - i) % 2)
    assert all(x >= 0 for x in m)


def test_big_coefficients_stay_exact():
    cp = char_poly(path(120))
    # number of perfect matchings of P_120 is 1, of k-matchings is C(n-k, k)
    assert cp.matching_counts()[60] == 1
    assert cp.matching_counts()[30] == math.comb(90, 30)
    assert cp.matching_counts()[30] > 2**64


# -- matching number and nullity ---------------------------------------------


def test_matching_number_examples():
    assert matching_number(path(4)) == 2
    for n in range(2, 9):
        assert matching_number(star(n)) == 1
    assert matching_number(figure1("W")) == 2 == max_matching_brute(7, figure1("W").edges)


@given(trees(max_n=9))
def test_matching_number_brute(t):
    assert matching_number(t) == max_matching_brute(t.n, t.edges)


def test_nullity_examples():
    for n in range(2, 10):
        assert nullity(star(n)) == n - 2
    assert nullity(path(4)) == 0
    assert nullity(max_nullity_tree(11, 5)) == 7


@pytest.mark.parametrize("n", range(1, 17))
def test_nullity_consistency_exhaustive(n):
    for t in free_trees(n):
        cp = char_poly(t)
        assert n - 2 * matching_number(t) == cp.trailing_zeros()


def test_nullity_detects_inconsistency():
    t = path(4)
    bad = CharPoly((0, 0, 1, 0, 1))
    with pytest.raises(InternalInconsistency):
        nullity(t, bad)


# -- eigenvalues and energy --------------------------------------------------


@pytest.mark.parametrize("method", [EXACT, DENSE])
def test_eigenvalue_examples(method):
    assert eigenvalues(path(2), 1e-9, method) == pytest.approx([-1, 1], abs=1e-9)
    assert eigenvalues(star(5), 1e-9, method) == pytest.approx([-2, 0, 0, 0, 2], abs=1e-9)
    a, b = T6_POSITIVE_EIGS
    assert eigenvalues(t6(), 1e-9, method) == pytest.approx([-b, -a, 0, 0, a, b], abs=1e-9)


@pytest.mark.parametrize("method", [EXACT, DENSE])
def test_energy_examples(method):
    assert energy(star(5), 1e-9, method).energy == pytest.approx(4, abs=1e-9)
    assert energy(figure1("W"), 1e-9, method).energy == pytest.approx(6.828, abs=1e-3)
    assert energy(tstar(10, 3), 1e-9, method).energy == pytest.approx(9.61686, abs=5e-6)
    assert energy(path(4), 1e-9, method).energy == pytest.approx(P4_ENERGY, abs=1e-9)
    assert path_energy(4) == pytest.approx(P4_ENERGY, abs=1e-14)


def test_exact_error_bound_is_tight():
    res = energy(tstar(26, 3), 1e-9)
    assert res.error_bound < 26 * 1e-9
    assert res.method == EXACT


def test_error_bound_covers_truth():
    # W has spectrum +-2, +-sqrt 2, 0^3
    truth = 4 + 2 * math.sqrt(2)
    for method in (EXACT, DENSE):
        for tol in (1e-3, 1e-6, 1e-9):
            res = energy(figure1("W"), tol, method)
            assert abs(res.energy - truth) <= res.error_bound


def test_coarse_tolerance_reports_wider_bound():
    loose = energy(tstar(14, 3), 1e-3)
    tight = energy(tstar(14, 3), 1e-10)
    assert loose.error_bound > tight.error_bound
    assert abs(loose.energy - tight.energy) <= loose.error_bound + tight.error_bound


def test_dense_nonconvergence():
    a = spectral.adjacency_matrix(tstar(20, 3))
    with pytest.raises(NonConvergence):
        spectral._jacobi_eigenvalues(a, 1e-9, max_sweeps=2)
    vals, off, sweeps = spectral._jacobi_eigenvalues(a, 1e-9)
    assert off < 1e-9 and sweeps <= 15


def test_bad_arguments():
    with pytest.raises(ValueError):
        energy(path(3), 0.0)
    with pytest.raises(ValueError):
        energy(path(3), 1e-9, "lanczos")


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv("HYPOTREE_TOL", "1e-4")
    assert spectral.default_tol() == 1e-4
    res = energy(tstar(12, 3))
    assert res.error_bound <= 12 * 1e-4


def test_energy_json_schema():
    doc = json.loads(energy(figure1("W")).to_json())
    jsonschema.validate(doc, ENERGY_SCHEMA)
    assert doc["char_poly_coeffs"] == ["0", "0", "0", "8", "0", "-6", "0", "1"]
    jsonschema.validate(json.loads(energy(star(6), method=DENSE).to_json()), ENERGY_SCHEMA)


# -- upper bound ------------------------------------------------------------


def test_upper_bound_examples():
    for n in range(2, 12):
        s = star(n)
        assert energy_upper_bound(s) == pytest.approx(2 * math.sqrt(n - 1))
        assert energy(s).energy == pytest.approx(energy_upper_bound(s), abs=1e-12)
    assert energy_upper_bound(max_nullity_tree(11, 5)) == pytest.approx(math.sqrt(80))
    assert math.sqrt(80) < 9
    assert energy_upper_bound(path(4)) == pytest.approx(math.sqrt(24))
    assert P4_ENERGY < math.sqrt(24)


# -- properties ---------------------------------------------------------------


def check_spectrum(res, n):
    eig = res.eigenvalues
    err = res.error_bound
    assert len(eig) == n
    assert abs(sum(eig)) <= err + 1e-12
    assert abs(sum(x * x for x in eig) - 2 * (n - 1)) <= 2 * math.sqrt(n) * err + 1e-10
    for a, b in zip(eig, reversed(eig)):
        assert abs(a + b) <= err + 1e-12
    assert sum(abs(x) for x in eig) == pytest.approx(res.energy, abs=err + 1e-12)


@given(trees(max_n=25), st.sampled_from([EXACT, DENSE]))
def test_spectral_identities(t, method):
    check_spectrum(energy(t, 1e-9, method), t.n)


@pytest.mark.parametrize("seed", range(4))
def test_backend_agreement_up_to_60(seed):
    rng = random.Random(seed)
    for n in (rng.randint(2, 20), rng.randint(21, 40), rng.randint(41, 60), 60):
        t = random_tree(rng, n)
        a = energy(t, 1e-9, EXACT)
        b = energy(t, 1e-9, DENSE)
        assert abs(a.energy - b.energy) <= a.error_bound + b.error_bound
        assert abs(a.energy - b.energy) <= 1e-8
        assert a.nullity == b.nullity


@given(trees(min_n=2, max_n=20), trees(min_n=2, max_n=20), st.data())
@settings(max_examples=100)
def test_coalescence_inequality(g, h, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, h.n - 1))
    a, b, c = energy(g), energy(h), energy(coalesce(g, u, h, v))
    assert c.energy <= a.energy + b.energy + a.error_bound + b.error_bound + c.error_bound


@given(trees(max_n=12), st.data())
def test_coalescence_with_single_vertex_is_identity(h, data):
    v = data.draw(st.integers(0, h.n - 1))
    k1 = new_tree(1, [])
    glued = coalesce(k1, 0, h, v)
    assert energy(glued).energy == energy(h).energy + energy(k1).energy


@given(trees(min_n=3, max_n=25))
def test_upper_bound_property(t):
    res = energy(t)
    bound = energy_upper_bound(t)
    assert res.energy <= bound + res.error_bound
    is_star = max(len(a) for a in t.adjacency) == t.n - 1
    if not is_star:
        assert res.energy + res.error_bound < bound


@given(trees(max_n=20), st.randoms(use_true_random=False))
def test_relabelling_invariance(t, rnd):
    perm = list(range(t.n))
    rnd.shuffle(perm)
    a, b = energy(t), energy(relabel(t, perm))
    assert a.energy == b.energy and a.nullity == b.nullity
    assert char_poly(t) == char_poly(relabel(t, perm))
