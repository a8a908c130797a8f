import random
from fractions import Fraction

import numpy as np
import pytest

from stabcodes.exceptions import IllDefined, NonCommutingTerms, NotLagrangian, ResourceLimitExceeded
from stabcodes.services.corpus import load_document
from stabcodes.services.documents import build_form, build_formation
from stabcodes.services.formations import Formation, Submodule
from stabcodes.services.linking_forms import compactify_form, standard_form
from stabcodes.services.modules import presentation_from_rows
from stabcodes.services.weyl import (
    WeylAlgebra,
    WeylElement,
    build_hamiltonian,
    build_rep,
    checked_ground_dim,
    clock_generators,
    dump_spectrum,
    ground_space,
    projector_rank,
    section_change_phases,
    verify_lfs,
    weyl_mul,
)


def _hyperbolic_rep(n, dimension=0, ell=1, section="auto"):
    form = standard_form(presentation_from_rows([[str(n)]], dimension), -1)
    compact = compactify_form(form, ell)
    lagrangian = compact.submodule_generators([form.generators()[0].rep])
    return compact, build_rep(compact, lagrangian, section)


def _random_element(rng, group):
    return tuple(rng.randrange(d) for d in group.invariants)


def _formation(corpus, name):
    _, doc = load_document(corpus)
    return build_formation(doc, name)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_clock_and_shift_recovered(n):
    compact, rep = _hyperbolic_rep(n)
    assert rep.dimension == n
    (h,), (g,) = clock_generators(rep)
    clock = rep.matrix(WeylElement(-rep.xi[h], h))
    assert np.allclose(clock, np.diag(np.diag(clock)))
    eigenvalues = np.diag(clock)
    assert np.allclose(eigenvalues ** n, 1)
    assert all(abs(a - b) > 1e-6 for i, a in enumerate(eigenvalues) for b in eigenvalues[i + 1:])

    shift = rep.matrix(g)
    assert np.allclose(np.abs(shift).sum(axis=0), 1)
    assert np.allclose(np.abs(shift).sum(axis=1), 1)
    commutator = clock @ shift @ clock.conj().T @ shift.conj().T
    expected = np.exp(2j * np.pi * float(compact.pairing(h, g)))
    assert np.allclose(commutator, expected * np.eye(n))
    assert compact.pairing(h, g) in {Fraction(1, n), Fraction(n - 1, n)}


def _toric_rep(ell):
    fm = _formation("toric", "toric")
    compact = compactify_form(fm.form, ell)
    return compact, build_rep(compact, compact.submodule_generators(fm.m.columns()))


WEYL_FIXTURES = {
    "chain-z2": lambda: _hyperbolic_rep(2, dimension=1, ell=2),
    "point-z3": lambda: _hyperbolic_rep(3),
    "toric": lambda: _toric_rep(1),
}


@pytest.mark.parametrize("fixture", sorted(WEYL_FIXTURES))
def test_weyl_relations_hold_exactly(fixture):
    compact, rep = WEYL_FIXTURES[fixture]()
    algebra = rep.algebra
    group = rep.group
    rng = random.Random(4)
    for _ in range(500):
        p, q = _random_element(rng, group), _random_element(rng, group)
        product = rep.matrix(p) @ rep.matrix(q)
        expected = rep.matrix(weyl_mul(algebra, algebra.element(p), algebra.element(q)))
        assert np.allclose(product, expected, rtol=0, atol=1e-12)
        assert algebra.commutator_phase(p, q) == compact.pairing(p, q)


def test_weyl_elements_invert():
    compact, rep = _hyperbolic_rep(4)
    algebra = rep.algebra
    for p in [(1, 0), (1, 3), (2, 1)]:
        a = algebra.element(p, Fraction(1, 3))
        assert weyl_mul(algebra, a, algebra.inverse(a)) == algebra.identity()
        u = rep.matrix(a)
        assert np.allclose(u @ u.conj().T, np.eye(rep.dimension))


def test_symmetric_pairing_has_no_weyl_algebra():
    _, doc = load_document("semion-d0")
    compact = compactify_form(build_form(doc, "semion-linking"), 1)
    with pytest.raises(IllDefined):
        WeylAlgebra(compact)


def test_section_change_is_a_diagonal_conjugation():
    compact, rep = _hyperbolic_rep(3, dimension=1, ell=2)
    lagrangian = rep.lagrangian
    other = build_rep(compact, lagrangian, "minimal")
    phases = section_change_phases(rep, other)
    d = np.diag([np.exp(1j * np.pi * float(t)) for t in phases])
    rng = random.Random(8)
    for _ in range(6):
        p = _random_element(rng, rep.group)
        assert np.allclose(other.matrix(p), np.linalg.inv(d) @ rep.matrix(p) @ d)


def test_rep_requires_a_lagrangian():
    form = standard_form(presentation_from_rows([["2"]], 0), -1)
    compact = compactify_form(form, 1)
    with pytest.raises(NotLagrangian):
        build_rep(compact, [])
    lagrangian = compact.submodule_generators([form.generators()[0].rep])
    with pytest.raises(ResourceLimitExceeded):
        build_rep(compact, lagrangian, cap=1)
    with pytest.raises(ValueError):
        build_rep(compact, lagrangian, section="random")


def test_locally_flippable_separators():
    _, rep = _hyperbolic_rep(2, dimension=1, ell=2)
    separators, flippers = clock_generators(rep)
    assert len(separators) == 2
    report = verify_lfs(rep, separators, flippers)
    assert report.commuting
    assert report.joint_spectrum_distinct
    assert report.flip_relations_ok
    assert report.unitary_ok
    assert report.details == []

    broken = verify_lfs(rep, separators, list(reversed(flippers)))
    assert not broken.flip_relations_ok


def test_toric_ground_space():
    h = build_hamiltonian(_formation("toric", "toric"), 2)
    assert h.rep.dimension == 256
    assert len(h.terms) == 8
    assert checked_ground_dim(h) == 4
    assert ground_space(h).energy == pytest.approx(h.energy_floor)


@pytest.mark.parametrize("name", ["product", "swap"])
def test_trivial_codes_have_unique_ground_state(name):
    h = build_hamiltonian(_formation("product", name), 2)
    assert checked_ground_dim(h) == 1
    vector = ground_space(h).vectors[:, 0]
    magnitudes = np.abs(vector)
    if name == "swap":
        assert np.allclose(magnitudes, 0.5)
    else:
        assert np.isclose(magnitudes.max(), 1.0)


def test_cluster_ground_state():
    h = build_hamiltonian(_formation("cluster-like", "cluster"), 3)
    assert projector_rank(h) == 1
    assert checked_ground_dim(h) == 1


def test_spectrum_dump():
    h = build_hamiltonian(_formation("product", "swap"), 2)
    lines = dump_spectrum(h).splitlines()
    assert lines[0] == "-4.0000000000 1"
    assert sum(int(line.split()[1]) for line in lines) == 4


def test_non_commuting_terms_are_rejected():
    _, doc = load_document("hyperbolic-z4")
    swap = build_formation(doc, "swap")
    f = Submodule.from_columns(swap.form.carrier, [[1, 0], [0, 1]])
    with pytest.raises(NonCommutingTerms):
        build_hamiltonian(Formation(swap.form, swap.m, f), 1)
