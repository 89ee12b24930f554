import numpy as np
import pytest

from pfdecomp.barcode import Interval
from pfdecomp.decomp import w_spaces
from pfdecomp.exactla import LinAlgError, Subspace, complement_in, enumerate_subspaces
from pfdecomp.filtration import multiplicity
from pfdecomp.persmod import PersistenceModule, random_module
from pfdecomp.sections import (
    Section,
    covers,
    f_sections,
    image_sections,
    is_direct_sum,
    is_disjoint,
    kernel_sections,
    refine,
    section_complements,
    strongly_covers,
)

U2 = Subspace.full(2, 2)
Z2 = Subspace.zero(2, 2)
S = Subspace.span(np.array([[1], [0]]), 2)


def test_is_disjoint_examples():
    assert is_disjoint([Section(Z2, S), Section(S, U2)])
    assert not is_disjoint([Section(Z2, U2), Section(Z2, U2)])
    assert is_disjoint([Section(Z2, U2)])
    with pytest.raises(LinAlgError):
        Section(S, Z2)


def test_covers_examples():
    assert covers([Section(Z2, U2)], 2, 2)
    assert not covers([], 2, 2)
    assert covers([], 0, 2)


def test_strongly_covers_examples():
    assert strongly_covers([Section(Z2, U2)], 2, 2)
    assert not strongly_covers([], 2, 2)
    # a single proper step cannot separate Z = U from Y = S
    assert not strongly_covers([Section(Z2, S)], 2, 2)
    # the full flag 0 < S < U does
    assert strongly_covers([Section(Z2, S), Section(S, U2)], 2, 2)
    with pytest.raises(LinAlgError):
        covers([Section(Z2, U2)], 13, 2)


def test_covers_is_weaker_than_strongly_covers():
    subs = enumerate_subspaces(2, 2)
    pairs = [Section(a, b) for a in subs for b in subs if a <= b]
    for x in pairs:
        for y in pairs:
            fam = [x, y]
            if strongly_covers(fam, 2, 2):
                assert covers(fam, 2, 2)


def test_refine_trivial_factors():
    F = [Section(Z2, S), Section(S, U2)]
    assert refine(F, [Section(Z2, U2)]) == F
    assert refine([Section(Z2, U2)], F) == F


def test_image_and_kernel_sections(m1):
    assert image_sections(m1, 0) == [(0, Section(Subspace.zero(1, 2), Subspace.full(1, 2)))]
    assert image_sections(m1, 1) == [(0, Section(Z2, S)), (1, Section(S, U2))]
    assert kernel_sections(m1, 1) == [(2, Section(Z2, S)), (3, Section(S, U2))]
    one = PersistenceModule(3, (1, 1), (np.array([[1]]),))
    k = Subspace.full(1, 3)
    z = Subspace.zero(1, 3)
    assert image_sections(one, 1) == [(0, Section(z, k)), (1, Section(k, k))]


def test_f_sections_example(m1):
    fam = dict(f_sections(m1, 1))
    assert fam[Interval(1, 2)] == Section(S, U2)
    assert set(fam) == {Interval(0, 1), Interval(0, 2), Interval(1, 1), Interval(1, 2)}


def test_f_sections_is_refinement():
    for seed in range(30):
        V = random_module(seed, 4, [2, 3][seed % 2], 3)
        for t in range(V.n):
            direct = [s for _, s in f_sections(V, t)]
            assert direct == refine(image_sections(V, t), kernel_sections(V, t))


def test_f_sections_split_by_w():
    for seed in range(30):
        V = random_module(seed, 5, 5, 3)
        for t in range(V.n):
            for I, sec in f_sections(V, t):
                W = w_spaces(V, I)[t]
                assert W + sec.lo == sec.hi and (W & sec.lo).is_zero
                assert complement_in(sec.lo, sec.hi).dim == multiplicity(V, I)


def test_direct_sum_from_sections():
    V = random_module(4, 4, 2, 3)
    for t in range(V.n):
        fam = f_sections(V, t)
        assert is_direct_sum(section_complements(fam), V.dims[t], 2)
        assert not is_direct_sum(section_complements(fam) * 2, V.dims[t], 2) or V.dims[t] == 0
