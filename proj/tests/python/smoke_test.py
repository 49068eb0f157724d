"""Smoke tests for the python bindings: build a tripod curve, compute
holonomies, compare with the closed forms, and drive one protocol run."""

import math
import sys

import numpy as np

import odholo as oh


def approx(a, b, tol=1e-9):
    return np.abs(np.asarray(a) - np.asarray(b)).max() <= tol


def test_kernels():
    z = np.array([[2.0, 0.0], [0.0, 0.0]], dtype=complex)
    assert approx(oh.phi_map(z), np.diag([1.0, 0.0]))
    assert oh.numerical_rank(z) == 1
    assert oh.is_unitary(np.eye(3, dtype=complex), 1e-12)
    u, s, v = oh.svd(z)
    assert approx(s, [2.0, 0.0])
    assert approx(u @ np.diag(s).astype(complex) @ v.conj().T, z, 1e-12)


def test_tripod_holonomy():
    path = oh.TripodPath.linear(1.1, 0.0, 1.0)  # phi == 0 so Z = 0
    assert abs(oh.tripod_z(path)) < 1e-12
    curve = oh.tripod_curve(path, oh.uniform_grid(200))
    table = oh.build_sigma_table(curve)
    assert table.unitarity_defect() < 1e-10

    r = oh.holonomy_of_order(table, [2, 0], rank_rel=1e-6, zero_abs=1e-6)
    expected = np.array([[-1.0, 0.0], [0.0, 0.0]], dtype=complex)
    assert approx(r.holonomy, expected, 1e-8)
    assert r.rank == 1
    assert r.status == oh.HolonomyStatus.partial

    oracle = oh.tripod_oracle(path)
    for entry in oracle.entries:
        res = oh.holonomy_of_order(table, entry.seq, rank_rel=1e-6, zero_abs=1e-6)
        assert res.status == entry.status, entry.label
        assert approx(res.holonomy, entry.holonomy, 1e-6), entry.label


def test_protocol():
    path = oh.TripodPath.linear(math.pi / 2, math.pi / 2, 1.0)
    curve = oh.tripod_curve(path, oh.uniform_grid(150))
    ex = oh.extract_filtering_holonomy(curve, [2, 0])
    assert abs(ex.p_max - 13.0 / 32.0) < 1e-6
    run = oh.run_filtering_protocol(curve, [2, 0], 150, ex.v_star)
    assert run.cross_check_error < 1e-10
    assert 0.25 < run.p <= ex.p_max + 1e-9
    assert run.post_selection_weight <= 1.0 + 1e-12

    ident = np.eye(curve.ambient_dim, dtype=complex)
    run_id = oh.run_filtering_protocol(curve, [2, 0], 150, ident)
    assert run_id.p <= run.p + 1e-9


def test_enumeration_and_random_curves():
    seqs = oh.enumerate_strict_sequences(3, 2)
    assert len(seqs) == 6
    curve = oh.random_unitary_curve([1, 1, 2], oh.uniform_grid(40), 7, cyclic=True)
    assert curve.is_cyclic(1e-12)
    table = oh.build_sigma_table(curve)
    for seq in seqs:
        res = oh.holonomy_of_order(table, seq)
        assert res.status == oh.HolonomyStatus.undefined


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
