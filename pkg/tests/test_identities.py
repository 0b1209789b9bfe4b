import pytest

from sl3char.exactlinalg import Matrix3, trial_rng
from sl3char.identities import IDENTITIES, _general, check_identity, identity_suite, pol_matrix


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_identity_holds(name):
    report = check_identity(name, seed=11, trials=10)
    assert report["ok"], report["counterexamples"]


def test_cayley_hamilton_at_identity():
    lhs, rhs = IDENTITIES["cayley_hamilton"](trial_rng(0, 0))
    assert lhs == rhs
    I3 = Matrix3.identity()
    assert I3 @ I3 @ I3 - (I3 @ I3).scale(3) + I3.scale(3) - I3 == Matrix3.zero()


def test_pol_with_zero_argument():
    x = _general(trial_rng(1, 1))
    assert pol_matrix(Matrix3.zero(), x) == Matrix3.zero()


def test_misprinted_x2zy2_variant_fails():
    # the variant with pol(y, x) in place of pol(y, xz) is not an identity
    rng = trial_rng(2, 0)
    x, y, z = (_general(rng) for _ in range(3))
    rhs = (x @ y @ y @ x @ z).scale(-1) - x @ y @ x @ z @ y + x @ pol_matrix(y, x)
    assert x @ x @ z @ y @ y != rhs


def test_suite_report_shape():
    report = identity_suite(seed=1, trials=2)
    assert report["ok"]
    assert len(report["checks"]) == len(IDENTITIES)
    assert all(c["trials"] == 2 for c in report["checks"])
