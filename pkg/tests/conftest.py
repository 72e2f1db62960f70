import pytest

from gquadforms.csa import Quaternion
from gquadforms.funcfield import Poly, RatFunc


P = 3


@pytest.fixture(scope="session")
def h1():
    return Quaternion(RatFunc.from_int(P, -1), RatFunc.t(P))


@pytest.fixture(scope="session")
def h2():
    t = Poly.t(P)
    one = Poly.one(P)
    return Quaternion(RatFunc.from_int(P, -1), RatFunc((t - one) * (t - one.scale(2))))


@pytest.fixture(scope="session")
def bundle1(h1):
    from gquadforms.construct import bundle

    return bundle(h1, prefix="g")


@pytest.fixture(scope="session")
def bundle2(h2):
    from gquadforms.construct import bundle

    return bundle(h2, prefix="h")


@pytest.fixture(scope="session")
def tensor_bundle(bundle1, bundle2):
    from gquadforms.construct import tensor_pair

    return tensor_pair(bundle1, bundle2)


@pytest.fixture(scope="session")
def pipeline_report(h1, h2):
    from gquadforms.construct import counterexample_pipeline

    return counterexample_pipeline(h1, h2)
