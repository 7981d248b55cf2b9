import numpy as np
import pytest

from quartsearch.congruence import CaseId, SearchConfig


def small_config(case=CaseId.N, bound=100, p=101, **kw):
    kw.setdefault("table_bits", 10)
    kw.setdefault("bucket_count_bits", 4)
    kw.setdefault("bucket_capacity_bits", 6)
    return SearchConfig(bound=bound, case=case, page_prime=p, **kw)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
