import pytest

import winverse
import winverse.core


@pytest.mark.parametrize("module", [winverse, winverse.core])
@pytest.mark.parametrize("name", ["np", "linalg", "dataclass", "field", "warnings", "cached_property"])
def test_star_imports_do_not_leak_helpers(module, name):
    assert not hasattr(module, name)


@pytest.mark.parametrize("name", [
    "WeightedProblem", "w_m_weak_core", "core_ep_decompose", "power_pinv", "power_range_basis",
    "outer_inverse_null_rows", "m_weak_core", "Tolerance",
])
def test_public_names_are_exported(name):
    assert hasattr(winverse, name)
    assert hasattr(winverse.core, name)
