"""
Shared fixtures. Puts src/ on sys.path the same way the launch scripts do.
"""

import os
import sys

import pytest

current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(os.path.dirname(current_dir), 'src'))

from levikit.components import perm_groups, root_datum  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(current_dir), 'data')


@pytest.fixture
def data_path():
    def path(*parts):
        return os.path.join(DATA_DIR, *parts)
    return path


@pytest.fixture(scope="session")
def standard_data():
    """The shipped constructors, keyed by a short label."""
    data = {
        "SL2": root_datum.special_linear_2(),
        "PGL2": root_datum.projective_linear_2(),
        "GL2": root_datum.general_linear(2),
        "GL3": root_datum.general_linear(3),
        "G2": root_datum.adjoint("G", 2),
        "F4": root_datum.adjoint("F", 4),
    }
    for family, rank in [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4)]:
        data[f"{family}{rank}sc"] = root_datum.simply_connected(family, rank)
        data[f"{family}{rank}ad"] = root_datum.adjoint(family, rank)
    return data


@pytest.fixture(scope="session")
def small_groups():
    return {
        "C2": perm_groups.cyclic(2),
        "C6": perm_groups.cyclic(6),
        "S3": perm_groups.symmetric(3),
        "S4": perm_groups.symmetric(4),
        "D8": perm_groups.dihedral(8),
        "Q8": perm_groups.quaternion(),
        "SL2(3)": perm_groups.special_linear_group(2, 3),
        "GL2(3)": perm_groups.general_linear_group(2, 3),
    }
