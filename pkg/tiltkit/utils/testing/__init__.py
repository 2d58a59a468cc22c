# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .fixtures import ALGEBRAS, DATA_DIR, MODULES, a2_algebra, a2_modules, a2_semisimple, a2_tilting

try:
    import pytest

    pytest.register_assert_rewrite("tiltkit.utils.testing.fixtures")
except ImportError:
    ...
