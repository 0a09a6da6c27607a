"""
Pytest configuration and fixtures.
"""

import json
import logging
import os

import pytest

from splitplan.fixtures import chain_document, diamond_document, fig2_document
from splitplan.graph import build_graph, load_graph


def chain_specs(edge, cloud, output_bytes):
    """Layer mappings of a chain with explicit per-layer costs."""
    return [
        {
            "name": f"l{i + 1}",
            "base_latency": {"edge": edge[i], "cloud": cloud[i]},
            "output_bytes": output_bytes[i],
            "inputs": [] if i == 0 else [i - 1],
        }
        for i in range(len(edge))
    ]


@pytest.fixture
def make_chain():
    """Factory for chains with explicit edge/cloud latencies and output sizes."""

    def _make(edge, cloud, output_bytes, name="chain"):
        return build_graph(name, chain_specs(edge, cloud, output_bytes))

    return _make


@pytest.fixture
def chain5_graph():
    return load_graph(chain_document(5))


@pytest.fixture
def diamond_graph():
    return load_graph(diamond_document())


@pytest.fixture
def fig2_graph():
    return load_graph(fig2_document())


@pytest.fixture
def chain5_file(tmp_path):
    """A 5-layer chain model document on disk."""
    path = tmp_path / "chain5.json"
    path.write_text(json.dumps(chain_document(5)), encoding="utf-8")
    return path


@pytest.fixture
def fig2_file(tmp_path):
    path = tmp_path / "fig2.json"
    path.write_text(json.dumps(fig2_document()), encoding="utf-8")
    return path


@pytest.fixture(autouse=True)
def clean_environment():
    """Clean environment variables and global state before each test."""
    # Store original environment
    original_env = os.environ.copy()

    # Clear splitplan-specific environment variables
    for var in [key for key in os.environ if key.startswith("SPLITPLAN_")]:
        del os.environ[var]

    # Clear global state
    import splitplan.config.main

    splitplan.config.main._settings = None

    yield

    # Restore original environment
    os.environ.clear()
    os.environ.update(original_env)

    # Clear global state again
    splitplan.config.main._settings = None
    package_logger = logging.getLogger("splitplan")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
        handler.close()
    package_logger.setLevel(logging.NOTSET)


def pytest_collection_modifyitems(config, items):
    """Modify test collection."""
    for item in items:
        # Add unit marker to tests that don't have any marker
        if not any(marker.name in ["slow", "integration", "unit"] for marker in item.iter_markers()):
            item.add_marker(pytest.mark.unit)
