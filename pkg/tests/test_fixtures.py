"""
Tests for the synthetic model generators.
"""

import pytest

from splitplan.cutpoints import blocks, enumerate_cutpoints
from splitplan.exceptions import FixtureError
from splitplan.fixtures import (
    SHAPES,
    TABLE1_SHAPES,
    chain_document,
    gen_fixture,
    random_document,
    residual_inputs,
    table1_like_document,
)
from splitplan.graph import is_sequential, load_graph


class TestTable1Like:
    """Test cases for graphs shaped like known models."""

    @pytest.mark.parametrize("model", sorted(TABLE1_SHAPES))
    def test_layer_and_cut_counts(self, model):
        layers, cuts = TABLE1_SHAPES[model]

        graph = load_graph(table1_like_document(model))

        assert len(graph) == layers
        assert len(enumerate_cutpoints(graph)) == cuts

    def test_sequential_models_are_chains(self):
        assert is_sequential(load_graph(table1_like_document("vgg16")))
        assert not is_sequential(load_graph(table1_like_document("resnet50")))

    def test_name_is_case_insensitive(self):
        assert table1_like_document("VGG19")["name"] == "vgg19"

    def test_unknown_model(self):
        with pytest.raises(FixtureError, match="Unknown model"):
            table1_like_document("inception")

    def test_residual_blocks_hold_skip_connections(self):
        graph = load_graph(table1_like_document("densenet"))

        parallel = [block for block in blocks(graph) if block.is_parallel]

        assert parallel
        assert sum(len(block) for block in blocks(graph)) == 429

    def test_impossible_shape(self):
        with pytest.raises(FixtureError, match="Cannot build"):
            residual_inputs(5, 10)


class TestGenerators:
    """Test cases for the other generators."""

    def test_same_seed_same_document(self):
        assert random_document(12, seed=3) == random_document(12, seed=3)
        assert chain_document(6, seed=1) != chain_document(6, seed=2)

    def test_chain_names(self):
        document = chain_document(3)

        assert document["name"] == "chain3"
        assert [layer["name"] for layer in document["layers"]] == ["chain3_l1", "chain3_l2", "chain3_l3"]

    def test_input_layer_carries_an_image(self):
        graph = load_graph(chain_document(4))

        assert graph.layer(graph.input_layer).output_bytes == 153_600

    def test_cloud_is_faster(self):
        graph = load_graph(chain_document(10, seed=5))

        for layer in graph.layers:
            assert layer.base_latency["cloud"] < layer.base_latency["edge"]

    @pytest.mark.parametrize("n", [1, 2, 7, 20])
    def test_random_documents_are_valid(self, n):
        graph = load_graph(random_document(n, seed=n))

        assert len(graph) == n
        assert graph.name == f"random{n}_s{n}"

    def test_empty_chain(self):
        with pytest.raises(FixtureError):
            chain_document(0)

    def test_empty_random(self):
        with pytest.raises(FixtureError):
            random_document(0)


class TestGenFixture:
    """Test cases for gen_fixture."""

    @pytest.mark.parametrize(
        "shape,kwargs,cuts",
        [
            ("chain", {}, 4),
            ("chain", {"n": 23}, 22),
            ("chain", {"n": 1}, 0),
            ("diamond", {}, 1),
            ("fig2", {}, 3),
            ("table1-like", {"model": "vgg16"}, 22),
        ],
    )
    def test_shapes(self, shape, kwargs, cuts):
        graph = load_graph(gen_fixture(shape, **kwargs))

        assert len(enumerate_cutpoints(graph)) == cuts

    def test_every_shape_is_known(self):
        assert set(SHAPES) == {"chain", "diamond", "fig2", "table1-like", "random"}

    def test_random_default_size(self):
        assert len(gen_fixture("random", seed=4)["layers"]) == 10

    def test_unknown_shape(self):
        with pytest.raises(FixtureError, match="Unknown fixture shape"):
            gen_fixture("ring")

    def test_table1_like_needs_model(self):
        with pytest.raises(FixtureError, match="'model' is required"):
            gen_fixture("table1-like")
