import pytest

from greenroute.services.formulation.literal import (
    ENDPOINT_FAMILY,
    ORIGINAL_MODEL_NAME,
    TRANSIT_FAMILY,
    build_original_literal,
)
from greenroute.services.generate.random_instance import generate_instance_file
from greenroute.services.ingest.instance_loader import build_instance
from tests.helpers import fixture_spec


class TestOriginalLiteral:

    def test_t1_reports_both_families(self, t1):
        reading = build_original_literal(t1)
        assert reading.model is None
        families = {defect.family for defect in reading.defects}
        assert families == {TRANSIT_FAMILY, ENDPOINT_FAMILY}

    def test_t1_endpoint_witness(self, t1):
        """The only non-source router of T1 is r2."""
        endpoint = [d for d in build_original_literal(t1).defects if d.family == ENDPOINT_FAMILY]
        assert len(endpoint) == 1
        assert endpoint[0].axes == ("d", "r")
        assert endpoint[0].witness == (0, 1)
        assert "0 = 1" in endpoint[0].description

    def test_t3_endpoint_count(self, t3):
        endpoint = [d for d in build_original_literal(t3).defects if d.family == ENDPOINT_FAMILY]
        assert len(endpoint) == t3.demand_count * (t3.router_count - 1)
        assert "0 = -1" in endpoint[0].description or "0 = -1" in endpoint[1].description

    def test_cardless_source_router_is_skipped(self):
        spec = fixture_spec("t1.json")
        spec["routers"].append({"id": "r3", "power_T": "1", "cards": []})
        spec["demands"] = [{"source_router": "r3", "target_router": "r2", "volume": "5"}]
        instance = build_instance(spec)
        endpoint = [d for d in build_original_literal(instance).defects if d.family == ENDPOINT_FAMILY]
        assert [d.witness for d in endpoint] == [(0, 0), (0, 1)]
        assert "has no port" in endpoint[0].description
        assert "0 = -1" in endpoint[0].description and "0 = -1" not in endpoint[1].description

    def test_transit_witness_is_in_range(self, t3):
        transit = [d for d in build_original_literal(t3).defects if d.family == TRANSIT_FAMILY]
        assert len(transit) == t3.demand_count
        d, r, p = transit[0].witness
        assert d < t3.demand_count and r < t3.router_count and p < t3.port_count
        assert t3.router_of_port(p) == r

    def test_no_demands_gives_original_model(self, empty_instance):
        reading = build_original_literal(empty_instance)
        assert reading.defects == ()
        assert reading.model is not None
        assert reading.model.name == ORIGINAL_MODEL_NAME
        assert "flow" not in reading.model.family_counts()
        assert "symmetry" not in reading.model.family_counts()

    @pytest.mark.parametrize("seed", range(25))
    def test_every_generated_instance_has_defects(self, seed):
        instance = build_instance(generate_instance_file(seed))
        families = {defect.family for defect in build_original_literal(instance).defects}
        assert families == {TRANSIT_FAMILY, ENDPOINT_FAMILY}
