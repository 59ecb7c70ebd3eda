# test_utils.py
import pytest
from datetime import date
from utils import slugify, default_report_name


class TestSlugify:
    """Test the slugify function."""

    def test_basic_slugification(self):
        assert slugify("Blueprint") == "blueprint"
        assert slugify("Ring Structure") == "ring-structure"

    def test_special_characters(self):
        assert slugify("H3 / D6") == "h3-d6"
        assert slugify("psi[alpha,gamma]") == "psi-alpha-gamma"
        assert slugify("Z/5 (units)") == "z-5-units"

    def test_edge_cases(self):
        """Test edge cases and empty inputs."""
        assert slugify("") == "report"
        assert slugify(None) == "report"
        assert slugify("   ") == "report"
        assert slugify("!@#$%^&*()") == "report"
        assert slugify("τ") == "report"


class TestDefaultReportName:
    """Test the default_report_name function."""

    def test_with_suite(self):
        today = date.today().strftime("%Y-%m-%d")
        assert default_report_name("steinberg") == f"hfold-steinberg-{today}.json"
        assert default_report_name("Ring Structure", "csv") == f"hfold-ring-structure-{today}.csv"

    def test_without_suite(self):
        today = date.today().strftime("%Y-%m-%d")
        assert default_report_name() == f"hfold-all-{today}.json"
        assert default_report_name("") == f"hfold-all-{today}.json"

    def test_filename_safety(self):
        """Generated names never contain path separators."""
        for value in ("../../etc/passwd", "a\\b", "x/y"):
            result = default_report_name(value)
            assert "/" not in result
            assert "\\" not in result
            assert ".." not in result


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
