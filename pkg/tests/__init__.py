"""Test suite for the evolgebra package."""
