"""Tests for the mixhom package."""
