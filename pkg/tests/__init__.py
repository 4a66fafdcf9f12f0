"""Tests for the logch solver."""
