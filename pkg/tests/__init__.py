"""Tests for quasient."""
