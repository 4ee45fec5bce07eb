"""Test suite for the dual logarithmic derivative engine."""
