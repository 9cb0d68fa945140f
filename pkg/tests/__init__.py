"""Tests for the cyclic F-signature package."""
