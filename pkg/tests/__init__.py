"""Unit test package for ratiosparse."""
