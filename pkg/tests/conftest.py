"""Keeps tests/ importable so test modules can share the oracle helpers."""
