"""Testes do trusted-fusion."""
