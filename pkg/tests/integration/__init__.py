"""Inicialização do módulo de testes de integração."""
