"""Rees algebras, Hasse derivatives and constructive resolution workbench."""
