"""Finite-groupoid models of 2-group actions, principal 2-bundles and
quotient 2-stacks, with every law checked by exhaustive computation."""

__version__ = "0.1.0"
