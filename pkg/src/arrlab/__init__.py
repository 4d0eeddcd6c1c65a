"""Exact analysis of complex line arrangements: lattices, syzygies, freeness."""
