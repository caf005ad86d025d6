"""Separable series expansions of |r_1 + ... + r_N|^(-nu) in M dimensions."""
