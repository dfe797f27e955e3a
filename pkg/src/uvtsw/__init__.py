"""Exact computations for the two-parameter quantum group U_{v,t}(sl_n),
the Hecke algebra H_k(v,t), their R-matrices and Schur-Weyl duality."""

__version__ = "0.1.0"
