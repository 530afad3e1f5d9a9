"""Dense Eisenstein-Jacobi networks with independent spanning trees."""
__version__ = "0.1.0"
