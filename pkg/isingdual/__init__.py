"""isingdual - primal and dual importance sampling for Ising partition functions"""
__version__ = "0.1.0"
