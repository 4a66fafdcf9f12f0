"""Cahn-Hilliard solver with a logarithmic potential in the g = atanh(u) variable."""
