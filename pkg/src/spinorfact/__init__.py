"""
Spinor polynomial factorization in conformal geometric algebra (cga-spinor-factor).

Factors polynomials with even Cl(4,1) coefficients into linear motion
factors via annihilating points, finds cofactors that make factorization
possible, and recovers the axes of a spherical four-bar linkage.
"""

__version__ = "0.1.0"
