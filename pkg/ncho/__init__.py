"""
NCHO - Noncommutative Harmonic Oscillator toolkit
=================================================

Numerical library and command-line front end for the time-dependent
noncommutative harmonic oscillator in two dimensions. Every closed-form
result (coefficient map, Ermakov-Pinney families, invariant eigenstates,
expectation values, energies and uncertainty products) is paired with an
independent numerical oracle.

Modules:
- specfun: Laguerre polynomials, Gauss-Laguerre quadrature, identity checks
- model: NC parameters, Bopp-shift maps, Hamiltonian coefficients, inversion
- ep: Ermakov-Pinney residual, exponential and rational families, Chiellini check
- qstate: eigenfunctions, Lewis phase, expectation values, energies, uncertainties
- invariant: truncated-basis operator algebra and invariance residuals
- config: run configuration loading, validation and presets
- verification: verification suites and result tracking
- cli: the ``ncho`` command
"""

__version__ = "0.1.0"
