"""Exact computations with arc graphs, separating-curve graphs and end spaces.

Subpackages: :mod:`planar` (isotopy classes on punctured disks), :mod:`unicorn`
(unicorn paths), :mod:`graphs` (finite graph models), :mod:`metric`
(hyperbolicity and coarse-geometry checks) and :mod:`ends` (end spaces and
the finite-invariance index). :mod:`service` wraps them in an HTTP API and
:mod:`cli` is a thin client for it.
"""

__version__ = "0.1.0"
