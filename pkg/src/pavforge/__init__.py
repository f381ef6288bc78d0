"""Pseudo-absolute values on global fields, and the structures they carry.

Subpackages and modules:

* ``xreal``     -- exact/interval arithmetic on [0, +infinity]
* ``fields``    -- field descriptors, elements, places, embeddings
* ``pav``       -- the pseudo-absolute-value taxonomy and its evaluator
* ``extension`` -- extension counting, Galois orbits, power-sum growth
* ``pnorm``     -- diagonalizable pseudo-norms and their functor laws
* ``spaces``    -- branch/parameter coordinates, flows, separation, density
* ``reduction`` -- reduction maps to the projective line
* ``cli``       -- command-line interface
"""

__version__ = "0.1.0"
