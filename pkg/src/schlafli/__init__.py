"""27 lines on a smooth cubic surface: configuration combinatorics, W(E6),
Galois cohomology of the Picard lattice, Brauer classes of triplets,
explicit descent models, finite-field reduction data, height-bounded point
search, and local norm-residue evaluation."""

__version__ = "0.1.0"
