"""Graph invariant psi, independence complexes, and integral homology checks."""
