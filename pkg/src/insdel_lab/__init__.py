"""Linear codes over small finite fields, their exact insertion-deletion
distances, and upper bounds on those distances."""

__version__ = "0.1.0"
