"""Growth of graded quadratic algebras built from linear-recurrence data."""

__version__ = "0.1.0"
