"""Integer gradings of quiver algebras kQ/I and automorphism unipotence evidence."""

__version__ = "0.1.0"
