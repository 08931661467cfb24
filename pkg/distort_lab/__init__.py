"""exact constructions, embeddings and distortion bounds between spaces of continuous functions"""

__version__ = "1.0.0"
