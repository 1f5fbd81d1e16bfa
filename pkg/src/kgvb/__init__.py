"""Question answering over a gene-disease knowledge graph, voice-skill style."""

__version__ = "0.1.0"
