"""Topic segmentation and segmentation-evaluation toolkit for oral history
interview transcripts."""

__version__ = "0.1.0"
