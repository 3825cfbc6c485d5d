"""Quantification of phagocytosis from two-channel time-lapse microscopy.

Library layout:

- imgcore: raster types and pixel primitives
- frameio: TIFF/PNG frame reading and writing
- ingest: dataset discovery, lazy loading, bit-depth conversion, scene parallelism
- normalize: global percentile and Gaussian-reference histogram normalization
- register: translation alignment by cascaded correlation maximization
- qualitycheck: blur rejection and the combined data-quality gate
- aggregates: aggregate segmentation and phagocytosis-event detection
- cellseg: time-coherence instance separation, watershed, metrics and losses
- track: cell track linking and motility statistics
- report: two-condition statistics and CSV emission
- synth: synthetic dataset and test-surface generators
- pipeline: per-scene stage orchestration
- cli: command-line entry point
"""

__version__ = "0.1.0"
