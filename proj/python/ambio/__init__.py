"""Spatial audio augmentation: FOA encoding, spatial captions, conditioning matrices and metrics."""

from ._core import (
    AmbioError,
    Trajectory,
    augment_corpus,
    circular_l1,
    conditioning_tensor,
    encode_moving,
    encode_static,
    estimate_doa,
    evaluate_pair,
    map_to_language,
    mrstft_distance,
    preprocess,
    read_foa,
    sample_dynamic,
    sample_static,
    signed_azimuth_delta,
    spatial_angle,
    spatial_caption,
    temporal_conditions,
    write_foa,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
