from .ids import IdMap
from .ingest import (
    IngestedDataset,
    IngestionStats,
    load_dataset,
    load_dataset_bundle,
    parse_ratings,
    parse_trust_edges,
    save_dataset,
    write_id_maps,
)
from .ratings import RatingsTable
from .spectral import SpectralEstimate, spectral_radius
from .trust_graph import Convention, DegreeMode, DegreeVector, TrustGraph, build_trust_graph, degree_vector

__all__ = [
    "Convention",
    "DegreeMode",
    "DegreeVector",
    "IdMap",
    "IngestedDataset",
    "IngestionStats",
    "RatingsTable",
    "SpectralEstimate",
    "TrustGraph",
    "build_trust_graph",
    "degree_vector",
    "load_dataset",
    "load_dataset_bundle",
    "parse_ratings",
    "parse_trust_edges",
    "save_dataset",
    "spectral_radius",
    "write_id_maps",
]
