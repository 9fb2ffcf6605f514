"""Exact generating functions for words and lattice paths via the cluster method."""
from .cluster import Alphabet, MarkedWord, PatternSet, cluster_gf, enumerate_clusters, gj_free_monoid
from .network import MonoidNetwork, SeriesMatrix, gamma_star, gj_network, gj_network_weighted, load_network
from .paths import PathModel, gf_statistic, statistic
from .series import TPoly, XSeries

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "MarkedWord",
    "PatternSet",
    "cluster_gf",
    "enumerate_clusters",
    "gj_free_monoid",
    "MonoidNetwork",
    "SeriesMatrix",
    "gamma_star",
    "gj_network",
    "gj_network_weighted",
    "load_network",
    "PathModel",
    "gf_statistic",
    "statistic",
    "TPoly",
    "XSeries",
]
