"""Synthetic training data: sampled dielectric models and their force curves."""

from .dataset import Dataset, DatasetSample, DatasetSpec, default_separations, generate_dataset
from .io import read_dataset, write_dataset
from .sampling import SamplingRanges, sample_model
from .split import PartitionView, TrainingSet, ValidationSet, split

__all__ = [
    "Dataset",
    "DatasetSample",
    "DatasetSpec",
    "PartitionView",
    "SamplingRanges",
    "TrainingSet",
    "ValidationSet",
    "default_separations",
    "generate_dataset",
    "read_dataset",
    "sample_model",
    "split",
    "write_dataset",
]
