"""Registry of available estimators."""
from typing import Dict, List, Type

from ..errors import UsageError
from ..graph.trees import TreePartition
from ..model.ising import IsingModel
from .base import BaseEstimator


class EstimatorRegistry:
    """Estimator classes by name."""

    _estimators: Dict[str, Type[BaseEstimator]] = {}

    @classmethod
    def register(cls, name: str, estimator_class: Type[BaseEstimator]):
        cls._estimators[name] = estimator_class

    @classmethod
    def get_estimator(cls, name: str, model: IsingModel, partition: TreePartition) -> BaseEstimator:
        estimator_class = cls._estimators.get(name)
        if estimator_class is None:
            raise UsageError(f"unknown estimator {name!r}; available: {', '.join(cls.list_estimators())}")
        return estimator_class(model, partition)

    @classmethod
    def list_estimators(cls) -> List[str]:
        return sorted(cls._estimators)

    @classmethod
    def has_estimator(cls, name: str) -> bool:
        return name in cls._estimators


def register_estimator(name: str):
    """Decorator to register an estimator class."""
    def decorator(cls: Type[BaseEstimator]):
        EstimatorRegistry.register(name, cls)
        return cls
    return decorator
