"""
Benchmark sintético de duas modalidades.

Cada modalidade tem C médias de classe (direções unitárias escaladas por
class_separation) e as amostras recebem ruído gaussiano com o desvio da
modalidade. Tudo é determinístico dada a semente.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import structlog
from sklearn.model_selection import train_test_split

from src.exceptions import InvalidInput
from src.models.config import SyntheticConfig

logger = structlog.get_logger()

MODALITIES = ("video", "audio")


@dataclass(frozen=True)
class MultimodalDataset:
    """
    Amostras com features de vídeo e áudio e rótulos.

    Attributes:
        video: Features de vídeo (N, d)
        audio: Features de áudio (N, d)
        labels: Classes verdadeiras (N,)
        num_classes: Número de classes C
    """

    video: np.ndarray
    audio: np.ndarray
    labels: np.ndarray
    num_classes: int

    def __post_init__(self) -> None:
        if not len(self.video) == len(self.audio) == len(self.labels):
            raise InvalidInput("Video, audio and labels must have the same number of samples")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def features(self) -> List[np.ndarray]:
        """Features na ordem de MODALITIES."""
        return [self.video, self.audio]

    def subset(self, indices: np.ndarray) -> "MultimodalDataset":
        return MultimodalDataset(
            video=self.video[indices],
            audio=self.audio[indices],
            labels=self.labels[indices],
            num_classes=self.num_classes,
        )

    def with_audio(self, audio: np.ndarray) -> "MultimodalDataset":
        """Cópia com as features de áudio substituídas."""
        return MultimodalDataset(
            video=self.video, audio=audio, labels=self.labels, num_classes=self.num_classes
        )


def _class_means(rng: np.random.Generator, num_classes: int, feature_dim: int, separation: float) -> np.ndarray:
    """Direções de classe: ortonormais quando C ≤ d, unitárias aleatórias caso contrário."""
    directions = rng.standard_normal((num_classes, feature_dim))
    if num_classes <= feature_dim:
        q, _ = np.linalg.qr(directions.T)
        directions = q.T[:num_classes]
    else:
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    return separation * directions


def generate_synthetic(config: SyntheticConfig) -> MultimodalDataset:
    """
    Gera o benchmark sintético.

    As amostras são ordenadas por classe (samples_per_class de cada).
    """
    rng = np.random.default_rng(config.seed)
    labels = np.repeat(np.arange(config.classes), config.samples_per_class)

    modalities = []
    for noise in (config.video_noise, config.audio_noise):
        means = _class_means(rng, config.classes, config.feature_dim, config.class_separation)
        samples = means[labels] + noise * rng.standard_normal((labels.size, config.feature_dim))
        modalities.append(samples)

    dataset = MultimodalDataset(
        video=modalities[0],
        audio=modalities[1],
        labels=labels,
        num_classes=config.classes,
    )

    logger.info(
        "[generate_synthetic] - dataset_generated",
        samples=len(dataset),
        classes=config.classes,
        feature_dim=config.feature_dim,
        video_noise=config.video_noise,
        audio_noise=config.audio_noise,
        seed=config.seed,
    )
    return dataset


def split_dataset(
    dataset: MultimodalDataset,
    eval_fraction: float,
    seed: int,
) -> Tuple[MultimodalDataset, MultimodalDataset]:
    """
    Divide em treino e avaliação, estratificado por classe.

    Quando alguma classe tem menos de 2 amostras, ou algum dos lados teria
    menos amostras que classes, a divisão não é estratificada.
    """
    indices = np.arange(len(dataset))
    n_eval = int(np.ceil(eval_fraction * len(dataset)))
    if n_eval >= len(dataset):
        raise InvalidInput(f"Dataset of {len(dataset)} samples is too small to split")

    counts = np.bincount(dataset.labels, minlength=dataset.num_classes)
    can_stratify = (
        counts.min() >= 2
        and n_eval >= dataset.num_classes
        and len(dataset) - n_eval >= dataset.num_classes
    )
    stratify = dataset.labels if can_stratify else None

    train_idx, eval_idx = train_test_split(
        indices,
        test_size=eval_fraction,
        random_state=seed,
        stratify=stratify,
    )
    return dataset.subset(np.sort(train_idx)), dataset.subset(np.sort(eval_idx))
