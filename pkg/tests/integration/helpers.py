"""
Construção de logits com opiniões conhecidas.
"""

import numpy as np

# (classe predita, classe verdadeira, incerteza): 3 HT, 1 HF, 2 LT, 1 LF com limiar 0.5
SEVEN_PREDICTIONS = [
    (0, 0, 0.1),
    (1, 1, 0.2),
    (2, 2, 0.3),
    (0, 1, 0.4),
    (1, 1, 0.6),
    (2, 2, 0.7),
    (0, 2, 0.9),
]


def logits_for(predicted: int, uncertainty: float, num_classes: int = 3) -> list:
    """
    Logits cuja opinião tem a classe e a incerteza pedidas.

    As demais classes recebem logit −50 (evidência 1 em float64), então
    e_c = C/u − (C − 1).
    """
    evidence = num_classes / uncertainty - (num_classes - 1)
    logits = [-50.0] * num_classes
    logits[predicted] = float(np.log(np.expm1(evidence - 1.0)))
    return logits


def logits_for_opinion(beliefs, uncertainty) -> list:
    """Inverte b = (e − 1)/S, u = C/S e e = softplus(α) + 1."""
    strength = len(beliefs) / uncertainty
    return [float(np.log(np.expm1(b * strength))) for b in beliefs]
