"""Scikit-learn style front door for the rule-based emotion analyzer.

`EmotionClassifier` compiles its linguistic resources at fit time and then
predicts one of the six emotion labels per input text, so it drops into
pipelines, cross-validation harnesses and metric tooling unchanged. It
learns nothing from data: fit ignores X and y and exists to build the
immutable matcher state.
"""
from __future__ import annotations

import os
from typing import Iterable, Optional, Union

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .analyzer import (
    AnalyzerResources,
    RuleConfig,
    bundled_resource_path,
    classify,
    load_resources,
)
from .model import EMOTIONAL_LABELS, Emotion

PathLike = Union[str, os.PathLike]


def _validate_texts(X) -> list[str]:
    """Check X is an iterable of strings and materialize it."""
    if isinstance(X, (str, bytes)):
        raise TypeError("X must be an iterable of texts, not a single string")
    texts = list(X)
    for i, text in enumerate(texts):
        if not isinstance(text, str):
            raise TypeError(f"X[{i}] is {type(text).__name__}, expected str")
    return texts


class EmotionClassifier(TransformerMixin, BaseEstimator):
    """Rule-based six-emotion text classifier.

    Parameters
    ----------
    lexicon, emoticons, negators : path or None
        Resource files to compile. None selects the bundled demo files.
    negation_window : int
        Max segments between a negator and the emotion term it cancels.
    clause_breakers : str
        Codepoints that terminate negation scope.

    Examples
    --------
    >>> clf = EmotionClassifier().fit()
    >>> clf.predict(["今天开心", "天气预报"]).tolist()
    ['happy', 'neutral']
    """

    def __init__(
        self,
        lexicon: Optional[PathLike] = None,
        emoticons: Optional[PathLike] = None,
        negators: Optional[PathLike] = None,
        negation_window: int = 3,
        clause_breakers: str = "，。！？；,.!?;…\n",
    ):
        self.lexicon = lexicon
        self.emoticons = emoticons
        self.negators = negators
        self.negation_window = negation_window
        self.clause_breakers = clause_breakers

    def fit(self, X=None, y=None) -> "EmotionClassifier":
        """Compile resources. X and y are accepted for API compatibility."""
        rules = RuleConfig(
            negation_window=self.negation_window,
            clause_breakers=frozenset(self.clause_breakers),
        )
        self.resources_: AnalyzerResources = load_resources(
            self.lexicon if self.lexicon is not None else bundled_resource_path("lexicon.tsv"),
            self.emoticons if self.emoticons is not None else bundled_resource_path("emoticons.tsv"),
            self.negators if self.negators is not None else bundled_resource_path("negators.txt"),
            rules,
        )
        self.classes_ = np.array([e.value for e in Emotion], dtype=object)
        return self

    def predict(self, X: Iterable[str]) -> np.ndarray:
        """Label each text; returns an object array of label names."""
        check_is_fitted(self, "resources_")
        texts = _validate_texts(X)
        return np.array(
            [classify(t, self.resources_)[0].value for t in texts], dtype=object
        )

    def transform(self, X: Iterable[str]) -> np.ndarray:
        """Emotion weight vectors, shape (n_texts, 5).

        Columns follow the canonical emotional label order
        (happy, sad, angry, surprise, fear).
        """
        check_is_fitted(self, "resources_")
        texts = _validate_texts(X)
        out = np.zeros((len(texts), len(EMOTIONAL_LABELS)))
        for i, text in enumerate(texts):
            out[i] = classify(text, self.resources_)[1].as_tuple()
        return out

    def _more_tags(self):
        return {"requires_fit": True, "X_types": ["string"]}
