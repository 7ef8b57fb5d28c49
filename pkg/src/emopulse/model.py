"""Canonical domain types: emotion labels, region codes, tweets."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional


class Emotion(str, Enum):
    """The six emotion labels a tweet can carry.

    The five non-neutral labels are the "emotional" labels. Their listing
    order here is fixed and meaningful: it breaks ties in argmax_label and
    fixes the slot order of EmotionVector and of all serialized outputs.
    """

    HAPPY = "happy"
    SAD = "sad"
    ANGRY = "angry"
    SURPRISE = "surprise"
    FEAR = "fear"
    NEUTRAL = "neutral"


#: The five emotional labels in canonical order (neutral excluded).
EMOTIONAL_LABELS: tuple[Emotion, ...] = (
    Emotion.HAPPY,
    Emotion.SAD,
    Emotion.ANGRY,
    Emotion.SURPRISE,
    Emotion.FEAR,
)

#: Slot index of each emotional label inside an EmotionVector.
EMOTION_INDEX: dict[Emotion, int] = {e: i for i, e in enumerate(EMOTIONAL_LABELS)}

_EMOTION_BY_NAME = {e.value: e for e in Emotion}


def parse_emotion(label: str) -> Emotion:
    """Parse a label name, case-insensitively, into an Emotion.

    Raises ValueError for anything outside the closed six-label set.
    """
    emotion = _EMOTION_BY_NAME.get(label.lower())
    if emotion is None:
        raise ValueError(f"unknown emotion label: {label!r}")
    return emotion


class Region(str, Enum):
    """One of the 36 canonical region codes.

    34 province-level divisions of China (lowercase pinyin, including
    hongkong, macau and taiwan) plus the two catch-all codes `abroad`
    and `other`. The set is closed: parsing any other string fails.
    """

    ANHUI = "anhui"
    BEIJING = "beijing"
    CHONGQING = "chongqing"
    FUJIAN = "fujian"
    GANSU = "gansu"
    GUANGDONG = "guangdong"
    GUANGXI = "guangxi"
    GUIZHOU = "guizhou"
    HAINAN = "hainan"
    HEBEI = "hebei"
    HEILONGJIANG = "heilongjiang"
    HENAN = "henan"
    HONGKONG = "hongkong"
    HUBEI = "hubei"
    HUNAN = "hunan"
    JIANGSU = "jiangsu"
    JIANGXI = "jiangxi"
    JILIN = "jilin"
    LIAONING = "liaoning"
    MACAU = "macau"
    NEIMENGGU = "neimenggu"
    NINGXIA = "ningxia"
    QINGHAI = "qinghai"
    SHAANXI = "shaanxi"
    SHANDONG = "shandong"
    SHANGHAI = "shanghai"
    SHANXI = "shanxi"
    SICHUAN = "sichuan"
    TAIWAN = "taiwan"
    TIANJIN = "tianjin"
    XINJIANG = "xinjiang"
    XIZANG = "xizang"
    YUNNAN = "yunnan"
    ZHEJIANG = "zhejiang"
    ABROAD = "abroad"
    OTHER = "other"


#: The 34 province-level divisions, i.e. every region except abroad/other.
PROVINCES: tuple[Region, ...] = tuple(
    r for r in Region if r not in (Region.ABROAD, Region.OTHER)
)

_REGION_BY_CODE = {r.value: r for r in Region}


def parse_region(code: str) -> Region:
    """Parse a canonical region code. Raises ValueError when unknown."""
    region = _REGION_BY_CODE.get(code)
    if region is None:
        raise ValueError(f"unknown region code: {code!r}")
    return region


@dataclass(frozen=True)
class EmotionVector:
    """Nonnegative weight mass per emotional label.

    Neutral has no slot: a neutral text is simply one whose vector is
    all zero.
    """

    happy: float = 0.0
    sad: float = 0.0
    angry: float = 0.0
    surprise: float = 0.0
    fear: float = 0.0

    def __post_init__(self) -> None:
        for slot in self.as_tuple():
            if slot < 0:
                raise ValueError(f"negative emotion weight in {self}")

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.happy, self.sad, self.angry, self.surprise, self.fear)

    def is_zero(self) -> bool:
        return not any(self.as_tuple())

    def __add__(self, other: "EmotionVector") -> "EmotionVector":
        a, b = self.as_tuple(), other.as_tuple()
        return EmotionVector(*(x + y for x, y in zip(a, b)))

    def scaled(self, factor: float) -> "EmotionVector":
        return EmotionVector(*(factor * x for x in self.as_tuple()))

    @classmethod
    def zero(cls) -> "EmotionVector":
        return cls()

    @classmethod
    def single(cls, label: Emotion, weight: float = 1.0) -> "EmotionVector":
        """A vector with all mass on one emotional label."""
        slots = [0.0] * 5
        slots[EMOTION_INDEX[label]] = weight
        return cls(*slots)


def argmax_label(vector: EmotionVector) -> Emotion:
    """The emotional label with the largest weight, or neutral.

    An all-zero vector maps to neutral. Ties go to the earlier label in
    the canonical EMOTIONAL_LABELS order, so the result is deterministic.
    """
    best_label = Emotion.NEUTRAL
    best_weight = 0.0
    for label, weight in zip(EMOTIONAL_LABELS, vector.as_tuple()):
        if weight > best_weight:
            best_label = label
            best_weight = weight
    return best_label


@dataclass(frozen=True)
class Tweet:
    """One ingested microblog record.

    `user_region` is where the author registered; `geo_region`, when
    present, is where the tweet was posted. Texts are expected to stay
    within the platform's 140-character habit but longer ones are
    accepted unmodified.
    """

    id: str
    text: str
    created_at: int
    user_region: Region
    geo_region: Optional[Region] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("tweet id must be non-empty")
        if self.created_at < 0:
            raise ValueError(f"tweet {self.id}: created_at must be >= 0")


@dataclass(frozen=True)
class ClassifiedTweet:
    """A tweet with its resolved region and emotion verdict."""

    tweet: Tweet
    label: Emotion
    vector: EmotionVector
    region: Region

    def __post_init__(self) -> None:
        if (self.label is Emotion.NEUTRAL) != self.vector.is_zero():
            raise ValueError(
                f"tweet {self.tweet.id}: label {self.label.value} is "
                f"inconsistent with vector {self.vector.as_tuple()}"
            )
