import io
import json
import random
from collections import Counter

import pytest

from emopulse.evalkit import (
    GoldIdNotPredicted,
    GoldRecord,
    Prediction,
    precision_report,
    read_gold,
    read_predictions,
    sample_for_annotation,
)
from emopulse.model import EMOTIONAL_LABELS, Emotion


def engineered_fixture(targets: dict[Emotion, tuple[int, int]]):
    """Build (gold, predictions) with exact per-class precision
    correct/total for each class."""
    gold, predictions = [], []
    serial = 0
    for label, (correct, total) in targets.items():
        wrong_label = next(e for e in EMOTIONAL_LABELS if e is not label)
        for i in range(total):
            serial += 1
            record_id = f"{label.value}-{serial}"
            predictions.append((record_id, label))
            gold.append(GoldRecord(record_id, label if i < correct else wrong_label))
    return gold, predictions


TABLE_TARGETS = {
    Emotion.HAPPY: (810, 1000),
    Emotion.SAD: (800, 1000),
    Emotion.ANGRY: (820, 1000),
    Emotion.SURPRISE: (840, 1000),
    Emotion.FEAR: (725, 1000),
}


class TestPrecisionReport:
    def test_reported_per_class_values_give_macro_799(self):
        gold, predictions = engineered_fixture(TABLE_TARGETS)
        report = precision_report(gold, predictions)
        assert report.per_class[Emotion.HAPPY] == pytest.approx(0.810)
        assert report.per_class[Emotion.FEAR] == pytest.approx(0.725)
        assert round(report.macro, 3) == 0.799

    def test_perfect_predictions(self):
        gold, predictions = engineered_fixture(
            {e: (10, 10) for e in EMOTIONAL_LABELS}
        )
        report = precision_report(gold, predictions)
        assert all(report.per_class[e] == 1.0 for e in EMOTIONAL_LABELS)
        assert report.macro == 1.0

    def test_direct_enumeration(self):
        # 4 happy predictions, 3 of them gold-happy
        gold = [
            GoldRecord("a", Emotion.HAPPY),
            GoldRecord("b", Emotion.HAPPY),
            GoldRecord("c", Emotion.HAPPY),
            GoldRecord("d", Emotion.SAD),
        ]
        predictions = [(i, Emotion.HAPPY) for i in "abcd"]
        report = precision_report(gold, predictions)
        assert report.per_class[Emotion.HAPPY] == pytest.approx(0.75)
        assert report.support[Emotion.HAPPY] == 4

    def test_undefined_classes_excluded_from_macro(self):
        gold = [GoldRecord("a", Emotion.HAPPY), GoldRecord("b", Emotion.SAD)]
        predictions = [("a", Emotion.HAPPY), ("b", Emotion.HAPPY)]
        report = precision_report(gold, predictions)
        assert report.per_class[Emotion.SAD] is None
        assert report.support[Emotion.SAD] == 0
        assert report.macro == pytest.approx(0.5)

    def test_gold_id_not_predicted(self):
        with pytest.raises(GoldIdNotPredicted, match="mystery"):
            precision_report([GoldRecord("mystery", Emotion.SAD)], [])

    def test_neutral_predictions_not_scored(self):
        gold = [GoldRecord("a", Emotion.HAPPY), GoldRecord("b", Emotion.HAPPY)]
        predictions = [("a", Emotion.HAPPY), ("b", Emotion.NEUTRAL)]
        report = precision_report(gold, predictions)
        assert report.support[Emotion.HAPPY] == 1
        assert report.per_class[Emotion.HAPPY] == 1.0

    def test_predictions_outside_gold_ignored(self):
        gold = [GoldRecord("a", Emotion.HAPPY)]
        predictions = [("a", Emotion.HAPPY), ("zz", Emotion.HAPPY)]
        report = precision_report(gold, predictions)
        assert report.support[Emotion.HAPPY] == 1

    def test_permutation_invariance(self):
        gold, predictions = engineered_fixture(
            {Emotion.HAPPY: (3, 5), Emotion.FEAR: (2, 4)}
        )
        base = precision_report(gold, predictions)
        rng = random.Random(9)
        for _ in range(5):
            shuffled_gold = gold[:]
            shuffled_pred = predictions[:]
            rng.shuffle(shuffled_gold)
            rng.shuffle(shuffled_pred)
            assert precision_report(shuffled_gold, shuffled_pred) == base

    def test_relabeling_symmetry(self):
        gold, predictions = engineered_fixture(
            {Emotion.HAPPY: (3, 5), Emotion.FEAR: (2, 4), Emotion.SAD: (1, 2)}
        )
        swap = {
            Emotion.HAPPY: Emotion.FEAR,
            Emotion.FEAR: Emotion.HAPPY,
        }
        swapped_gold = [GoldRecord(g.id, swap.get(g.gold, g.gold)) for g in gold]
        swapped_pred = [(i, swap.get(l, l)) for i, l in predictions]
        base = precision_report(gold, predictions)
        swapped = precision_report(swapped_gold, swapped_pred)
        assert swapped.per_class[Emotion.HAPPY] == base.per_class[Emotion.FEAR]
        assert swapped.per_class[Emotion.FEAR] == base.per_class[Emotion.HAPPY]
        assert swapped.per_class[Emotion.SAD] == base.per_class[Emotion.SAD]
        assert swapped.macro == pytest.approx(base.macro)


def stratum(day, label, size, prefix=""):
    return [Prediction(f"{prefix}{label.value}-{day}-{i}", day, label) for i in range(size)]


class TestSampling:
    def test_min_rule(self):
        predictions = (
            stratum("2013-04-20", Emotion.HAPPY, 1200)
            + stratum("2013-04-20", Emotion.SAD, 500)
            + stratum("2013-04-20", Emotion.FEAR, 80)
        )
        sample = sample_for_annotation(predictions, per_class=500, seed=1)
        sizes = Counter((p.day, p.label) for p in sample)
        assert sizes[("2013-04-20", Emotion.HAPPY)] == 500
        assert sizes[("2013-04-20", Emotion.SAD)] == 500
        assert sizes[("2013-04-20", Emotion.FEAR)] == 80

    def test_without_replacement(self):
        predictions = stratum("2013-04-20", Emotion.HAPPY, 1200)
        sample = sample_for_annotation(predictions, per_class=500, seed=3)
        assert len({p.id for p in sample}) == len(sample) == 500

    def test_deterministic_given_seed(self):
        predictions = stratum("2013-04-21", Emotion.ANGRY, 900)
        first = sample_for_annotation(predictions, per_class=100, seed=42)
        second = sample_for_annotation(predictions, per_class=100, seed=42)
        assert first == second
        different = sample_for_annotation(predictions, per_class=100, seed=43)
        assert first != different

    def test_strata_are_day_and_label(self):
        predictions = (
            stratum("2013-04-20", Emotion.HAPPY, 30)
            + stratum("2013-04-21", Emotion.HAPPY, 30)
        )
        sample = sample_for_annotation(predictions, per_class=20, seed=0)
        sizes = Counter(p.day for p in sample)
        assert sizes == {"2013-04-20": 20, "2013-04-21": 20}

    def test_neutral_never_sampled(self):
        predictions = stratum("2013-04-20", Emotion.NEUTRAL, 50) + stratum(
            "2013-04-20", Emotion.HAPPY, 5
        )
        sample = sample_for_annotation(predictions, per_class=10, seed=0)
        assert all(p.label is not Emotion.NEUTRAL for p in sample)

    def test_per_class_validation(self):
        with pytest.raises(ValueError):
            sample_for_annotation([], per_class=0)

    def test_inclusion_is_uniform(self):
        # every element of a 40-item stratum should appear ~ per_class/size
        # of the time across seeds; allow wide statistical slack
        predictions = stratum("2013-04-20", Emotion.SAD, 40)
        hits = Counter()
        n_seeds = 400
        for seed in range(n_seeds):
            for p in sample_for_annotation(predictions, per_class=10, seed=seed):
                hits[p.id] += 1
        expected = n_seeds * 10 / 40
        for p in predictions:
            assert abs(hits[p.id] - expected) < expected * 0.5


class TestLoaders:
    def test_read_gold(self):
        source = io.StringIO('{"id": "1", "gold": "happy"}\n\n{"id": "2", "gold": "sad"}\n')
        assert read_gold(source) == [
            GoldRecord("1", Emotion.HAPPY),
            GoldRecord("2", Emotion.SAD),
        ]

    def test_read_predictions(self):
        source = io.StringIO('{"id": "1", "label": "fear", "day": "2013-04-20"}\n')
        assert read_predictions(source) == [Prediction("1", "2013-04-20", Emotion.FEAR)]

    def test_bad_lines_are_line_numbered(self):
        with pytest.raises(ValueError, match="line 2"):
            read_gold(io.StringIO('{"id": "1", "gold": "happy"}\n{"id": "2"}\n'))
        with pytest.raises(ValueError, match="line 1"):
            read_predictions(io.StringIO("nope\n"))

    def test_unknown_label_rejected(self):
        with pytest.raises(ValueError, match="joy"):
            read_gold(io.StringIO('{"id": "1", "gold": "joy"}\n'))

    def test_round_trip_through_json(self):
        predictions = stratum("2013-04-20", Emotion.HAPPY, 3)
        dumped = "".join(
            json.dumps({"id": p.id, "day": p.day, "label": p.label.value}) + "\n"
            for p in predictions
        )
        assert read_predictions(io.StringIO(dumped)) == predictions
