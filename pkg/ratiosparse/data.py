import enum

import numpy as np
import pandas as pd

from dataclasses import asdict, dataclass
from typing import Optional

SUMMARY_COLUMNS = ["sparsity", "trials", "success_rate", "model_failure_rate",
                   "algorithm_failure_rate", "errored", "mean_iters",
                   "mean_seconds"]


class Outcome(enum.Enum):
    """
    Classification of a trial. A model failure means the ground truth has a
    larger objective than the solution found (the model itself prefers a
    wrong answer); an algorithm failure means the solver stopped short of a
    point the model prefers.
    """
    SUCCESS = "success"
    MODEL_FAILURE = "model_failure"
    ALGORITHM_FAILURE = "algorithm_failure"


@dataclass(frozen=True)
class TrialRecord:

    sparsity: int
    trial: int
    seed: int
    rel_error: float = np.nan
    classification: Optional[Outcome] = None
    iterations: int = 0
    seconds: float = 0.
    objective_truth: float = np.nan
    objective_sol: float = np.nan
    tie: bool = False
    errored: bool = False

    def __post_init__(self):
        assert self.errored == (self.classification is None), \
            "exactly the errored trials must be left unclassified!"


class Record:
    """Ledger of trial outcomes."""

    def __init__(self, records=()):
        self.records = list(records)

    def size(self):
        return len(self.records)

    def append(self, record):
        self.records.append(record)

    def extend(self, records):
        self.records.extend(records)

    def to_dataframe(self):
        """
        One row per trial, sorted by sparsity then trial index, with the
        classification as its string value.
        """
        rows = []
        for record in self.records:
            row = asdict(record)
            classification = row["classification"]
            row["classification"] = "" if classification is None \
                else classification.value
            rows.append(row)

        columns = list(TrialRecord.__dataclass_fields__)
        frame = pd.DataFrame(rows, columns=columns)
        return frame.sort_values(["sparsity", "trial"], kind="mergesort") \
                    .reset_index(drop=True)

    def summary(self):
        """
        One row per sparsity. Rates are fractions of the non-errored trials
        and partition them; ``trials`` counts all trials, errored included.
        """
        frame = self.to_dataframe()
        rows = []
        for sparsity, group in frame.groupby("sparsity", sort=True):
            valid = group[~group["errored"]]
            counts = valid["classification"].value_counts()
            num_valid = len(valid)

            def rate(outcome):
                if num_valid == 0:
                    return np.nan
                return counts.get(outcome.value, 0) / num_valid

            rows.append({
                "sparsity": int(sparsity),
                "trials": len(group),
                "success_rate": rate(Outcome.SUCCESS),
                "model_failure_rate": rate(Outcome.MODEL_FAILURE),
                "algorithm_failure_rate": rate(Outcome.ALGORITHM_FAILURE),
                "errored": int(group["errored"].sum()),
                "mean_iters": valid["iterations"].mean(),
                "mean_seconds": valid["seconds"].mean(),
            })

        return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)

    def num_ties(self):
        return sum(record.tie for record in self.records)
