use std::collections::HashMap;

use rand::seq::SliceRandom;

use super::ChoiceDataset;
use crate::error::{Error, Result};
use crate::rng::{substream, Stream};
use crate::scalar::Scalar;

/// What is shuffled into folds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FoldUnit {
    /// Individual choice situations.
    #[default]
    Situation,
    /// All situations of a respondent stay together.
    Respondent,
}

/// One train/test pair. Index lists refer to the source dataset and are
/// sorted ascending.
#[derive(Clone, Debug)]
pub struct Fold<T> {
    pub index: usize,
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
    pub train: ChoiceDataset<T>,
    pub test: ChoiceDataset<T>,
}

pub fn split_kfold<T: Scalar>(ds: &ChoiceDataset<T>, folds: usize, seed: u64) -> Result<Vec<Fold<T>>> {
    split_kfold_by(ds, folds, seed, FoldUnit::Situation)
}

/// Shuffles units with the split substream of `seed` and cuts the shuffled
/// order into `folds` contiguous blocks whose sizes differ by at most one.
pub fn split_kfold_by<T: Scalar>(
    ds: &ChoiceDataset<T>,
    folds: usize,
    seed: u64,
    unit: FoldUnit,
) -> Result<Vec<Fold<T>>> {
    if folds < 2 {
        return Err(Error::InvalidArgument(format!("folds must be at least 2, got {folds}")));
    }
    let groups = unit_groups(ds, unit);
    if folds > groups.len() {
        return Err(Error::InvalidArgument(format!(
            "{folds} folds requested but only {} {} available",
            groups.len(),
            match unit {
                FoldUnit::Situation => "situations",
                FoldUnit::Respondent => "respondents",
            }
        )));
    }

    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.shuffle(&mut substream(seed, Stream::Split, 0));

    let n = groups.len();
    let (base, extra) = (n / folds, n % folds);
    let mut fold_of = vec![0usize; ds.len()];
    let mut start = 0;
    for f in 0..folds {
        let size = base + usize::from(f < extra);
        for &g in &order[start..start + size] {
            for &i in &groups[g] {
                fold_of[i] = f;
            }
        }
        start += size;
    }

    (0..folds)
        .map(|f| {
            let (test_indices, train_indices): (Vec<usize>, Vec<usize>) =
                (0..ds.len()).partition(|&i| fold_of[i] == f);
            Ok(Fold {
                index: f,
                train: ds.subset(&train_indices)?,
                test: ds.subset(&test_indices)?,
                train_indices,
                test_indices,
            })
        })
        .collect()
}

fn unit_groups<T: Scalar>(ds: &ChoiceDataset<T>, unit: FoldUnit) -> Vec<Vec<usize>> {
    match unit {
        FoldUnit::Situation => (0..ds.len()).map(|i| vec![i]).collect(),
        FoldUnit::Respondent => {
            let mut slot: HashMap<&str, usize> = HashMap::new();
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for (i, s) in ds.situations().iter().enumerate() {
                let g = *slot.entry(s.respondent_id.as_str()).or_insert_with(|| {
                    groups.push(Vec::new());
                    groups.len() - 1
                });
                groups[g].push(i);
            }
            groups
        }
    }
}
