//! Column and row reductions that shrink a matrix while controlling its separation type.

use std::collections::HashMap;

use crate::error::Error;
use crate::matrix::{CodeMatrix, SepType};

/// Repeatedly deletes the lowest-index column that is alone with some symbol in some row.
///
/// Returns the reduced matrix and the deleted original column indices in deletion order.
pub fn remove_unique_coordinate_columns(m: &CodeMatrix) -> (CodeMatrix, Vec<usize>) {
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let mut live: Vec<usize> = (0..m.cols()).collect();
    let mut removed = Vec::new();
    loop {
        let mut counts = vec![0u32; m.rows() * (m.alphabet() as usize + 1)];
        for &c in &live {
            for r in 0..m.rows() {
                counts[r * (m.alphabet() as usize + 1) + m.symbol(r, c) as usize] += 1;
            }
        }
        let hit = live.iter().position(|&c| {
            (0..m.rows())
                .any(|r| counts[r * (m.alphabet() as usize + 1) + m.symbol(r, c) as usize] == 1)
        });
        match hit {
            Some(pos) => removed.push(live.remove(pos)),
            None => break,
        }
    }
    (m.select(&all_rows, &live), removed)
}

/// Partitions the rows into `target` consecutive blocks and fuses each block into one row.
///
/// The first N mod target blocks take the extra row; a fused symbol encodes the
/// block's symbols in base q, most significant row first, over alphabet q^ceil(N/target).
pub fn group_coordinates(m: &CodeMatrix, target: usize) -> Result<CodeMatrix, Error> {
    if target == 0 || target > m.rows() {
        return Err(Error::TargetRows {
            target,
            rows: m.rows(),
        });
    }
    let big = m.rows().div_ceil(target);
    let long_blocks = if m.rows() % target == 0 {
        target
    } else {
        m.rows() % target
    };
    let q = u128::from(m.alphabet());
    let new_alphabet = match q.checked_pow(big as u32) {
        Some(size) if size <= u128::from(u32::MAX) => size as u32,
        other => {
            return Err(Error::AlphabetTooLarge {
                size: other.unwrap_or(u128::MAX),
                max: u32::MAX,
            })
        }
    };
    let mut columns = Vec::with_capacity(m.cols());
    for col in m.columns() {
        let mut fused = Vec::with_capacity(target);
        let mut row = 0;
        for block in 0..target {
            let len = if block < long_blocks { big } else { big - 1 };
            let mut value: u64 = 0;
            for &s in &col[row..row + len] {
                value = value * u64::from(m.alphabet()) + u64::from(s - 1);
            }
            fused.push(value as u32 + 1);
            row += len;
        }
        columns.push(fused);
    }
    CodeMatrix::from_columns(new_alphabet, target, &columns)
}

/// Result of one row-deletion step: either a smaller family of a reduced type,
/// or too few columns left for the type to constrain anything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReduceOutcome {
    /// The surviving columns form a family of the decremented type.
    Separating {
        matrix: CodeMatrix,
        sep_type: SepType,
    },
    /// At most u-1 columns survive; `matrix` is None when every row was deleted.
    Exhausted {
        matrix: Option<CodeMatrix>,
        remaining_columns: usize,
    },
}

/// Deletes the chosen rows plus one representative column per distinct restriction
/// to them, decrementing the chosen weight of the type.
pub fn johnson_reduce(
    m: &CodeMatrix,
    sep_type: &SepType,
    chosen_rows: &[usize],
    decrement_index: usize,
) -> Result<ReduceOutcome, Error> {
    if chosen_rows.is_empty() {
        return Err(Error::NoChosenRows);
    }
    let mut rows = chosen_rows.to_vec();
    rows.sort_unstable();
    for pair in rows.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateRow { index: pair[0] });
        }
    }
    if let Some(&worst) = rows.last() {
        if worst >= m.rows() {
            return Err(Error::RowOutOfRange {
                index: worst,
                rows: m.rows(),
            });
        }
    }
    if decrement_index >= sep_type.t() {
        return Err(Error::WeightIndex {
            index: decrement_index,
            count: sep_type.t(),
        });
    }
    if sep_type.t() == 1 && sep_type.weights()[0] == 1 {
        return Err(Error::DecrementEmptiesType);
    }

    // one representative (lowest index) per distinct restriction to the chosen rows
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut representatives = Vec::new();
    for c in 0..m.cols() {
        let key: Vec<u32> = rows.iter().map(|&r| m.symbol(r, c)).collect();
        if !seen.contains_key(&key) {
            seen.insert(key, c);
            representatives.push(c);
        }
    }
    let keep_cols: Vec<usize> = (0..m.cols())
        .filter(|c| !representatives.contains(c))
        .collect();
    let keep_rows: Vec<usize> = (0..m.rows()).filter(|r| !rows.contains(r)).collect();
    let remaining = keep_cols.len();
    let u = sep_type.u();

    if remaining as u64 <= u - 1 {
        let matrix = if keep_rows.is_empty() {
            None
        } else {
            Some(m.select(&keep_rows, &keep_cols))
        };
        return Ok(ReduceOutcome::Exhausted {
            matrix,
            remaining_columns: remaining,
        });
    }
    if keep_rows.is_empty() {
        return Err(Error::RowlessRemainder {
            remaining,
            threshold: u - 1,
        });
    }
    let mut weights = sep_type.weights().to_vec();
    weights[decrement_index] -= 1;
    weights.retain(|&w| w > 0);
    let sep_type = SepType::new(&weights)?;
    Ok(ReduceOutcome::Separating {
        matrix: m.select(&keep_rows, &keep_cols),
        sep_type,
    })
}
