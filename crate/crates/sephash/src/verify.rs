//! Brute-force verification of separation, perfect-hash, and parent-identifying properties.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::Error;
use crate::matrix::{CodeMatrix, SepType};
use crate::violation::Violation;

/// Work counters from one verification run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyStats {
    /// Candidate tuples examined: all of them on a pass, the witness rank on a failure.
    pub tuples_examined: u64,
    /// Rows consulted; N for any non-vacuous run.
    pub rows_tested: u64,
}

/// Verdict, optional witness, and counters from one verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: bool,
    pub violation: Option<Violation>,
    /// True when no candidate tuple exists, so the property holds by default.
    pub vacuous: bool,
    pub stats: VerifyStats,
}

impl VerifyReport {
    fn pass(vacuous: bool, stats: VerifyStats) -> Self {
        VerifyReport {
            passed: true,
            violation: None,
            vacuous,
            stats,
        }
    }

    fn fail(violation: Violation, stats: VerifyStats) -> Self {
        VerifyReport {
            passed: false,
            violation: Some(violation),
            vacuous: false,
            stats,
        }
    }
}

// Depth-first enumeration of part tuples for one fixed first column.
//
// Tuples are ordered lexicographically over the flattened slot sequence:
// columns ascend within a part, and parts of equal weight ascend by first
// column. Row liveness is maintained incrementally: a row dies as soon as the
// placed columns make it unable to separate any completion of the tuple.
struct Search<'a> {
    m: &'a CodeMatrix,
    weights: &'a [u32],
    single: bool,
    owner: Vec<u32>,
    set_slots: Vec<usize>,
    killed: Vec<usize>,
    alive: Vec<bool>,
    alive_count: usize,
    in_use: Vec<bool>,
    parts: Vec<Vec<usize>>,
    leaves: u64,
}

struct TaskResult {
    leaves: u64,
    witness: Option<Vec<Vec<usize>>>,
}

impl<'a> Search<'a> {
    fn new(m: &'a CodeMatrix, weights: &'a [u32]) -> Self {
        Search {
            m,
            weights,
            single: weights.len() == 1,
            owner: vec![0; m.rows() * (m.alphabet() as usize + 1)],
            set_slots: Vec::new(),
            killed: Vec::new(),
            alive: vec![true; m.rows()],
            alive_count: m.rows(),
            in_use: vec![false; m.cols()],
            parts: vec![Vec::new(); weights.len()],
            leaves: 0,
        }
    }

    fn place(&mut self, part: usize, col: usize) -> (usize, usize) {
        let marks = (self.set_slots.len(), self.killed.len());
        let stride = self.m.alphabet() as usize + 1;
        let pid = part as u32 + 1;
        for r in 0..self.m.rows() {
            if !self.alive[r] {
                continue;
            }
            let slot = r * stride + self.m.symbol(r, col) as usize;
            let cur = self.owner[slot];
            if cur == 0 {
                self.owner[slot] = pid;
                self.set_slots.push(slot);
            } else if self.single || cur != pid {
                self.alive[r] = false;
                self.alive_count -= 1;
                self.killed.push(r);
            }
        }
        self.in_use[col] = true;
        self.parts[part].push(col);
        marks
    }

    fn unplace(&mut self, part: usize, col: usize, marks: (usize, usize)) {
        while self.set_slots.len() > marks.0 {
            let slot = self.set_slots.pop().expect("non-empty undo stack");
            self.owner[slot] = 0;
        }
        while self.killed.len() > marks.1 {
            let r = self.killed.pop().expect("non-empty undo stack");
            self.alive[r] = true;
            self.alive_count += 1;
        }
        self.in_use[col] = false;
        self.parts[part].pop();
    }

    // Fills the slot after (part, pos); `col` is the column just placed there.
    fn descend(&mut self, part: usize, pos: usize, col: usize) -> Option<Vec<Vec<usize>>> {
        let width = self.weights[part] as usize;
        if pos + 1 < width {
            return self.scan(part, pos + 1, col + 1);
        }
        if part + 1 == self.weights.len() {
            if self.alive_count == 0 {
                return Some(self.parts.clone());
            }
            self.leaves += 1;
            return None;
        }
        let next_min = if self.weights[part + 1] == self.weights[part] {
            self.parts[part][0] + 1
        } else {
            0
        };
        self.scan(part + 1, 0, next_min)
    }

    fn scan(&mut self, part: usize, pos: usize, min_col: usize) -> Option<Vec<Vec<usize>>> {
        for col in min_col..self.m.cols() {
            if self.in_use[col] {
                continue;
            }
            let marks = self.place(part, col);
            let witness = self.descend(part, pos, col);
            self.unplace(part, col, marks);
            if witness.is_some() {
                return witness;
            }
        }
        None
    }

    fn run_task(m: &'a CodeMatrix, weights: &'a [u32], first_col: usize) -> TaskResult {
        let mut search = Search::new(m, weights);
        search.place(0, first_col);
        let witness = search.descend(0, 0, first_col);
        TaskResult {
            leaves: search.leaves,
            witness,
        }
    }
}

/// Checks whether every admissible tuple of disjoint column sets is separated by some row.
pub fn verify_shf(m: &CodeMatrix, sep_type: &SepType) -> VerifyReport {
    if sep_type.u() > m.cols() as u64 {
        return VerifyReport::pass(true, VerifyStats::default());
    }
    let weights = sep_type.weights();
    let results: Vec<TaskResult> = (0..m.cols())
        .into_par_iter()
        .map(|c| Search::run_task(m, weights, c))
        .collect();
    let mut examined: u64 = 0;
    for result in &results {
        if let Some(parts) = &result.witness {
            let stats = VerifyStats {
                tuples_examined: examined.saturating_add(result.leaves).saturating_add(1),
                rows_tested: m.rows() as u64,
            };
            let violation = if sep_type.t() == 1 {
                Violation::RepeatedRestriction {
                    columns: parts[0].clone(),
                }
            } else {
                Violation::Unseparated {
                    parts: parts.clone(),
                }
            };
            return VerifyReport::fail(violation, stats);
        }
        examined = examined.saturating_add(result.leaves);
    }
    VerifyReport::pass(
        false,
        VerifyStats {
            tuples_examined: examined,
            rows_tested: m.rows() as u64,
        },
    )
}

/// Checks the perfect-hash property: every t columns get distinct values in some row.
pub fn verify_phf(m: &CodeMatrix, t: usize) -> Result<VerifyReport, Error> {
    let sep_type = SepType::perfect(t)?;
    Ok(verify_shf(m, &sep_type))
}

/// Largest number of rows in which any two columns agree.
pub fn max_pairwise_agreement(m: &CodeMatrix) -> Result<usize, Error> {
    if m.cols() < 2 {
        return Err(Error::TwoColumnsRequired { cols: m.cols() });
    }
    let mut best = 0;
    for i in 0..m.cols() {
        for j in i + 1..m.cols() {
            let agree = (0..m.rows())
                .filter(|&r| m.symbol(r, i) == m.symbol(r, j))
                .count();
            best = best.max(agree);
        }
    }
    Ok(best)
}

const IPP_MAX_COLS: usize = 60;
const IPP_MAX_ROWS: usize = 6;
const IPP_MAX_T: usize = 3;

/// Checks the t-IPP property: every word descending from some coalition of at
/// most t columns pins down a column common to all of its candidate coalitions.
pub fn verify_ipp(m: &CodeMatrix, t: usize) -> Result<VerifyReport, Error> {
    if t == 0 {
        return Err(Error::EmptyType);
    }
    if m.cols() > IPP_MAX_COLS || m.rows() > IPP_MAX_ROWS || t > IPP_MAX_T {
        return Err(Error::IppGuard {
            cols: m.cols(),
            rows: m.rows(),
            t,
            max_cols: IPP_MAX_COLS,
            max_rows: IPP_MAX_ROWS,
            max_t: IPP_MAX_T,
        });
    }
    for i in 0..m.cols() {
        for j in i + 1..m.cols() {
            if m.column(i) == m.column(j) {
                return Err(Error::DuplicateColumns { first: i, second: j });
            }
        }
    }
    if m.cols() == 0 {
        return Ok(VerifyReport::pass(true, VerifyStats::default()));
    }

    // every word some coalition can assemble, mapped to all coalitions that can
    let mut parents: BTreeMap<Vec<u32>, Vec<Vec<usize>>> = BTreeMap::new();
    let mut coalitions: u64 = 0;
    for size in 1..=t.min(m.cols()) {
        let mut coalition: Vec<usize> = (0..size).collect();
        loop {
            coalitions += 1;
            for word in descendant_words(m, &coalition) {
                parents.entry(word).or_default().push(coalition.clone());
            }
            if !next_combination(&mut coalition, m.cols()) {
                break;
            }
        }
    }
    let stats = VerifyStats {
        tuples_examined: coalitions,
        rows_tested: m.rows() as u64,
    };
    for (word, sets) in &parents {
        let mut common: BTreeSet<usize> = sets[0].iter().copied().collect();
        for set in &sets[1..] {
            common = common
                .intersection(&set.iter().copied().collect())
                .copied()
                .collect();
            if common.is_empty() {
                break;
            }
        }
        if common.is_empty() {
            return Ok(VerifyReport::fail(
                Violation::IppAmbiguous {
                    word: word.clone(),
                    parents: witness_family(sets),
                },
                stats,
            ));
        }
    }
    Ok(VerifyReport::pass(false, stats))
}

// All words obtainable by picking, in each row, a symbol some coalition member has there.
fn descendant_words(m: &CodeMatrix, coalition: &[usize]) -> Vec<Vec<u32>> {
    let mut words = vec![Vec::new()];
    for r in 0..m.rows() {
        let mut symbols: Vec<u32> = coalition.iter().map(|&c| m.symbol(r, c)).collect();
        symbols.sort_unstable();
        symbols.dedup();
        let mut next = Vec::with_capacity(words.len() * symbols.len());
        for word in &words {
            for &s in &symbols {
                let mut extended = word.clone();
                extended.push(s);
                next.push(extended);
            }
        }
        words = next;
    }
    words
}

fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] + 1 <= n - (k - i) {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// A small family of coalitions that already has an empty intersection: the
// earliest disjoint pair if one exists, else a pruned prefix of the list.
fn witness_family(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].iter().all(|c| !sets[j].contains(c)) {
                return vec![sets[i].clone(), sets[j].clone()];
            }
        }
    }
    let mut prefix = 0;
    let mut common: BTreeSet<usize> = sets[0].iter().copied().collect();
    while !common.is_empty() {
        prefix += 1;
        common = common
            .intersection(&sets[prefix].iter().copied().collect())
            .copied()
            .collect();
    }
    let mut family: Vec<Vec<usize>> = sets[..=prefix].to_vec();
    let mut i = 0;
    while i < family.len() {
        let mut trial = family.clone();
        trial.remove(i);
        if empty_intersection(&trial) {
            family = trial;
        } else {
            i += 1;
        }
    }
    family
}

fn empty_intersection(sets: &[Vec<usize>]) -> bool {
    if sets.is_empty() {
        return false;
    }
    let mut common: BTreeSet<usize> = sets[0].iter().copied().collect();
    for set in &sets[1..] {
        common = common
            .intersection(&set.iter().copied().collect())
            .copied()
            .collect();
    }
    common.is_empty()
}
